from cli.base import PoincareCommand
from equilibria.serializers import CSV_COLUMNS, EquilibriumCensusSerializer, csv_rows


class Command(PoincareCommand):
    help = "Find and classify finite and infinite equilibria (equilibria.csv, equilibria.json)"

    def run(self, cfg, writer):
        census = self.census(self.compactified(self.spec(cfg)), cfg)
        writer.csv("equilibria.csv", CSV_COLUMNS, csv_rows(census.all))
        writer.json("equilibria.json", EquilibriumCensusSerializer(census).data)
        self.stdout.write(
            f"{len(census.finite)} finite and {len(census.infinite)} infinite equilibria"
        )

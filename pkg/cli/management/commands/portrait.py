from cli.base import PoincareCommand
from equilibria.serializers import CSV_COLUMNS, csv_rows
from portrait.serializers import (
    TRAJECTORY_CSV_COLUMNS,
    MorseSmaleReportSerializer,
    trajectory_rows,
)
from portrait.services.portrait_service import PortraitService


class Command(PoincareCommand):
    help = (
        "Draw the phase portrait on the Poincare disk (portrait.svg, "
        "equilibria.csv, trajectories.csv, morse_smale.json)"
    )

    def run(self, cfg, writer):
        cf = self.compactified(self.spec(cfg))
        portrait = PortraitService(cf, fill_T=cfg.T, **self.census_options(cfg)).build()
        writer.text("portrait.svg", portrait.svg())
        writer.csv("equilibria.csv", CSV_COLUMNS, csv_rows(portrait.equilibria))
        writer.csv(
            "trajectories.csv",
            TRAJECTORY_CSV_COLUMNS,
            trajectory_rows([*portrait.orbits, *portrait.report.separatrices]),
        )
        writer.json("morse_smale.json", MorseSmaleReportSerializer(portrait.report).data)
        report = portrait.report
        self.stdout.write(
            f"hyperbolic: {report.all_hyperbolic}, "
            f"saddle connection suspected: {report.saddle_connection_suspected}"
        )

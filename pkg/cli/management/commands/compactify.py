from cli.base import PoincareCommand
from compactify.serializers import CompactifiedFieldSerializer, charts_listing


class Command(PoincareCommand):
    help = "Write the six chart systems of the limit field (charts.json, charts.txt)"

    def run(self, cfg, writer):
        cf = self.compactified(self.spec(cfg))
        writer.json("charts.json", CompactifiedFieldSerializer(cf).data)
        writer.text("charts.txt", charts_listing(cf))

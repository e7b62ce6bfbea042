from django.core.management.base import CommandError

from cli.base import PoincareCommand
from cli.runconfig import EXIT_ASSERTION
from portrait.serializers import ReproductionReportSerializer
from portrait.services.reproduce_service import ReproduceService


class Command(PoincareCommand):
    help = "Rebuild the worked example and check its published facts (reproduce.json, portrait.svg)"

    def run(self, cfg, writer):
        spec = self.spec(cfg) if cfg.spec_path else None
        report = ReproduceService(spec).run()
        writer.json("reproduce.json", ReproductionReportSerializer(report).data)
        writer.text("portrait.svg", report.svg)
        for claim in report.claims:
            style = self.style.SUCCESS if claim.passed else self.style.ERROR
            self.stdout.write(style(f"{'PASS' if claim.passed else 'FAIL'} {claim.name}"))
        writer.commit()
        if not report.passed:
            raise CommandError(
                f"{len(report.failures)} claim(s) failed: "
                + ", ".join(claim.name for claim in report.failures),
                returncode=EXIT_ASSERTION,
            )

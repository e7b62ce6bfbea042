import logging

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from cli.runconfig import EXIT_CONFIG, EXIT_NUMERICAL, RunConfig
from cli.writers import ArtifactWriter
from compactify.charts import CompactifiedField, compactify
from equilibria.census import EquilibriumCensus, equilibrium_census
from polyfield.exceptions import NumericalError, PoincareError
from polyfield.problem import ProblemSpec, limit_field

logger = logging.getLogger(__name__)


class PoincareCommand(BaseCommand):
    """
    Shared flags and error mapping of the toolkit commands. Subclasses
    implement `run(cfg, writer)`.
    """

    def add_arguments(self, parser):
        parser.add_argument("--spec", help="problem JSON file")
        parser.add_argument("--out", default="out", help="output directory")
        parser.add_argument("--grid-n", type=int, dest="grid_n", help="polar grid size of the C1 norm")
        parser.add_argument("--n", type=int, help="spatial grid points")
        parser.add_argument("--eps", dest="eps_list", help="comma separated eps values")
        parser.add_argument("--T", type=float, dest="T", help="time horizon")
        parser.add_argument("--dt", type=float, help="time step")
        parser.add_argument("--radius", choices=("1", "sqrt2"), help="ball radius of the C1 norm")
        parser.add_argument("--seed", type=int, help="seed of the Newton multistart jitter")
        parser.add_argument("--sample-stride", type=int, dest="sample_stride")
        parser.add_argument("--snapshot-stride", type=int, dest="snapshot_stride")
        parser.add_argument("--force", action="store_true", help="overwrite existing files")
        parser.add_argument(
            "--relaxed-degrees",
            action="store_true",
            dest="relaxed_degrees",
            help="waive the degree condition for nonlinearities vanishing at 0",
        )

    def handle(self, *args, **options):
        cfg = RunConfig.from_options(self.command_name, options)
        writer = ArtifactWriter(cfg.prepare_output(), cfg.force)
        logger.info("Running %s into %s", cfg.command, cfg.output_dir)
        try:
            self.run(cfg, writer)
        except CommandError:
            raise
        except ValidationError as e:
            raise CommandError(f"invalid problem: {e}", returncode=EXIT_CONFIG)
        except NumericalError as e:
            raise CommandError(f"numerical failure: {e}", returncode=EXIT_NUMERICAL)
        except PoincareError as e:
            raise CommandError(str(e), returncode=EXIT_CONFIG)
        writer.commit()
        for path in writer.written:
            self.stdout.write(self.style.SUCCESS(f"Wrote {path}"))

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]

    def run(self, cfg: RunConfig, writer: ArtifactWriter):
        raise NotImplementedError

    # helpers shared by several commands

    def spec(self, cfg: RunConfig) -> ProblemSpec:
        return cfg.load_spec()

    def compactified(self, spec: ProblemSpec) -> CompactifiedField:
        return compactify(limit_field(spec))

    def census_options(self, cfg: RunConfig) -> dict:
        return {
            "radius": settings.POINCARE["SEARCH_RADIUS"],
            "seeds_per_axis": settings.POINCARE["SEEDS_PER_AXIS"],
            "seed": cfg.seed,
            "tol": settings.POINCARE["HYPERBOLICITY_TOL"],
        }

    def census(self, cf: CompactifiedField, cfg: RunConfig) -> EquilibriumCensus:
        census = equilibrium_census(cf, **self.census_options(cfg))
        for warning in census.warnings:
            self.stderr.write(self.style.WARNING(warning))
        return census

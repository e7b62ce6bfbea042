from cli.base import PoincareCommand
from reduction.services.convergence_service import rough_initial_state
from simulate.pde import SimState, integrate_pde
from simulate.serializers import (
    SNAPSHOT_CSV_COLUMNS,
    TRAJECTORY_CSV_COLUMNS,
    snapshot_rows,
    trajectory_rows,
)
from spectral.eigen import spectral_result


class Command(PoincareCommand):
    help = "Integrate the PDE-ODE system for every eps (trajectory_<eps>.csv)"

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument("--w0", type=float, help="constant initial PDE state")
        parser.add_argument("--v0", type=float, help="initial ODE state")

    def handle(self, *args, **options):
        self.w0, self.v0 = options.get("w0"), options.get("v0")
        return super().handle(*args, **options)

    def initial_state(self, n: int) -> SimState:
        """0.1 + 0.05 cos(pi x), -0.1 unless given"""
        rough = rough_initial_state(n)
        if self.w0 is None and self.v0 is None:
            return rough
        w0 = rough.w if self.w0 is None else SimState.constant(n, self.w0, 0.0).w
        return SimState(w0, rough.v if self.v0 is None else self.v0, 0.0)

    def run(self, cfg, writer):
        spec = self.spec(cfg)
        init = self.initial_state(cfg.n)
        for eps in cfg.eps_list:
            phi = spectral_result(spec, eps, cfg.n).phi
            trajectory = integrate_pde(
                spec, eps, init, T=cfg.T, dt=cfg.dt, sample_stride=cfg.sample_stride
            )
            writer.csv(
                f"trajectory_{eps:g}.csv",
                TRAJECTORY_CSV_COLUMNS,
                trajectory_rows(trajectory, phi),
            )
            if cfg.snapshot_stride:
                writer.csv(
                    f"snapshots_{eps:g}.csv",
                    SNAPSHOT_CSV_COLUMNS,
                    snapshot_rows(trajectory, cfg.snapshot_stride),
                )
            if trajectory.blowup:
                self.stdout.write(
                    self.style.WARNING(f"eps={eps:g}: blow-up at t={trajectory.final.t:g}")
                )

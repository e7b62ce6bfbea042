from cli.base import PoincareCommand
from reduction.serializers import CONVERGENCE_CSV_COLUMNS, convergence_rows
from reduction.services.convergence_service import ConvergenceService


class Command(PoincareCommand):
    help = "C1 distance of the reduced fields to the limit field over eps (convergence.csv)"

    def run(self, cfg, writer):
        service = ConvergenceService(
            self.spec(cfg),
            n=cfg.n,
            grid_n=cfg.grid_n,
            radius=cfg.radius,
            dt=cfg.dt,
            sample_stride=cfg.sample_stride,
        )
        rows = service.convergence_study(cfg.eps_list)
        writer.csv("convergence.csv", CONVERGENCE_CSV_COLUMNS, convergence_rows(rows))
        for row in rows:
            self.stdout.write(
                f"eps={row.eps:g}: C1 distance={row.c1_distance:.3g}, "
                f"sup wperp H1={row.sup_wperp_h1:.3g}"
            )

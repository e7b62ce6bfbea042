from cli.base import PoincareCommand
from spectral.eigen import spectral_result
from spectral.serializers import PHI_CSV_COLUMNS, SpectralResultSerializer, phi_rows


class Command(PoincareCommand):
    help = "Lowest eigenpairs of the diffusion operator for every eps (spectrum.json, phi_<eps>.csv)"

    def run(self, cfg, writer):
        spec = self.spec(cfg)
        results = [spectral_result(spec, eps, cfg.n) for eps in cfg.eps_list]
        writer.json("spectrum.json", SpectralResultSerializer(results, many=True).data)
        for result in results:
            writer.csv(f"phi_{result.eps:g}.csv", PHI_CSV_COLUMNS, phi_rows(result))
            self.stdout.write(
                f"eps={result.eps:g}: lambda2={result.lambda2:.10g}, tau={result.tau:g}"
            )

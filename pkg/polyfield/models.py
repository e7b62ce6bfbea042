from django.core.exceptions import ValidationError
from django.db import models

from polyfield.problem import ProblemSpec


def default_diffusion():
    return [1.0]


class Problem(models.Model):
    """Stored data of a PDE-ODE problem"""

    name = models.CharField(max_length=100, unique=True, verbose_name="Name")
    description = models.TextField(blank=True, verbose_name="Description")
    lam = models.FloatField(verbose_name="lambda")
    beta = models.FloatField(verbose_name="beta")
    f1 = models.JSONField(default=list, blank=True, verbose_name="f1(u)")
    f2 = models.JSONField(default=list, blank=True, verbose_name="f2(u)")
    g1 = models.JSONField(default=list, blank=True, verbose_name="g1(v)")
    g2 = models.JSONField(default=list, blank=True, verbose_name="g2(v)")
    diffusion = models.JSONField(
        default=default_diffusion, verbose_name="Diffusion base a(x)"
    )
    relaxed_degrees = models.BooleanField(
        default=False, verbose_name="Relaxed degree condition"
    )
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        verbose_name = "Problem"
        verbose_name_plural = "Problems"
        ordering = ["name"]

    def __str__(self):
        return f"{self.name} (lambda={self.lam:g}, beta={self.beta:g})"

    def to_spec(self) -> ProblemSpec:
        return ProblemSpec.from_dict(
            {
                "lambda": self.lam,
                "beta": self.beta,
                "f1": self.f1,
                "f2": self.f2,
                "g1": self.g1,
                "g2": self.g2,
                "diffusion": self.diffusion,
                "relaxed_degrees": self.relaxed_degrees,
            }
        )

    def clean(self):
        """Run the problem validation on the stored coefficients"""
        for name in ("f1", "f2", "g1", "g2", "diffusion"):
            value = getattr(self, name)
            if not isinstance(value, list) or not all(
                isinstance(c, (int, float)) and not isinstance(c, bool)
                for c in value
            ):
                raise ValidationError(
                    {name: "Expected a list of numeric coefficients"}
                )
        self.to_spec().clean()

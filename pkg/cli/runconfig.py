"""
Options shared by every command, merged over settings.POINCARE.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from django.conf import settings
from django.core.management.base import CommandError
from rest_framework import serializers

from c1norm.norms import RADII
from polyfield.problem import ProblemSpec
from polyfield.serializers import ProblemSpecSerializer

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ASSERTION = 4


def parse_eps_list(text: str) -> list[float]:
    """Comma separated positive reals, e.g. "1e-1,1e-2" """
    try:
        values = [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise CommandError(f"--eps expects comma separated numbers, got {text!r}", returncode=EXIT_CONFIG)
    if not values or any(not value > 0 for value in values):
        raise CommandError(f"--eps values must be positive, got {text!r}", returncode=EXIT_CONFIG)
    return values


@dataclass(frozen=True)
class RunConfig:
    command: str
    spec_path: Path | None = None
    output_dir: Path = Path("out")
    grid_n: int = 64
    n: int = 256
    eps_list: list[float] = field(default_factory=lambda: [1e-1, 1e-2, 1e-3])
    T: float = 30.0
    dt: float = 1e-3
    radius: str = "1"
    seed: int = 0
    sample_stride: int = 10
    snapshot_stride: int = 0
    force: bool = False
    relaxed_degrees: bool = False

    @classmethod
    def from_options(cls, command: str, options: Mapping[str, Any]) -> RunConfig:
        """Command line options over the POINCARE defaults"""
        defaults = settings.POINCARE
        picked = {
            "grid_n": defaults["GRID_N"],
            "n": defaults["N"],
            "eps_list": list(defaults["EPS_LIST"]),
            "T": defaults["T"],
            "dt": defaults["DT"],
            "radius": defaults["RADIUS"],
            "seed": defaults["SEED"],
            "sample_stride": defaults["SAMPLE_STRIDE"],
            "snapshot_stride": defaults["SNAPSHOT_STRIDE"],
        }
        for name in picked:
            if options.get(name) is not None:
                picked[name] = options[name]
        if isinstance(picked["eps_list"], str):
            picked["eps_list"] = parse_eps_list(picked["eps_list"])
        if picked["radius"] not in RADII:
            raise CommandError(
                f"--radius must be one of {sorted(RADII)}, got {picked['radius']!r}",
                returncode=EXIT_CONFIG,
            )
        spec_path = options.get("spec")
        return cls(
            command=command,
            spec_path=Path(spec_path) if spec_path else None,
            output_dir=Path(options.get("out") or "out"),
            force=bool(options.get("force")),
            relaxed_degrees=bool(options.get("relaxed_degrees")),
            **picked,
        )

    def load_spec(self) -> ProblemSpec:
        """
        Read and validate the problem file. Every failure maps to the
        configuration exit code with a message naming the field.
        """
        if self.spec_path is None:
            raise CommandError("--spec is required", returncode=EXIT_CONFIG)
        try:
            data = json.loads(self.spec_path.read_text())
        except OSError as e:
            raise CommandError(f"cannot read {self.spec_path}: {e}", returncode=EXIT_CONFIG)
        except json.JSONDecodeError as e:
            raise CommandError(f"{self.spec_path} is not valid JSON: {e}", returncode=EXIT_CONFIG)
        if not isinstance(data, dict):
            raise CommandError(f"{self.spec_path} must hold a JSON object", returncode=EXIT_CONFIG)
        if self.relaxed_degrees:
            data["relaxed_degrees"] = True

        serializer = ProblemSpecSerializer(data=data)
        try:
            serializer.is_valid(raise_exception=True)
        except serializers.ValidationError as e:
            raise CommandError(
                f"invalid problem in {self.spec_path}: {_flatten(e.detail)}",
                returncode=EXIT_CONFIG,
            )
        spec = serializer.save()
        logger.info("Loaded problem from %s", self.spec_path)
        return spec

    def prepare_output(self) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir


def _flatten(detail) -> str:
    if isinstance(detail, dict):
        return "; ".join(f"{key}: {_flatten(value)}" for key, value in detail.items())
    if isinstance(detail, list):
        return ", ".join(_flatten(item) for item in detail)
    return str(detail)

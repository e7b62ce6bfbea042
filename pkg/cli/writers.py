import csv
import io
import json
import logging
from pathlib import Path

from django.core.management.base import CommandError

from cli.runconfig import EXIT_CONFIG

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """
    Collects command outputs and writes them into one directory on commit.
    Nothing is written when any target exists, unless forced.
    """

    def __init__(self, output_dir: Path, force: bool = False):
        self.output_dir = Path(output_dir)
        self.force = force
        self.pending: dict[str, str] = {}
        self.written: list[Path] = []

    def _stage(self, name: str, content: str) -> Path:
        self.pending[name] = content
        return self.output_dir / name

    def text(self, name: str, content: str) -> Path:
        return self._stage(name, content)

    def json(self, name: str, data) -> Path:
        return self.text(name, json.dumps(data, indent=2, sort_keys=True) + "\n")

    def csv(self, name: str, columns, rows) -> Path:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return self._stage(name, buffer.getvalue())

    def commit(self) -> list[Path]:
        targets = {name: self.output_dir / name for name in self.pending}
        existing = [str(path) for path in targets.values() if path.exists()]
        if existing and not self.force:
            raise CommandError(
                f"{', '.join(existing)} already exist; pass --force to overwrite",
                returncode=EXIT_CONFIG,
            )
        for name, path in targets.items():
            logger.debug("Writing %s", path)
            path.write_text(self.pending[name], newline="")
            self.written.append(path)
        self.pending.clear()
        return self.written

import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Iterable, Sequence


class ResultRepo:
    """Writes one command's outputs; without a path, data goes to stdout.

    Sibling files (per-trial CSV next to a JSON report) share the main file's stem.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.file_path = Path(path) if path is not None else None

    def sibling(self, suffix: str) -> "ResultRepo":
        """ResultRepo for '<stem><suffix>' beside the main file; stdout stays stdout."""
        if self.file_path is None:
            return ResultRepo(None)
        return ResultRepo(self.file_path.with_name(self.file_path.stem + suffix))

    def write_text(self, text: str):
        if self.file_path is None:
            sys.stdout.write(text)
            return
        os.makedirs(self.file_path.parent, exist_ok=True)
        with open(self.file_path, "w", encoding="utf-8", newline="") as f:
            f.write(text)

    def save(self, doc: dict):
        """Writes a JSON document (sorted keys, so reruns are byte-identical)."""
        self.write_text(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n")

    def write_csv(self, columns: Sequence[str], rows: Iterable[Sequence]):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow(row)
        self.write_text(buffer.getvalue())


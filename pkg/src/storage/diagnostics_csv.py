"""Diagnostics CSV writer: fixed header, 17 significant digits, empty cell for a missing dissipation check."""

import csv
from pathlib import Path
from typing import Iterable, List, Optional, Union

from ..diagnostics.monitors import DiagnosticsRecord

COLUMNS = DiagnosticsRecord.columns()


def _format(value: Optional[float]) -> str:
    return "" if value is None else format(value, ".17g")


def write_diagnostics_csv(records: Iterable[DiagnosticsRecord], path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(COLUMNS)
        for rec in records:
            writer.writerow([_format(getattr(rec, name)) for name in COLUMNS])
    return path


def read_diagnostics_csv(path: Union[str, Path]) -> List[DiagnosticsRecord]:
    with open(path, newline="") as fp:
        reader = csv.DictReader(fp)
        if reader.fieldnames != COLUMNS:
            raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
        return [
            DiagnosticsRecord(**{k: (float(v) if v != "" else None) for k, v in row.items()})
            for row in reader
        ]

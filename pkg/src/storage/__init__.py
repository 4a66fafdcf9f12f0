"""Snapshot, diagnostics CSV and heatmap file formats."""

from .diagnostics_csv import COLUMNS, read_diagnostics_csv, write_diagnostics_csv
from .heatmap import to_gray_levels, write_heatmap
from .snapshot import MAGIC, SnapshotFormatError, read_snapshot, write_snapshot

__all__ = [
    'COLUMNS',
    'MAGIC',
    'SnapshotFormatError',
    'read_diagnostics_csv',
    'read_snapshot',
    'to_gray_levels',
    'write_diagnostics_csv',
    'write_heatmap',
    'write_snapshot',
]

"""
Binary field snapshots.

Layout (little-endian, no padding):
  8 bytes   magic b"LOGCH1\\0\\0"
  u32       n
  f64       t
  n² f64    values, row-major (first index = x)
"""

from pathlib import Path
from typing import Tuple, Union

import numpy as np

from ..spectral.grid import GridSpec, RealField

MAGIC = b"LOGCH1\x00\x00"
HEADER_DTYPE = np.dtype([("magic", "S8"), ("n", "<u4"), ("t", "<f8")])
VALUE_DTYPE = np.dtype("<f8")


class SnapshotFormatError(ValueError):
    pass


def write_snapshot(f: RealField, t: float, path: Union[str, Path]) -> Path:
    path = Path(path)
    header = np.zeros((), dtype=HEADER_DTYPE)
    header["magic"] = MAGIC
    header["n"] = f.grid.n
    header["t"] = t
    with open(path, "wb") as fp:
        fp.write(header.tobytes())
        fp.write(np.ascontiguousarray(f.values, dtype=VALUE_DTYPE).tobytes())
    return path


def read_snapshot(path: Union[str, Path]) -> Tuple[RealField, float]:
    """
    Read a snapshot written by write_snapshot.

    Raises:
        SnapshotFormatError: wrong magic/version, or a payload whose length
            does not match the n in the header
    """
    data = Path(path).read_bytes()
    if len(data) < HEADER_DTYPE.itemsize:
        raise SnapshotFormatError(f"{path}: truncated header ({len(data)} bytes)")
    if data[:8] != MAGIC:
        raise SnapshotFormatError(f"{path}: unknown file format (magic {data[:8]!r})")

    header = np.frombuffer(data, dtype=HEADER_DTYPE, count=1)[0]
    n = int(header["n"])
    t = float(header["t"])
    payload = data[HEADER_DTYPE.itemsize:]
    expected = n * n * VALUE_DTYPE.itemsize
    if len(payload) != expected:
        raise SnapshotFormatError(
            f"{path}: header says n={n} ({expected} payload bytes) but found {len(payload)}"
        )
    try:
        grid = GridSpec(n=n)
    except ValueError as exc:
        raise SnapshotFormatError(f"{path}: invalid grid size in header: {exc}") from exc
    values = np.frombuffer(payload, dtype=VALUE_DTYPE).reshape(n, n).astype(np.float64)
    return RealField(grid, values), t

"""Portable graymap (P5) export of u for quick visual inspection."""

from pathlib import Path
from typing import Union

import numpy as np


def to_gray_levels(u: np.ndarray) -> np.ndarray:
    """Map u ∈ [−1, 1] linearly onto 0..255."""
    scaled = np.rint((np.clip(u, -1.0, 1.0) + 1.0) * 127.5)
    return scaled.astype(np.uint8)


def write_heatmap(u: np.ndarray, path: Union[str, Path]) -> Path:
    # rows of the image run along y so that x is horizontal
    pixels = to_gray_levels(np.asarray(u)).T
    height, width = pixels.shape
    path = Path(path)
    with open(path, "wb") as fp:
        fp.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fp.write(np.ascontiguousarray(pixels).tobytes())
    return path

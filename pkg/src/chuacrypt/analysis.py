"""Cipher-quality statistics: histogram, entropy, adjacent-pixel correlation."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .cipher import Image
from .errors import ZeroVariance

class Direction(enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    DIAGONAL = "diagonal"


def histogram(img: Image) -> np.ndarray:
    """Counts per intensity, shape (256,)."""
    return np.bincount(np.frombuffer(img.pixels, dtype=np.uint8), minlength=256).astype(np.int64)


def entropy_from_counts(counts) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    p = counts[counts > 0] / total
    # sum of p*log2(1/p); clipped for the single-symbol case where rounding gives -0.0
    return max(0.0, float(np.sum(p * np.log2(1.0 / p))))


def shannon_entropy(img: Image) -> float:
    return entropy_from_counts(histogram(img))


def adjacent_pairs(img: Image, direction: Direction) -> tuple[np.ndarray, np.ndarray]:
    a = img.to_array().astype(np.float64)
    direction = Direction(direction)
    if direction is Direction.HORIZONTAL:
        return a[:, :-1].ravel(), a[:, 1:].ravel()
    if direction is Direction.VERTICAL:
        return a[:-1, :].ravel(), a[1:, :].ravel()
    return a[:-1, :-1].ravel(), a[1:, 1:].ravel()


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Correlation with population moments."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = np.sqrt(np.mean(dx * dx))
    sy = np.sqrt(np.mean(dy * dy))
    if sx == 0 or sy == 0:
        raise ZeroVariance("correlation undefined for a constant series")
    rho = float(np.mean(dx * dy) / (sx * sy))
    return min(1.0, max(-1.0, rho))


def adjacent_correlation(img: Image, direction: Direction | str) -> float:
    """Pearson correlation over all adjacent pixel pairs in ``direction``."""
    x, y = adjacent_pairs(img, Direction(direction))
    if x.size == 0:
        raise ValueError(f"image too small for {Direction(direction).value} pairs")
    return pearson(x, y)


def chi_square_uniformity(counts) -> float:
    counts = np.asarray(counts, dtype=np.float64)
    if counts.shape != (256,):
        raise ValueError("expected 256 bins")
    e = counts.sum() / 256.0
    if e <= 0:
        raise ValueError("empty histogram")
    return float(np.sum((counts - e) ** 2) / e)


@dataclass(frozen=True)
class AnalysisReport:
    entropy_bits: float
    corr_horizontal: float
    corr_vertical: float
    corr_diagonal: float
    histogram: np.ndarray
    chi_square: float

    def to_csv(self) -> str:
        lines = ["metric,value"]
        lines.append(f"entropy_bits,{self.entropy_bits!r}")
        lines.append(f"corr_horizontal,{self.corr_horizontal!r}")
        lines.append(f"corr_vertical,{self.corr_vertical!r}")
        lines.append(f"corr_diagonal,{self.corr_diagonal!r}")
        lines.append(f"chi_square,{self.chi_square!r}")
        lines.extend(f"hist_{i},{int(c)}" for i, c in enumerate(self.histogram))
        return "\n".join(lines) + "\n"


def analyze(img: Image) -> AnalysisReport:
    """Entropy, three correlations, chi-square and histogram of ``img``.

    Correlations that are undefined (constant series) are reported as NaN.
    """
    counts = histogram(img)
    corr = {}
    for d in Direction:
        try:
            corr[d] = adjacent_correlation(img, d)
        except (ZeroVariance, ValueError):
            corr[d] = float("nan")
    return AnalysisReport(
        entropy_bits=entropy_from_counts(counts),
        corr_horizontal=corr[Direction.HORIZONTAL],
        corr_vertical=corr[Direction.VERTICAL],
        corr_diagonal=corr[Direction.DIAGONAL],
        histogram=counts,
        chi_square=chi_square_uniformity(counts),
    )

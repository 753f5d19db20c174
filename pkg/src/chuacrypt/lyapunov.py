"""Largest Lyapunov exponent from a scalar series (Kantz's method).

Delay vectors are scalar (embedding dimension 1). For every reference
index n, the neighborhood is every n' with |x[n'] - x[n]| <= epsilon and
|n' - n| > theiler_window. The stretching curve is

    S(dn) = mean_n  ln( mean_{n' in nbhd(n)} |x[n'+dn] - x[n+dn]| )

over reference points with a non-empty neighborhood, and the exponent is the
least-squares slope of S over the fit window.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LogOfZero, NoNeighbors

# Bounds the number of (reference, neighbor) pairs held in memory at once.
_PAIR_CHUNK = 2_000_000


@dataclass(frozen=True)
class KantzConfig:
    epsilon: float
    max_delta_n: int = 30
    fit_lo: int = 1
    fit_hi: int = 10
    theiler_window: int = 10

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.max_delta_n < 1:
            raise ValueError("max_delta_n must be positive")
        if not 1 <= self.fit_lo < self.fit_hi <= self.max_delta_n:
            raise ValueError("need 1 <= fit_lo < fit_hi <= max_delta_n")
        if self.theiler_window < 0:
            raise ValueError("theiler_window must be non-negative")

    @classmethod
    def for_series(cls, series, **overrides) -> "KantzConfig":
        """Defaults with epsilon = 0.2 * standard deviation of ``series``."""
        if "epsilon" not in overrides or overrides["epsilon"] is None:
            overrides["epsilon"] = 0.2 * float(np.std(np.asarray(series, dtype=np.float64)))
        return cls(**{k: v for k, v in overrides.items() if v is not None})


@dataclass(frozen=True)
class StretchingCurve:
    delta_n: np.ndarray
    s: np.ndarray
    n_references: int
    n_skipped: int

    def pairs(self):
        return list(zip(self.delta_n.tolist(), self.s.tolist()))


def _neighbor_pairs(x, refs, order, sorted_x, eps, theiler):
    """All (reference, neighbor) index pairs for the references in ``refs``."""
    lo = np.searchsorted(sorted_x, x[refs] - eps, side="left")
    hi = np.searchsorted(sorted_x, x[refs] + eps, side="right")
    counts = hi - lo
    total = int(counts.sum())
    ref_idx = np.repeat(refs, counts)
    starts = np.repeat(lo - np.cumsum(counts) + counts, counts)
    nb = order[starts + np.arange(total)]
    keep = np.abs(nb - ref_idx) > theiler
    return ref_idx[keep], nb[keep]


def kantz_stretching_curve(series, cfg: KantzConfig) -> StretchingCurve:
    x = np.asarray(series, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("series must be one-dimensional")
    if not np.all(np.isfinite(x)):
        raise ValueError("series must be finite")
    D = cfg.max_delta_n
    if len(x) <= D + 1:
        raise ValueError(f"series length must exceed max_delta_n + 1 = {D + 1}")

    n_valid = len(x) - D  # indices whose future up to +D exists
    order = np.argsort(x[:n_valid], kind="stable")
    sorted_x = x[:n_valid][order]

    sums = np.zeros((D, n_valid))
    nbr_count = np.zeros(n_valid, dtype=np.int64)
    dn = np.arange(1, D + 1)

    # Split references into chunks of roughly _PAIR_CHUNK candidate pairs.
    lo = np.searchsorted(sorted_x, x[:n_valid] - cfg.epsilon, side="left")
    hi = np.searchsorted(sorted_x, x[:n_valid] + cfg.epsilon, side="right")
    cum = np.cumsum(hi - lo)
    cuts = np.searchsorted(cum, np.arange(_PAIR_CHUNK, cum[-1], _PAIR_CHUNK), side="right")
    edges = np.unique(np.concatenate(([0], cuts, [n_valid])))

    for a, b in zip(edges[:-1], edges[1:]):
        refs = np.arange(a, b)
        ri, ni = _neighbor_pairs(x, refs, order, sorted_x, cfg.epsilon, cfg.theiler_window)
        if ri.size == 0:
            continue
        local = ri - a
        nbr_count[a:b] += np.bincount(local, minlength=b - a)
        for k, d in enumerate(dn):
            sep = np.abs(x[ni + d] - x[ri + d])
            sums[k, a:b] += np.bincount(local, weights=sep, minlength=b - a)

    has = nbr_count > 0
    if not has.any():
        raise NoNeighbors(f"no reference point has a neighbor within epsilon={cfg.epsilon}")
    mean_sep = sums[:, has] / nbr_count[has]
    # References whose neighbors never separate (ties in quantized data) have
    # no logarithm; they are skipped like empty neighborhoods.
    usable = np.all(mean_sep > 0, axis=0)
    n_refs = int(usable.sum())
    if n_refs == 0:
        raise LogOfZero("every mean neighbor separation hits exactly 0; series is degenerate")
    s = np.log(mean_sep[:, usable]).mean(axis=1)
    return StretchingCurve(dn, s, n_refs, n_valid - n_refs)


def fit_slope(curve: StretchingCurve, lo: int, hi: int) -> float:
    m = (curve.delta_n >= lo) & (curve.delta_n <= hi)
    slope, _ = np.polyfit(curve.delta_n[m].astype(np.float64), curve.s[m], 1)
    return float(slope)


def estimate_lyapunov(series, cfg: KantzConfig) -> float:
    """Slope of S(dn) over [fit_lo, fit_hi], in nats per sample."""
    curve = kantz_stretching_curve(series, cfg)
    return fit_slope(curve, cfg.fit_lo, cfg.fit_hi)

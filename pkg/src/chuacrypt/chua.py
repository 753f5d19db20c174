"""Chua's circuit: parameters, state, diode and the two right-hand sides.

The two right-hand sides compute the same real function. They differ only in
how the first equation is ordered, so in binary64 they round differently.
That rounding difference is the whole entropy source of the keystream, so
every expression below is written in the exact operation order required and
must not be simplified or re-associated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple


@dataclass(frozen=True)
class ChuaParams:
    """Circuit constants in SI units."""

    c1: float = 10e-9
    c2: float = 100e-9
    l: float = 19e-3
    r: float = 1800.0
    ga: float = -0.68e-3
    gb: float = -0.37e-3
    bp: float = 1.1

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, float):
                object.__setattr__(self, f.name, float(value))
                value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"{f.name} must be finite, got {value!r}")
        for name in ("c1", "c2", "l", "r", "bp"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class ChuaState(NamedTuple):
    v_c1: float
    v_c2: float
    i_l: float

    def is_finite(self) -> bool:
        return math.isfinite(self.v_c1) and math.isfinite(self.v_c2) and math.isfinite(self.i_l)


class StateDerivative(NamedTuple):
    dv_c1: float
    dv_c2: float
    di_l: float


PAPER_PARAMS = ChuaParams()
PAPER_INITIAL = ChuaState(-0.5, -0.2, 0.0)


def diode_current(v: float, p: ChuaParams) -> float:
    """Current through Chua's diode, three-segment piecewise linear.

    |v| == bp belongs to the middle segment.
    """
    if v < -p.bp:
        return p.gb * v + p.bp * (p.gb - p.ga)
    if v > p.bp:
        return p.gb * v + p.bp * (p.ga - p.gb)
    return p.ga * v


def rhs_extension_a(s: ChuaState, p: ChuaParams) -> StateDerivative:
    """dv_c1 = ((v_c2 - v_c1)/R - i_R) / C1."""
    v1, v2, il = s
    dv1 = ((v2 - v1) / p.r - diode_current(v1, p)) / p.c1
    dv2 = ((v1 - v2) / p.r + il) / p.c2
    dil = -v2 / p.l
    return StateDerivative(dv1, dv2, dil)


def rhs_extension_b(s: ChuaState, p: ChuaParams) -> StateDerivative:
    """dv_c1 = (v_c2/R - v_c1/R - i_R) / C1."""
    v1, v2, il = s
    dv1 = (v2 / p.r - v1 / p.r - diode_current(v1, p)) / p.c1
    dv2 = ((v1 - v2) / p.r + il) / p.c2
    dil = -v2 / p.l
    return StateDerivative(dv1, dv2, dil)

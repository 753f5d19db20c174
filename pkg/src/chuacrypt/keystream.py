"""Secret key to keystream: two pseudo-orbits, lower bound error, bytes."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import gmpy2

from .chua import PAPER_INITIAL, PAPER_PARAMS, ChuaParams, ChuaState
from .errors import DegenerateKey, NonFiniteState
from .integrator import Extension, SimulationPlan, iter_states

DEFAULT_STEP = 1e-6
DEFAULT_TRANSIENT = 2000

# MPFR emulation of binary64: log10 is correctly rounded, so the keystream
# does not depend on the platform libm.
_BINARY64 = gmpy2.ieee(64)
_SCALE = 10**15


@dataclass(frozen=True)
class KeyConfig:
    params: ChuaParams = field(default_factory=lambda: PAPER_PARAMS)
    initial: ChuaState = PAPER_INITIAL
    h: float = DEFAULT_STEP
    transient: int = DEFAULT_TRANSIENT

    def __post_init__(self):
        object.__setattr__(self, "initial", ChuaState(*(float(v) for v in self.initial)))
        object.__setattr__(self, "h", float(self.h))
        if not self.initial.is_finite():
            raise ValueError("initial state must be finite")
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError("h must be positive and finite")
        if int(self.transient) != self.transient or self.transient < 0:
            raise ValueError("transient must be a non-negative integer")


def dual_pseudo_orbits(
    key: KeyConfig,
    n: int,
    extensions: tuple[Extension, Extension] = (Extension.A, Extension.B),
) -> tuple[list[float], list[float]]:
    """v_c1 of both pseudo-orbits at samples transient+1 .. transient+n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = key.transient + n
    out = []
    for ext in extensions:
        plan = SimulationPlan(key.h, total, ext)
        try:
            states = iter_states(plan, key.initial, key.params)
            seq = [s.v_c1 for s in states]
        except NonFiniteState as exc:
            raise NonFiniteState(exc.step, f"extension {ext.value}") from exc
        out.append(seq[key.transient + 1:])
    return out[0], out[1]


def lower_bound_error(a: float, b: float) -> float:
    return abs(a - b) / 2.0


def log_error_sequence(s1: Sequence[float], s2: Sequence[float]) -> list[float]:
    """log10 of the lower bound error, elementwise.

    The pseudo-orbits must already be separated at the first sample, otherwise
    the key is degenerate. Later exact coincidences are zero crossings of an
    oscillating error and map to ``-inf``.
    """
    if len(s1) != len(s2):
        raise ValueError("sequences must have equal length")
    if not s1:
        raise ValueError("sequences must be non-empty")
    out = []
    with gmpy2.context(_BINARY64):
        for i, (a, b) in enumerate(zip(s1, s2)):
            delta = lower_bound_error(a, b)
            if delta == 0.0:
                if i == 0:
                    raise DegenerateKey(
                        "pseudo-orbits coincide at the first sample (lower bound error is 0)"
                    )
                out.append(-math.inf)
            else:
                out.append(float(gmpy2.log10(delta)))
    return out


def normalize(s: Iterable[float]) -> bytes:
    """floor(mod(s * 1e15, 256)) per element, with the product taken exactly.

    ``-inf`` (a zero crossing) maps to byte 0.
    """
    out = bytearray()
    for v in s:
        if v == -math.inf:
            out.append(0)
            continue
        if not math.isfinite(v):
            raise ValueError(f"cannot normalize {v!r}")
        num, den = float(v).as_integer_ratio()
        # floor division floors toward -inf, so the residue is in [0, 256)
        out.append((num * _SCALE // den) % 256)
    return bytes(out)


def log_error_for_key(key: KeyConfig, length: int) -> list[float]:
    s1, s2 = dual_pseudo_orbits(key, length)
    return log_error_sequence(s1, s2)


def generate_keystream(key: KeyConfig, length: int) -> bytes:
    """``length`` keystream bytes for ``key``; deterministic."""
    return normalize(log_error_for_key(key, length))

"""Fixed-step classical RK4 with a fixed evaluation order.

Both pseudo-orbits go through exactly this code; only the right-hand side
differs. Stage updates are ``s + (h/2)*k`` and the final combination is
``s + (h/6)*(((k1 + 2*k2) + 2*k3) + k4)``, per component, left to right.
Python floats are binary64 with round-to-nearest-even and no FMA
contraction, which is what the keystream relies on.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .chua import ChuaParams, ChuaState, StateDerivative, rhs_extension_a, rhs_extension_b
from .errors import NonFiniteState

Rhs = Callable[[ChuaState, ChuaParams], StateDerivative]


class Extension(enum.Enum):
    A = "A"
    B = "B"

    @property
    def rhs(self) -> Rhs:
        return rhs_extension_a if self is Extension.A else rhs_extension_b


@dataclass(frozen=True)
class SimulationPlan:
    h: float
    n_steps: int
    rhs_choice: Extension = Extension.A

    def __post_init__(self):
        if not (math.isfinite(self.h) and self.h > 0):
            raise ValueError(f"step size must be positive and finite, got {self.h!r}")
        if self.n_steps < 0:
            raise ValueError("n_steps must be non-negative")


@dataclass(frozen=True)
class Trajectory:
    states: Sequence[ChuaState]

    def __len__(self):
        return len(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def v_c1(self) -> list[float]:
        return [s.v_c1 for s in self.states]


def _step(rhs: Rhs, s: ChuaState, p: ChuaParams, h: float, half: float, sixth: float) -> ChuaState:
    x, y, z = s
    a1, b1, c1 = rhs(s, p)
    a2, b2, c2 = rhs(ChuaState(x + half * a1, y + half * b1, z + half * c1), p)
    a3, b3, c3 = rhs(ChuaState(x + half * a2, y + half * b2, z + half * c2), p)
    a4, b4, c4 = rhs(ChuaState(x + h * a3, y + h * b3, z + h * c3), p)
    return ChuaState(
        x + sixth * (((a1 + 2.0 * a2) + 2.0 * a3) + a4),
        y + sixth * (((b1 + 2.0 * b2) + 2.0 * b3) + b4),
        z + sixth * (((c1 + 2.0 * c2) + 2.0 * c3) + c4),
    )


def rk4_step(rhs: Rhs, s: ChuaState, p: ChuaParams, h: float) -> ChuaState:
    """Advance ``s`` by one classical Runge-Kutta step of size ``h``.

    Raises NonFiniteState (step 0) when the result is not finite.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    out = _step(rhs, ChuaState(*s), p, h, h / 2.0, h / 6.0)
    # Any non-finite stage value propagates into the result, so checking
    # the result alone is sufficient.
    if not out.is_finite():
        raise NonFiniteState(0)
    return out


def iter_states(plan: SimulationPlan, s0: ChuaState, p: ChuaParams) -> Iterator[ChuaState]:
    """Yield s0 followed by the n_steps integrated states, lazily."""
    s0 = ChuaState(*s0)
    if not s0.is_finite():
        raise NonFiniteState(0, "initial state")
    rhs = plan.rhs_choice.rhs
    h = plan.h
    half, sixth = h / 2.0, h / 6.0
    s = s0
    yield s
    for i in range(1, plan.n_steps + 1):
        s = _step(rhs, s, p, h, half, sixth)
        if not s.is_finite():
            raise NonFiniteState(i, f"extension {plan.rhs_choice.value}")
        yield s


def simulate(plan: SimulationPlan, s0: ChuaState, p: ChuaParams) -> Trajectory:
    """Integrate ``plan.n_steps`` steps; index 0 of the result is ``s0``."""
    return Trajectory(tuple(iter_states(plan, s0, p)))

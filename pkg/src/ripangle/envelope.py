"""RIP scenario, squared-distance envelope and the feasible magnitude region.

All quantities are squared norms of compressed unit vectors.  For unit ``u``
and ``v`` at angle ``theta`` and a sensing matrix with restricted isometry
constant ``delta``, the compressed triple ``(a, b, d_sq)`` =
``(|Phi u|^2, |Phi v|^2, |Phi(u - v)|^2)`` is constrained to a box-like
region; the parallelogram law fixes ``|Phi(u + v)|^2 = 2(a + b) - d_sq``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError

#: Absolute slack on squared quantities, so boundary points count as feasible.
FEAS_TOL = 1e-12


@dataclass(frozen=True)
class RipScenario:
    delta: float
    theta_input: float
    theta: float
    flipped: bool


@dataclass(frozen=True)
class DistanceEnvelope:
    d_min_sq: float
    d_max_sq: float
    dt_min_sq: float
    dt_max_sq: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.d_min_sq, self.d_max_sq, self.dt_min_sq, self.dt_max_sq)


@dataclass(frozen=True)
class FeasibleTriple:
    a: float
    b: float
    d_sq: float

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.d_sq >= 0):
            raise DomainError(f"invalid magnitude triple {self!r}")

    @property
    def s_sq(self) -> float:
        """Squared compressed distance ``|Phi(u + v)|^2`` via the parallelogram law."""
        return 2.0 * (self.a + self.b) - self.d_sq

    @property
    def cos_alpha(self) -> float:
        return (self.a + self.b - self.d_sq) / (2.0 * math.sqrt(self.a * self.b))

    @property
    def alpha(self) -> float:
        return math.acos(min(1.0, max(-1.0, self.cos_alpha)))


def check_delta(delta: float) -> float:
    delta = float(delta)
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must be in (0,1), got {delta!r}")
    return delta


def normalize_scenario(delta: float, theta_input: float) -> RipScenario:
    """Validate ``(delta, theta)`` and fold obtuse angles onto ``(0, pi/2]``.

    Angles above ``pi/2`` are replaced by their supplement; the flag tells
    callers to map bounds back with ``alpha -> pi - alpha`` (swapping min
    and max).  ``theta = pi/2`` is left un-flipped.
    """
    delta = check_delta(delta)
    theta_input = float(theta_input)
    if not (0.0 < theta_input < math.pi):
        raise DomainError(f"theta must be in (0,pi) radians, got {theta_input!r}")
    if theta_input > math.pi / 2:
        return RipScenario(delta, theta_input, math.pi - theta_input, True)
    return RipScenario(delta, theta_input, theta_input, False)


def envelope_values(delta: float, theta: float) -> tuple[float, float, float, float]:
    """Raw envelope ``(d_min_sq, d_max_sq, dt_min_sq, dt_max_sq)`` for any theta.

    No domain checks; ``compute_envelope`` is the validated entry point.
    """
    c = math.cos(theta)
    return (
        2.0 * (1.0 - delta) * (1.0 - c),
        2.0 * (1.0 + delta) * (1.0 - c),
        2.0 * (1.0 - delta) * (1.0 + c),
        2.0 * (1.0 + delta) * (1.0 + c),
    )


def compute_envelope(scenario: RipScenario) -> DistanceEnvelope:
    return DistanceEnvelope(*envelope_values(scenario.delta, scenario.theta))


def triangle_valid(a: float, b: float, d_sq: float, tol: float = FEAS_TOL) -> bool:
    sa, sb = math.sqrt(a), math.sqrt(b)
    return (sa - sb) ** 2 - tol <= d_sq <= (sa + sb) ** 2 + tol


def is_feasible(triple: FeasibleTriple, env: DistanceEnvelope, delta: float,
                tol: float = FEAS_TOL) -> bool:
    """True when the triple satisfies every RIP norm/distance constraint."""
    lo, hi = 1.0 - delta, 1.0 + delta
    s_sq = triple.s_sq
    return (
        lo - tol <= triple.a <= hi + tol
        and lo - tol <= triple.b <= hi + tol
        and env.d_min_sq - tol <= triple.d_sq <= env.d_max_sq + tol
        and env.dt_min_sq - tol <= s_sq <= env.dt_max_sq + tol
        and triangle_valid(triple.a, triple.b, triple.d_sq, tol)
    )

"""Closed-form extreme angles between two RIP-compressed vectors.

Given ``delta`` and the ambient angle ``theta``, every feasible compressed
pair ``(Phi u, Phi v)`` has ``alpha = angle(Phi u, Phi v)`` inside
``[alpha_min, alpha_max]``, and both endpoints are attained.

Branch identifiers (``"T3.2"``, ``"T3.4(1)"``, ``"T4.4(2)(b)"``, ...) name the
case of the piecewise formula that produced a value.  They are part of the
CLI output schema.  For theta in (0, pi/2] only ``T3.2``/``T3.4(1)`` (max) and
``T4.4(2)(a)``/``T4.4(2)(b)`` (min) can fire; the remaining cases are kept
verbatim and are reachable through :func:`extreme_cosines` with un-normalized
angles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .envelope import RipScenario, check_delta, envelope_values, normalize_scenario

#: Width of the band around branch boundaries; ties go to the branch whose
#: formula is continuous across the boundary.
BRANCH_TOL = 1e-12

MAX_BRANCHES = ("T3.2", "T3.4(1)", "T3.4(2)")
MIN_BRANCHES = ("T4.2", "T4.4(1)", "T4.4(2)(a)", "T4.4(2)(b)")


@dataclass(frozen=True)
class AngleInterval:
    alpha_min: float
    alpha_max: float

    def contains(self, alpha: float, tol: float = 0.0) -> bool:
        return self.alpha_min - tol <= alpha <= self.alpha_max + tol


@dataclass(frozen=True)
class CosRange:
    lo: float
    hi: float


@dataclass(frozen=True)
class BoundReport:
    """Everything the ``bounds`` command prints for one ``(delta, theta)``."""

    delta: float
    theta_input: float
    flipped: bool
    alpha_min: float
    alpha_max: float
    branch_min: str
    branch_max: str
    pol_bound: float
    cos_lo: float
    cos_hi: float

    @property
    def branch(self) -> str:
        return f"{self.branch_min}/{self.branch_max}"


def _acos(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


def _min_cos(delta: float, d_max_sq: float, dt_min_sq: float) -> tuple[float, str]:
    # smallest achievable cos(alpha), i.e. alpha_max
    gap = dt_min_sq - d_max_sq
    total = dt_min_sq + d_max_sq
    if gap >= -BRANCH_TOL:
        return gap / total, "T3.2"
    if total <= 4.0 + BRANCH_TOL:
        c = gap / (4.0 * math.sqrt(1.0 - delta) * math.sqrt(total / 2.0 - (1.0 - delta)))
        return max(-1.0, c), "T3.4(1)"
    c = gap / (4.0 * math.sqrt(total / 2.0 - (1.0 + delta)) * math.sqrt(1.0 + delta))
    return max(-1.0, c), "T3.4(2)"


def _upper_corner_cos(delta: float, dt_sq: float, d_min_sq: float) -> float:
    return (dt_sq - d_min_sq) / (
        4.0 * math.sqrt(1.0 + delta) * math.sqrt((dt_sq + d_min_sq) / 2.0 - (1.0 + delta))
    )


def _max_cos(delta: float, d_min_sq: float, dt_min_sq: float, dt_max_sq: float) -> tuple[float, str]:
    # largest achievable cos(alpha), i.e. alpha_min
    gap = dt_max_sq - d_min_sq
    total = dt_max_sq + d_min_sq
    if gap < -BRANCH_TOL:
        return gap / total, "T4.2"
    if total < 4.0 - BRANCH_TOL:
        c = gap / (4.0 * math.sqrt(1.0 - delta) * math.sqrt(total / 2.0 - (1.0 - delta)))
        return min(1.0, c), "T4.4(1)"
    if (1.0 + delta) - d_min_sq >= -BRANCH_TOL:
        c1 = _upper_corner_cos(delta, dt_max_sq, d_min_sq)
        if dt_min_sq + d_min_sq > 4.0 + BRANCH_TOL:
            c2 = _upper_corner_cos(delta, dt_min_sq, d_min_sq)
        else:
            c2 = (2.0 - d_min_sq) / (2.0 * math.sqrt(1.0 + delta) * math.sqrt(1.0 - delta))
        return min(1.0, max(c1, c2)), "T4.4(2)(a)"
    return min(1.0, _upper_corner_cos(delta, dt_max_sq, d_min_sq)), "T4.4(2)(b)"


def extreme_cosines(delta: float, theta: float) -> tuple[float, str, float, str]:
    """``(cos_min, branch_max, cos_max, branch_min)`` straight from the envelope.

    ``theta`` is used as given (no supplement folding), so callers may probe
    the formulas outside (0, pi/2].
    """
    d_min_sq, d_max_sq, dt_min_sq, dt_max_sq = envelope_values(delta, theta)
    c_lo, b_max = _min_cos(delta, d_max_sq, dt_min_sq)
    c_hi, b_min = _max_cos(delta, d_min_sq, dt_min_sq, dt_max_sq)
    return c_lo, b_max, c_hi, b_min


def alpha_max_branch(scenario: RipScenario) -> tuple[float, str]:
    d_min_sq, d_max_sq, dt_min_sq, dt_max_sq = envelope_values(scenario.delta, scenario.theta)
    c, branch = _min_cos(scenario.delta, d_max_sq, dt_min_sq)
    return _acos(c), branch


def alpha_min_branch(scenario: RipScenario) -> tuple[float, str]:
    d_min_sq, d_max_sq, dt_min_sq, dt_max_sq = envelope_values(scenario.delta, scenario.theta)
    c, branch = _max_cos(scenario.delta, d_min_sq, dt_min_sq, dt_max_sq)
    return _acos(c), branch


def alpha_max(scenario: RipScenario) -> float:
    """Largest achievable compressed angle for a normalized scenario."""
    return alpha_max_branch(scenario)[0]


def alpha_min(scenario: RipScenario) -> float:
    """Smallest achievable compressed angle for a normalized scenario."""
    return alpha_min_branch(scenario)[0]


def _interval_and_branches(delta: float, theta_input: float):
    sc = normalize_scenario(delta, theta_input)
    lo, b_min = alpha_min_branch(sc)
    hi, b_max = alpha_max_branch(sc)
    if sc.flipped:
        lo, hi = math.pi - hi, math.pi - lo
        b_min, b_max = b_max, b_min
    return sc, AngleInterval(lo, hi), b_min, b_max


def angle_interval(delta: float, theta_input: float) -> AngleInterval:
    """``[alpha_min, alpha_max]`` for any ``theta_input`` in (0, pi)."""
    return _interval_and_branches(delta, theta_input)[1]


def orthogonal_interval(delta: float) -> AngleInterval:
    """Interval for orthogonal ``u``, ``v``; equal to ``angle_interval(delta, pi/2)``."""
    delta = check_delta(delta)
    r = delta / math.sqrt(1.0 - delta * delta)
    return AngleInterval(_acos(min(1.0, r)), _acos(max(-1.0, -r)))


def polarization_cos_bound(scenario: RipScenario) -> float:
    """The looser ``|cos alpha|`` bound obtained from the polarization identity."""
    d = scenario.delta
    return min((d + abs(math.cos(scenario.theta))) / (1.0 - d), 1.0)


def cos_range_of(interval: AngleInterval) -> CosRange:
    c_lo = abs(math.cos(interval.alpha_min))
    c_hi = abs(math.cos(interval.alpha_max))
    half = math.pi / 2
    if interval.alpha_max <= half:
        return CosRange(c_hi, c_lo)
    if interval.alpha_min > half:
        return CosRange(c_lo, c_hi)
    return CosRange(0.0, max(c_lo, c_hi))


def achievable_cos_range(delta: float, theta_input: float) -> CosRange:
    """Achievable ``|cos alpha|`` range implied by the angle interval."""
    return cos_range_of(angle_interval(delta, theta_input))


def describe_bounds(delta: float, theta_input: float) -> BoundReport:
    sc, iv, b_min, b_max = _interval_and_branches(delta, theta_input)
    cr = cos_range_of(iv)
    return BoundReport(
        delta=sc.delta,
        theta_input=sc.theta_input,
        flipped=sc.flipped,
        alpha_min=iv.alpha_min,
        alpha_max=iv.alpha_max,
        branch_min=b_min,
        branch_max=b_max,
        pol_bound=polarization_cos_bound(sc),
        cos_lo=cr.lo,
        cos_hi=cr.hi,
    )

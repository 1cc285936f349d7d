"""Restricted isometry constant calculus built on the orthogonal angle bounds.

``projected_ric`` is the RIC of ``P @ Phi`` when ``P`` projects out the span
of a few known columns; ``algebraic_projected_ric`` is the older estimate
obtained through the polarization identity.  Both are clamped to 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .envelope import check_delta
from .exceptions import DomainError, StabilityError

#: Stable l1 recovery needs the effective RIC below this value.
STABLE_RIC_LIMIT = math.sqrt(2.0) - 1.0


def projected_ric(delta: float) -> float:
    delta = check_delta(delta)
    return min(1.0, delta + delta * delta / (1.0 + delta))


def projected_ric_from_angles(delta: float) -> float:
    """Same quantity, assembled from the worst squared cosine between
    compressed orthogonal vectors: ``1 - (1 - max cos^2)(1 - delta)``."""
    delta = check_delta(delta)
    max_cos_sq = min(1.0, delta * delta / (1.0 - delta * delta))
    return 1.0 - (1.0 - max_cos_sq) * (1.0 - delta)


def algebraic_projected_ric(delta: float) -> float:
    delta = check_delta(delta)
    return min(1.0, delta / (1.0 - delta))


@dataclass(frozen=True)
class RicComparison:
    delta: float
    delta_bar: float
    delta_bar_a: float


def compare_ric(delta: float) -> RicComparison:
    return RicComparison(delta, projected_ric(delta), algebraic_projected_ric(delta))


def democracy_ric(delta: float) -> float:
    """RIC of a row-deleted Gaussian sensing matrix, given the full matrix RIC.

    The tightened value coincides with :func:`projected_ric`.
    """
    return projected_ric(delta)


def reconstruction_error_bound(ric: float, eps: float) -> float:
    """l2 error bound ``4(1+ric) eps / (1 - (sqrt2 - 1) ric)`` for l1 recovery."""
    if eps < 0:
        raise DomainError(f"eps must be >= 0, got {eps}")
    if ric < 0:
        raise DomainError(f"ric must be >= 0, got {ric}")
    if ric >= STABLE_RIC_LIMIT:
        raise StabilityError(
            f"ric={ric} violates the stability condition ric < sqrt(2)-1 = {STABLE_RIC_LIMIT:.9f}")
    return 4.0 * (1.0 + ric) * eps / (1.0 - STABLE_RIC_LIMIT * ric)


def _check_tau(tau: float, upper_inclusive: bool = False) -> float:
    tau = float(tau)
    ok = 0.0 < tau <= 1.0 if upper_inclusive else 0.0 < tau < 1.0
    if not ok:
        raise DomainError(f"tau must be in (0,1{']' if upper_inclusive else ')'}, got {tau!r}")
    return tau


def invert_projected_ric(tau: float) -> float:
    """Largest ``delta`` with ``projected_ric(delta) <= tau``."""
    tau = _check_tau(tau)
    return (tau - 1.0 + math.sqrt(tau * tau + 6.0 * tau + 1.0)) / 4.0


def invert_algebraic_ric(tau: float) -> float:
    tau = _check_tau(tau, upper_inclusive=True)
    return tau / (tau + 1.0)


def measurement_reduction(tau: float) -> float:
    """Fractional saving in measurements (m ~ 1/delta^2) from the tighter RIC."""
    return 1.0 - (invert_algebraic_ric(tau) / invert_projected_ric(tau)) ** 2


def _check_k(K) -> float:
    if int(K) != K or K < 1:
        raise DomainError(f"sparsity K must be a positive integer, got {K!r}")
    return math.sqrt(K)


def omp_ric_threshold(K: int) -> float:
    """OMP exact-recovery RIC threshold from ``2 * projected_ric(delta) < 1/sqrt(K)``.

    Positive root of ``4 sqrt(K) d^2 + (2 sqrt(K) - 1) d - 1``.
    """
    s = _check_k(K)
    return (1.0 - 2.0 * s + math.sqrt(4.0 * K + 12.0 * s + 1.0)) / (8.0 * s)


def omp_ric_threshold_prior(K: int) -> float:
    """The ``1/(1 + sqrt(2K))`` OMP threshold."""
    s = _check_k(K)
    return 1.0 / (1.0 + math.sqrt(2.0) * s)


def omp_quadratic(K: int, delta: float) -> float:
    """``4 sqrt(K) d^2 + (2 sqrt(K) - 1) d - 1``; negative iff the OMP condition holds."""
    s = _check_k(K)
    return 4.0 * s * delta * delta + (2.0 * s - 1.0) * delta - 1.0

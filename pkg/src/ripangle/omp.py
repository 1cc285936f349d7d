"""Orthogonal matching pursuit."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError

RESIDUAL_STOP = 1e-12
COEF_TOL = 1e-8


@dataclass
class OmpReport:
    recovered_support: tuple
    iterations: int
    exact: bool
    residual_norms: list = field(default_factory=list)
    coefficients: np.ndarray | None = None
    aborted: bool = False


def omp(matrix: np.ndarray, y: np.ndarray, K: int, x_true: np.ndarray | None = None) -> OmpReport:
    """Greedy K-step recovery of a sparse ``x`` from ``y = matrix @ x``.

    Each step adds the column with the largest absolute correlation with the
    residual (lowest index on ties) and re-fits by least squares.  Nothing is
    selected once the residual norm drops below ``RESIDUAL_STOP``.  ``exact``
    needs ``x_true``: the supports must match and the coefficients agree to
    ``COEF_TOL``.
    """
    m, p = matrix.shape
    if not (0 <= K <= m):
        raise DomainError(f"need 0 <= K <= m={m}, got K={K}")
    y = np.asarray(y, dtype=float)
    resid = y.copy()
    norms = [float(np.linalg.norm(resid))]
    chosen: list[int] = []
    coef = np.zeros(0)
    aborted = False
    while len(chosen) < K and norms[-1] >= RESIDUAL_STOP:
        corr = np.abs(matrix.T @ resid)
        corr[chosen] = -1.0
        j = int(np.argmax(corr))  # first maximal index
        sub = matrix[:, chosen + [j]]
        sol, _, rank, _ = np.linalg.lstsq(sub, y, rcond=None)
        if rank < len(chosen) + 1:
            aborted = True
            break
        chosen.append(j)
        coef = sol
        resid = y - sub @ sol
        norms.append(float(np.linalg.norm(resid)))

    x_hat = np.zeros(p)
    x_hat[chosen] = coef
    exact = False
    if x_true is not None and not aborted and chosen:
        truth = set(np.flatnonzero(x_true).tolist())
        exact = truth == set(chosen) and bool(np.max(np.abs(x_hat - x_true)) < COEF_TOL)
    return OmpReport(
        recovered_support=tuple(sorted(chosen)),
        iterations=len(chosen),
        exact=exact,
        residual_norms=norms,
        coefficients=x_hat,
        aborted=aborted,
    )

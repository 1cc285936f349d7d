"""Sensing ensembles, sparse test pairs and per-support RIC computation."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, EnumerationCapError

#: Default refusal threshold for exhaustive support enumeration.
ENUMERATION_CAP = 2_000_000
PAIR_REDRAWS = 16
_ENUM_CHUNK = 4096


@dataclass(frozen=True)
class SensingConfig:
    p: int
    m: int
    K: int
    seed: int = 0
    trials: int = 1

    def __post_init__(self):
        if not (1 <= self.K <= self.m < self.p):
            raise DomainError(f"need 1 <= K <= m < p, got K={self.K}, m={self.m}, p={self.p}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise DomainError(f"seed must be non-negative, got {self.seed}")


@dataclass(frozen=True)
class SparsePairSample:
    u: np.ndarray
    v: np.ndarray
    support_u: tuple
    support_v: tuple
    theta: float
    measured_alpha: float = float("nan")
    support_ric: float = float("nan")

    @property
    def union_support(self) -> tuple:
        return tuple(sorted(set(self.support_u) | set(self.support_v)))


def trial_rng(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one trial, fixed by ``(seed, stream, trial)``."""
    return np.random.default_rng(np.random.SeedSequence([seed, stream, trial]))


def gaussian_sensing_matrix(m: int, p: int, rng: np.random.Generator) -> np.ndarray:
    """``m x p`` matrix with i.i.d. N(0, 1/m) entries."""
    return rng.standard_normal((m, p)) / math.sqrt(m)


def sparse_pair(p: int, K: int, theta: float, rng: np.random.Generator) -> SparsePairSample:
    """Unit vectors ``u``, ``v`` sharing a random size-``K`` support, at angle ``theta``."""
    if not (2 <= K <= p):
        raise DomainError(f"need 2 <= K <= p, got K={K}, p={p}")
    if not (0.0 < theta < math.pi):
        raise DomainError(f"theta must be in (0, pi), got {theta}")
    support = np.sort(rng.choice(p, size=K, replace=False))
    vs = rng.standard_normal(K)
    vs /= np.linalg.norm(vs)
    for _ in range(PAIR_REDRAWS):
        w = rng.standard_normal(K)
        w -= (w @ vs) * vs
        nw = np.linalg.norm(w)
        if nw > 1e-8:
            w /= nw
            # one more sweep keeps <w, v> at rounding level
            w -= (w @ vs) * vs
            w /= np.linalg.norm(w)
            break
    else:
        raise DomainError(f"could not draw a direction orthogonal to v in {PAIR_REDRAWS} attempts")
    us = math.cos(theta) * vs + math.sin(theta) * w
    us /= np.linalg.norm(us)
    u = np.zeros(p)
    v = np.zeros(p)
    u[support] = us
    v[support] = vs
    sup = tuple(int(i) for i in support)
    return SparsePairSample(u=u, v=v, support_u=sup, support_v=sup, theta=float(theta))


def angle_between(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx, ny = np.linalg.norm(x), np.linalg.norm(y)
    if nx == 0.0 or ny == 0.0:
        raise DomainError("angle_between needs two nonzero vectors")
    c = float(x @ y) / (nx * ny)
    return math.acos(min(1.0, max(-1.0, c)))


def support_ric(matrix: np.ndarray, support) -> float:
    """Smallest delta for which RIP holds on the columns in ``support``."""
    idx = np.asarray(list(support), dtype=np.intp)
    m = matrix.shape[0]
    if idx.size > m:
        raise DomainError(f"support size {idx.size} exceeds row count {m}")
    if idx.size == 0:
        return 0.0
    sv = np.linalg.svd(matrix[:, idx], compute_uv=False)
    return float(max(sv[0] ** 2 - 1.0, 1.0 - sv[-1] ** 2))


def gram_ric(matrix: np.ndarray, support) -> float:
    """``support_ric`` through the eigenvalues of ``Gram - I``."""
    idx = np.asarray(list(support), dtype=np.intp)
    sub = matrix[:, idx]
    ev = np.linalg.eigvalsh(sub.T @ sub - np.eye(idx.size))
    return float(np.max(np.abs(ev)))


def exhaustive_ric(matrix: np.ndarray, order: int, cap: int = ENUMERATION_CAP,
                   reverse: bool = False) -> float:
    """RIC of the given order: worst ``support_ric`` over every support of that size."""
    m, p = matrix.shape
    if not (1 <= order <= min(m, p)):
        raise DomainError(f"order must be in [1, {min(m, p)}], got {order}")
    n_sub = math.comb(p, order)
    if n_sub > cap:
        raise EnumerationCapError(
            f"C({p},{order}) = {n_sub} supports exceeds the enumeration cap {cap}")
    gram = matrix.T @ matrix
    eye = np.eye(order)
    combos = itertools.combinations(range(p - 1, -1, -1) if reverse else range(p), order)
    worst = 0.0
    while True:
        chunk = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, _ENUM_CHUNK)),
                            dtype=np.intp)
        if chunk.size == 0:
            break
        idx = chunk.reshape(-1, order)
        subs = gram[idx[:, :, None], idx[:, None, :]] - eye
        ev = np.linalg.eigvalsh(subs)
        worst = max(worst, float(np.max(np.abs(ev))))
    return worst


def projection_complement(matrix: np.ndarray, support) -> np.ndarray:
    """Orthogonal projector onto the complement of ``range(matrix[:, support])``."""
    m = matrix.shape[0]
    idx = np.asarray(list(support), dtype=np.intp)
    if idx.size == 0:
        return np.eye(m)
    sub = matrix[:, idx]
    q, r = np.linalg.qr(sub)
    diag = np.abs(np.diag(r))
    if diag.min() <= 1e-12 * max(1.0, diag.max()):
        raise DomainError(f"columns {idx.tolist()} are rank deficient")
    proj = np.eye(m) - q @ q.T
    return 0.5 * (proj + proj.T)


def sylvester_hadamard(n: int) -> np.ndarray:
    if n < 1 or n & (n - 1):
        raise DomainError(f"Hadamard order must be a power of two, got {n}")
    h = np.ones((1, 1))
    while h.shape[0] < n:
        h = np.block([[h, h], [h, -h]])
    return h


def near_orthogonal_design(m: int, p: int, rng: np.random.Generator,
                           perturbation: float = 1e-3) -> np.ndarray:
    """Low-coherence ``m x p`` matrix with unit-norm columns.

    ``m`` identity columns plus ``p - m`` mutually orthogonal, flat +-1 columns
    (Hadamard rows repeated blockwise), then a random rotation, a column
    shuffle and a small Gaussian perturbation.  Its RIC of order ``k`` is
    about ``sqrt((k-1)/m)``, far below what a Gaussian matrix of the same
    shape achieves.
    """
    extra = p - m
    if not (0 <= extra <= m):
        raise DomainError(f"need m <= p <= 2m, got m={m}, p={p}")
    base = np.eye(m)
    if extra:
        n_h = 1 << max(0, (extra - 1).bit_length())
        if m % n_h:
            raise DomainError(f"m={m} must be divisible by {n_h} to place {extra} flat columns")
        flat = np.kron(sylvester_hadamard(n_h)[:extra], np.ones(m // n_h)).T / math.sqrt(m)
        base = np.hstack([base, flat])
    rot, r = np.linalg.qr(rng.standard_normal((m, m)))
    rot *= np.sign(np.diag(r))
    mat = rot @ base[:, rng.permutation(p)]
    mat += perturbation * rng.standard_normal((m, p)) / math.sqrt(m)
    return mat / np.linalg.norm(mat, axis=0)

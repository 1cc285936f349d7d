"""Monte Carlo experiments.

Every trial draws from its own generator seeded by ``(seed, 0, trial)``, so
results do not depend on evaluation order.  A shared matrix, when requested,
comes from the ``(seed, 1, 0)`` stream.  Reports hold plain rows (ordered
dicts) and a summary; nothing here touches the filesystem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import angle_interval
from .exceptions import DomainError
from .omp import omp
from .ric import omp_ric_threshold, omp_ric_threshold_prior, projected_ric
from .sensing import (
    SensingConfig,
    angle_between,
    exhaustive_ric,
    gaussian_sensing_matrix,
    near_orthogonal_design,
    projection_complement,
    sparse_pair,
    support_ric,
    trial_rng,
)

CONTAINMENT_TOL = 1e-8
BOUND_TOL = 1e-8
DEFAULT_SIZING = 0.5


@dataclass
class ExperimentReport:
    name: str
    rows: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return int(self.summary.get("violations", 0))


def design_delta(K: int, p: int, m: int, c: float = DEFAULT_SIZING) -> float:
    """delta implied by the sizing rule ``m = c K log(p/K) / delta^2``."""
    return math.sqrt(c * K * math.log(p / K) / m)


def sized_measurements(K: int, p: int, delta: float, c: float = DEFAULT_SIZING) -> int:
    return int(math.ceil(c * K * math.log(p / K) / (delta * delta)))


def _shared_matrix(cfg: SensingConfig):
    return gaussian_sensing_matrix(cfg.m, cfg.p, trial_rng(cfg.seed, 0, stream=1))


def containment_experiment(cfg: SensingConfig, theta_list=None, reuse_matrix: bool = False,
                           sizing_constant: float = DEFAULT_SIZING) -> ExperimentReport:
    """Check each compressed angle against the interval built from its own support RIC.

    ``theta_list`` defaults to the uniform distribution on (0, pi/2].
    """
    thetas = None if theta_list is None else np.asarray(theta_list, dtype=float)
    shared = _shared_matrix(cfg) if reuse_matrix else None
    d_design = design_delta(cfg.K, cfg.p, cfg.m, sizing_constant)
    iv_design = angle_interval(d_design, math.pi / 2) if d_design < 1 else None
    rows = []
    violations = excluded = design_outside = 0
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        phi = shared if shared is not None else gaussian_sensing_matrix(cfg.m, cfg.p, rng)
        if thetas is None:
            theta = (math.pi / 2) * (1.0 - rng.random())
        else:
            theta = float(thetas[rng.integers(thetas.size)])
        pair = sparse_pair(cfg.p, cfg.K, theta, rng)
        alpha = angle_between(phi @ pair.u, phi @ pair.v)
        d_t = support_ric(phi, pair.union_support)
        lo = hi = float("nan")
        bad = False
        if d_t >= 1.0:
            excluded += 1
        else:
            iv = angle_interval(d_t, theta)
            lo, hi = iv.alpha_min, iv.alpha_max
            bad = not (lo - CONTAINMENT_TOL <= alpha <= hi + CONTAINMENT_TOL)
            violations += bad
        dlo = dhi = float("nan")
        if iv_design is not None:
            ivd = angle_interval(d_design, theta)
            dlo, dhi = ivd.alpha_min, ivd.alpha_max
            design_outside += not (dlo <= alpha <= dhi)
        rows.append({
            "trial": t,
            "theta_rad": theta,
            "theta_deg": math.degrees(theta),
            "alpha_rad": alpha,
            "alpha_deg": math.degrees(alpha),
            "delta_T": d_t,
            "alpha_min": lo,
            "alpha_max": hi,
            "alpha_min_deg": math.degrees(lo),
            "alpha_max_deg": math.degrees(hi),
            "violation": int(bad),
            "excluded": int(d_t >= 1.0),
            "delta_design": d_design,
            "design_alpha_min": dlo,
            "design_alpha_max": dhi,
        })
    return ExperimentReport("containment", rows, {
        "trials": cfg.trials,
        "seed": cfg.seed,
        "violations": violations,
        "excluded": excluded,
        "delta_design": d_design,
        "design_outside": design_outside,
        "reuse_matrix": int(reuse_matrix),
    })


def projected_ric_experiment(cfg: SensingConfig, k_I: int, bins: int = 10) -> ExperimentReport:
    """Energy of ``P Phi x`` after projecting out ``k_I`` known columns.

    ``x`` is ``(K - k_I)``-sparse with support disjoint from the projected set;
    the ratio ``|P Phi x|^2 / |x|^2`` must lie in
    ``[1 - projected_ric(delta_T), 1 + delta_T]``.
    """
    if not (0 <= k_I < cfg.K):
        raise DomainError(f"need 0 <= kI < K, got kI={k_I}, K={cfg.K}")
    rows = []
    violations = excluded = 0
    worst_identity = 0.0
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        phi = gaussian_sensing_matrix(cfg.m, cfg.p, rng)
        perm = rng.permutation(cfg.p)
        t_i = np.sort(perm[:k_I])
        t_x = np.sort(perm[k_I:cfg.K])
        x = np.zeros(cfg.p)
        x[t_x] = rng.standard_normal(t_x.size)
        proj = projection_complement(phi, t_i)
        y = phi @ x
        py = proj @ y
        ratio = float(py @ py) / float(x @ x)
        # projection identity: |P y|^2 = |y|^2 (1 - cos^2 angle(y, its projection onto range))
        if k_I:
            coef, *_ = np.linalg.lstsq(phi[:, t_i], y, rcond=None)
            yr = phi[:, t_i] @ coef
            cos2 = 0.0 if not yr.any() else (float(y @ yr) ** 2) / (float(y @ y) * float(yr @ yr))
        else:
            cos2 = 0.0
        rhs = float(y @ y) * (1.0 - cos2)
        worst_identity = max(worst_identity, abs(float(py @ py) - rhs) / max(float(y @ y), 1e-300))
        d_t = support_ric(phi, np.concatenate([t_i, t_x]))
        lower = upper = slack = float("nan")
        bad = False
        if d_t >= 1.0:
            excluded += 1
        else:
            lower = 1.0 - projected_ric(d_t)
            upper = 1.0 + d_t
            bad = not (lower - BOUND_TOL <= ratio <= upper + BOUND_TOL)
            violations += bad
            slack = min(ratio - lower, upper - ratio)
        rows.append({
            "trial": t, "ratio": ratio, "delta_T": d_t, "lower": lower, "upper": upper,
            "slack": slack, "violation": int(bad), "excluded": int(d_t >= 1.0),
        })
    slacks = np.array([r["slack"] for r in rows if not r["excluded"]])
    hist_counts, hist_edges = (np.histogram(slacks, bins=bins) if slacks.size
                               else (np.zeros(bins, dtype=int), np.zeros(bins + 1)))
    return ExperimentReport("projric", rows, {
        "trials": cfg.trials,
        "seed": cfg.seed,
        "violations": violations,
        "excluded": excluded,
        "mean_slack": float(slacks.mean()) if slacks.size else float("nan"),
        "min_slack": float(slacks.min()) if slacks.size else float("nan"),
        "identity_max_rel_err": worst_identity,
        "slack_hist_counts": hist_counts.tolist(),
        "slack_hist_edges": hist_edges.tolist(),
    })


def random_sparse(p: int, K: int, rng: np.random.Generator) -> np.ndarray:
    """K-sparse vector with random signs and magnitudes in [1, 2)."""
    x = np.zeros(p)
    sup = rng.choice(p, size=K, replace=False)
    x[sup] = rng.choice((-1.0, 1.0), size=K) * (1.0 + rng.random(K))
    return x


THRESHOLDS = (("prior", omp_ric_threshold_prior), ("new", omp_ric_threshold))


def omp_recovery_experiment(p: int, K_range, trials: int, seed: int,
                            sizing_constant: float = DEFAULT_SIZING) -> ExperimentReport:
    """Exact-recovery rate of OMP with ``m`` sized from each RIC threshold."""
    rows = []
    for K in K_range:
        if not (1 <= K < p):
            raise DomainError(f"need 1 <= K < p, got K={K}")
        deltas = {name: f(K) for name, f in THRESHOLDS}
        for f_idx, (name, _) in enumerate(THRESHOLDS):
            want = sized_measurements(K, p, deltas[name], sizing_constant)
            capped = want > p - 1
            m = min(want, p - 1)
            hits = 0
            for t in range(trials):
                rng = np.random.default_rng(np.random.SeedSequence([seed, 2, K, f_idx, t]))
                phi = gaussian_sensing_matrix(m, p, rng)
                x = random_sparse(p, K, rng)
                hits += omp(phi, phi @ x, K, x_true=x).exact
            rows.append({
                "K": K, "formula": name, "delta": deltas[name], "m": m, "m_requested": want,
                "capped": int(capped), "trials": trials, "exact": hits,
                "recovery": hits / trials,
                "reduction": 1.0 - (deltas["prior"] / deltas["new"]) ** 2,
            })
    claims = [r for r in rows if not r["capped"]]
    return ExperimentReport("omp", rows, {
        "p": p, "seed": seed, "trials": trials,
        "min_recovery_uncapped": min((r["recovery"] for r in claims), default=float("nan")),
        "capped_rows": sum(r["capped"] for r in rows),
    })


def certified_omp_experiment(p: int, m: int, K: int, trials: int, seed: int,
                             design: str = "near-orthogonal") -> ExperimentReport:
    """OMP on one matrix whose order-(K+1) RIC is certified by enumeration.

    A violation is a failed recovery on a matrix that passed certification.
    """
    rng = trial_rng(seed, 0, stream=1)
    if design == "near-orthogonal":
        phi = near_orthogonal_design(m, p, rng)
    elif design == "gaussian":
        phi = gaussian_sensing_matrix(m, p, rng)
    else:
        raise DomainError(f"unknown design {design!r}")
    ric = exhaustive_ric(phi, K + 1)
    thr = omp_ric_threshold(K)
    certified = ric < thr
    rows = []
    hits = 0
    for t in range(trials):
        x = random_sparse(p, K, trial_rng(seed, t))
        rep = omp(phi, phi @ x, K, x_true=x)
        hits += rep.exact
        rows.append({
            "trial": t,
            "support": " ".join(str(i) for i in np.flatnonzero(x)),
            "recovered": " ".join(str(i) for i in rep.recovered_support),
            "iterations": rep.iterations,
            "exact": int(rep.exact),
            "final_residual": rep.residual_norms[-1],
        })
    return ExperimentReport("omp-certified", rows, {
        "p": p, "m": m, "K": K, "seed": seed, "trials": trials, "design": design,
        "ric_order": K + 1, "ric": ric, "threshold": thr, "certified": int(certified),
        "exact": hits,
        "violations": (trials - hits) if certified else 0,
    })

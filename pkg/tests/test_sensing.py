import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ripangle.exceptions import DomainError, EnumerationCapError
from ripangle.sensing import (
    SensingConfig,
    angle_between,
    exhaustive_ric,
    gaussian_sensing_matrix,
    gram_ric,
    near_orthogonal_design,
    projection_complement,
    sparse_pair,
    support_ric,
    trial_rng,
)


def test_config_validation():
    SensingConfig(p=256, m=128, K=8, seed=1, trials=10)
    with pytest.raises(DomainError):
        SensingConfig(p=100, m=100, K=8)
    with pytest.raises(DomainError):
        SensingConfig(p=100, m=50, K=60)
    with pytest.raises(DomainError):
        SensingConfig(p=100, m=50, K=5, trials=0)


def test_gaussian_column_norms():
    phi = gaussian_sensing_matrix(100, 400, np.random.default_rng(11))
    norms = np.sum(phi ** 2, axis=0)
    assert abs(norms.mean() - 1.0) < 3 / math.sqrt(100)


def test_gaussian_deterministic():
    a = gaussian_sensing_matrix(20, 50, trial_rng(5, 3))
    b = gaussian_sensing_matrix(20, 50, trial_rng(5, 3))
    assert np.array_equal(a, b)
    c = gaussian_sensing_matrix(20, 50, trial_rng(5, 4))
    assert not np.array_equal(a, c)


def test_gaussian_square_near_orthogonal():
    m = 2000
    phi = gaussian_sensing_matrix(m, m, np.random.default_rng(2))[:, :50]
    g = phi.T @ phi
    off = g - np.diag(np.diag(g))
    assert np.abs(off).max() < 6 / math.sqrt(m)


@pytest.mark.parametrize("theta,cos", [(math.pi / 2, 0.0), (math.pi / 3, 0.5)])
def test_sparse_pair_angle(theta, cos):
    s = sparse_pair(10, 2, theta, np.random.default_rng(4))
    assert s.u @ s.v == pytest.approx(cos, abs=1e-12)
    assert np.linalg.norm(s.u) == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.norm(s.v) == pytest.approx(1.0, abs=1e-12)
    assert len(s.union_support) <= 2


@settings(max_examples=60)
@given(st.integers(2, 40), st.floats(1e-3, math.pi - 1e-3), st.integers(0, 2 ** 32))
def test_sparse_pair_invariants(K, theta, seed):
    s = sparse_pair(64, K, theta, np.random.default_rng(seed))
    assert s.u @ s.v == pytest.approx(math.cos(theta), abs=1e-12)
    assert len(s.union_support) <= K
    assert set(np.flatnonzero(s.u)) <= set(s.union_support)


def test_sparse_pair_domain():
    rng = np.random.default_rng(0)
    with pytest.raises(DomainError):
        sparse_pair(10, 1, 1.0, rng)
    with pytest.raises(DomainError):
        sparse_pair(10, 2, math.pi, rng)


def test_angle_between():
    e1, e2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert angle_between(e1, e1) == 0.0
    assert angle_between(e1, e2) == pytest.approx(math.pi / 2)
    assert angle_between(np.array([1.0, 1.0]) / math.sqrt(2), e1) == pytest.approx(math.pi / 4)
    with pytest.raises(DomainError):
        angle_between(e1, np.zeros(2))


def test_support_ric_orthonormal_and_scaled():
    q, _ = np.linalg.qr(np.random.default_rng(1).standard_normal((12, 6)))
    assert support_ric(q, range(6)) == pytest.approx(0.0, abs=1e-14)
    assert support_ric(math.sqrt(2) * q, range(6)) == pytest.approx(1.0, abs=1e-14)


def test_support_ric_matches_gram():
    phi = gaussian_sensing_matrix(128, 300, np.random.default_rng(9))
    for seed in range(5):
        sup = np.random.default_rng(seed).choice(300, 8, replace=False)
        a = support_ric(phi, sup)
        assert abs(a - gram_ric(phi, sup)) <= 1e-12
        assert a < 0.8


def test_support_ric_too_large():
    with pytest.raises(DomainError):
        support_ric(np.eye(3), range(4))


def test_support_ric_rank_deficient():
    m = np.ones((4, 3))
    assert support_ric(m, [0, 1]) >= 1.0


def test_exhaustive_identity():
    assert exhaustive_ric(np.eye(6), 3) == pytest.approx(0.0, abs=1e-14)


def test_exhaustive_order_one():
    phi = gaussian_sensing_matrix(10, 20, np.random.default_rng(3))
    expect = np.max(np.abs(np.sum(phi ** 2, axis=0) - 1))
    assert exhaustive_ric(phi, 1) == pytest.approx(expect, abs=1e-13)


def test_exhaustive_reversed_enumeration():
    phi = gaussian_sensing_matrix(12, 16, np.random.default_rng(8))
    fwd = exhaustive_ric(phi, 3)
    rev = exhaustive_ric(phi, 3, reverse=True)
    loop = max(support_ric(phi, s) for s in itertools.combinations(range(15, -1, -1), 3))
    assert fwd == pytest.approx(rev, abs=1e-13)
    assert fwd == pytest.approx(loop, abs=1e-12)


def test_exhaustive_cap():
    with pytest.raises(EnumerationCapError, match="C\\(200,5\\)"):
        exhaustive_ric(np.zeros((10, 200)) + 0.1, 5)


def test_projection_empty_is_identity():
    phi = np.random.default_rng(0).standard_normal((5, 8))
    assert np.array_equal(projection_complement(phi, []), np.eye(5))


def test_projection_orthonormal_columns():
    q, _ = np.linalg.qr(np.random.default_rng(2).standard_normal((8, 3)))
    p = projection_complement(q, range(3))
    np.testing.assert_allclose(p, np.eye(8) - q @ q.T, atol=1e-14)


def test_projection_properties():
    rng = np.random.default_rng(6)
    phi = gaussian_sensing_matrix(30, 60, rng)
    t = [3, 17, 40]
    p = projection_complement(phi, t)
    np.testing.assert_allclose(p @ p, p, atol=1e-10)
    np.testing.assert_allclose(p, p.T, atol=1e-15)
    np.testing.assert_allclose(p @ phi[:, t], 0.0, atol=1e-10)
    x = np.zeros(60)
    x[[5, 9]] = rng.standard_normal(2)
    y = phi @ x
    coef, *_ = np.linalg.lstsq(phi[:, t], y, rcond=None)
    yr = phi[:, t] @ coef
    cos2 = (y @ yr) ** 2 / ((y @ y) * (yr @ yr))
    assert (p @ y) @ (p @ y) == pytest.approx((y @ y) * (1 - cos2), rel=1e-10)


def test_projection_rank_deficient():
    phi = np.ones((5, 3))
    with pytest.raises(DomainError):
        projection_complement(phi, [0, 1])


def test_near_orthogonal_design():
    phi = near_orthogonal_design(28, 32, trial_rng(7, 0, stream=1))
    assert phi.shape == (28, 32)
    np.testing.assert_allclose(np.linalg.norm(phi, axis=0), 1.0, atol=1e-14)
    ric = exhaustive_ric(phi, 3)
    assert ric == pytest.approx(math.sqrt(2 / 28), abs=5e-3)


def test_near_orthogonal_design_shape_checks():
    with pytest.raises(DomainError):
        near_orthogonal_design(27, 32, np.random.default_rng(0))
    with pytest.raises(DomainError):
        near_orthogonal_design(10, 30, np.random.default_rng(0))


def test_parallelogram_on_pairs():
    rng = np.random.default_rng(12)
    phi = gaussian_sensing_matrix(64, 128, rng)
    for _ in range(20):
        s = sparse_pair(128, 8, rng.uniform(0.1, 3.0), rng)
        pu, pv = phi @ s.u, phi @ s.v
        lhs = np.sum((pu + pv) ** 2)
        rhs = 2 * pu @ pu + 2 * pv @ pv - np.sum((pu - pv) ** 2)
        assert abs(lhs - rhs) <= 1e-10 * max(1.0, lhs)

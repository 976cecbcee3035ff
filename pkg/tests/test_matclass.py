import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as npst

from netgames import matclass
from netgames.errors import ShapeError, SingularBlockError
from netgames.matclass import (
    det_eps,
    is_b_matrix,
    is_p_matrix,
    is_positive_definite,
    is_strictly_row_dd,
    is_symmetric,
    schur_complement,
    spectral,
)

from helpers import oracle_is_p, random_layer


def test_is_p_matrix_matches_oracle_small_asymmetric():
    rng = np.random.default_rng(2024)
    for _ in range(80):
        n = int(rng.integers(2, 9))
        m = np.eye(n) + random_layer(rng, n, 0.9)
        verdict = is_p_matrix(m)
        assert verdict.method == "exact-minors"
        assert verdict.holds == oracle_is_p(m)
        if not verdict.holds:
            idx = verdict.witness
            assert np.linalg.det(m[np.ix_(idx, idx)]) <= det_eps(m)


def test_is_p_matrix_symmetric_route():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    verdict = is_p_matrix(m)
    assert verdict.holds is True
    assert verdict.method == "symmetric-eigen"

    m = np.array([[1.0, 2.0], [2.0, 1.0]])
    verdict = is_p_matrix(m)
    assert verdict.holds is False
    assert verdict.method == "symmetric-eigen"
    assert verdict.witness == pytest.approx(-1.0)


def test_is_p_matrix_large_sufficient_routes():
    n = matclass.P_EXACT_CAP + 2
    rng = np.random.default_rng(3)

    m = np.eye(n) * n + random_layer(rng, n, 0.5)
    verdict = is_p_matrix(m)
    assert verdict.holds is True
    assert verdict.method == "sufficient-row-dominance"

    # Large, asymmetric, no sufficient condition applies: undecided.
    m = np.eye(n) + random_layer(rng, n, 2.0)
    assert not is_positive_definite(m) and not is_strictly_row_dd(m)
    verdict = is_p_matrix(m)
    assert verdict.holds is None
    assert verdict.method == "unknown"


def test_is_p_matrix_empty_matrix():
    verdict = is_p_matrix(np.zeros((0, 0)))
    assert verdict.holds is True


def test_is_p_matrix_rejects_nonsquare():
    with pytest.raises(ShapeError):
        is_p_matrix(np.zeros((2, 3)))


def test_det_eps_scales_with_magnitude():
    assert det_eps(np.zeros((2, 2))) == pytest.approx(1e-9)
    assert det_eps(np.full((2, 2), 50.0)) == pytest.approx(1e-7)


def test_spectral_known_symmetric():
    s = spectral(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert s.symmetric
    assert s.lambda_min_re == pytest.approx(-1.0)
    assert s.lambda_max_re == pytest.approx(1.0)
    assert s.rho == pytest.approx(1.0)


def test_spectral_known_rotation():
    s = spectral(np.array([[0.0, -1.0], [1.0, 0.0]]))
    assert not s.symmetric
    assert s.lambda_min_re == pytest.approx(0.0, abs=1e-12)
    assert s.lambda_max_re == pytest.approx(0.0, abs=1e-12)
    assert s.rho == pytest.approx(1.0)


def test_spectral_rejects_empty():
    with pytest.raises(ShapeError):
        spectral(np.zeros((0, 0)))


@given(npst.arrays(np.float64, (5, 5), elements=st.floats(-10, 10)))
def test_spectral_invariants(arr):
    s = spectral(arr)
    assert s.lambda_min_re <= s.lambda_max_re + 1e-12
    assert s.rho >= max(abs(s.lambda_min_re), abs(s.lambda_max_re)) - 1e-9


@given(npst.arrays(np.float64, (4, 4), elements=st.floats(-3, 3)))
def test_symmetric_positive_shift_is_p(arr):
    sym = 0.5 * (arr + arr.T)
    shift = abs(float(np.linalg.eigvalsh(sym)[0])) + 0.5
    m = sym + shift * np.eye(4)
    verdict = is_p_matrix(m)
    assert verdict.holds is True
    assert oracle_is_p(m)


def test_is_positive_definite_uses_symmetric_part():
    # Heavy skew part, identity symmetric part: definite regardless.
    m = np.array([[1.0, 10.0], [-10.0, 1.0]])
    assert is_positive_definite(m)
    assert not is_positive_definite(-np.eye(2))


def test_is_strictly_row_dd():
    assert is_strictly_row_dd(np.array([[3.0, -1.0], [2.0, 4.0]]))
    assert not is_strictly_row_dd(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_is_b_matrix():
    assert is_b_matrix(np.array([[2.0, 1.0], [1.0, 2.0]]))
    # Row mean 2.5 does not dominate the off-diagonal 3.
    assert not is_b_matrix(np.array([[2.0, 3.0], [3.0, 2.0]]))
    # Negative row mean.
    assert not is_b_matrix(np.array([[1.0, -4.0], [0.0, 1.0]]))


def test_b_matrices_are_p_matrices():
    rng = np.random.default_rng(11)
    checked = 0
    for _ in range(200):
        n = int(rng.integers(2, 7))
        m = np.eye(n) + random_layer(rng, n, 0.6)
        if is_b_matrix(m):
            assert oracle_is_p(m)
            checked += 1
    assert checked >= 10


def test_is_symmetric_tolerance():
    m = np.array([[0.0, 1.0], [1.0 + 1e-13, 0.0]])
    assert is_symmetric(m)
    assert not is_symmetric(m, tol=1e-14)


def test_schur_complement_two_by_two():
    m = np.array([[4.0, 2.0], [1.0, 5.0]])
    out = schur_complement(m, keep=[0], eliminate=[1])
    assert out.shape == (1, 1)
    assert out[0, 0] == pytest.approx(4.0 - 2.0 * 1.0 / 5.0)


def test_schur_complement_determinant_identity():
    rng = np.random.default_rng(8)
    for _ in range(20):
        m = rng.uniform(-1.0, 1.0, (5, 5)) + 3.0 * np.eye(5)
        keep, elim = [0, 1], [2, 3, 4]
        s = schur_complement(m, keep, elim)
        lhs = np.linalg.det(m[np.ix_(keep + elim, keep + elim)])
        rhs = np.linalg.det(m[np.ix_(elim, elim)]) * np.linalg.det(s)
        assert lhs == pytest.approx(rhs, rel=1e-8)


def test_schur_complement_singular_block():
    m = np.array([[1.0, 1.0], [1.0, 0.0]])
    with pytest.raises(SingularBlockError):
        schur_complement(m, keep=[0], eliminate=[1])


def test_schur_complement_overlap_rejected():
    with pytest.raises(ShapeError):
        schur_complement(np.eye(3), keep=[0, 1], eliminate=[1, 2])


def test_schur_complement_empty_eliminate():
    m = np.arange(9.0).reshape(3, 3)
    out = schur_complement(m, keep=[0, 2], eliminate=[])
    np.testing.assert_allclose(out, m[np.ix_([0, 2], [0, 2])])

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

from gfusion.errors import AllVectorsNumericallyZero, SingularOperator
from gfusion.gen import mercedes_frame
from gfusion.linalg import (
    HermitianOperator,
    hermitian_eig,
    inner,
    operator_norm,
    orthonormalize,
    projector_from_basis,
    psd_power,
    sup_norm,
)
from gfusion.operators import frame_operator


def random_psd(seed, n, complex_=False, rank=None):
    rng = np.random.default_rng(seed)
    k = n if rank is None else rank
    a = rng.standard_normal((n, k))
    if complex_:
        a = a + 1j * rng.standard_normal((n, k))
    return a @ a.conj().T


def test_inner_is_linear_in_first_argument():
    x = np.array([1 + 2j, 3])
    y = np.array([1j, 1])
    assert inner(2j * x, y) == pytest.approx(2j * inner(x, y))
    assert inner(x, 2j * y) == pytest.approx(-2j * inner(x, y))
    assert inner(x, x).real == pytest.approx(np.linalg.norm(x) ** 2)


class TestOrthonormalize:
    def test_identity_input_kept(self):
        u, d = orthonormalize(np.eye(2))
        assert d == 2
        np.testing.assert_allclose(np.abs(u), np.eye(2), atol=1e-15)

    def test_collinear_input(self):
        u, d = orthonormalize([[1.0, 0.0], [2.0, 0.0]])
        assert d == 1
        np.testing.assert_allclose(np.abs(u[:, 0]), [1.0, 0.0], atol=1e-15)

    def test_gram_of_diagonal_pair(self):
        u, d = orthonormalize([[1.0, 1.0], [1.0, -1.0]])
        assert d == 2
        gram = np.array([[sum(u[k, i] * u[k, j] for k in range(2)) for j in range(2)] for i in range(2)])
        np.testing.assert_allclose(gram, np.eye(2), atol=1e-12)

    def test_all_zero(self):
        with pytest.raises(AllVectorsNumericallyZero):
            orthonormalize(np.zeros((3, 4)))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
    def test_projector_is_invariant_under_reorthonormalization(self, seed, n, k):
        rng = np.random.default_rng(seed)
        v = rng.standard_normal((k, n))
        u, _ = orthonormalize(v)
        mix = rng.standard_normal((u.shape[1], u.shape[1])) + 3 * np.eye(u.shape[1])
        u2, _ = orthonormalize(mix @ u.T)
        np.testing.assert_allclose(projector_from_basis(u), projector_from_basis(u2), atol=1e-10)


class TestHermitian:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            HermitianOperator([[0.0, 1.0], [0.0, 0.0]])

    def test_symmetrized_exactly(self):
        m = np.array([[1.0, 2.0 + 1e-12], [2.0, 3.0]])
        h = HermitianOperator(m)
        assert np.array_equal(h.matrix, h.matrix.conj().T)

    def test_eig_diagonal(self):
        vals, vecs = hermitian_eig(HermitianOperator(np.diag([3.0, 1.0])))
        np.testing.assert_array_equal(vals, [1.0, 3.0])
        np.testing.assert_allclose(np.abs(vecs), [[0, 1], [1, 0]])

    def test_eig_swap(self):
        vals, _ = hermitian_eig(HermitianOperator([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(vals, [-1.0, 1.0], atol=1e-15)

    def test_eig_residual_random(self):
        rng = np.random.default_rng(7)
        a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        m = a + a.conj().T
        vals, vecs = hermitian_eig(HermitianOperator(m))
        assert sup_norm(m @ vecs - vecs @ np.diag(vals)) <= 1e-10 * max(1, sup_norm(m))
        assert sup_norm(vecs.conj().T @ vecs - np.eye(6)) <= 1e-10
        assert np.all(np.diff(vals) >= 0)


class TestPsdPower:
    def test_identity(self):
        np.testing.assert_array_equal(psd_power(HermitianOperator(np.eye(3)), -0.5).matrix, np.eye(3))

    def test_diag_sqrt(self):
        np.testing.assert_allclose(psd_power(HermitianOperator(np.diag([4.0, 1.0])), 0.5).matrix, np.diag([2.0, 1.0]))

    def test_mercedes_inverse(self):
        np.testing.assert_allclose(psd_power(frame_operator(mercedes_frame()), -1).matrix, np.eye(2), atol=1e-12)

    def test_singular_negative_power(self):
        h = HermitianOperator(np.diag([1.0, 0.0]))
        with pytest.raises(SingularOperator):
            psd_power(h, -1)
        with pytest.raises(SingularOperator):
            psd_power(h, -0.5)
        np.testing.assert_allclose(psd_power(h, 0.5).matrix, np.diag([1.0, 0.0]))

    def test_unsupported_exponent(self):
        with pytest.raises(ValueError):
            psd_power(HermitianOperator(np.eye(2)), 2)

    @pytest.mark.parametrize("seed", range(10))
    def test_against_scipy(self, seed):
        m = random_psd(seed, 5, complex_=seed % 2 == 1) + 0.1 * np.eye(5)
        h = HermitianOperator(m)
        np.testing.assert_allclose(psd_power(h, 0.5).matrix, scipy.linalg.sqrtm(m), atol=1e-9)
        np.testing.assert_allclose(psd_power(h, -1).matrix, scipy.linalg.inv(m), atol=1e-9)
        np.testing.assert_allclose(
            psd_power(h, -0.5).matrix, scipy.linalg.inv(scipy.linalg.sqrtm(m)), atol=1e-9
        )

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.booleans(), st.integers(1, 8))
    def test_sqrt_composes(self, seed, n, cplx, rank):
        m = random_psd(seed, n, cplx, rank=min(rank, n))
        h = HermitianOperator(m)
        r = psd_power(h, 0.5).matrix
        assert sup_norm(r @ r - m) <= 1e-9 * max(1, sup_norm(m))


class TestNorm:
    def test_identity(self):
        assert operator_norm(np.eye(3)) == pytest.approx(1.0)

    def test_diag(self):
        assert operator_norm(np.diag([2.0, -5.0])) == pytest.approx(5.0)

    def test_jordan(self):
        assert operator_norm([[1.0, 1.0], [0.0, 1.0]]) == pytest.approx(np.sqrt((3 + np.sqrt(5)) / 2), rel=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_matches_eigenvalues_for_hermitian(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.standard_normal((5, 5))
        h = HermitianOperator(a + a.T)
        assert operator_norm(h.matrix) == pytest.approx(np.abs(h.eigenvalues).max(), rel=1e-10)

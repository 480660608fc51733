"""Dense linear-algebra kernel.

Every inverse, inverse square root and square root in the package goes through
the Hermitian eigendecomposition in :class:`HermitianOperator`; nothing calls
``np.linalg.inv`` directly.
"""

from __future__ import annotations

import numpy as np

from .errors import AllVectorsNumericallyZero, ConvergenceFailure, SingularOperator

HERMITIAN_TOL = 1e-10
RANK_TOL = 1e-10
INVERTIBILITY_FLOOR = 1e-12


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not np.iscomplexobj(a):
        a = a.astype(np.float64, copy=False)
    else:
        a = a.astype(np.complex128, copy=False)
    return a


def inner(x, y) -> complex | float:
    """Inner product linear in the first argument, conjugate-linear in the second."""
    return np.vdot(y, x)


def sup_norm(m) -> float:
    """Maximum absolute row sum (the induced infinity norm)."""
    a = np.asarray(m)
    if a.size == 0:
        return 0.0
    return float(np.abs(a).sum(axis=1).max())


def invertibility_floor(lambda_max: float) -> float:
    return INVERTIBILITY_FLOOR * max(1.0, lambda_max)


def orthonormalize(vectors, rank_tol: float = RANK_TOL) -> tuple[np.ndarray, int]:
    """Orthonormal basis of the span of ``vectors``.

    ``vectors`` is a sequence of k vectors of length n (a ``(k, n)`` array).
    Returns an ``(n, d)`` matrix with orthonormal columns and the rank ``d``.
    Directions whose singular value is at most ``rank_tol`` times the largest
    one are dropped.
    """
    v = np.atleast_2d(np.asarray(vectors))
    if v.size == 0:
        raise AllVectorsNumericallyZero("no vectors given")
    a = _as_matrix(v).T
    try:
        u, s, _ = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    cutoff = rank_tol * (s[0] if s[0] > 0 else 1.0)
    d = int(np.count_nonzero(s > cutoff))
    if d == 0:
        raise AllVectorsNumericallyZero("every singular value is below the rank threshold")
    return u[:, :d].copy(), d


class HermitianOperator:
    """A self-adjoint matrix together with its spectrum.

    The matrix is symmetrized exactly as ``(M + M*) / 2`` and the
    eigendecomposition is computed eagerly, so instances never change after
    construction and can be shared between threads.
    """

    __slots__ = ("matrix", "eigenvalues", "eigenvectors")

    def __init__(self, matrix, hermitian_tol: float = HERMITIAN_TOL):
        m = _as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ValueError(f"Hermitian operator must be square, got {m.shape}")
        asym = sup_norm(m - m.conj().T)
        if asym > hermitian_tol * max(1.0, sup_norm(m)):
            raise ValueError(f"matrix is not self-adjoint (asymmetry {asym:.3e})")
        m = (m + m.conj().T) / 2
        m.flags.writeable = False
        try:
            w, v = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(str(exc)) from exc
        w.flags.writeable = False
        v.flags.writeable = False
        self.matrix = m
        self.eigenvalues = w
        self.eigenvectors = v

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def lambda_min(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def lambda_max(self) -> float:
        return float(self.eigenvalues[-1])

    def __matmul__(self, other):
        if isinstance(other, HermitianOperator):
            other = other.matrix
        return self.matrix @ other

    def __rmatmul__(self, other):
        return other @ self.matrix

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim}, spectrum=[{self.lambda_min:.4g}, {self.lambda_max:.4g}])"

    def is_invertible(self) -> bool:
        return self.lambda_min > invertibility_floor(self.lambda_max)

    def quadratic_form(self, f) -> float:
        """``<Hf, f>``, which is real for self-adjoint ``H``."""
        return float(np.real(inner(self.matrix @ f, f)))


def hermitian_eig(op: HermitianOperator) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues in ascending order and a unitary matrix of eigenvectors."""
    return op.eigenvalues, op.eigenvectors


def psd_power(op: HermitianOperator, exponent: float, psd_floor: float | None = None) -> HermitianOperator:
    """``V diag(lambda**p) V*`` for ``p`` in {-1, -1/2, 1/2}.

    Negative powers need every eigenvalue above ``psd_floor`` (by default
    ``1e-12 * max(1, lambda_max)``); the square root clamps eigenvalues in
    ``[-eig_tol, 0)`` to zero.
    """
    if exponent not in (-1, -0.5, 0.5):
        raise ValueError(f"unsupported exponent {exponent!r}")
    w, v = op.eigenvalues, op.eigenvectors
    if exponent < 0:
        floor = invertibility_floor(op.lambda_max) if psd_floor is None else psd_floor
        if w[0] <= floor:
            raise SingularOperator(f"smallest eigenvalue {w[0]:.3e} is not above {floor:.3e}")
        p = w**exponent
    else:
        eig_tol = HERMITIAN_TOL * max(1.0, float(np.abs(w).max()))
        if w[0] < -eig_tol:
            raise SingularOperator(f"operator is not positive semidefinite (eigenvalue {w[0]:.3e})")
        p = np.sqrt(np.clip(w, 0.0, None))
    return HermitianOperator((v * p) @ v.conj().T)


def operator_norm(m) -> float:
    """Largest singular value."""
    a = _as_matrix(m)
    try:
        return float(np.linalg.norm(a, 2))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def singular_values(m) -> np.ndarray:
    a = _as_matrix(m)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def smallest_singular_value(m) -> float:
    return float(singular_values(m)[-1])


def projector_from_basis(basis: np.ndarray) -> np.ndarray:
    return basis @ basis.conj().T



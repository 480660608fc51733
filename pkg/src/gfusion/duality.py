"""Canonical duals, Parseval-ization, tight rescaling and alternate duals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAlternateDual, NotParseval, NotTight, ShapeMismatch
from .linalg import operator_norm
from .model import GFusionFrame, Subspace, SubsetMask, canonicalize
from .operators import (
    bessel_bound,
    check_compatible,
    frame_bounds,
    frame_operator,
    inverse_frame_operator,
    inverse_sqrt_frame_operator,
)

PARSEVAL_TOL = 1e-9


def _transform(frame: GFusionFrame, t: np.ndarray) -> GFusionFrame:
    """Atoms ``(T F(x), Lambda_x P_F T, omega)`` for an invertible self-adjoint ``T``."""
    subs, ops = [], []
    for sub, op in zip(frame.subspaces, frame.operators):
        new_sub = Subspace.span((t @ sub.basis).T)
        subs.append(new_sub)
        ops.append(canonicalize(op @ t, new_sub))
    return GFusionFrame(frame.dim, frame.scalar, frame.space, tuple(subs), tuple(ops))


def canonical_dual(frame: GFusionFrame) -> GFusionFrame:
    """The canonical dual ``(S^-1 F(x), Lambda_x P_F S^-1, omega)``.

    The dual subspace is re-orthonormalized; the dual local operator is
    canonical against it because ``P_F S^-1 = P_F S^-1 P_{S^-1 F}``.
    """
    return _transform(frame, inverse_frame_operator(frame).matrix)


def parsevalize(frame: GFusionFrame) -> GFusionFrame:
    """``(S^-1/2 F(x), Lambda_x P_F S^-1/2, omega)``, whose frame operator is the identity."""
    return _transform(frame, inverse_sqrt_frame_operator(frame).matrix)


def rescale(frame: GFusionFrame, factor: float) -> GFusionFrame:
    """Multiply every local operator by ``factor`` (frame operator scales by ``factor**2``)."""
    return frame.replace(operators=[factor * op for op in frame.operators])


def tight_constant(frame: GFusionFrame, tol: float = PARSEVAL_TOL) -> float:
    """``lambda`` such that ``||S - lambda I|| <= tol * max(1, lambda)``, else :class:`NotTight`."""
    s = frame_operator(frame)
    lam = float(np.mean(s.eigenvalues))
    spread = max(abs(s.lambda_max - lam), abs(s.lambda_min - lam))
    if lam <= 0 or spread > tol * max(1.0, lam):
        raise NotTight(f"frame operator spectrum [{s.lambda_min:.6g}, {s.lambda_max:.6g}] is not a single point")
    return lam


def require_tight(frame: GFusionFrame, lam: float, tol: float = PARSEVAL_TOL) -> None:
    s = frame_operator(frame)
    dev = float(np.abs(s.eigenvalues - lam).max())
    if dev > tol * max(1.0, lam):
        raise NotTight(f"||S - {lam:g} I|| = {dev:.3e}")


def require_parseval(frame: GFusionFrame, tol: float = PARSEVAL_TOL) -> None:
    s = frame_operator(frame)
    dev = float(np.abs(s.eigenvalues - 1.0).max())
    if dev > tol:
        raise NotParseval(f"||S - I|| = {dev:.3e}")


def is_parseval(frame: GFusionFrame, tol: float = PARSEVAL_TOL) -> bool:
    try:
        require_parseval(frame, tol)
    except NotParseval:
        return False
    return True


def dual_partial_operator(frame: GFusionFrame, mask: SubsetMask, dual: GFusionFrame | None = None) -> np.ndarray:
    """Literal sum ``sum_{X1} mu omega^2 P_F Lambda* dual_Lambda P_dualF``."""
    dual = canonical_dual(frame) if dual is None else dual
    w = frame.mu * frame.omega**2 * mask.indicator(frame)
    out = np.zeros((frame.dim, frame.dim), dtype=np.result_type(frame.dtype, dual.dtype))
    for c, op, dop in zip(w, frame.operators, dual.operators):
        if c != 0:
            out += c * (op.conj().T @ dop)
    return out


def inverse_quadratic_via_dual(frame: GFusionFrame, g, dual: GFusionFrame | None = None) -> float:
    """``<S^-1 g, g>`` evaluated as ``sum_i mu_i omega_i^2 ||dual_Lambda_i dual_P_i g||^2``."""
    dual = canonical_dual(frame) if dual is None else dual
    g = np.asarray(g)
    w = frame.mu * frame.omega**2
    return float(sum(c * np.vdot(op @ g, op @ g).real for c, op in zip(w, dual.operators)))


def _square_locals(frame: GFusionFrame, role: str) -> None:
    if any(m != frame.dim for m in frame.out_dims):
        raise ShapeMismatch(
            f"{role}: alternate duality pairs S^-1 with local outputs, so every local operator must map into the space itself"
        )


def alternate_dual_operator(v: GFusionFrame, w: GFusionFrame, mask: SubsetMask | None = None) -> np.ndarray:
    """``T^X1 = sum_{X1} mu omega nu P_G Gamma* S_V^-1 Lambda P_F`` (all atoms if ``mask`` is None)."""
    check_compatible(v, w)
    _square_locals(v, "V")
    s_inv = inverse_frame_operator(v).matrix
    weights = v.mu * v.omega * w.omega
    if mask is not None:
        weights = weights * mask.indicator(v)
    out = np.zeros((v.dim, v.dim), dtype=np.result_type(v.dtype, w.dtype))
    for c, lam, gam in zip(weights, v.operators, w.operators):
        if c != 0:
            out += c * (gam.conj().T @ (s_inv @ lam))
    return out


def default_alternate_tol(v: GFusionFrame) -> float:
    return 1e-9 * v.dim


def is_alternate_dual(v: GFusionFrame, w: GFusionFrame, tol: float | None = None) -> tuple[bool, float]:
    """Whether ``sum mu omega nu P_G Gamma* S_V^-1 Lambda P_F`` is the identity.

    ``w`` need only be Bessel.  Returns ``(flag, ||T - I||)``.
    """
    frame_bounds(v)
    tol = default_alternate_tol(v) if tol is None else tol
    t = alternate_dual_operator(v, w)
    residual = operator_norm(t - np.eye(v.dim))
    return residual <= tol, residual


@dataclass(frozen=True)
class AlternateDualCertificate:
    certificate: float
    actual_lower: float
    verified: bool


def alternate_dual_lower_bound(v: GFusionFrame, w: GFusionFrame, tol: float | None = None) -> AlternateDualCertificate:
    """Lower frame bound ``1 / (||S_V^-1||^2 B_V)`` certified for an alternate dual ``w``.

    The certificate is compared against the actual smallest eigenvalue of
    ``w``'s frame operator.
    """
    ok, residual = is_alternate_dual(v, w, tol)
    if not ok:
        raise NotAlternateDual(f"alternate-dual residual {residual:.3e}")
    s_inv_norm = inverse_frame_operator(v).lambda_max
    cert = 1.0 / (s_inv_norm**2 * bessel_bound(v))
    actual = frame_operator(w).lambda_min
    return AlternateDualCertificate(cert, actual, actual >= cert - 1e-9)


def canonical_alternate_dual(v: GFusionFrame) -> GFusionFrame:
    """Always-valid alternate dual ``(S^-1 F(x), S Lambda_x P_F S^-1, omega)``.

    Then ``P_G Gamma* S^-1 Lambda P_F = S^-1 P_F Lambda* Lambda P_F`` and the
    atom sum telescopes to the identity.  Needs square local operators.
    """
    _square_locals(v, "V")
    s = frame_operator(v).matrix
    s_inv = inverse_frame_operator(v).matrix
    subs, ops = [], []
    for sub, op in zip(v.subspaces, v.operators):
        g = Subspace.span((s_inv @ sub.basis).T)
        subs.append(g)
        ops.append(canonicalize(s @ op @ s_inv, g))
    return GFusionFrame(v.dim, v.scalar, v.space, tuple(subs), tuple(ops))


"""Operators assembled from a g-fusion frame.

All sums run over atoms in listed order with weight ``mu_i * omega_i**2``
(or ``mu_i * omega_i * nu_i`` for two families).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MeasureSpaceMismatch, NotAFrame, ShapeMismatch
from .linalg import HermitianOperator, invertibility_floor, psd_power
from .model import CoefficientVector, FrameBounds, GFusionFrame, SubsetMask


def _cached(frame: GFusionFrame, key: str, build):
    # frames are immutable, so a racing duplicate computation stores an identical value
    cache = frame.__dict__.setdefault("_op_cache", {})
    if key not in cache:
        cache[key] = build()
    return cache[key]


def _vector(frame: GFusionFrame, f) -> np.ndarray:
    f = np.asarray(f)
    if f.shape != (frame.dim,):
        raise ShapeMismatch(f"vector must have shape ({frame.dim},), got {f.shape}")
    return f


def _weighted_sum(frame: GFusionFrame, weights) -> np.ndarray:
    return np.einsum("i,ijk->jk", weights, frame.grams)


def frame_operator(frame: GFusionFrame) -> HermitianOperator:
    """``S = sum_i mu_i omega_i^2 P_i Lambda_i* Lambda_i P_i``."""
    return _cached(frame, "S", lambda: HermitianOperator(_weighted_sum(frame, frame.mu * frame.omega**2)))


def is_frame(frame: GFusionFrame) -> bool:
    return frame_operator(frame).is_invertible()


def frame_bounds(frame: GFusionFrame) -> FrameBounds:
    """Optimal frame bounds: the extreme eigenvalues of ``S``.

    Raises :class:`NotAFrame` when the lower bound is below the invertibility floor.
    """
    s = frame_operator(frame)
    if s.lambda_min <= invertibility_floor(s.lambda_max):
        raise NotAFrame(f"lower frame bound {s.lambda_min:.3e} is at the invertibility floor")
    return FrameBounds(s.lambda_min, s.lambda_max)


def bessel_bound(frame: GFusionFrame) -> float:
    return frame_operator(frame).lambda_max


def inverse_frame_operator(frame: GFusionFrame) -> HermitianOperator:
    def build():
        try:
            return psd_power(frame_operator(frame), -1)
        except ArithmeticError as exc:
            raise NotAFrame(str(exc)) from exc

    return _cached(frame, "S^-1", build)


def inverse_sqrt_frame_operator(frame: GFusionFrame) -> HermitianOperator:
    def build():
        try:
            return psd_power(frame_operator(frame), -0.5)
        except ArithmeticError as exc:
            raise NotAFrame(str(exc)) from exc

    return _cached(frame, "S^-1/2", build)


def synthesis_apply(frame: GFusionFrame, coeffs: CoefficientVector) -> np.ndarray:
    """``T c = sum_i mu_i omega_i P_i Lambda_i* c_i``."""
    coeffs.check(frame)
    out = np.zeros(frame.dim, dtype=np.result_type(frame.dtype, *coeffs.blocks))
    for m, w, op, c in zip(frame.mu, frame.omega, frame.operators, coeffs.blocks):
        out += (m * w) * (op.conj().T @ c)
    return out


def analysis_apply(frame: GFusionFrame, f) -> CoefficientVector:
    """``(T* f)_i = omega_i Lambda_i P_i f``; adjoint of synthesis for the mu-weighted pairing."""
    f = _vector(frame, f)
    return CoefficientVector(tuple(w * (op @ f) for w, op in zip(frame.omega, frame.operators)))


def energy(frame: GFusionFrame, f, mask: SubsetMask | None = None) -> float:
    """``sum_{i in mask} mu_i omega_i^2 ||Lambda_i P_i f||^2`` (all atoms if ``mask`` is None)."""
    f = _vector(frame, f)
    w = frame.mu * frame.omega**2
    if mask is not None:
        w = w * mask.indicator(frame)
    return float(sum(wi * np.vdot(op @ f, op @ f).real for wi, op in zip(w, frame.operators) if wi != 0))


def partial_frame_operator(frame: GFusionFrame, mask: SubsetMask) -> HermitianOperator:
    """``M^X1``: the frame-operator sum restricted to the atoms in ``mask``."""
    w = frame.mu * frame.omega**2 * mask.indicator(frame)
    return HermitianOperator(_weighted_sum(frame, w))


def mixed_partial_operator(frame: GFusionFrame, mask: SubsetMask) -> np.ndarray:
    """``S^X1 = M^X1 S^-1``, the partial sum paired with the canonical dual.

    Closed form of ``sum_{X1} mu omega^2 P Lambda* dual_Lambda dual_P``; the
    literal sum lives in :func:`gfusion.duality.dual_partial_operator`.
    """
    return partial_frame_operator(frame, mask).matrix @ inverse_frame_operator(frame).matrix


@dataclass(frozen=True, eq=False)
class AWeights:
    """Bounded per-atom scalars ``a_x``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values))
        if v.ndim != 1 or not np.all(np.isfinite(v)):
            raise ValueError("weights must be a finite 1-d array")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def constant(cls, frame: GFusionFrame, value) -> "AWeights":
        return cls(np.full(len(frame), value))

    @property
    def sup_norm(self) -> float:
        return float(np.abs(self.values).max()) if self.values.size else 0.0

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.values) or not np.any(np.imag(self.values))

    def conj(self) -> "AWeights":
        return AWeights(np.conj(self.values))

    def complement(self) -> "AWeights":
        return AWeights(1 - self.values)


def a_weighted_operator(frame: GFusionFrame, a: AWeights) -> np.ndarray:
    """``S^1 = sum_i a_i mu_i omega_i^2 P_i Lambda_i* Lambda_i P_i``; ``S^2 = S - S^1``."""
    if a.values.shape != (len(frame),):
        raise ShapeMismatch(f"need {len(frame)} weights, got {a.values.shape[0]}")
    return _weighted_sum(frame, a.values * frame.mu * frame.omega**2)


def check_compatible(v: GFusionFrame, w: GFusionFrame) -> None:
    """Two families over one measure space with matching local output dimensions."""
    if v.dim != w.dim:
        raise ShapeMismatch(f"dimensions differ: {v.dim} vs {w.dim}")
    if not v.space.same_points(w.space):
        raise MeasureSpaceMismatch("families must share atom ids and measure weights")
    if v.out_dims != w.out_dims:
        raise ShapeMismatch("local operators of paired atoms must have equal output dimension")


def pair_operator(v: GFusionFrame, w: GFusionFrame, mask: SubsetMask | None = None) -> np.ndarray:
    """``S_FG = sum_i mu_i omega_i nu_i P^F_i Lambda_i* Gamma_i P^G_i``.

    ``v`` supplies ``(omega, F, Lambda)`` and ``w`` supplies ``(nu, G, Gamma)``.
    """
    check_compatible(v, w)
    weights = v.mu * v.omega * w.omega
    if mask is not None:
        weights = weights * mask.indicator(v)
    dtype = np.result_type(v.dtype, w.dtype)
    out = np.zeros((v.dim, v.dim), dtype=dtype)
    for c, lam, gam in zip(weights, v.operators, w.operators):
        if c != 0:
            out += c * (lam.conj().T @ gam)
    return out

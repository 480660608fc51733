"""Pairs of Bessel families over one measure space.

``V = (F, Lambda, omega)`` and ``W = (G, Gamma, nu)`` give the pair operator
``S_FG = sum mu omega nu P_F Lambda* Gamma P_G``.  ``B1`` and ``B2`` are the
optimal Bessel bounds of ``V`` and ``W``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import invertibility_floor, operator_norm, singular_values
from .model import GFusionFrame
from .operators import bessel_bound, check_compatible, energy, frame_operator, pair_operator
from .reports import IdentityReport, identity_report, inequality_report

ADJOINT_TOL = 1e-12
NORM_TOL = 1e-9
CERT_TOL = 1e-9

REFS = {
    "pair_adjoint_swap": "adjoint of the pair operator swaps the families",
    "pair_norm_bound": "Bessel pair bound ||S_FG|| <= sqrt(B1 B2)",
    "pair_directional_bounds": "Cauchy-Schwarz bounds ||S_FG f|| and ||S_FG* f||",
    "resolution": "resolution of identity T_x = omega nu K P_F Lambda* Gamma P_G",
}


def _probes(v: GFusionFrame, count: int, seed: int) -> list[np.ndarray]:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=int(seed), spawn_key=(3,))))
    out = []
    for _ in range(count):
        if v.scalar == "complex":
            f = rng.standard_normal(v.dim) + 1j * rng.standard_normal(v.dim)
        else:
            f = rng.standard_normal(v.dim)
        out.append(f / np.linalg.norm(f))
    return out


def _sigma_floor(sigma_max: float) -> float:
    return invertibility_floor(sigma_max)


def check_adjoint_swap(v: GFusionFrame, w: GFusionFrame, tol: float = ADJOINT_TOL) -> IdentityReport:
    """``S_FG* = S_GF``, compared entrywise in operator norm."""
    s_fg = pair_operator(v, w)
    s_gf = pair_operator(w, v)
    residual = operator_norm(s_fg.conj().T - s_gf)
    return identity_report(
        "pair_adjoint_swap", REFS["pair_adjoint_swap"], residual, 0.0, tol * max(1.0, operator_norm(s_fg))
    )


def check_norm_bound(v: GFusionFrame, w: GFusionFrame, tol: float = NORM_TOL) -> IdentityReport:
    s_fg = pair_operator(v, w)
    b1, b2 = bessel_bound(v), bessel_bound(w)
    return inequality_report(
        "pair_norm_bound",
        REFS["pair_norm_bound"],
        [("norm", operator_norm(s_fg), None, float(np.sqrt(b1 * b2)))],
        tol * max(1.0, np.sqrt(b1 * b2)),
        {"B1": b1, "B2": b2},
    )


def check_directional_bounds(v: GFusionFrame, w: GFusionFrame, f, tol: float = NORM_TOL) -> IdentityReport:
    """``||S_FG f|| <= sqrt(B1) E_W(f)^1/2`` and ``||S_FG* f|| <= sqrt(B2) E_V(f)^1/2``.

    ``E_V(f) = sum mu omega^2 ||Lambda P_F f||^2`` and likewise for ``W``.
    """
    s_fg = pair_operator(v, w)
    b1, b2 = bessel_bound(v), bessel_bound(w)
    f = np.asarray(f)
    forward = float(np.linalg.norm(s_fg @ f))
    backward = float(np.linalg.norm(s_fg.conj().T @ f))
    bound_f = float(np.sqrt(b1 * energy(w, f)))
    bound_b = float(np.sqrt(b2 * energy(v, f)))
    return inequality_report(
        "pair_directional_bounds",
        REFS["pair_directional_bounds"],
        [("forward", forward, None, bound_f), ("adjoint", backward, None, bound_b)],
        tol * max(1.0, np.sqrt(b1 * b2)) * max(1.0, float(np.linalg.norm(f))),
    )


@dataclass(frozen=True)
class PairAnalysis:
    pair_operator: np.ndarray
    sigma_min: float
    norm: float
    bessel_v: float
    bessel_w: float
    bounded_below: bool
    invertible: bool
    adjoint_residual: float
    norm_bound_ok: bool
    directional_margin: float

    def as_dict(self) -> dict:
        return {
            "norm": self.norm,
            "sigma_min": self.sigma_min,
            "B1": self.bessel_v,
            "B2": self.bessel_w,
            "sqrt_B1_B2": float(np.sqrt(self.bessel_v * self.bessel_w)),
            "bounded_below": self.bounded_below,
            "invertible": self.invertible,
            "adjoint_residual": self.adjoint_residual,
            "norm_bound_ok": self.norm_bound_ok,
            "directional_margin": self.directional_margin,
        }


def analyze_pair(v: GFusionFrame, w: GFusionFrame, probes: int = 16, seed: int = 0) -> PairAnalysis:
    """Pair operator with its extreme singular values and the Bessel-pair bounds.

    In equal finite dimension bounded below and invertible coincide; both
    flags are ``sigma_min > 1e-12 max(1, ||S_FG||)``.
    """
    if probes < 1:
        raise ValueError("probes must be >= 1")
    s_fg = pair_operator(v, w)
    sv = singular_values(s_fg)
    sigma_max, sigma_min = float(sv[0]), float(sv[-1])
    below = sigma_min > _sigma_floor(sigma_max)
    swap = check_adjoint_swap(v, w)
    bound = check_norm_bound(v, w)
    margin = min(check_directional_bounds(v, w, f).margin for f in _probes(v, probes, seed))
    return PairAnalysis(
        pair_operator=s_fg,
        sigma_min=sigma_min,
        norm=sigma_max,
        bessel_v=bessel_bound(v),
        bessel_w=bessel_bound(w),
        bounded_below=below,
        invertible=below,
        adjoint_residual=float(swap.lhs),
        norm_bound_ok=bound.passed,
        directional_margin=float(margin),
    )


def resolution_residual(v: GFusionFrame, w: GFusionFrame, k) -> float:
    """``||sum_i mu_i omega_i nu_i K P_F Lambda_i* Gamma_i P_G - I||``, summed atom by atom."""
    k = np.asarray(k)
    weights = v.mu * v.omega * w.omega
    total = np.zeros((v.dim, v.dim), dtype=np.result_type(k, v.dtype, w.dtype))
    for c, lam, gam in zip(weights, v.operators, w.operators):
        if c != 0:
            total += c * (k @ (lam.conj().T @ gam))
    return operator_norm(total - np.eye(v.dim))


@dataclass(frozen=True)
class ResolutionWitness:
    """``K`` with ``sum mu T_x = I`` for ``T_x = omega nu K P_F Lambda_x* Gamma_x P_G``."""

    k: np.ndarray
    residual: float
    sigma_min: float


@dataclass(frozen=True)
class NoWitness:
    sigma_min: float
    reason: str


def resolution_witness(v: GFusionFrame, w: GFusionFrame, tol: float = 1e-9) -> ResolutionWitness | NoWitness:
    """``K = S_FG^-1`` (from the SVD) when the pair operator is invertible.

    Any left inverse of ``S_FG`` would do; in finite dimension it is unique.
    """
    check_compatible(v, w)
    s_fg = pair_operator(v, w)
    u, sv, vh = np.linalg.svd(s_fg)
    sigma_min = float(sv[-1])
    if sigma_min <= _sigma_floor(float(sv[0])):
        return NoWitness(sigma_min, "pair operator is not bounded below (smallest singular value at the floor)")
    k = (vh.conj().T / sv) @ u.conj().T
    residual = resolution_residual(v, w, k)
    if residual > tol:
        return NoWitness(sigma_min, f"inverse reproduces the identity only to {residual:.3e}")
    return ResolutionWitness(k, residual, sigma_min)


def verify_resolution(v: GFusionFrame, w: GFusionFrame, k, tol: float = 1e-9) -> IdentityReport:
    """Whether ``K`` turns the pair into a resolution of the identity.

    On success it also checks the consequences: ``sigma_min(S_FG) >= 1/||K||``,
    and frame bounds ``sigma_min^2 / B1`` for ``W`` and ``sigma_min^2 / B2`` for ``V``.
    """
    from .errors import ShapeMismatch

    check_compatible(v, w)
    k = np.asarray(k)
    if k.shape != (v.dim, v.dim):
        raise ShapeMismatch(f"K must be {v.dim}x{v.dim}, got {k.shape}")
    residual = resolution_residual(v, w, k)
    details: dict = {}
    extra = True
    if residual <= tol:
        sigma = float(singular_values(pair_operator(v, w))[-1])
        k_norm = operator_norm(k)
        b1, b2 = bessel_bound(v), bessel_bound(w)
        cert_w, cert_v = sigma**2 / b1, sigma**2 / b2
        low_w, low_v = frame_operator(w).lambda_min, frame_operator(v).lambda_min
        below = sigma >= 1.0 / k_norm - tol
        frames = low_w >= cert_w - CERT_TOL and low_v >= cert_v - CERT_TOL
        details = {
            "sigma_min": sigma,
            "inverse_norm_bound": 1.0 / k_norm,
            "bounded_below": bool(below),
            "w_lower_certificate": cert_w,
            "w_lower_actual": low_w,
            "v_lower_certificate": cert_v,
            "v_lower_actual": low_v,
        }
        extra = below and frames
    return identity_report("resolution", REFS["resolution"], residual, 0.0, tol, details, extra_ok=extra)


@dataclass(frozen=True)
class PerturbationReport:
    """Outcome of the perturbation criterion.

    ``lambda1_star = ||I - S_FG||``.  When it is below 1, ``W`` gets the lower
    frame bound certificate ``(1 - lambda1_star)^2 / B1``.  The ``user_*``
    fields describe a caller-supplied ``(lambda1, lambda2)``.
    """

    lambda1_star: float
    sigma_min: float
    certified: bool
    certificate: float | None
    actual_lower: float
    verified: bool
    user: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        ok = self.certified and self.verified
        if self.user:
            ok = ok and self.user.get("verified", True)
        return ok

    def as_dict(self) -> dict:
        return {
            "lambda1_star": self.lambda1_star,
            "sigma_min": self.sigma_min,
            "certified": self.certified,
            "certificate": self.certificate,
            "actual_lower": self.actual_lower,
            "verified": self.verified,
            **({"user": self.user} if self.user else {}),
        }


def perturbation_check(
    v: GFusionFrame,
    w: GFusionFrame,
    lam1: float | None = None,
    lam2: float | None = None,
    probes: int = 32,
    seed: int = 0,
) -> PerturbationReport:
    """Perturbation criterion ``||f - S_FG f|| <= lam1||f|| + lam2||S_FG f||``.

    Certificates come only from operator-level conditions; probes merely
    test the vector form of the hypothesis.  With ``lam2 >= 0`` the
    sufficient condition is ``||I - S_FG|| <= lam1 + lam2 sigma_min``, with
    ``lam2 < 0`` it is ``||I - S_FG|| <= lam1 + lam2 ||S_FG||``.
    """
    check_compatible(v, w)
    s_fg = pair_operator(v, w)
    sv = singular_values(s_fg)
    sigma_min, sigma_max = float(sv[-1]), float(sv[0])
    gap = operator_norm(np.eye(v.dim) - s_fg)
    b1 = bessel_bound(v)
    actual = frame_operator(w).lambda_min
    certified = gap < 1.0
    cert = (1.0 - gap) ** 2 / b1 if certified else None
    verified = bool(certified and actual >= cert - CERT_TOL and sigma_min >= 1.0 - gap - CERT_TOL)
    user: dict = {}
    if lam1 is not None or lam2 is not None:
        l1 = 0.0 if lam1 is None else float(lam1)
        l2 = 0.0 if lam2 is None else float(lam2)
        if not (l1 < 1.0 and l2 > -1.0):
            raise ValueError("need lambda1 < 1 and lambda2 > -1")
        worst = -np.inf
        for f in _probes(v, probes, seed):
            g = s_fg @ f
            lhs = np.linalg.norm(f - g)
            worst = max(worst, float(lhs - (l1 + l2 * np.linalg.norm(g))))
        reach = l1 + l2 * (sigma_min if l2 >= 0 else sigma_max)
        holds = gap <= reach
        ratio = (1.0 - l1) / (1.0 + l2)
        user = {
            "lambda1": l1,
            "lambda2": l2,
            "probe_max_violation": worst,
            "probe_hypothesis_holds": bool(worst <= CERT_TOL),
            "operator_condition_holds": bool(holds),
            "lower_bound_ratio": ratio if holds else None,
            "w_lower_certificate": ratio**2 / b1 if holds else None,
        }
        if holds:
            user["verified"] = bool(sigma_min >= ratio - CERT_TOL and actual >= ratio**2 / b1 - CERT_TOL)
        else:
            user["verified"] = False
    return PerturbationReport(gap, sigma_min, certified, cert, actual, verified, user)

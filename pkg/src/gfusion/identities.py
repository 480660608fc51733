"""Verification of the partition identities and inequalities for g-fusion frames.

Each ``check_*`` function evaluates one identity or inequality for a given
frame, atom subset and probe vector and returns an
:class:`~gfusion.reports.IdentityReport`.  Precondition failures
(:class:`~gfusion.errors.NotAFrame`, :class:`~gfusion.errors.NotParseval`, ...)
are raised; :func:`run_suite` turns them into failed reports.

Four inequality families are implemented in the form their derivations
support rather than the form usually quoted; see ``CORRECTED_FORMS``.  The
quoted forms are evaluated alongside (``details["printed_form"]``) so their
failures stay visible.
"""

from __future__ import annotations

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .duality import (
    PARSEVAL_TOL,
    alternate_dual_operator,
    canonical_dual,
    is_alternate_dual,
    require_parseval,
    require_tight,
    tight_constant,
)
from .errors import (
    GFusionError,
    NonRealWeights,
    NotAFrame,
    NotAlternateDual,
    NotParseval,
    NotTight,
    ShapeMismatch,
)
from .linalg import HermitianOperator, inner, operator_norm
from .model import CoefficientVector, GFusionFrame, SubsetMask, subset_complement
from .operators import (
    AWeights,
    a_weighted_operator,
    analysis_apply,
    energy,
    frame_operator,
    inverse_frame_operator,
    inverse_sqrt_frame_operator,
    mixed_partial_operator,
    partial_frame_operator,
    synthesis_apply,
)
from .reports import (
    CheckSuiteResult,
    IdentityReport,
    as_real,
    error_report,
    identity_report,
    inequality_report,
)

REFS = {
    "frame_inequality": "frame definition: A||f||^2 <= sum mu omega^2 ||Lambda P f||^2 <= B||f||^2",
    "reconstruction": "reconstruction formula, both orderings of S^-1",
    "analysis_adjoint": "synthesis operator defined weakly; analysis operator is its adjoint",
    "general_identity": "partition identity for S^X1 built from the canonical dual",
    "parseval_identity": "partition identity for Parseval frames",
    "parseval_lower_bound": "3/4 lower bound for Parseval frames (from I - M + M^2)",
    "parseval_sum_bounds": "1/2..3/2 and 3/4..1 bounds for Parseval frames",
    "operator_range": "0 <= M - M^2 <= 1/4 I for Parseval frames",
    "weighted_identity": "partition identity with S^-1/2 for general frames",
    "weighted_operator_range": "0 <= M - M S^-1 M <= 1/4 S",
    "weighted_lower_bound": "3/4 ||S^-1||^-1 lower bound for general frames",
    "dual_partition_identity": "partition identity with M^X1 and the canonical dual",
    "tight_bounds": "lambda-tight bounds (three families)",
    "a_weighted_identity": "a-weighted identity for lambda-tight frames",
    "a_weighted_lower_bound": "a-weighted lower bound for lambda-tight frames",
    "alternate_dual_identity": "partition identity for an alternate dual pair",
    "alternate_dual_parseval_identity": "partition identity for an alternate dual of a Parseval frame",
}

CORRECTED_FORMS = {
    "parseval_lower_bound": (
        "implemented: <M^X1c f,f> + ||M^X1 f||^2 >= 3/4||f||^2; "
        "quoted: sum_X1c mu omega^2 ||Lambda P f||^2 - ||M^X1c f||^2 >= 3/4||f||^2, "
        "which fails for an orthonormal basis with X1 = {1}, f = e2 (value 0)"
    ),
    "parseval_sum_bounds": (
        "implemented: sums ||M^X1 f||^2 + ||M^X1c f||^2 and <M^X1 f,f> + ||M^X1c f||^2; "
        "quoted with minus signs, which the spectra 2t^2-2t+1 and t^2-t+1 do not support"
    ),
    "weighted_lower_bound": (
        "implemented: sum_X1 mu omega^2 ||Lambda P f||^2 + ||S^-1/2 M^X1c f||^2; quoted with a minus sign"
    ),
    "tight_bounds": (
        "implemented: constants scale with lambda^2 (3 lambda^2/4 lower bound in the third family, "
        "plus signs in the second); quoted 3 lambda^2/2 exceeds the upper bound lambda^2"
    ),
    "a_weighted_identity": (
        "implemented: lambda<S1 f,f> + ||S2 f||^2 = conj(lambda<S2 f,f>) + ||S1 f||^2 (plus signs); "
        "quoted with minus signs"
    ),
    "a_weighted_lower_bound": (
        "implemented: lower bound 3 lambda^2/4 ||f||^2 for real a; quoted 3/4 ||f||^2 (equal only for lambda = 1)"
    ),
}


def corrected_forms_note() -> str:
    return "; ".join(f"{name}: {text}" for name, text in sorted(CORRECTED_FORMS.items()))


def _norm2(v) -> float:
    return float(np.vdot(v, v).real)


def _scale(f, *factors) -> float:
    return max(1.0, _norm2(f)) * max([1.0, *[float(x) for x in factors]])


def _weighted_pairing(weights, left_ops, right_ops, f, left_map=None) -> complex:
    """``sum_i w_i <L_i f, R_i f>``, optionally with ``left_map`` applied after ``L_i``."""
    total = 0j
    for c, lop, rop in zip(weights, left_ops, right_ops):
        if c == 0:
            continue
        x = lop @ f
        if left_map is not None:
            x = left_map @ x
        total += c * inner(x, rop @ f)
    return total


# -- Bessel-level checks --------------------------------------------------------------


def check_frame_inequality(frame: GFusionFrame, f, tol: float = 1e-9) -> IdentityReport:
    """``A||f||^2 <= sum mu omega^2 ||Lambda P f||^2 <= B||f||^2`` with the spectral bounds of ``S``."""
    s = frame_operator(frame)
    nf = _norm2(f)
    e = energy(frame, f)
    return inequality_report(
        "frame_inequality",
        REFS["frame_inequality"],
        [("energy", e, s.lambda_min * nf, s.lambda_max * nf)],
        tol * _scale(f, s.lambda_max),
        {"A": s.lambda_min, "B": s.lambda_max},
    )


def check_reconstruction(frame: GFusionFrame, f, tol: float = 1e-9) -> IdentityReport:
    """Relative error of ``f = sum w P L* L P S^-1 f`` and ``f = sum w S^-1 P L* L P f``."""
    s_inv = inverse_frame_operator(frame).matrix
    w = frame.mu * frame.omega**2
    g = s_inv @ f
    left = sum(c * (op.conj().T @ (op @ g)) for c, op in zip(w, frame.operators))
    right = sum(c * (s_inv @ (op.conj().T @ (op @ f))) for c, op in zip(w, frame.operators))
    nf = max(np.sqrt(_norm2(f)), 1e-300)
    e1 = np.sqrt(_norm2(left - f)) / nf
    e2 = np.sqrt(_norm2(right - f)) / nf
    return identity_report(
        "reconstruction",
        REFS["reconstruction"],
        max(e1, e2),
        0.0,
        tol,
        {"error_s_inv_last": e1, "error_s_inv_first": e2},
    )


def check_analysis_adjoint(frame: GFusionFrame, coeffs: CoefficientVector, f, tol: float = 1e-9) -> IdentityReport:
    """``<T c, f> = <c, T* f>_mu``."""
    lhs = inner(synthesis_apply(frame, coeffs), f)
    rhs = coeffs.inner(analysis_apply(frame, f), frame.mu)
    cn = np.sqrt(sum(m * _norm2(b) for m, b in zip(frame.mu, coeffs.blocks)))
    s = frame_operator(frame)
    return identity_report(
        "analysis_adjoint", REFS["analysis_adjoint"], lhs, rhs, tol * max(1.0, cn * np.sqrt(_norm2(f) * s.lambda_max))
    )


# -- general frames --------------------------------------------------------------------


def check_general_identity(
    frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, dual: GFusionFrame | None = None
) -> IdentityReport:
    """``<S^X1 f,f> - ||S^X1 f||^2 = conj(<S^X1c f,f>) - ||S^X1c f||^2``.

    ``<S^X1 f, f>`` is summed atom by atom as ``sum_X1 mu omega^2 <dual_L f, L f>``;
    ``S^X1 f`` uses the closed form ``M^X1 S^-1 f``.
    """
    inverse_frame_operator(frame)
    comp = subset_complement(frame, mask)
    dual = canonical_dual(frame) if dual is None else dual
    w = frame.mu * frame.omega**2
    in1, in2 = mask.indicator(frame), comp.indicator(frame)
    s1 = mixed_partial_operator(frame, mask)
    s2 = mixed_partial_operator(frame, comp)
    p1 = _weighted_pairing(w * in1, dual.operators, frame.operators, f)
    p2 = _weighted_pairing(w * in2, dual.operators, frame.operators, f)
    lhs = p1 - _norm2(s1 @ f)
    rhs = np.conj(p2) - _norm2(s2 @ f)
    n1, n2 = operator_norm(s1), operator_norm(s2)
    partition = operator_norm(s1 + s2 - np.eye(frame.dim))
    return identity_report(
        "general_identity",
        REFS["general_identity"],
        lhs,
        rhs,
        tol * _scale(f, n1**2, n2**2, n1, n2),
        {"partition_residual": partition},
    )


def check_weighted_identity(frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9) -> IdentityReport:
    """``sum_X1 w||L P f||^2 - ||S^-1/2 M^X1 f||^2`` is symmetric under ``X1 <-> X1c``."""
    r = inverse_sqrt_frame_operator(frame).matrix
    comp = subset_complement(frame, mask)
    m1, m2 = partial_frame_operator(frame, mask).matrix, partial_frame_operator(frame, comp).matrix
    e1, e2 = energy(frame, f, mask), energy(frame, f, comp)
    lhs = e1 - _norm2(r @ (m1 @ f))
    rhs = e2 - _norm2(r @ (m2 @ f))
    s = frame_operator(frame)
    return identity_report(
        "weighted_identity",
        REFS["weighted_identity"],
        lhs,
        rhs,
        tol * _scale(f, s.lambda_max, s.lambda_max**2 / s.lambda_min),
    )


def check_weighted_operator_range(frame: GFusionFrame, mask: SubsetMask, tol: float = 1e-10) -> IdentityReport:
    """Spectrum of ``S^-1/2 (M - M S^-1 M) S^-1/2`` lies in ``[0, 1/4]``."""
    r = inverse_sqrt_frame_operator(frame).matrix
    s_inv = inverse_frame_operator(frame).matrix
    m = partial_frame_operator(frame, mask).matrix
    op = HermitianOperator(r @ (m - m @ s_inv @ m) @ r, hermitian_tol=1e-8)
    return inequality_report(
        "weighted_operator_range",
        REFS["weighted_operator_range"],
        [("lambda_min", op.lambda_min, 0.0, None), ("lambda_max", op.lambda_max, None, 0.25)],
        tol,
    )


def check_weighted_lower_bound(frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9) -> IdentityReport:
    """``sum_X1 w||L P f||^2 + ||S^-1/2 M^X1c f||^2 >= 3/4 ||S^-1||^-1 ||f||^2``."""
    r = inverse_sqrt_frame_operator(frame).matrix
    s = frame_operator(frame)
    comp = subset_complement(frame, mask)
    m2 = partial_frame_operator(frame, comp).matrix
    e1 = energy(frame, f, mask)
    tail = _norm2(r @ (m2 @ f))
    value = e1 + tail
    lower = 0.75 * s.lambda_min * _norm2(f)
    printed = e1 - tail
    t = tol * _scale(f, s.lambda_max, s.lambda_max**2 / s.lambda_min)
    return inequality_report(
        "weighted_lower_bound",
        REFS["weighted_lower_bound"],
        [("value", value, lower, None)],
        t,
        {"printed_form": printed, "printed_form_holds": bool(printed >= lower - t)},
    )


def check_dual_partition_identity(
    frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, dual: GFusionFrame | None = None
) -> IdentityReport:
    """``sum_X1 w||L P f||^2 - <S^-1 M^X1 f, M^X1 f>`` is symmetric under ``X1 <-> X1c``.

    ``<S^-1 g, g>`` is evaluated through the canonical dual
    (``sum_i w_i ||dual_L_i g||^2``) and directly; both must agree.
    """
    s_inv = inverse_frame_operator(frame)
    dual = canonical_dual(frame) if dual is None else dual
    comp = subset_complement(frame, mask)
    w = frame.mu * frame.omega**2
    g1 = partial_frame_operator(frame, mask).matrix @ f
    g2 = partial_frame_operator(frame, comp).matrix @ f

    def via_dual(g):
        return float(sum(c * _norm2(op @ g) for c, op in zip(w, dual.operators)))

    q1, q2 = via_dual(g1), via_dual(g2)
    d1, d2 = s_inv.quadratic_form(g1), s_inv.quadratic_form(g2)
    e1, e2 = energy(frame, f, mask), energy(frame, f, comp)
    s = frame_operator(frame)
    t = tol * _scale(f, s.lambda_max, s.lambda_max**2 / s.lambda_min)
    agreement = max(abs(q1 - d1), abs(q2 - d2))
    return identity_report(
        "dual_partition_identity",
        REFS["dual_partition_identity"],
        e1 - q1,
        e2 - q2,
        t,
        {"dual_vs_direct": agreement, "lhs_direct": e1 - d1, "rhs_direct": e2 - d2},
        extra_ok=agreement <= t,
    )


# -- Parseval frames -------------------------------------------------------------------


def _parseval_parts(frame, mask, f, parseval_tol):
    require_parseval(frame, parseval_tol)
    comp = subset_complement(frame, mask)
    m1 = partial_frame_operator(frame, mask).matrix
    m2 = partial_frame_operator(frame, comp).matrix
    return comp, m1, m2, energy(frame, f, mask), energy(frame, f, comp)


def check_parseval_identity(
    frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, parseval_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """``sum_X1 w||L P f||^2 - ||M^X1 f||^2 = sum_X1c w||L P f||^2 - ||M^X1c f||^2``."""
    _, m1, m2, e1, e2 = _parseval_parts(frame, mask, f, parseval_tol)
    return identity_report(
        "parseval_identity",
        REFS["parseval_identity"],
        e1 - _norm2(m1 @ f),
        e2 - _norm2(m2 @ f),
        tol * _scale(f),
    )


def printed_parseval_lower_value(frame: GFusionFrame, mask: SubsetMask, f) -> float:
    """The quoted (uncorrected) expression ``sum_X1c w||L P f||^2 - ||M^X1c f||^2``."""
    comp = subset_complement(frame, mask)
    return energy(frame, f, comp) - _norm2(partial_frame_operator(frame, comp).matrix @ f)


def check_parseval_lower_bound(
    frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, parseval_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """``3/4||f||^2 <= <M^X1c f,f> + ||M^X1 f||^2 <= ||f||^2``."""
    _, m1, m2, e1, e2 = _parseval_parts(frame, mask, f, parseval_tol)
    nf = _norm2(f)
    value = e2 + _norm2(m1 @ f)
    printed = e2 - _norm2(m2 @ f)
    t = tol * _scale(f)
    return inequality_report(
        "parseval_lower_bound",
        REFS["parseval_lower_bound"],
        [("value", value, 0.75 * nf, nf)],
        t,
        {"printed_form": printed, "printed_form_holds": bool(printed >= 0.75 * nf - t)},
    )


def check_parseval_sum_bounds(
    frame: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, parseval_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """``1/2 <= ||M^X1 f||^2 + ||M^X1c f||^2 <= 3/2`` and ``3/4 <= <M^X1 f,f> + ||M^X1c f||^2 <= 1`` (times ``||f||^2``).

    The sharp upper bound of the first sum is ``||f||^2``; its margin is
    recorded in ``details["sharp_upper_margin"]``.
    """
    _, m1, m2, e1, e2 = _parseval_parts(frame, mask, f, parseval_tol)
    nf = _norm2(f)
    a1, a2 = _norm2(m1 @ f), _norm2(m2 @ f)
    norm_sum = a1 + a2
    return inequality_report(
        "parseval_sum_bounds",
        REFS["parseval_sum_bounds"],
        [("norm_sum", norm_sum, 0.5 * nf, 1.5 * nf), ("mixed_sum", e1 + a2, 0.75 * nf, nf)],
        tol * _scale(f),
        {"sharp_upper_margin": nf - norm_sum, "printed_norm_difference": a1 - a2},
    )


def check_operator_range(
    frame: GFusionFrame, mask: SubsetMask, tol: float = 1e-10, parseval_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """Spectrum of ``M^X1 - (M^X1)^2`` lies in ``[0, 1/4]`` for a Parseval frame."""
    require_parseval(frame, parseval_tol)
    m = partial_frame_operator(frame, mask).matrix
    op = HermitianOperator(m - m @ m)
    return inequality_report(
        "operator_range",
        REFS["operator_range"],
        [("lambda_min", op.lambda_min, 0.0, None), ("lambda_max", op.lambda_max, None, 0.25)],
        tol,
    )


# -- tight frames ----------------------------------------------------------------------


def check_tight_bounds(
    frame: GFusionFrame, mask: SubsetMask, f, lam: float, tol: float = 1e-9, tight_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """The three bound families for a ``lam``-tight frame, with ``lam**2``-scaled constants.

    (i)   ``0 <= lam sum_X1 w||L P f||^2 - ||M^X1 f||^2 <= lam^2/4 ||f||^2``
    (ii)  ``lam^2/2 ||f||^2 <= ||M^X1 f||^2 + ||M^X1c f||^2 <= 3 lam^2/2 ||f||^2``
    (iii) ``3 lam^2/4 ||f||^2 <= lam sum_X1 w||L P f||^2 + ||M^X1c f||^2 <= lam^2 ||f||^2``
    """
    require_tight(frame, lam, tight_tol)
    comp = subset_complement(frame, mask)
    m1 = partial_frame_operator(frame, mask).matrix
    m2 = partial_frame_operator(frame, comp).matrix
    e1 = energy(frame, f, mask)
    nf = _norm2(f)
    a1, a2 = _norm2(m1 @ f), _norm2(m2 @ f)
    l2 = lam * lam
    t = tol * _scale(f, l2)
    third = lam * e1 + a2
    return inequality_report(
        "tight_bounds",
        REFS["tight_bounds"],
        [
            ("i", lam * e1 - a1, 0.0, l2 / 4 * nf),
            ("ii", a1 + a2, l2 / 2 * nf, 1.5 * l2 * nf),
            ("iii", third, 0.75 * l2 * nf, l2 * nf),
        ],
        t,
        {"lambda": lam, "printed_iii_lower": 1.5 * l2 * nf, "printed_iii_holds": bool(third >= 1.5 * l2 * nf - t)},
    )


def _a_weighted_parts(frame, a, f, lam, tight_tol):
    if lam is None:
        lam = tight_constant(frame, tight_tol)
    else:
        require_tight(frame, lam, tight_tol)
    s = frame_operator(frame).matrix
    s1 = a_weighted_operator(frame, a)
    s2 = s - s1
    w = frame.mu * frame.omega**2
    norms = np.array([_norm2(op @ f) for op in frame.operators])
    q1 = complex(np.sum(a.values * w * norms))
    q2 = complex(np.sum((1 - a.values) * w * norms))
    return lam, s1, s2, q1, q2


def check_a_weighted_identity(
    frame: GFusionFrame, a: AWeights, f, lam: float | None = None, tol: float = 1e-9, tight_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """``lam<S1 f,f> + ||S2 f||^2 = conj(lam<S2 f,f>) + ||S1 f||^2`` with ``S2 = S - S1``.

    ``<S1 f,f>`` is summed atom by atom as ``sum a_x w_x ||L_x P f||^2``.
    """
    lam, s1, s2, q1, q2 = _a_weighted_parts(frame, a, f, lam, tight_tol)
    lhs = lam * q1 + _norm2(s2 @ f)
    rhs = np.conj(lam * q2) + _norm2(s1 @ f)
    printed_lhs = lam * q1 - _norm2(s2 @ f)
    printed_rhs = np.conj(lam * q2) - _norm2(s1 @ f)
    big = lam * (1 + a.sup_norm)
    return identity_report(
        "a_weighted_identity",
        REFS["a_weighted_identity"],
        lhs,
        rhs,
        tol * _scale(f, big**2),
        {"lambda": lam, "printed_form_residual": float(abs(printed_lhs - printed_rhs))},
    )


def check_a_weighted_lower_bound(
    frame: GFusionFrame, a: AWeights, f, lam: float | None = None, tol: float = 1e-9, tight_tol: float = PARSEVAL_TOL
) -> IdentityReport:
    """``lam<S1 f,f> + ||S2 f||^2 >= 3 lam^2/4 ||f||^2`` for real weights ``a``."""
    if not a.is_real:
        raise NonRealWeights("the lower bound needs real weights a_x")
    a = AWeights(np.real(a.values))
    lam, s1, s2, q1, _ = _a_weighted_parts(frame, a, f, lam, tight_tol)
    nf = _norm2(f)
    big = lam * (1 + a.sup_norm)
    t = tol * _scale(f, big**2)
    value = lam * as_real(q1, big * nf, "<S1 f, f>") + _norm2(s2 @ f)
    return inequality_report(
        "a_weighted_lower_bound",
        REFS["a_weighted_lower_bound"],
        [("value", value, 0.75 * lam * lam * nf, None)],
        t,
        {"lambda": lam, "printed_lower": 0.75 * nf, "printed_holds": bool(value >= 0.75 * nf - t)},
    )


# -- alternate duals -------------------------------------------------------------------


def _require_alternate(v, w, dual_tol):
    ok, residual = is_alternate_dual(v, w, dual_tol)
    if not ok:
        raise NotAlternateDual(f"alternate-dual residual {residual:.3e}")
    return residual


def check_alternate_dual_identity(
    v: GFusionFrame, w: GFusionFrame, mask: SubsetMask, f, tol: float = 1e-9, dual_tol: float | None = None
) -> IdentityReport:
    """``<T^X1 f,f> - ||T^X1 f||^2 = conj(<T^X1c f,f>) - ||T^X1c f||^2``.

    ``T^X1 = sum_X1 mu omega nu P_G Gamma* S^-1 Lambda P_F``; ``<T^X1 f, f>`` is
    summed as ``sum_X1 mu omega nu <S^-1 Lambda f, Gamma f>``.  Also requires
    ``T^X1 + T^X1c = I``.
    """
    dual_residual = _require_alternate(v, w, dual_tol)
    comp = subset_complement(v, mask)
    s_inv = inverse_frame_operator(v).matrix
    weights = v.mu * v.omega * w.omega
    p1 = _weighted_pairing(weights * mask.indicator(v), v.operators, w.operators, f, s_inv)
    p2 = _weighted_pairing(weights * comp.indicator(v), v.operators, w.operators, f, s_inv)
    t1 = alternate_dual_operator(v, w, mask)
    t2 = alternate_dual_operator(v, w, comp)
    n1, n2 = operator_norm(t1), operator_norm(t2)
    scale = _scale(f, n1**2, n2**2, n1, n2)
    partition = operator_norm(t1 + t2 - np.eye(v.dim))
    return identity_report(
        "alternate_dual_identity",
        REFS["alternate_dual_identity"],
        p1 - _norm2(t1 @ f),
        np.conj(p2) - _norm2(t2 @ f),
        tol * scale,
        {"partition_residual": partition, "dual_residual": dual_residual},
        extra_ok=partition <= 1e-10 * max(1.0, n1, n2),
    )


def check_alternate_dual_parseval_identity(
    v: GFusionFrame,
    w: GFusionFrame,
    mask: SubsetMask,
    f,
    tol: float = 1e-9,
    dual_tol: float | None = None,
    parseval_tol: float = PARSEVAL_TOL,
) -> IdentityReport:
    """Alternate-dual identity for Parseval ``v``: pairings ``<Lambda f, Gamma f>`` without ``S^-1``.

    The left synthesis term keeps ``S^-1`` and the right one drops it, as in
    the quoted statement; the complement pairing is conjugated as in the
    general identity.
    """
    require_parseval(v, parseval_tol)
    dual_residual = _require_alternate(v, w, dual_tol)
    comp = subset_complement(v, mask)
    weights = v.mu * v.omega * w.omega
    in1, in2 = mask.indicator(v), comp.indicator(v)
    p1 = _weighted_pairing(weights * in1, v.operators, w.operators, f)
    p2 = _weighted_pairing(weights * in2, v.operators, w.operators, f)
    t1 = alternate_dual_operator(v, w, mask)
    t2 = sum(c * (g.conj().T @ lop) for c, lop, g in zip(weights * in2, v.operators, w.operators))
    t2 = np.zeros((v.dim, v.dim)) + t2
    n1, n2 = operator_norm(t1), operator_norm(t2)
    return identity_report(
        "alternate_dual_parseval_identity",
        REFS["alternate_dual_parseval_identity"],
        p1 - _norm2(t1 @ f),
        np.conj(p2) - _norm2(t2 @ f),
        tol * _scale(f, n1**2, n2**2, n1, n2),
        {"dual_residual": dual_residual},
    )


# -- suite -----------------------------------------------------------------------------

INAPPLICABLE = (NotAFrame, NotParseval, NotTight, NotAlternateDual)


@dataclass(frozen=True)
class SuiteConfig:
    trials: int = 100
    seed: int = 0
    tol_rel: float = 1e-9
    range_tol: float = 1e-10
    parseval_tol: float = PARSEVAL_TOL
    mask: SubsetMask | None = None
    skip_inapplicable: bool = False
    workers: int = 1


def check_rng(seed: int, name: str, trial: int) -> np.random.Generator:
    """Stream for one ``(seed, check name, trial)``; independent of scheduling."""
    key = (zlib.crc32(name.encode()), trial)
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=int(seed), spawn_key=key)))


def draw_mask(rng: np.random.Generator, frame: GFusionFrame, trial: int, fixed: SubsetMask | None = None) -> SubsetMask:
    """Trial 0 draws the empty set, trial 1 every atom, later trials a fair coin per atom."""
    if fixed is not None:
        return fixed
    if trial == 0:
        return SubsetMask.empty()
    if trial == 1:
        return SubsetMask.everything(frame)
    keep = rng.random(len(frame)) < 0.5
    return SubsetMask.of(i for i, k in zip(frame.ids, keep) if k)


def draw_unit_vector(rng: np.random.Generator, n: int, scalar: str) -> np.ndarray:
    if scalar == "complex":
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    else:
        f = rng.standard_normal(n)
    return f / np.linalg.norm(f)


class _Context:
    """Per-suite lazily computed shared objects (canonical dual, tight constant)."""

    def __init__(self, frame: GFusionFrame, cfg: SuiteConfig):
        self.frame = frame
        self.cfg = cfg
        self._dual = None
        self._lam = None

    @property
    def dual(self) -> GFusionFrame:
        if self._dual is None:
            self._dual = canonical_dual(self.frame)
        return self._dual

    @property
    def lam(self) -> float:
        if self._lam is None:
            self._lam = tight_constant(self.frame, self.cfg.parseval_tol)
        return self._lam


def _frame_runners() -> dict[str, tuple[str, Callable]]:
    def weights(rng, frame, real):
        a = rng.uniform(-1.0, 2.0, len(frame))
        if not real:
            a = a + 1j * rng.uniform(-1.0, 1.0, len(frame))
        return AWeights(a)

    def coeffs(rng, frame):
        blocks = [draw_unit_vector(rng, m, frame.scalar) for m in frame.out_dims]
        return CoefficientVector(tuple(blocks))

    return {
        "frame_inequality": ("inequality", lambda c, fr, rng, t, f, x: check_frame_inequality(fr, f, c.tol_rel)),
        "reconstruction": ("identity", lambda c, fr, rng, t, f, x: check_reconstruction(fr, f, c.tol_rel)),
        "analysis_adjoint": (
            "identity",
            lambda c, fr, rng, t, f, x: check_analysis_adjoint(fr, coeffs(rng, fr), f, c.tol_rel),
        ),
        "general_identity": (
            "identity",
            lambda c, fr, rng, t, f, x: check_general_identity(fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel, x.dual),
        ),
        "parseval_identity": (
            "identity",
            lambda c, fr, rng, t, f, x: check_parseval_identity(
                fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel, c.parseval_tol
            ),
        ),
        "parseval_lower_bound": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_parseval_lower_bound(
                fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel, c.parseval_tol
            ),
        ),
        "parseval_sum_bounds": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_parseval_sum_bounds(
                fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel, c.parseval_tol
            ),
        ),
        "operator_range": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_operator_range(fr, draw_mask(rng, fr, t, c.mask), c.range_tol, c.parseval_tol),
        ),
        "weighted_identity": (
            "identity",
            lambda c, fr, rng, t, f, x: check_weighted_identity(fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel),
        ),
        "weighted_operator_range": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_weighted_operator_range(fr, draw_mask(rng, fr, t, c.mask), c.range_tol),
        ),
        "weighted_lower_bound": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_weighted_lower_bound(fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel),
        ),
        "dual_partition_identity": (
            "identity",
            lambda c, fr, rng, t, f, x: check_dual_partition_identity(
                fr, draw_mask(rng, fr, t, c.mask), f, c.tol_rel, x.dual
            ),
        ),
        "tight_bounds": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_tight_bounds(
                fr, draw_mask(rng, fr, t, c.mask), f, x.lam, c.tol_rel, c.parseval_tol
            ),
        ),
        "a_weighted_identity": (
            "identity",
            lambda c, fr, rng, t, f, x: check_a_weighted_identity(
                fr, weights(rng, fr, fr.scalar == "real"), f, x.lam, c.tol_rel, c.parseval_tol
            ),
        ),
        "a_weighted_lower_bound": (
            "inequality",
            lambda c, fr, rng, t, f, x: check_a_weighted_lower_bound(
                fr, weights(rng, fr, True), f, x.lam, c.tol_rel, c.parseval_tol
            ),
        ),
    }


def _pair_runners() -> dict[str, tuple[str, Callable]]:
    from . import pairs

    return {
        "pair_adjoint_swap": ("identity", lambda c, pr, rng, t, f, x: pairs.check_adjoint_swap(*pr)),
        "pair_norm_bound": ("inequality", lambda c, pr, rng, t, f, x: pairs.check_norm_bound(*pr, tol=c.tol_rel)),
        "pair_directional_bounds": (
            "inequality",
            lambda c, pr, rng, t, f, x: pairs.check_directional_bounds(*pr, f, tol=c.tol_rel),
        ),
        "alternate_dual_identity": (
            "identity",
            lambda c, pr, rng, t, f, x: check_alternate_dual_identity(
                pr[0], pr[1], draw_mask(rng, pr[0], t, c.mask), f, c.tol_rel
            ),
        ),
        "alternate_dual_parseval_identity": (
            "identity",
            lambda c, pr, rng, t, f, x: check_alternate_dual_parseval_identity(
                pr[0], pr[1], draw_mask(rng, pr[0], t, c.mask), f, c.tol_rel, parseval_tol=c.parseval_tol
            ),
        ),
    }


def _run_one(name, kind, runner, target, frame, cfg, ctx):
    ref = REFS.get(name, name)
    worst: IdentityReport | None = None
    done = 0
    for t in range(cfg.trials):
        rng = check_rng(cfg.seed, name, t)
        f = draw_unit_vector(rng, frame.dim, frame.scalar)
        try:
            rep = runner(cfg, target, rng, t, f, ctx)
        except INAPPLICABLE + (ShapeMismatch,) as exc:
            return error_report(name, ref, kind, exc).with_trials(done + 1), exc
        except (GFusionError, ArithmeticError, ValueError) as exc:
            return error_report(name, ref, kind, exc).with_trials(done + 1), None
        done += 1
        if worst is None or rep.badness() > worst.badness():
            worst = rep
    return worst.with_trials(done), None


def run_suite(target, config: SuiteConfig | None = None) -> CheckSuiteResult:
    """Run every check over ``config.trials`` seeded draws of (mask, f, a).

    ``target`` is a frame or a ``(V, W)`` pair.  Each check keeps its worst
    trial.  A failing precondition (not a frame / not Parseval / not tight /
    not an alternate dual) yields a failed report, or a skip entry when
    ``config.skip_inapplicable``.  The suite never raises for per-check errors.
    """
    from .io import frame_digest, pair_digest

    cfg = config or SuiteConfig()
    if cfg.trials < 1:
        raise ValueError("trials must be >= 1")
    if isinstance(target, GFusionFrame):
        frame, runners, digest = target, _frame_runners(), frame_digest(target)
    else:
        v, w = target
        frame, runners, digest = v, _pair_runners(), pair_digest(v, w)
    if cfg.mask is not None:
        cfg.mask.check(frame)
    ctx = _Context(frame, cfg)
    # the shared context is filled before any parallel work so workers only read it
    for attr in ("dual", "lam"):
        try:
            getattr(ctx, attr)
        except (GFusionError, ArithmeticError):
            pass

    names = sorted(runners)

    def job(name):
        kind, runner = runners[name]
        return _run_one(name, kind, runner, target, frame, cfg, ctx)

    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(job, names))
    else:
        results = [job(n) for n in names]
    reports, skipped = [], []
    for name, (rep, gate) in zip(names, results):
        if gate is not None and cfg.skip_inapplicable:
            skipped.append((name, rep.error))
        else:
            reports.append(rep)
    return CheckSuiteResult(digest, tuple(reports), tuple(skipped))

"""Result records produced by the identity and pair checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import GFusionError

IMAG_TOL = 1e-10


class NonRealQuantity(GFusionError, ArithmeticError):
    """A quantity that must be real carries a non-negligible imaginary part."""


def as_real(z, scale: float = 1.0, what: str = "quantity") -> float:
    z = complex(z)
    if abs(z.imag) > IMAG_TOL * max(1.0, scale):
        raise NonRealQuantity(f"{what} has imaginary part {z.imag:.3e}")
    return z.real


def _scalar(z):
    """Real numbers stay float; genuinely complex numbers stay complex."""
    if z is None:
        return None
    z = complex(z)
    return z.real if z.imag == 0 else z


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one check.

    Identities compare ``lhs`` with ``rhs`` (``residual = |lhs - rhs|``).
    Inequalities place ``lhs`` between ``lo`` and ``hi``; ``margin`` is the
    distance to the nearest bound (negative when violated) and ``residual``
    the amount of violation.  ``tol`` is the absolute tolerance applied.
    """

    name: str
    paper_ref: str
    kind: str
    lhs: float | complex | None
    rhs: float | complex | None
    residual: float
    margin: float | None
    passed: bool
    tol: float
    lo: float | None = None
    hi: float | None = None
    details: Mapping[str, Any] = field(default_factory=dict)
    error: str | None = None
    trials: int = 1

    def with_trials(self, trials: int) -> "IdentityReport":
        return IdentityReport(**{**self.__dict__, "trials": trials})

    def badness(self) -> float:
        """Ordering key for picking the worst trial."""
        if self.error is not None:
            return float("inf")
        if self.kind == "inequality":
            return -(self.margin if self.margin is not None else 0.0) / max(self.tol, 1e-300)
        return self.residual / max(self.tol, 1e-300)


def identity_report(name, paper_ref, lhs, rhs, tol, details=None, extra_ok=True) -> IdentityReport:
    residual = float(abs(complex(lhs) - complex(rhs)))
    return IdentityReport(
        name=name,
        paper_ref=paper_ref,
        kind="identity",
        lhs=_scalar(lhs),
        rhs=_scalar(rhs),
        residual=residual,
        margin=None,
        passed=bool(residual <= tol and extra_ok),
        tol=float(tol),
        details=dict(details or {}),
    )


def inequality_report(name, paper_ref, parts: Sequence[tuple[str, float, float | None, float | None]], tol, details=None) -> IdentityReport:
    """``parts`` is a list of ``(label, value, lo, hi)``; either bound may be None."""
    margins = []
    part_info = []
    for label, value, lo, hi in parts:
        m = np.inf
        if lo is not None:
            m = min(m, value - lo)
        if hi is not None:
            m = min(m, hi - value)
        margins.append(m)
        part_info.append({"label": label, "value": float(value), "lo": lo, "hi": hi, "margin": float(m)})
    margin = float(min(margins))
    label, value, lo, hi = parts[0]
    info = dict(details or {})
    if len(parts) > 1:
        info["parts"] = part_info
    return IdentityReport(
        name=name,
        paper_ref=paper_ref,
        kind="inequality",
        lhs=float(value),
        rhs=None,
        residual=max(0.0, -margin),
        margin=margin,
        passed=bool(margin >= -tol),
        tol=float(tol),
        lo=lo,
        hi=hi,
        details=info,
    )


def error_report(name: str, paper_ref: str, kind: str, exc: BaseException) -> IdentityReport:
    return IdentityReport(
        name=name,
        paper_ref=paper_ref,
        kind=kind,
        lhs=None,
        rhs=None,
        residual=float("inf"),
        margin=None,
        passed=False,
        tol=0.0,
        error=f"{type(exc).__name__}: {exc}",
    )


@dataclass(frozen=True)
class CheckSuiteResult:
    frame_digest: str
    reports: tuple[IdentityReport, ...]
    skipped: tuple[tuple[str, str], ...] = ()

    @property
    def overall_pass(self) -> bool:
        return all(r.passed for r in self.reports)

    @property
    def trials(self) -> dict[str, int]:
        return {r.name: r.trials for r in self.reports}

    def __getitem__(self, name: str) -> IdentityReport:
        for r in self.reports:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[IdentityReport]:
        return [r for r in self.reports if not r.passed]

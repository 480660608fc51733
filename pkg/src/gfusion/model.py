"""Data model for g-fusion frames over a finite weighted measure space.

Every integral over the measure space becomes a finite sum over atoms,
``sum_i mu_i * (...)``.  Each atom carries a measure weight ``mu``, a frame
weight ``omega``, a closed subspace ``F`` (orthonormal basis) and a local
operator ``Lambda`` stored as an ``m x n`` matrix acting on the whole space and
canonicalized so that ``Lambda == Lambda @ P_F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeMismatch, UnknownAtomId
from .linalg import (
    HermitianOperator,
    RANK_TOL,
    invertibility_floor,
    orthonormalize,
    projector_from_basis,
    sup_norm,
)

SCALARS = ("real", "complex")
ORTHONORMAL_TOL = 1e-10
CANONICAL_TOL = 1e-12
# below this relative residual an operator is already canonical and is kept bit-for-bit
_CANONICAL_KEEP = 1e-14


def _dtype(scalar: str):
    if scalar not in SCALARS:
        raise ValueError(f"scalar must be one of {SCALARS}, got {scalar!r}")
    return np.float64 if scalar == "real" else np.complex128


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class MeasureAtom:
    id: str
    mu: float
    omega: float

    def __post_init__(self):
        for name in ("mu", "omega"):
            v = getattr(self, name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"atom {self.id!r}: {name} must be finite and nonnegative, got {v!r}")
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "omega", float(self.omega))


@dataclass(frozen=True)
class MeasureSpace:
    atoms: tuple[MeasureAtom, ...]

    def __post_init__(self):
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise ValueError("measure space needs at least one atom")
        ids = [a.id for a in atoms]
        if len(set(ids)) != len(ids):
            raise ValueError("atom ids must be unique")

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.atoms)

    @property
    def mu(self) -> np.ndarray:
        return np.array([a.mu for a in self.atoms])

    @property
    def omega(self) -> np.ndarray:
        return np.array([a.omega for a in self.atoms])

    def same_points(self, other: "MeasureSpace") -> bool:
        """Same atom ids and measure weights; frame weights may differ."""
        return self.ids == other.ids and np.array_equal(self.mu, other.mu)


@dataclass(frozen=True, eq=False)
class Subspace:
    """Closed subspace given by an orthonormal basis (``n x d`` columns)."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis)
        if b.ndim != 2 or b.shape[1] < 1 or b.shape[1] > b.shape[0]:
            raise ShapeMismatch(f"basis must be n x d with 1 <= d <= n, got {b.shape}")
        gram = b.conj().T @ b
        if np.abs(gram - np.eye(b.shape[1])).max() > ORTHONORMAL_TOL:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", _frozen(b))

    @classmethod
    def span(cls, vectors, rank_tol: float = RANK_TOL) -> "Subspace":
        """Subspace spanned by a ``(k, n)`` array of vectors.

        Already orthonormal input is kept exactly, so serialized frames
        round-trip bit-for-bit.
        """
        v = np.atleast_2d(np.asarray(vectors))
        if v.shape[0] <= v.shape[1] and np.all(np.isfinite(v)):
            gram = v.conj() @ v.T
            if np.abs(gram - np.eye(v.shape[0])).max() <= 1e-13:
                return cls(v.T.copy())
        basis, _ = orthonormalize(v, rank_tol)
        return cls(basis)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def projection(self) -> np.ndarray:
        return projector_from_basis(self.basis)


def projector(s: Subspace) -> HermitianOperator:
    """Orthogonal projection onto ``s``."""
    return HermitianOperator(s.projection)


def canonicalize(op, subspace: Subspace) -> np.ndarray:
    """Return ``op @ P`` unless ``op`` already vanishes off the subspace.

    The early return makes the operation idempotent bit-for-bit.
    """
    op = np.atleast_2d(np.asarray(op))
    if op.shape[1] != subspace.ambient_dim:
        raise ShapeMismatch(f"local operator has {op.shape[1]} columns, space has dimension {subspace.ambient_dim}")
    p = subspace.projection
    if sup_norm(op - op @ p) <= _CANONICAL_KEEP * max(1.0, sup_norm(op)):
        return op
    return op @ p


@dataclass(frozen=True, eq=False)
class GFusionFrame:
    """A g-fusion family: atoms with weights, subspaces and local operators.

    The frame property (positive lower bound) is not assumed; Bessel-only
    families are representable and only frame-dependent operations refuse them.
    Use :meth:`build` to construct from spanning sets and raw operators.
    """

    dim: int
    scalar: str
    space: MeasureSpace
    subspaces: tuple[Subspace, ...]
    operators: tuple[np.ndarray, ...]
    _grams: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        dtype = _dtype(self.scalar)
        n = int(self.dim)
        if n < 1:
            raise ShapeMismatch("dimension must be at least 1")
        subspaces = tuple(self.subspaces)
        k = len(self.space)
        if len(subspaces) != k or len(self.operators) != k:
            raise ShapeMismatch("atoms, subspaces and operators must have equal length")
        ops = []
        for atom, sub, op in zip(self.space.atoms, subspaces, self.operators):
            if sub.ambient_dim != n:
                raise ShapeMismatch(f"atom {atom.id!r}: subspace lives in dimension {sub.ambient_dim}, expected {n}")
            op = np.atleast_2d(np.asarray(op))
            if op.shape[1] != n:
                raise ShapeMismatch(f"atom {atom.id!r}: local operator must have {n} columns, got {op.shape}")
            if not np.all(np.isfinite(op)):
                raise ValueError(f"atom {atom.id!r}: local operator has non-finite entries")
            if dtype is np.float64 and (np.iscomplexobj(op) or np.iscomplexobj(sub.basis)):
                if np.abs(np.imag(op)).max() > 0 or np.abs(np.imag(sub.basis)).max() > 0:
                    raise ValueError("real frame given complex data")
                op = np.real(op)
            resid = sup_norm(op - op @ sub.projection)
            if resid > CANONICAL_TOL * max(1.0, sup_norm(op)):
                raise ValueError(f"atom {atom.id!r}: local operator is not canonical (use GFusionFrame.build)")
            ops.append(_frozen(op.astype(dtype, copy=False)))
        if dtype is np.float64:
            subspaces = tuple(
                s if not np.iscomplexobj(s.basis) else Subspace(np.real(s.basis)) for s in subspaces
            )
        else:
            subspaces = tuple(
                s if np.iscomplexobj(s.basis) else Subspace(s.basis.astype(np.complex128)) for s in subspaces
            )
        weights = self.space.mu * self.space.omega**2
        if not np.any(weights > 0):
            raise ValueError("at least one atom needs mu * omega**2 > 0")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "subspaces", subspaces)
        object.__setattr__(self, "operators", tuple(ops))
        grams = np.stack([op.conj().T @ op for op in ops])
        grams.flags.writeable = False
        object.__setattr__(self, "_grams", grams)

    @classmethod
    def build(
        cls,
        atoms: Sequence[MeasureAtom] | MeasureSpace,
        spans: Sequence,
        operators: Sequence,
        scalar: str | None = None,
        rank_tol: float = RANK_TOL,
    ) -> "GFusionFrame":
        """Build a frame from spanning sets (``(k, n)`` arrays) and raw local operators."""
        space = atoms if isinstance(atoms, MeasureSpace) else MeasureSpace(tuple(atoms))
        if scalar is None:
            anyc = any(np.iscomplexobj(np.asarray(x)) for x in list(spans) + list(operators))
            scalar = "complex" if anyc else "real"
        dtype = _dtype(scalar)
        subs = []
        for s in spans:
            if isinstance(s, Subspace):
                subs.append(s)
            else:
                subs.append(Subspace.span(np.asarray(s, dtype=dtype), rank_tol))
        if not subs:
            raise ShapeMismatch("no atoms")
        n = subs[0].ambient_dim
        ops = [canonicalize(np.asarray(op, dtype=dtype), sub) for op, sub in zip(operators, subs)]
        return cls(n, scalar, space, tuple(subs), tuple(ops))

    def __len__(self) -> int:
        return len(self.space)

    @property
    def ids(self) -> tuple[str, ...]:
        return self.space.ids

    @property
    def mu(self) -> np.ndarray:
        return self.space.mu

    @property
    def omega(self) -> np.ndarray:
        return self.space.omega

    @property
    def out_dims(self) -> tuple[int, ...]:
        return tuple(op.shape[0] for op in self.operators)

    @property
    def dtype(self):
        return _dtype(self.scalar)

    @property
    def grams(self) -> np.ndarray:
        """Stack of ``Lambda_i* Lambda_i`` (already projected, since operators are canonical)."""
        return self._grams

    def index_of(self, atom_id: str) -> int:
        try:
            return self.ids.index(atom_id)
        except ValueError:
            raise UnknownAtomId(atom_id) from None

    def replace(self, *, omega=None, operators=None, subspaces=None) -> "GFusionFrame":
        """Copy with new frame weights, local operators and/or subspaces (operators re-canonicalized)."""
        space = self.space
        if omega is not None:
            omega = np.broadcast_to(np.asarray(omega, dtype=float), (len(self),))
            space = MeasureSpace(tuple(MeasureAtom(a.id, a.mu, w) for a, w in zip(space.atoms, omega)))
        subs = self.subspaces if subspaces is None else tuple(subspaces)
        ops = self.operators if operators is None else tuple(operators)
        scalar = self.scalar
        if any(np.iscomplexobj(o) for o in ops):
            scalar = "complex"
        ops = tuple(canonicalize(np.asarray(o, dtype=_dtype(scalar)), s) for o, s in zip(ops, subs))
        return GFusionFrame(self.dim, scalar, space, subs, ops)

    def as_complex(self) -> "GFusionFrame":
        if self.scalar == "complex":
            return self
        return GFusionFrame(self.dim, "complex", self.space, self.subspaces, self.operators)


@dataclass(frozen=True)
class SubsetMask:
    """A subset of atom ids."""

    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    @classmethod
    def of(cls, ids: Iterable[str]) -> "SubsetMask":
        return cls(frozenset(ids))

    @classmethod
    def everything(cls, frame: GFusionFrame) -> "SubsetMask":
        return cls(frozenset(frame.ids))

    @classmethod
    def empty(cls) -> "SubsetMask":
        return cls(frozenset())

    def check(self, frame: GFusionFrame) -> None:
        unknown = self.members - set(frame.ids)
        if unknown:
            raise UnknownAtomId(", ".join(sorted(unknown)))

    def indicator(self, frame: GFusionFrame) -> np.ndarray:
        """Boolean array over the frame's atoms, in atom order."""
        self.check(frame)
        return np.array([i in self.members for i in frame.ids], dtype=bool)

    def __len__(self) -> int:
        return len(self.members)


def subset_complement(frame: GFusionFrame, mask: SubsetMask) -> SubsetMask:
    mask.check(frame)
    return SubsetMask(frozenset(frame.ids) - mask.members)


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Element of the discretized coefficient space: one block per atom."""

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self):
        blocks = tuple(_frozen(np.atleast_1d(np.asarray(b))) for b in self.blocks)
        for b in blocks:
            if b.ndim != 1 or not np.all(np.isfinite(b)):
                raise ValueError("coefficient blocks must be finite 1-d vectors")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def zeros(cls, frame: GFusionFrame) -> "CoefficientVector":
        return cls(tuple(np.zeros(m, dtype=frame.dtype) for m in frame.out_dims))

    def check(self, frame: GFusionFrame) -> None:
        if len(self.blocks) != len(frame) or any(
            b.shape[0] != m for b, m in zip(self.blocks, frame.out_dims)
        ):
            raise ShapeMismatch("coefficient blocks do not match the frame's local output dimensions")

    def inner(self, other: "CoefficientVector", mu) -> complex | float:
        """``sum_i mu_i <self_i, other_i>``."""
        return sum(m * np.vdot(o, s) for m, s, o in zip(mu, self.blocks, other.blocks))


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float

    def __iter__(self):
        return iter((self.lower, self.upper))

    @property
    def condition(self) -> float:
        return self.upper / self.lower


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    issues: tuple[tuple[str, str], ...]
    bounds: FrameBounds | None = None


def validate_frame(frame: GFusionFrame, tol: float | None = None) -> ValidationReport:
    """Structural checks plus the frame property.

    Problems are collected, never raised.  ``ok`` additionally requires the
    lower frame bound to exceed ``tol`` (default: the invertibility floor).
    """
    issues: list[tuple[str, str]] = []
    for atom, sub, op in zip(frame.space.atoms, frame.subspaces, frame.operators):
        b = sub.basis
        if np.abs(b.conj().T @ b - np.eye(sub.dim)).max() > ORTHONORMAL_TOL:
            issues.append((atom.id, "subspace basis is not orthonormal"))
        if sup_norm(op - op @ sub.projection) > CANONICAL_TOL * max(1.0, sup_norm(op)):
            issues.append((atom.id, "local operator does not vanish off its subspace"))
    if not np.any(frame.mu * frame.omega**2 > 0):
        issues.append(("*", "total weight is zero"))
    s = HermitianOperator(np.einsum("i,ijk->jk", frame.mu * frame.omega**2, frame.grams))
    floor = invertibility_floor(s.lambda_max) if tol is None else tol
    if s.lambda_min <= floor:
        issues.append(("*", f"lower frame bound {s.lambda_min:.3e} is not above {floor:.3e} (Bessel family only)"))
    if issues:
        return ValidationReport(False, tuple(issues))
    return ValidationReport(True, (), FrameBounds(s.lambda_min, s.lambda_max))

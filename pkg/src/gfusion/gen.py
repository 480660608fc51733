"""Seeded generators for frames, pairs and hand-checkable witnesses.

Random streams
--------------
Every random draw comes from ``numpy.random.Generator(PCG64(ss))`` with
``ss = SeedSequence(entropy=seed, spawn_key=(tag, attempt, atom, field))``:

* ``tag`` 0 for the primary family, 1 for a second family of a pair,
  2 for perturbations;
* ``attempt`` counts rejection-sampling retries (frame property, condition cap);
* ``atom`` is the atom index;
* ``field`` is 0 subspace dim, 1 spanning vectors, 2 local output dim,
  3 local operator entries, 4 frame weight.

Each atom's draws are independent of every other atom's, so generation order
does not matter, and the same config always yields the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .duality import canonical_alternate_dual, canonical_dual, parsevalize, rescale
from .errors import GenerationFailed, InvalidConfig
from .model import GFusionFrame, MeasureAtom, MeasureSpace, Subspace, canonicalize
from .operators import frame_operator, inverse_frame_operator

KINDS = ("random", "parseval", "tight", "bessel_only")
MAX_ATTEMPTS = 64

_SUBSPACE_DIM, _SPAN, _OUT_DIM, _OPERATOR, _OMEGA = range(5)


@dataclass(frozen=True)
class GenConfig:
    dim: int
    atoms: int
    seed: int = 0
    scalar: str = "real"
    subspace_dim_range: tuple[int, int] | None = None
    local_out_dim_range: tuple[int, int] | None = None
    kind: str = "random"
    lam: float = 1.0
    max_condition: float | None = None

    def __post_init__(self):
        n = self.dim
        if not isinstance(n, (int, np.integer)) or not 1 <= n <= 64:
            raise InvalidConfig(f"dim must be in [1, 64], got {n!r}")
        if not isinstance(self.atoms, (int, np.integer)) or not 1 <= self.atoms <= 4096:
            raise InvalidConfig(f"atoms must be in [1, 4096], got {self.atoms!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidConfig("seed must be a 64-bit unsigned integer")
        if self.scalar not in ("real", "complex"):
            raise InvalidConfig(f"scalar must be 'real' or 'complex', got {self.scalar!r}")
        if self.kind not in KINDS:
            raise InvalidConfig(f"kind must be one of {KINDS}, got {self.kind!r}")
        lo, hi = self.subspace_range
        if not 1 <= lo <= hi <= n:
            raise InvalidConfig(f"subspace_dim_range must satisfy 1 <= lo <= hi <= {n}")
        lo, hi = self.out_range
        if not 1 <= lo <= hi <= 2 * n:
            raise InvalidConfig(f"local_out_dim_range must satisfy 1 <= lo <= hi <= {2 * n}")
        if self.kind == "tight" and not (np.isfinite(self.lam) and self.lam > 0):
            raise InvalidConfig("tight frames need lam > 0")
        if self.kind == "bessel_only" and n < 2:
            raise InvalidConfig("bessel_only needs dim >= 2")
        if self.max_condition is not None and self.max_condition < 1:
            raise InvalidConfig("max_condition must be >= 1")

    @property
    def subspace_range(self) -> tuple[int, int]:
        return tuple(self.subspace_dim_range) if self.subspace_dim_range else (1, self.dim)

    @property
    def out_range(self) -> tuple[int, int]:
        return tuple(self.local_out_dim_range) if self.local_out_dim_range else (1, 2 * self.dim)


def _rng(cfg: GenConfig, tag: int, attempt: int, atom: int, fld: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=int(cfg.seed), spawn_key=(tag, attempt, atom, fld))
    return np.random.Generator(np.random.PCG64(ss))


def _gaussian(rng: np.random.Generator, shape, scalar: str) -> np.ndarray:
    if scalar == "real":
        return rng.standard_normal(shape)
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def _draw(cfg: GenConfig, tag: int, attempt: int, out_dims=None) -> GFusionFrame:
    n = cfg.dim
    lo, hi = cfg.subspace_range
    olo, ohi = cfg.out_range
    ambient = n - 1 if cfg.kind == "bessel_only" else n
    hi = min(hi, ambient)
    lo = min(lo, hi)
    atoms, subs, ops = [], [], []
    for i in range(cfg.atoms):
        d = int(_rng(cfg, tag, attempt, i, _SUBSPACE_DIM).integers(lo, hi + 1))
        span = np.zeros((d, n), dtype=complex if cfg.scalar == "complex" else float)
        # bessel_only keeps every subspace inside the hyperplane orthogonal to the last axis
        span[:, :ambient] = _gaussian(_rng(cfg, tag, attempt, i, _SPAN), (d, ambient), cfg.scalar)
        sub = Subspace.span(span)
        if out_dims is None:
            m = int(_rng(cfg, tag, attempt, i, _OUT_DIM).integers(olo, ohi + 1))
        else:
            m = out_dims[i]
        op = _gaussian(_rng(cfg, tag, attempt, i, _OPERATOR), (m, n), cfg.scalar)
        omega = float(np.exp(_rng(cfg, tag, attempt, i, _OMEGA).uniform(np.log(0.25), np.log(4.0))))
        atoms.append(MeasureAtom(str(i), 1.0, omega))
        subs.append(sub)
        ops.append(canonicalize(op, sub))
    return GFusionFrame(n, cfg.scalar, MeasureSpace(tuple(atoms)), tuple(subs), tuple(ops))


def _acceptable(frame: GFusionFrame, cfg: GenConfig) -> bool:
    s = frame_operator(frame)
    if not s.is_invertible():
        return False
    return cfg.max_condition is None or s.lambda_max / s.lambda_min <= cfg.max_condition


def _draw_frame(cfg: GenConfig, tag: int, out_dims=None) -> GFusionFrame:
    if cfg.kind == "bessel_only":
        return _draw(cfg, tag, 0, out_dims)
    for attempt in range(MAX_ATTEMPTS):
        frame = _draw(cfg, tag, attempt, out_dims)
        if _acceptable(frame, cfg):
            return frame
    raise GenerationFailed(f"no frame after {MAX_ATTEMPTS} attempts (too few atoms or subspace dimensions?)")


def random_frame(cfg: GenConfig) -> GFusionFrame:
    """Random g-fusion family of the configured kind.

    Subspaces come from orthonormalized Gaussian spanning sets, local operators
    are Gaussian then canonicalized, ``mu = 1`` and ``omega`` is log-uniform on
    ``[1/4, 4]``.  ``parseval`` and ``tight`` post-process with
    :func:`~gfusion.duality.parsevalize` (and a ``sqrt(lam)`` rescale).
    """
    frame = _draw_frame(cfg, 0)
    if cfg.kind in ("parseval", "tight"):
        frame = parsevalize(frame)
    if cfg.kind == "tight":
        frame = rescale(frame, float(np.sqrt(cfg.lam)))
    return frame


def random_pair(cfg: GenConfig) -> tuple[GFusionFrame, GFusionFrame]:
    """Two independent families over the same atoms with matching local output dimensions."""
    v = random_frame(cfg)
    return v, _draw_frame(cfg, 1, out_dims=v.out_dims)


def perturbed_dual_pair(cfg: GenConfig, eps: float) -> tuple[GFusionFrame, GFusionFrame]:
    """``V`` and its canonical dual with every local operator perturbed by relative noise ``eps``.

    Each dual operator moves by ``eps * ||op||_F`` in Frobenius norm, so the
    pair operator is ``I + O(eps)``.
    """
    v = random_frame(cfg)
    d = canonical_dual(v)
    ops = []
    for i, (sub, op) in enumerate(zip(d.subspaces, d.operators)):
        noise = _gaussian(_rng(cfg, 2, 0, i, _OPERATOR), op.shape, cfg.scalar)
        noise *= np.linalg.norm(op) / np.linalg.norm(noise)
        ops.append(canonicalize(op + eps * noise, sub))
    return v, GFusionFrame(d.dim, d.scalar, d.space, d.subspaces, tuple(ops))


def alternate_dual_pair(cfg: GenConfig, perturbed: bool = True) -> tuple[GFusionFrame, GFusionFrame, str]:
    """A frame ``V`` with square local operators and an alternate dual ``W``.

    ``W`` is either the canonical alternate dual
    ``(S^-1 F, S Lambda P_F S^-1, omega)`` or, when ``perturbed``, a
    full-space family ``Gamma_x* = S^-1 Lambda_x* S + H_x`` where the ``H_x``
    are random and projected so that ``sum mu omega^2 H_x S^-1 Lambda_x = 0``.
    Returns ``(V, W, "canonical" | "perturbed")``.
    """
    v = random_frame(replace(cfg, local_out_dim_range=(cfg.dim, cfg.dim)))
    if not perturbed:
        return v, canonical_alternate_dual(v), "canonical"
    n = v.dim
    s = frame_operator(v).matrix
    s_inv = inverse_frame_operator(v).matrix
    w2 = v.mu * v.omega**2
    z = [_gaussian(_rng(cfg, 2, 0, i, _OPERATOR), (n, n), cfg.scalar) / np.sqrt(n) for i in range(len(v))]
    e = sum(c * zi @ s_inv @ lam for c, zi, lam in zip(w2, z, v.operators))
    full = Subspace(np.eye(n, dtype=v.dtype))
    ops = []
    for zi, lam in zip(z, v.operators):
        gamma_adj = s_inv @ lam.conj().T @ s + zi - e @ s_inv @ lam.conj().T @ s
        ops.append(gamma_adj.conj().T)
    w = GFusionFrame(n, v.scalar, v.space, tuple(full for _ in ops), tuple(ops))
    return v, w, "perturbed"


def orthonormal_basis_frame(n: int, scalar: str = "real") -> GFusionFrame:
    """Atom ``k`` (id ``str(k)``, 1-based) has ``F = span{e_k}``, ``Lambda = e_k*``; ``S = I`` exactly."""
    if n < 1:
        raise InvalidConfig("n must be >= 1")
    eye = np.eye(n)
    atoms = [MeasureAtom(str(k + 1), 1.0, 1.0) for k in range(n)]
    return GFusionFrame.build(atoms, [eye[k:k + 1] for k in range(n)], [eye[k:k + 1] for k in range(n)], scalar)


def mercedes_frame() -> GFusionFrame:
    """Three unit vectors at 120 degrees in R^2 (ids ``"0".."2"``), ``Lambda_k = sqrt(2/3) v_k*``."""
    atoms, spans, ops = [], [], []
    for k in range(3):
        v = np.array([[np.cos(2 * np.pi * k / 3), np.sin(2 * np.pi * k / 3)]])
        atoms.append(MeasureAtom(str(k), 1.0, 1.0))
        spans.append(v)
        ops.append(np.sqrt(2 / 3) * v)
    return GFusionFrame.build(atoms, spans, ops, "real")


def two_atom_frame() -> GFusionFrame:
    """Atom ``"a"``: ``span{e1}`` with ``Lambda = I``; atom ``"b"``: all of R^2 with ``Lambda = I``.

    The frame operator is ``diag(2, 1)``.
    """
    eye = np.eye(2)
    atoms = [MeasureAtom("a", 1.0, 1.0), MeasureAtom("b", 1.0, 1.0)]
    return GFusionFrame.build(atoms, [eye[:1], eye], [eye, eye], "real")

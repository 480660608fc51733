"""JSON frame files and report files.

Frame document::

    {"version": 1, "scalar": "real" | "complex", "dim": n,
     "atoms": [{"id": str, "mu": x, "omega": x,
                "basis": [[...], ...],     # spanning vectors, one per row
                "lambda": [[...], ...]}]}  # m x n local operator

Complex entries are ``[re, im]`` pairs.  Floats are written with ``repr``
(shortest round-trip form), and saved bases are orthonormal rows which load
back unchanged, so ``load(save(frame))`` reproduces every matrix exactly.
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import FrameFormatError
from .model import GFusionFrame, MeasureAtom, MeasureSpace, Subspace, canonicalize
from .reports import CheckSuiteResult, IdentityReport

VERSION = 1


def _reject_constant(token: str):
    raise FrameFormatError(f"non-finite number {token!r} is not allowed")


def _encode_entry(x, complex_mode: bool):
    if complex_mode:
        z = complex(x)
        return [float(z.real), float(z.imag)]
    return float(np.real(x))


def _encode_matrix(m: np.ndarray, complex_mode: bool) -> list:
    return [[_encode_entry(x, complex_mode) for x in row] for row in np.asarray(m)]


def frame_to_dict(frame: GFusionFrame) -> dict:
    cm = frame.scalar == "complex"
    atoms = []
    for atom, sub, op in zip(frame.space.atoms, frame.subspaces, frame.operators):
        atoms.append(
            {
                "id": atom.id,
                "mu": atom.mu,
                "omega": atom.omega,
                "basis": _encode_matrix(sub.basis.T, cm),
                "lambda": _encode_matrix(op, cm),
            }
        )
    return {"version": VERSION, "scalar": frame.scalar, "dim": frame.dim, "atoms": atoms}


def dumps_frame(frame: GFusionFrame) -> str:
    return json.dumps(frame_to_dict(frame), indent=1, allow_nan=False) + "\n"


def save_frame(frame: GFusionFrame, path) -> None:
    Path(path).write_text(dumps_frame(frame), encoding="utf-8")


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FrameFormatError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise FrameFormatError(f"{where}: non-finite number")
    return float(x)


def _decode_matrix(rows, dim: int, complex_mode: bool, where: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise FrameFormatError(f"{where}: expected a non-empty list of rows")
    out = np.zeros((len(rows), dim), dtype=complex if complex_mode else float)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise FrameFormatError(f"{where}: row {i} must have {dim} entries")
        for j, x in enumerate(row):
            if complex_mode:
                if not isinstance(x, list) or len(x) != 2:
                    raise FrameFormatError(f"{where}[{i}][{j}]: complex entries are [re, im] pairs")
                out[i, j] = complex(_number(x[0], where), _number(x[1], where))
            else:
                out[i, j] = _number(x, f"{where}[{i}][{j}]")
    return out


def frame_from_dict(doc: Any) -> GFusionFrame:
    if not isinstance(doc, dict):
        raise FrameFormatError("frame document must be a JSON object")
    if doc.get("version") != VERSION:
        raise FrameFormatError(f"unsupported version {doc.get('version')!r}")
    scalar = doc.get("scalar")
    if scalar not in ("real", "complex"):
        raise FrameFormatError("scalar must be 'real' or 'complex'")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FrameFormatError("dim must be a positive integer")
    raw = doc.get("atoms")
    if not isinstance(raw, list) or not raw:
        raise FrameFormatError("atoms must be a non-empty list")
    cm = scalar == "complex"
    atoms, subs, ops = [], [], []
    try:
        for k, a in enumerate(raw):
            if not isinstance(a, dict):
                raise FrameFormatError(f"atom {k} must be an object")
            aid = a.get("id")
            if not isinstance(aid, str):
                raise FrameFormatError(f"atom {k}: id must be a string")
            atoms.append(MeasureAtom(aid, _number(a.get("mu"), f"{aid}.mu"), _number(a.get("omega"), f"{aid}.omega")))
            sub = Subspace.span(_decode_matrix(a.get("basis"), dim, cm, f"{aid}.basis"))
            subs.append(sub)
            ops.append(canonicalize(_decode_matrix(a.get("lambda"), dim, cm, f"{aid}.lambda"), sub))
        return GFusionFrame(dim, scalar, MeasureSpace(tuple(atoms)), tuple(subs), tuple(ops))
    except FrameFormatError:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise FrameFormatError(str(exc)) from exc


def loads_frame(text: str) -> GFusionFrame:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise FrameFormatError(f"invalid JSON: {exc}") from exc
    return frame_from_dict(doc)


def load_frame(path) -> GFusionFrame:
    return loads_frame(Path(path).read_text(encoding="utf-8"))


def frame_digest(frame: GFusionFrame) -> str:
    """SHA-256 of the compact, key-sorted JSON of the canonical frame."""
    blob = json.dumps(frame_to_dict(frame), sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(blob.encode()).hexdigest()


def pair_digest(v: GFusionFrame, w: GFusionFrame) -> str:
    return hashlib.sha256(f"{frame_digest(v)}:{frame_digest(w)}".encode()).hexdigest()


def _json_value(x):
    if x is None:
        return None
    if isinstance(x, complex):
        return [_json_value(x.real), _json_value(x.imag)]
    x = float(x)
    return x if math.isfinite(x) else None


def report_entry(r: IdentityReport) -> dict:
    entry = {
        "name": r.name,
        "paper_ref": r.paper_ref,
        "lhs": _json_value(r.lhs),
        "rhs": _json_value(r.rhs) if r.kind == "identity" else [_json_value(r.lo), _json_value(r.hi)],
        "residual": _json_value(r.residual),
        "margin": _json_value(r.margin),
        "pass": r.passed,
        "tol": r.tol,
        "trials": r.trials,
    }
    if r.error is not None:
        entry["error"] = r.error
    return entry


def suite_to_dict(result: CheckSuiteResult, note: str) -> dict:
    doc = {
        "frame_digest": result.frame_digest,
        "checks": [report_entry(r) for r in sorted(result.reports, key=lambda r: r.name)],
        "overall_pass": result.overall_pass,
        "corrected_forms_note": note,
    }
    if result.skipped:
        doc["skipped"] = [{"name": n, "reason": why} for n, why in result.skipped]
    return doc


def dumps_report(result: CheckSuiteResult, note: str) -> str:
    return json.dumps(suite_to_dict(result, note), indent=1, allow_nan=False) + "\n"

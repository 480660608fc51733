"""Command-line interface: ``gfusion gen | analyze | check | dual | parsevalize | pair``.

Machine-readable JSON goes to stdout, diagnostics to stderr.  Exit codes:
0 success, 2 usage or parse error, 3 I/O failure, 4 not a frame,
5 a check or requested certification failed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .duality import canonical_dual, parsevalize
from .errors import FrameFormatError, InvalidConfig, MeasureSpaceMismatch, NotAFrame, ShapeMismatch, UnknownAtomId
from .gen import KINDS, GenConfig, random_frame
from .identities import SuiteConfig, corrected_forms_note, run_suite
from .linalg import invertibility_floor, operator_norm
from .model import SubsetMask
from .operators import frame_operator, inverse_frame_operator
from .pairs import analyze_pair, perturbation_check, resolution_witness, verify_resolution

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NOT_FRAME, EXIT_CHECK = 0, 2, 3, 4, 5
TIGHT_TOL = 1e-9
VERIFY_TOL = 1e-9


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _err(msg: str) -> None:
    print(f"gfusion: {msg}", file=sys.stderr)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=1, allow_nan=False) + "\n")


def _load(path):
    try:
        return io.load_frame(path)
    except FrameFormatError as exc:
        raise _Exit(EXIT_USAGE, f"{path}: {exc}") from exc
    except OSError as exc:
        raise _Exit(EXIT_IO, f"{path}: {exc}") from exc


def _write(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"{path}: {exc}") from exc


def _require_frame(frame, path):
    s = frame_operator(frame)
    if s.lambda_min <= invertibility_floor(s.lambda_max):
        raise _Exit(EXIT_NOT_FRAME, f"{path}: not a frame (lower bound {s.lambda_min:.3e})")


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(
            dim=args.dim,
            atoms=args.atoms,
            seed=args.seed,
            scalar=args.scalar,
            kind=args.kind,
            lam=args.lam,
            max_condition=args.max_condition,
        )
        frame = random_frame(cfg)
    except InvalidConfig as exc:
        raise _Exit(EXIT_USAGE, str(exc)) from exc
    _write(io.dumps_frame(frame), args.output)
    return EXIT_OK


def cmd_analyze(args) -> int:
    frame = _load(args.path)
    s = frame_operator(frame)
    a, b = s.lambda_min, s.lambda_max
    is_frame = a > invertibility_floor(b)
    tight = is_frame and b - a <= TIGHT_TOL * b
    doc = {
        "A": a,
        "B": b,
        "tight": bool(tight),
        "parseval": bool(tight and abs(a - 1) <= TIGHT_TOL and abs(b - 1) <= TIGHT_TOL),
        "condition": b / a if is_frame else None,
        "frame": bool(is_frame),
        "digest": io.frame_digest(frame),
    }
    _emit(doc)
    if not is_frame:
        _err(f"{args.path}: Bessel only, lower bound {a:.3e} is at the invertibility floor")
        return EXIT_NOT_FRAME
    return EXIT_OK


def cmd_check(args) -> int:
    frame = _load(args.path)
    mask = None
    if args.subset is not None:
        ids = [s for s in (p.strip() for p in args.subset.split(",")) if s]
        mask = SubsetMask.of(ids)
        try:
            mask.check(frame)
        except UnknownAtomId as exc:
            raise _Exit(EXIT_USAGE, f"--subset: unknown atom id {exc}") from exc
    if args.trials < 1:
        raise _Exit(EXIT_USAGE, "--trials must be >= 1")
    cfg = SuiteConfig(
        trials=args.trials,
        seed=args.seed,
        tol_rel=args.tol_rel,
        mask=mask,
        skip_inapplicable=args.skip_inapplicable,
        workers=args.workers,
    )
    result = run_suite(frame, cfg)
    _write(io.dumps_report(result, corrected_forms_note()), args.report)
    for r in result.failed():
        _err(f"FAIL {r.name}: {r.error or f'residual {r.residual:.3e}, margin {r.margin}'}")
    return EXIT_OK if result.overall_pass else EXIT_CHECK


def cmd_dual(args) -> int:
    frame = _load(args.path)
    _require_frame(frame, args.path)
    dual = canonical_dual(frame)
    target = inverse_frame_operator(frame).matrix
    err = operator_norm(frame_operator(dual).matrix - target)
    if err > VERIFY_TOL * max(1.0, operator_norm(target)):
        _err(f"dual frame operator differs from S^-1 by {err:.3e}")
        return EXIT_CHECK
    _write(io.dumps_frame(dual), args.output)
    return EXIT_OK


def cmd_parsevalize(args) -> int:
    frame = _load(args.path)
    _require_frame(frame, args.path)
    out = parsevalize(frame)
    err = operator_norm(frame_operator(out).matrix - np.eye(frame.dim))
    if err > VERIFY_TOL:
        _err(f"parsevalized frame operator differs from I by {err:.3e}")
        return EXIT_CHECK
    _write(io.dumps_frame(out), args.output)
    return EXIT_OK


def cmd_pair(args) -> int:
    v = _load(args.v)
    w = _load(args.w)
    try:
        analysis = analyze_pair(v, w)
    except (MeasureSpaceMismatch, ShapeMismatch) as exc:
        raise _Exit(EXIT_USAGE, f"incompatible families: {exc}") from exc
    doc = analysis.as_dict()
    code = EXIT_OK
    if args.check_resolution:
        wit = resolution_witness(v, w)
        if hasattr(wit, "k"):
            rep = verify_resolution(v, w, wit.k)
            doc["resolution"] = {"residual": rep.residual, "pass": rep.passed, **rep.details}
            if not rep.passed:
                code = EXIT_CHECK
        else:
            doc["resolution"] = {"pass": False, "sigma_min": wit.sigma_min, "reason": wit.reason}
            code = EXIT_CHECK
    if args.perturbation:
        try:
            rep = perturbation_check(v, w, args.lambda1, args.lambda2)
        except ValueError as exc:
            raise _Exit(EXIT_USAGE, str(exc)) from exc
        doc["perturbation"] = rep.as_dict()
        if not rep.passed:
            code = EXIT_CHECK
    _emit(doc)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gfusion", description="Continuous g-fusion frames on finite measure spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random frame file")
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--atoms", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--kind", choices=KINDS, default="random")
    g.add_argument("--lambda", dest="lam", type=float, default=1.0)
    g.add_argument("--scalar", choices=("real", "complex"), default="real")
    g.add_argument("--max-condition", type=float, default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", help="frame bounds of a frame file")
    a.add_argument("path")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check", help="run the identity and inequality suite")
    c.add_argument("path")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--subset", default=None, help="comma-separated atom ids fixing the mask")
    c.add_argument("--tol-rel", type=float, default=1e-9)
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--skip-inapplicable", action="store_true")
    c.add_argument("--report", default=None)
    c.set_defaults(func=cmd_check)

    for name, func, text in (
        ("dual", cmd_dual, "write the canonical dual"),
        ("parsevalize", cmd_parsevalize, "write the Parseval frame S^-1/2 applied"),
    ):
        d = sub.add_parser(name, help=text)
        d.add_argument("path")
        d.add_argument("-o", "--output", default=None)
        d.set_defaults(func=func)

    q = sub.add_parser("pair", help="analyze the pair operator of two families")
    q.add_argument("v")
    q.add_argument("w")
    q.add_argument("--check-resolution", action="store_true")
    q.add_argument("--perturbation", action="store_true")
    q.add_argument("--lambda1", type=float, default=None)
    q.add_argument("--lambda2", type=float, default=None)
    q.set_defaults(func=cmd_pair)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        _err(str(exc))
        return exc.code
    except NotAFrame as exc:
        _err(str(exc))
        return EXIT_NOT_FRAME


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front-end.

Subcommands: ``check`` (validate a matrix file and print its invariant
summary), ``decouple`` (run the decoupling pipeline and emit a full
report), ``tunes`` (analyze a one-turn matrix, optionally with a matched
beam), and ``bench`` (iteration-count study on random symplices).

Exit codes: 0 success, 2 validation failure, 3 pipeline infeasibility,
4 I/O or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

import numpy as np

from .decouple4 import (FORM_BLOCK_DIAGONAL, FORM_HAMILTONIAN,
                        FORM_NORMAL, Tolerances, decouple)
from .dirac import rdm_coefficients, symplectic_unit
from .emeq import emeq_from_symplex, lax_invariants, spectral_invariants
from .errors import (BoostDomain, BranchMismatch, ComplexEigenvalues,
                     DegenerateB, MaxStepsExceeded, NotASymplex,
                     NotSymplectic, PivotComplex, PrecisionLoss,
                     UnstableBlock, UnstableSystem)
from .jacobi import jacobi_decouple, random_test_symplex
from .matrixio import MatrixFileError, load_matrix
from .optics import analyze_one_turn, matched_sigma
from .transform import block_scaling, compose, replay, symplectic_residual

SCHEMA = "symdec-report/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4

_INFEASIBLE = (ComplexEigenvalues, DegenerateB, BoostDomain, BranchMismatch,
               UnstableBlock, PivotComplex, MaxStepsExceeded, UnstableSystem,
               PrecisionLoss)


class _Failure(Exception):
    """Command failure with a chosen exit code."""

    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# report rendering

def _matrix_doc(M: np.ndarray) -> list:
    return [[float(x) for x in row] for row in np.asarray(M)]


def _steps_doc(steps) -> list:
    return [{"generator": int(s.generator), "epsilon": float(s.epsilon),
             "block": None if s.block is None else [int(s.block[0]),
                                                    int(s.block[1])],
             "skipped": bool(s.skipped)} for s in steps]


def _render_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def _render_text(doc, indent: int = 0, out=None) -> list:
    lines = out if out is not None else []
    pad = "  " * indent
    for key, val in doc.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            _render_text(val, indent + 1, lines)
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{pad}{key}:")
            for row in val:
                lines.append("  " * (indent + 1)
                             + "  ".join(_render_value(x) for x in row))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for i, entry in enumerate(val):
                body = "  ".join(f"{k}={_render_value(v)}"
                                 for k, v in entry.items())
                lines.append("  " * (indent + 1) + f"[{i}] {body}")
        elif isinstance(val, list):
            lines.append(f"{pad}{key}: "
                         + "  ".join(_render_value(x) for x in val))
        else:
            lines.append(f"{pad}{key}: {_render_value(val)}")
    return lines


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, indent=1))
    else:
        print("\n".join(_render_text(doc)))


def _input_doc(path: str, mf) -> dict:
    digest = hashlib.sha256(open(path, "rb").read()).hexdigest()
    return {"path": str(path), "sha256": digest, "dim": int(mf.dim),
            "n": int(mf.n), "kind": mf.kind, "tau": mf.tau,
            "label": mf.label}


def _invariant_doc(M: np.ndarray) -> dict:
    doc = {}
    lax = lax_invariants(M)
    doc["lax"] = [float(v) for v in lax]
    if M.shape[0] == 4:
        try:
            inv = spectral_invariants(emeq_from_symplex(M, tol=1e-6))
        except NotASymplex:
            return doc
        doc.update({"k1": inv.k1, "k2": inv.k2, "det": inv.det,
                    "classification": inv.classification,
                    "stable": inv.stable, "degenerate": inv.degenerate})
        doc["frequencies"] = [
            None if w is None else {"value": float(w.value),
                                    "nature": w.nature}
            for w in (inv.omega1, inv.omega2)]
    return doc


def _load(path: str):
    try:
        return load_matrix(path)
    except MatrixFileError as exc:
        raise _Failure(str(exc), EXIT_IO) from exc


def _symplex_residual(M: np.ndarray) -> float:
    g0 = symplectic_unit(M.shape[0] // 2)
    return float(np.linalg.norm(M.T - g0 @ M @ g0))


# ---------------------------------------------------------------------------
# check

def cmd_check(args) -> int:
    mf = _load(args.path)
    kind = mf.kind or args.kind
    M = mf.matrix
    scale = max(1.0, float(np.linalg.norm(M)))
    doc = {"schema": SCHEMA, "command": "check",
           "input": _input_doc(args.path, mf),
           "kind": kind, "tolerance": args.tol}
    if kind == "force":
        resid = _symplex_residual(M)
        doc["symplex_residual"] = resid
        ok = resid <= args.tol * scale
        if M.shape[0] == 4:
            coeffs = rdm_coefficients(M)
            doc["coefficients"] = {
                "energy": float(coeffs[0]),
                "p": [float(v) for v in coeffs[1:4]],
                "e": [float(v) for v in coeffs[4:7]],
                "b": [float(v) for v in coeffs[7:10]],
            }
            worst_cos = float(np.max(np.abs(coeffs[10:])))
            doc["cosymplex_coefficient_max"] = worst_cos
            ok = ok and worst_cos <= args.tol * max(
                1.0, float(np.linalg.norm(coeffs)))
        doc["invariants"] = _invariant_doc(M)
    else:
        resid = symplectic_residual(M)
        doc["symplectic_residual"] = resid
        ok = resid <= args.tol * scale
        doc["invariants"] = _invariant_doc((M - np.linalg.inv(M)) / 2.0) \
            if ok else {}
    doc["valid"] = bool(ok)
    _emit(doc, args.json)
    return EXIT_OK if ok else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# decouple

_FORMS = {"block": FORM_BLOCK_DIAGONAL, "hamiltonian": FORM_HAMILTONIAN,
          "normal": FORM_NORMAL}


def _decouple_small(M, form, tolerances):
    res = decouple(M, form=_FORMS[form], tol=tolerances)
    doc = {
        "form_reached": res.form,
        "classification": res.invariants.classification,
        "residual": float(res.residual),
        "transform_log": _steps_doc(res.transform.steps),
        "transform_symplectic_residual": res.transform.residual(),
        "final_matrix": _matrix_doc(res.final.matrix),
    }
    if res.frequencies is not None:
        doc["frequencies"] = [{"value": float(w.value), "nature": w.nature}
                              for w in res.frequencies]
    if res.complex_radius is not None:
        doc["complex_radius"] = float(res.complex_radius)
    return res.transform, res.final.matrix, doc


def _decouple_large(M, form, tolerances, jacobi_tol, max_steps):
    transform, out, stats = jacobi_decouple(
        M, tol=jacobi_tol, max_steps=max_steps,
        hamiltonian=form in ("hamiltonian", "normal"), tolerances=tolerances)
    final = out.matrix
    if form == "normal":
        n = out.n
        exponents = []
        for k in range(n):
            alpha = final[2 * k, 2 * k + 1]
            beta = -final[2 * k + 1, 2 * k]
            if alpha * beta <= 0.0:
                raise UnstableBlock(
                    f"block {k} has no rotation normal form "
                    f"(entries {alpha:.6e}, {beta:.6e})", block=k)
            exponents.append(0.25 * math.log(alpha / beta))
        scaling = block_scaling(exponents)
        final = scaling.r @ final @ scaling.rinv
        transform = compose(scaling, transform)
    doc = {
        "form_reached": form,
        "residual": float(stats.final_residual),
        "iteration_stats": {
            "pivot_steps": stats.pivot_steps,
            "hamiltonian_steps": stats.hamiltonian_steps,
            "total_steps": stats.total_steps,
            "residual_trend": [float(r) for r in stats.residuals],
        },
        "transform_log": _steps_doc(transform.steps),
        "transform_symplectic_residual": transform.residual(),
        "final_matrix": _matrix_doc(final),
    }
    return transform, final, doc


def cmd_decouple(args) -> int:
    mf = _load(args.path)
    if mf.kind == "transfer":
        raise _Failure(
            f"{args.path}: decouple expects a force matrix, file says "
            "kind=transfer (use 'tunes' for transfer matrices)",
            EXIT_VALIDATION)
    M = mf.matrix
    resid = _symplex_residual(M)
    scale = max(1.0, float(np.linalg.norm(M)))
    if resid > args.check_tol * scale:
        raise _Failure(
            f"{args.path}: not a symplex (residual {resid:.3e})",
            EXIT_VALIDATION)
    tolerances = Tolerances(step=args.step_tol, post=args.tol,
                            cross=args.cross_tol)
    t0 = time.perf_counter()
    if M.shape[0] == 4:
        transform, final, body = _decouple_small(M, args.form, tolerances)
    else:
        transform, final, body = _decouple_large(
            M, args.form, tolerances, args.jacobi_tol, args.max_steps)
    elapsed = time.perf_counter() - t0

    replayed = replay(transform.steps, dim=M.shape[0])
    replay_resid = float(np.max(np.abs(
        replayed.r @ M @ replayed.rinv - final)))
    doc = {"schema": SCHEMA, "command": "decouple",
           "input": _input_doc(args.path, mf),
           "settings": {"form": args.form, "step_tol": args.step_tol,
                        "post_tol": args.tol, "cross_tol": args.cross_tol,
                        "jacobi_tol": args.jacobi_tol},
           "invariants_before": _invariant_doc(M)}
    doc.update(body)
    doc["invariants_after"] = _invariant_doc(final)
    doc["replay_residual"] = replay_resid
    doc["timing"] = {"seconds": elapsed}
    _emit(doc, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# tunes

def cmd_tunes(args) -> int:
    mf = _load(args.path)
    if mf.kind == "force":
        raise _Failure(
            f"{args.path}: tunes expects a transfer matrix, file says "
            "kind=force (use 'decouple' for force matrices)",
            EXIT_VALIDATION)
    tau = args.tau if args.tau is not None else (mf.tau or 1.0)
    try:
        report = analyze_one_turn(mf.matrix, tau=tau,
                                  symplectic_tol=args.symplectic_tol)
    except NotSymplectic as exc:
        raise _Failure(f"{args.path}: {exc}", EXIT_VALIDATION) from exc
    t0 = time.perf_counter()
    doc = {"schema": SCHEMA, "command": "tunes",
           "input": _input_doc(args.path, mf),
           "tau": float(tau),
           "stable": report.stable,
           "blocks": [{
               "tune": b.tune, "cosine": b.cosine, "sine": b.sine,
               "omega": b.omega, "nature": b.nature,
               "branch_ambiguous": b.branch_ambiguous,
               "negative_direction": b.negative_direction,
           } for b in report.blocks],
           "residuals": {
               "symplectic": report.symplectic_residual,
               "symplex_offblock": report.symplex_offblock_residual,
               "cosymplex_offblock": report.cosymplex_offblock_residual,
           },
           "transform_log": _steps_doc(report.transform.steps)}
    if args.emittances is not None:
        emit = [float(tok) for tok in args.emittances.split(",")]
        sigma = matched_sigma(mf.matrix, emit, tau=tau, report=report,
                              fixed_point_tol=args.fixed_point_tol)
        M, S = mf.matrix, sigma.matrix @ symplectic_unit(mf.n)
        doc["matched"] = {
            "emittances": emit,
            "sigma": _matrix_doc(sigma.matrix),
            "fixed_point_residual": float(np.max(np.abs(
                M @ sigma.matrix @ M.T - sigma.matrix))),
            "commutation_residual": float(np.max(np.abs(M @ S - S @ M))),
        }
    doc["timing"] = {"seconds": time.perf_counter() - t0}
    _emit(doc, args.json)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench

def cmd_bench(args) -> int:
    if not 2 <= args.n_min <= args.n_max <= 16:
        raise _Failure("need 2 <= n-min <= n-max <= 16", EXIT_VALIDATION)
    rows = ["n,seeds,mean_steps,min,max,reference"]
    t0 = time.perf_counter()
    for n in range(args.n_min, args.n_max + 1):
        tn = time.perf_counter()
        counts = []
        for seed in range(args.seeds):
            _, _, stats = jacobi_decouple(random_test_symplex(n, seed),
                                          tol=args.jacobi_tol)
            counts.append(stats.pivot_steps)
        reference = 5.0 * n * (n - 2) / 2.0
        rows.append(f"{n},{args.seeds},{float(np.mean(counts))!r},"
                    f"{min(counts)},{max(counts)},{reference!r}")
        print(f"# n={n}: {time.perf_counter() - tn:.3f} s "
              f"({args.seeds} seeds)", file=sys.stderr)
    print(f"# total {time.perf_counter() - t0:.3f} s", file=sys.stderr)
    csv = "\n".join(rows) + "\n"
    if args.csv is not None:
        with open(args.csv, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symdec",
        description="Symplectic decoupling of Hamiltonian (force) matrices: "
                    "canonical forms, tunes and matched beam moments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a matrix file")
    p.add_argument("path")
    p.add_argument("--kind", choices=("force", "transfer"), default="force",
                   help="how to interpret files without metadata")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative residual tolerance")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("decouple", help="decouple a force matrix")
    p.add_argument("path")
    p.add_argument("--form", choices=("block", "hamiltonian", "normal"),
                   default="block", help="target canonical form")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="postcondition tolerance")
    p.add_argument("--step-tol", type=float, default=1e-14,
                   help="angles below this are skipped")
    p.add_argument("--cross-tol", type=float, default=1e-7,
                   help="closed-form cross-check tolerance")
    p.add_argument("--check-tol", type=float, default=1e-8,
                   help="input symplex validation tolerance")
    p.add_argument("--jacobi-tol", type=float, default=1e-12,
                   help="2n convergence threshold")
    p.add_argument("--max-steps", type=int, default=None,
                   help="pivot budget for the 2n iteration")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="JSON output")
    group.add_argument("--text", action="store_false", dest="json",
                       help="plain-text output (default)")
    p.set_defaults(func=cmd_decouple, json=False)

    p = sub.add_parser("tunes", help="analyze a one-turn transfer matrix")
    p.add_argument("path")
    p.add_argument("--tau", type=float, default=None,
                   help="period (overrides the file value)")
    p.add_argument("--emittances", default=None,
                   help="comma-separated emittances for the matched beam")
    p.add_argument("--symplectic-tol", type=float, default=1e-8)
    p.add_argument("--fixed-point-tol", type=float, default=1e-8)
    p.add_argument("--json", action="store_true", help="JSON output")
    p.set_defaults(func=cmd_tunes)

    p = sub.add_parser("bench", help="iteration-count study")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--jacobi-tol", type=float, default=1e-12)
    p.add_argument("--csv", default=None, help="write CSV here instead "
                   "of stdout")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Failure as exc:
        print(f"symdec: error: {exc}", file=sys.stderr)
        return exc.code
    except (NotASymplex, NotSymplectic) as exc:
        print(f"symdec: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except _INFEASIBLE as exc:
        print(f"symdec: infeasible: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_INFEASIBLE
    except MatrixFileError as exc:
        print(f"symdec: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

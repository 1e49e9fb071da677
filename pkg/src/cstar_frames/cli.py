"""Command-line interface.

Exit codes: 0 for a proved or sampled pass, 2 when a bound pair is
falsified, 1 for operational errors (bad files, bad parameters).  The
environment variable CSTAR_FRAMES_SEED supplies the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .algebra import Tolerance
from .frames import (
    FrameSystem,
    canonical_dual,
    canonical_parseval,
    frame_operator,
    gabor_frame,
    gaussian_window,
    reconstruction_residual,
)
from .gframes import GFrameSystem, canonical_dual_gframe, gframe_operator
from .generators import (
    diagonal_gframe,
    k_gframe_example,
    star_diag_frame,
    star_k_opframe_example,
)
from .opframes import (
    OperatorFrameSystem,
    canonical_dual_k_opframe,
    is_dual_k_opframe,
    opframe_operator,
    tensor_opframes,
)
from .selftest import run_all
from .serialize import (
    ProblemFile,
    decode_element_file,
    decode_operator_file,
    dumps_problem,
    dumps_report,
    loads_problem,
    tolerances_dict,
)
from .verification import (
    BoundsSpec,
    Mode,
    Verdict,
    optimal_bounds_from_operator,
    verify_sum_operator,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FALSIFIED = 2


def _default_seed() -> int:
    try:
        return int(os.environ.get("CSTAR_FRAMES_SEED", "0"))
    except ValueError:
        return 0


def _sum_operator(system):
    if isinstance(system, FrameSystem):
        return frame_operator(system)
    if isinstance(system, GFrameSystem):
        return gframe_operator(system)
    return opframe_operator(system)


def _system_info(problem: ProblemFile) -> dict:
    module = problem.module
    system = problem.system
    if isinstance(system, FrameSystem):
        size = len(system)
    elif isinstance(system, GFrameSystem):
        size = len(system)
    else:
        size = len(system)
    return {
        "kind": problem.kind,
        "size": size,
        "algebra": {"kind": module.algebra.kind.value, "n": module.algebra.n},
        "module_rank": module.rank,
    }


def _base_report(problem, tol, seed) -> dict:
    return {
        "version": "1",
        "tool_version": __version__,
        "seed": seed,
        "tolerances": tolerances_dict(tol),
        "system": _system_info(problem),
    }


def _bounds_block(s_op, tol) -> dict:
    from .operators import scalar_rep

    b = optimal_bounds_from_operator(s_op, tol)
    M = scalar_rep(s_op)
    spectrum = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
    return {
        "lower": b.lower,
        "upper": b.upper,
        "is_frame": b.is_frame,
        "tight": b.tight,
        "spectrum": [float(w) for w in spectrum],
    }


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _format_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps_report(report)
    lines = []
    for key in sorted(report):
        lines.append(f"{key}: {json.dumps(report[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _load_problem_file(path: str) -> ProblemFile:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_problem(fh.read())


def cmd_verify(args) -> int:
    problem = _load_problem_file(args.input)
    if problem.bounds is None:
        raise ValueError("problem file carries no bounds to verify")
    tol = Tolerance(psd_rel=args.tol, rank_rel=args.tol / 10.0, recon_rel=args.tol / 10.0) \
        if args.tol is not None else Tolerance()
    s_op = _sum_operator(problem.system)
    report_obj = verify_sum_operator(
        s_op, problem.bounds, tol, samples=args.samples, seed=args.seed
    )
    report = _base_report(problem, tol, args.seed)
    report.update(
        {
            "mode": problem.bounds.mode.value,
            "verdict": report_obj.verdict.value,
            "margin": report_obj.margin,
            "samples_used": report_obj.samples_used,
            "computed_bounds": _bounds_block(s_op, tol),
        }
    )
    if report_obj.info:
        report["sample_ratios"] = report_obj.info
    if report_obj.witness is not None:
        from .serialize import encode_element_file

        report["witness"] = encode_element_file(report_obj.witness)
    _emit(_format_report(report, args.format), args.out)
    return EXIT_OK if report_obj.verdict is not Verdict.FALSIFIED else EXIT_FALSIFIED


def cmd_bounds(args) -> int:
    problem = _load_problem_file(args.input)
    tol = Tolerance()
    s_op = _sum_operator(problem.system)
    report = _base_report(problem, tol, args.seed)
    report["computed_bounds"] = _bounds_block(s_op, tol)
    _emit(_format_report(report, args.format), args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    problem = _load_problem_file(args.input)
    tol = Tolerance()
    system = problem.system
    if args.kind == "canonical":
        if isinstance(system, FrameSystem):
            dual = canonical_dual(system, tol)
            s_op = frame_operator(dual)
        elif isinstance(system, GFrameSystem):
            dual = canonical_dual_gframe(system, tol)
            s_op = gframe_operator(dual)
        else:
            raise ValueError("canonical duals apply to frame or gframe payloads")
    elif args.kind == "parseval":
        if not isinstance(system, FrameSystem):
            raise ValueError("parseval duals apply to frame payloads")
        dual = canonical_parseval(system, tol)
        s_op = frame_operator(dual)
    elif args.kind == "k-operator":
        if not isinstance(system, OperatorFrameSystem):
            raise ValueError("k-operator duals apply to opframe payloads")
        if not args.k:
            raise ValueError("--k FILE is required for k-operator duals")
        with open(args.k, "r", encoding="utf-8") as fh:
            k_op = decode_operator_file(json.load(fh))
        dual = canonical_dual_k_opframe(system, k_op, tol)
        if not is_dual_k_opframe(system, dual, k_op, tol):
            raise ValueError("constructed dual fails its duality identity")
        s_op = opframe_operator(dual)
    else:
        raise ValueError(f"unknown dual kind {args.kind!r}")
    b = optimal_bounds_from_operator(s_op, tol)
    bounds = BoundsSpec(Mode.PLAIN, b.lower, b.upper) if b.is_frame else None
    _emit(dumps_problem(ProblemFile(dual, bounds)), args.out)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    problem = _load_problem_file(args.input)
    if not isinstance(problem.system, FrameSystem):
        raise ValueError("reconstruction applies to frame payloads")
    with open(args.x, "r", encoding="utf-8") as fh:
        x = decode_element_file(json.load(fh))
    if x.module != problem.module:
        raise ValueError("element does not live in the problem module")
    tol = Tolerance()
    residual = reconstruction_residual(problem.system, x, tol)
    report = _base_report(problem, tol, args.seed)
    report["residual"] = residual
    report["within_tolerance"] = bool(residual <= tol.recon_rel)
    _emit(_format_report(report, args.format), args.out)
    return EXIT_OK


def cmd_tensor(args) -> int:
    prob_a = _load_problem_file(args.input_a)
    prob_b = _load_problem_file(args.input_b)
    if not isinstance(prob_a.system, OperatorFrameSystem) or not isinstance(
        prob_b.system, OperatorFrameSystem
    ):
        raise ValueError("tensor products apply to opframe payloads")
    tol = Tolerance()
    with open(args.k1, "r", encoding="utf-8") as fh:
        k1 = decode_operator_file(json.load(fh))
    with open(args.k2, "r", encoding="utf-8") as fh:
        k2 = decode_operator_file(json.load(fh))
    result = tensor_opframes(prob_a.system, prob_b.system, k1, k2, tol)
    spec = BoundsSpec(Mode.K, result.lower, result.upper, k_op=result.k_op)
    _emit(dumps_problem(ProblemFile(result.system, spec)), args.out)
    report = _base_report(ProblemFile(result.system, spec), tol, args.seed)
    report.update(
        {
            "verdict": result.report.verdict.value,
            "margin": result.report.margin,
            "product_bounds": {"lower": result.lower, "upper": result.upper},
        }
    )
    _emit(_format_report(report, args.format), args.report_out)
    return EXIT_OK if result.report.verdict is not Verdict.FALSIFIED else EXIT_FALSIFIED


def _gen_problem(name: str, params: list) -> ProblemFile:
    if name == "star-diag":
        terms = int(params[0]) if params else 40
        system, spec = star_diag_frame(terms)
        return ProblemFile(system, spec)
    if name == "gframe-ab":
        if params:
            a = [float(v) for v in params[0].split(",")]
            b = [float(v) for v in params[1].split(",")]
        else:
            a, b = [1.0, 0.5], [1.0 / 3.0, 1.0 / 3.0]
        system, spec = diagonal_gframe(a, b)
        return ProblemFile(system, spec)
    if name == "kg-example":
        n_cut = int(params[0]) if params else 3
        dim = int(params[1]) if len(params) > 1 else 8
        system, spec, _ = k_gframe_example(n_cut, dim)
        return ProblemFile(system, spec)
    if name == "star-k-op":
        dim = int(params[0]) if params else 6
        system, spec, _ = star_k_opframe_example(dim)
        return ProblemFile(system, spec)
    if name == "gabor":
        length = int(params[0]) if params else 8
        a = int(params[1]) if len(params) > 1 else 2
        b = int(params[2]) if len(params) > 2 else 2
        system = gabor_frame(gaussian_window(length), a, b)
        bounds = optimal_bounds_from_operator(frame_operator(system))
        if not bounds.is_frame:
            raise ValueError("lattice is too sparse for the window")
        return ProblemFile(system, BoundsSpec(Mode.PLAIN, bounds.lower, bounds.upper))
    raise ValueError(f"unknown generator {name!r}")


def cmd_gen(args) -> int:
    problem = _gen_problem(args.name, args.params)
    _emit(dumps_problem(problem), args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_all(seed=args.seed, quick=args.quick)
    width = max(len(r.name) for r in results)
    failed = 0
    for r in results:
        status = "pass" if r.ok else "FAIL"
        line = f"{r.name.ljust(width)}  {status}"
        if not r.ok:
            line += f"  ({r.detail})"
            failed += 1
        print(line)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_ERROR


def _add_common(parser, with_samples=True):
    parser.add_argument("--seed", type=int, default=_default_seed())
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--out", default=None)
    if with_samples:
        parser.add_argument("--samples", type=int, default=200)
        parser.add_argument("--tol", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cstar-frames",
        description="Verify and construct frames over finite-dimensional Hilbert C*-modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify the bounds recorded in a problem file")
    p.add_argument("input")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="report optimal bounds and tightness")
    p.add_argument("input")
    _add_common(p, with_samples=False)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("dual", help="emit a dual system")
    p.add_argument("input")
    p.add_argument("--kind", choices=("canonical", "parseval", "k-operator"), default="canonical")
    p.add_argument("--k", default=None, help="operator file for k-operator duals")
    _add_common(p, with_samples=False)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("reconstruct", help="report the reconstruction residual for an element")
    p.add_argument("input")
    p.add_argument("--x", required=True, help="element file")
    _add_common(p, with_samples=False)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("tensor", help="tensor two operator-frame problems")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.add_argument("--k1", required=True, help="operator file for the first factor")
    p.add_argument("--k2", required=True, help="operator file for the second factor")
    p.add_argument("--report-out", dest="report_out", default=None)
    _add_common(p, with_samples=False)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("gen", help="generate a named example problem")
    p.add_argument("name", choices=("star-diag", "gframe-ab", "kg-example", "star-k-op", "gabor"))
    p.add_argument("params", nargs="*")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("selftest", help="run the full property suite")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--quick", action="store_true")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

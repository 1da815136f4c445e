"""Command-line entry point. Every subcommand prints one JSON report to stdout.

Exit codes: 0 ok, 1 invalid drawing or check failed, 2 usage or input error,
3 budget exhausted with the answer unknown.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .drawing import (
    crn,
    drawing_from_dict,
    dumps,
    embeds_in,
    realized_surface,
    trace_faces,
    validate_good,
)
from .duplication import dipole_min_crossings, zarankiewicz_drawing, zarankiewicz_number, zp
from .enumeration import EnumerationBudget, crossing_number, enumerate_good_drawings, genus_search
from .surface import SPHERE, Surface, bipartite_euler_bound, kmn_demigenus, kmn_genus
from .theorems import ReductionInequalityError, rebuild_and_compare

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


class InputError(Exception):
    pass


def _surface(text: str) -> Surface:
    try:
        return Surface.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(max_crossings=args.max_k, max_seconds=args.timeout_s, parallelism=args.workers)


def _budget_info(args) -> dict:
    return {"max_k": args.max_k, "timeout_s": args.timeout_s, "workers": args.workers}


def _load_drawing(path: str):
    try:
        doc = json.loads(Path(path).read_text())
        return drawing_from_dict(doc)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read drawing from {path}: {exc}") from exc


def cmd_gen(args) -> tuple[int, dict]:
    d = zarankiewicz_drawing(args.p, args.q)
    outputs = []
    if args.out:
        Path(args.out).write_text(dumps(d))
        outputs.append(args.out)
    results = {
        "crn": crn(d),
        "zarankiewicz": zarankiewicz_number(args.p, args.q),
        "surface": str(realized_surface(d)),
    }
    return EXIT_OK, {"inputs": {"p": args.p, "q": args.q}, "outputs": outputs, "results": results}


def cmd_verify(args) -> tuple[int, dict]:
    d = _load_drawing(args.path)
    if args.surface is not None:
        d = d.replace(surface=args.surface)
    violations = validate_good(d)
    results: dict = {"valid": not violations, "violations": [{"code": v.code, "detail": v.detail} for v in violations]}
    code = EXIT_FAILED if violations else EXIT_OK
    if not violations:
        tr = trace_faces(d)
        ok = embeds_in(d, d.surface)
        results.update(
            {
                "crn": crn(d),
                "vertices": tr.num_vertices,
                "edges": tr.num_edges,
                "faces": tr.num_faces,
                "euler_characteristic": tr.euler_characteristic,
                "realized_surface": str(realized_surface(d)),
                "claimed_surface": str(d.surface),
                "embeds_in": ok,
            }
        )
        code = EXIT_OK if ok else EXIT_FAILED
    return code, {"inputs": {"path": args.path}, "outputs": [], "results": results}


def cmd_cross(args) -> tuple[int, dict]:
    sigma = args.surface or SPHERE
    value = crossing_number(args.p, args.q, sigma, _budget(args))
    inputs = {"p": args.p, "q": args.q, "surface": str(sigma)}
    results = {"crossing_number": value}
    return (EXIT_UNKNOWN if value is None else EXIT_OK), {"inputs": inputs, "outputs": [], "results": results}


def cmd_enum(args) -> tuple[int, dict]:
    sigma = args.surface or SPHERE
    res = enumerate_good_drawings(args.p, args.q, sigma, args.k, _budget(args))
    outputs = []
    if args.out:
        outputs.append(str(res.write(args.out)))
    results = {"classes": len(res.drawings), "configs_examined": res.configs_examined, "complete": not res.partial}
    inputs = {"p": args.p, "q": args.q, "k": args.k, "surface": str(sigma)}
    return (EXIT_UNKNOWN if res.partial else EXIT_OK), {"inputs": inputs, "outputs": outputs, "results": results}


def cmd_genus(args) -> tuple[int, dict]:
    m, n = args.m, args.n
    found = genus_search(m, n, args.nonorientable, _budget(args))
    if args.nonorientable:
        formula = kmn_demigenus(m, n) if m >= 3 and n >= 3 else None
    else:
        formula = kmn_genus(m, n) if m >= 2 and n >= 2 else None
    results = {
        "search": found,
        "formula": formula,
        "euler_bound": bipartite_euler_bound(m + n, m * n),
        "agrees": None if found is None or formula is None else found == formula,
    }
    if found is None:
        code = EXIT_UNKNOWN
    else:
        code = EXIT_FAILED if results["agrees"] is False else EXIT_OK
    inputs = {"m": m, "n": n, "orientable": not args.nonorientable}
    return code, {"inputs": inputs, "outputs": [], "results": results}


def cmd_reduce(args) -> tuple[int, dict]:
    d = _load_drawing(args.path)
    violations = validate_good(d)
    inputs = {"path": args.path, "floor": args.floor, "rule": args.rule}
    if violations:
        results = {"valid": False, "violations": [{"code": v.code, "detail": v.detail} for v in violations]}
        return EXIT_FAILED, {"inputs": inputs, "outputs": [], "results": results}
    code = EXIT_OK
    try:
        trace = rebuild_and_compare(d, args.floor, args.rule)
    except ReductionInequalityError as exc:
        trace = exc.trace
        code = EXIT_FAILED
    outputs = []
    base_ref = rebuilt_ref = None
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "base.json").write_text(dumps(trace.base))
        (out / "rebuilt.json").write_text(dumps(trace.rebuilt))
        base_ref, rebuilt_ref = str(out / "base.json"), str(out / "rebuilt.json")
        outputs = [base_ref, rebuilt_ref]
    return code, {"inputs": inputs, "outputs": outputs, "results": trace.to_dict(base_ref, rebuilt_ref)}


def cmd_dipole(args) -> tuple[int, dict]:
    max_k = args.max_k
    found = dipole_min_crossings(args.m, max_k)
    results = {"min_crossings": found, "zp": zp(args.m), "agrees": None if found is None else found == zp(args.m)}
    if found is None:
        code = EXIT_UNKNOWN
    else:
        code = EXIT_OK if results["agrees"] else EXIT_FAILED
    return code, {"inputs": {"m": args.m, "max_k": max_k}, "outputs": [], "results": results}


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _pos(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--surface", type=_surface, default=None, help="S<g> or N<k>")
    common.add_argument("--max-k", type=_nonneg, default=6, help="crossing budget (default 6)")
    common.add_argument("--timeout-s", type=float, default=60.0, help="time budget in seconds (default 60)")
    common.add_argument("--workers", type=_pos, default=1, help="worker processes for searches")
    common.add_argument("--out", default=None, help="output file or directory")

    parser = argparse.ArgumentParser(prog="kpqdraw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="Zarankiewicz drawing of K_{p,q}")
    p.add_argument("p", type=_pos)
    p.add_argument("q", type=_pos)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check a drawing file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cross", parents=[common], help="exact crossing number by exhaustion")
    p.add_argument("p", type=_pos)
    p.add_argument("q", type=_pos)
    p.set_defaults(func=cmd_cross)

    p = sub.add_parser("enum", parents=[common], help="isomorphism classes with exactly k crossings")
    p.add_argument("p", type=_pos)
    p.add_argument("q", type=_pos)
    p.add_argument("k", type=_nonneg)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("genus", parents=[common], help="minimum genus of K_{m,n} by search")
    p.add_argument("m", type=_pos)
    p.add_argument("n", type=_pos)
    p.add_argument("--nonorientable", action="store_true", help="search crosscap number instead")
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("reduce", parents=[common], help="reduce to a floor and rebuild by duplication")
    p.add_argument("path")
    p.add_argument("--floor", type=_pos, default=2)
    p.add_argument("--rule", choices=("heavier", "first"), default="heavier")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("dipole", parents=[common], help="fewest crossings of an equal-rotation dipole")
    p.add_argument("m", type=int, choices=range(2, 6), metavar="m")
    p.set_defaults(func=cmd_dipole)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, dict]:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        code, body = args.func(args)
    except InputError as exc:
        code, body = EXIT_USAGE, {"inputs": {}, "outputs": [], "results": {"error": str(exc)}}
    status = {EXIT_OK: "ok", EXIT_FAILED: "failed", EXIT_USAGE: "error", EXIT_UNKNOWN: "unknown"}[code]
    report = {
        "command": args.command,
        "inputs": body["inputs"],
        "outputs": body["outputs"],
        "results": body["results"],
        "status": status,
        "budget": _budget_info(args),
        "timing_s": round(time.perf_counter() - start, 3),
    }
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, report = run(argv)
    sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

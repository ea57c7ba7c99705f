"""Command-line surface over the whole engine.

Every command is a thin adapter around one library call and prints a stable
JSON document (sorted keys, no timestamps), so identical inputs give
byte-identical output.  Exit codes: 0 success / solvable, 1 unsolvable or
verification mismatch, 2 invalid input or usage, 3 undecided (enumeration
cap reached before an answer).
"""

from __future__ import annotations

import argparse
import json
import sys

from .classifier import DEFAULT_ORACLE_CAP, classify, descriptor_to_dict, is_solvable
from .dynamics import (
    moves_to_list,
    scramble,
    solved_state,
    state_from_dict,
    state_home,
    state_to_dict,
)
from .errors import PuzzleError, UndecidedError
from .graph import graph_from_dict, graph_to_dict, validate
from .oracle import DEFAULT_CAP, enumerate_reachable, verify_classifier, verify_report_to_dict
from .presets import PRESET_NAMES, preset
from .solver import solve

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def _read_doc(path: str) -> dict:
    """Load a JSON document from a file path, or stdin when path is '-'."""
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(doc: dict, out=None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text, file=out or sys.stdout)


def _cmd_validate(args) -> int:
    try:
        g = graph_from_dict(_read_doc(args.graph))
    except (PuzzleError, ValueError, OSError) as exc:
        _emit({"valid": False, "error": str(exc)})
        return EXIT_USAGE
    rep = validate(g)
    _emit(
        {
            "valid": True,
            "vertices": len(g.vertices),
            "edges": len(g.edges),
            "m": g.m,
            "connected": rep.connected,
            "loop_free": rep.loop_free,
            "two_vertex_connected": rep.two_vertex_connected,
            "is_tree": rep.is_tree,
            "is_cycle": rep.is_cycle,
            "is_multi_cycle": rep.is_multi_cycle,
            "has_parallel_edges": rep.has_parallel_edges,
            "simple_collapse_class": rep.simple_collapse_class,
        }
    )
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    try:
        desc = classify(g, args.home, oracle_cap=args.cap)
    except UndecidedError as exc:
        _emit({"undecided": True, "reason": str(exc)})
        return EXIT_UNDECIDED
    doc = descriptor_to_dict(desc)
    if args.json:
        _emit(doc)
    else:
        print(f"case: {desc.case}")
        print(f"order: {desc.order}")
        print(f"n: {desc.n}  m: {desc.m}  d: {desc.d}")
        for key in sorted(desc.certificates):
            print(f"certificate {key}: {json.dumps(desc.certificates[key], sort_keys=True)}")
    return EXIT_OK


def _cmd_check(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    s = state_from_dict(_read_doc(args.state), g)
    try:
        desc = classify(g, state_home(g, s), oracle_cap=args.cap)
        ok = is_solvable(g, s, desc, oracle_cap=args.cap)
    except UndecidedError as exc:
        _emit({"solvable": None, "undecided": True, "reason": str(exc)})
        return EXIT_UNDECIDED
    _emit(
        {
            "solvable": ok,
            "undecided": False,
            "case": desc.case,
            "order": str(desc.order),
            "certificates": desc.certificates,
        }
    )
    return EXIT_OK if ok else EXIT_NO


def _cmd_solve(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    s = state_from_dict(_read_doc(args.state), g)
    res = solve(g, s, cap=args.cap)
    doc = {"status": res.status, "moves": None, "length": None}
    if res.moves is not None:
        doc["moves"] = moves_to_list(res.moves)
        doc["length"] = len(res.moves)
    _emit(doc)
    if res.status == "solved":
        return EXIT_OK
    if res.status == "unsolvable":
        return EXIT_NO
    return EXIT_UNDECIDED


def _cmd_enumerate(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    reach = enumerate_reachable(g, solved_state(g, args.home), cap=args.cap)
    _emit(
        {
            "exhausted": reach.exhausted,
            "explored": reach.explored,
            "at_home": len(reach.by_home),
            "full_space": reach.codec.full_space,
            "blank_counts": reach.blank_position_counts(),
        }
    )
    return EXIT_OK if reach.exhausted else EXIT_UNDECIDED


def _cmd_verify(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    rep = verify_classifier(g, args.home, cap=args.cap)
    _emit(verify_report_to_dict(rep))
    if rep.undecided:
        return EXIT_UNDECIDED
    return EXIT_OK if rep.agree else EXIT_NO


def _parse_twist_flags(pairs) -> dict[str, int] | None:
    if not pairs:
        return None
    twists = {}
    for item in pairs:
        eid, _, val = item.partition("=")
        if not _ or not eid:
            raise ValueError(f"--twist wants EDGE=K, got {item!r}")
        twists[eid] = int(val)
    return twists


def _cmd_preset(args) -> int:
    g = preset(args.name, m=args.m, twists=_parse_twist_flags(args.twist))
    doc = graph_to_dict(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        _emit(doc)
    return EXIT_OK


def _cmd_scramble(args) -> int:
    g = graph_from_dict(_read_doc(args.graph))
    if args.state:
        s = state_from_dict(_read_doc(args.state), g)
    else:
        s = solved_state(g)
    out, taken = scramble(g, s, args.steps, seed=args.seed)
    _emit({"state": state_to_dict(out), "moves": moves_to_list(taken)})
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistpuzzle",
        description="Rotating-tile sliding puzzles: validate, classify, solve.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp):
        sp.add_argument("graph", help="twistgraph/1 JSON file ('-' for stdin)")

    sp = sub.add_parser("validate", help="structural checks on a board document")
    graph_arg(sp)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("classify", help="closed-form group of solvable states")
    graph_arg(sp)
    sp.add_argument("--home", default=None, help="home vertex (default: canonical)")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP, help="fallback enumeration cap")
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("check", help="is a state solvable? (exit 0 yes / 1 no / 3 undecided)")
    graph_arg(sp)
    sp.add_argument("state", help="twiststate/1 JSON file ('-' for stdin)")
    sp.add_argument("--cap", type=int, default=DEFAULT_ORACLE_CAP)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("solve", help="shortest move sequence to the solved state")
    graph_arg(sp)
    sp.add_argument("state", help="twiststate/1 JSON file ('-' for stdin)")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="search node cap")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("enumerate", help="brute-force count of reachable states")
    graph_arg(sp)
    sp.add_argument("--home", default=None)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.set_defaults(func=_cmd_enumerate)

    sp = sub.add_parser("verify", help="cross-check classification against enumeration")
    graph_arg(sp)
    sp.add_argument("--home", default=None)
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("preset", help="emit a built-in board")
    sp.add_argument("name", help="one of: " + ", ".join(PRESET_NAMES))
    sp.add_argument("--m", type=int, default=None, help="override rotation modulus")
    sp.add_argument(
        "--twist", action="append", metavar="EDGE=K", help="override one edge twist (repeatable)"
    )
    sp.add_argument("--out", default=None, help="write to file instead of stdout")
    sp.set_defaults(func=_cmd_preset)

    sp = sub.add_parser("scramble", help="random legal walk from a state")
    graph_arg(sp)
    sp.add_argument("--state", default=None, help="start state file (default: solved)")
    sp.add_argument("--steps", type=int, default=25)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_scramble)

    sp = sub.add_parser("serve", help="run the HTTP API")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8080)
    sp.set_defaults(func=_cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PuzzleError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

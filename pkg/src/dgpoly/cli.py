"""Command-line interface.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for usage or
input errors, 3 for "maybe" (csp only), 4 for an internal invariant failure.
Plain text goes to stdout by default; ``--json`` switches every subcommand
to a JSON object.  ``decide``, ``synth`` and ``oracle`` emit JSON natively.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import LABELED, MAX_N, UP_TO_ISO, count_maltsev, rows_to_csv
from .csp import MAYBE, NO, YES, CspInstance, random_instance, solve_csp_consistency
from .decide import decide_maltsev
from .digraph import Digraph, parse_digraph
from .errors import (
    DigraphParseError,
    InternalInvariantError,
    NotMaltsevError,
    NotRectangularError,
)
from .oracle import find_homomorphism_bruteforce, find_polymorphism_bruteforce
from .structure import (
    MINUS,
    PLUS,
    factor,
    rectangularity_witness,
    serialize_factor,
)
from .synth import (
    MAJORITY,
    MALTSEV,
    TernaryOp,
    find_identity_violation,
    find_polymorphism_violation,
    synth_majority,
    synth_maltsev,
)

RANDOM_VARS = 6
RANDOM_EDGE_PROB = 0.5
RANDOM_PIN_COUNT = 2


def _load_graph(path: str) -> Digraph:
    return parse_digraph(Path(path).read_text(encoding="utf-8"))


def _emit(obj: dict) -> None:
    print(json.dumps(obj))


def cmd_rect(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    witness = rectangularity_witness(g)
    if args.json:
        _emit({"rectangular": witness is None, "witness": list(witness) if witness else None})
    elif witness is None:
        print("rectangular")
    else:
        print("non-rectangular: " + " ".join(str(v) for v in witness))
    return 0 if witness is None else 1


def cmd_factor(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    fg = factor(g, args.side)
    if args.json:
        _emit(
            {
                "side": args.side,
                "quotient": {"n": fg.quotient.n, "edges": [list(e) for e in fg.quotient.sorted_edges]},
                "classes": [list(block) for block in fg.partition.blocks],
            }
        )
    else:
        sys.stdout.write(serialize_factor(fg))
    return 0


def cmd_decide(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    certificate = decide_maltsev(g)
    _emit(certificate.to_json_dict())
    return 0 if certificate.accepted else 1


def cmd_synth(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        f = synth_majority(g) if args.kind == MAJORITY else synth_maltsev(g)
    except NotMaltsevError as exc:
        _emit(exc.certificate.to_json_dict())
        return 1
    _emit(f.to_json_dict())
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    try:
        f = TernaryOp.from_json_dict(json.load(sys.stdin))
    except json.JSONDecodeError as exc:
        raise ValueError(f"operation JSON on stdin is malformed: {exc}") from None
    pair = find_identity_violation(f, args.kind)
    if pair is not None:
        if args.json:
            _emit({"ok": False, "identity_violation": list(pair)})
        else:
            print(f"identity violation: {pair[0]} {pair[1]}")
        return 1
    triple = find_polymorphism_violation(g, f)
    if triple is not None:
        if args.json:
            _emit({"ok": False, "polymorphism_violation": [list(e) for e in triple]})
        else:
            flat = " ".join(f"{u} {v}" for u, v in triple)
            print(f"polymorphism violation: {flat}")
        return 1
    if args.json:
        _emit({"ok": True})
    else:
        print("ok")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    f = find_polymorphism_bruteforce(g, args.kind)
    if f is None:
        if args.json:
            _emit({"found": False})
        else:
            print("none")
        return 1
    _emit(f.to_json_dict())
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    # Reject an oversize bound before any smaller row gets computed.
    if not (0 <= args.n <= MAX_N):
        raise ValueError(f"census size must lie in [0, {MAX_N}], got {args.n}")
    rows = [count_maltsev(k, args.mode, workers=args.workers) for k in range(args.n + 1)]
    csv_text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    if args.json:
        _emit({"rows": [row.to_json_dict() for row in rows]})
    elif not args.out:
        sys.stdout.write(csv_text)
    if args.plot:
        from .report import render_census_figure

        render_census_figure(rows, args.plot)
    return 0


def cmd_csp(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if args.instance is not None:
        instance = CspInstance.from_json_dict(
            json.loads(Path(args.instance).read_text(encoding="utf-8"))
        )
    else:
        instance = random_instance(
            g, RANDOM_VARS, RANDOM_EDGE_PROB, RANDOM_PIN_COUNT, seed=args.seed
        )
    verdict = solve_csp_consistency(instance, g)
    hom = None
    if args.oracle:
        hom = find_homomorphism_bruteforce(instance.h, g, instance.pins)
        if verdict == YES and hom is None:
            raise InternalInvariantError("consistency said yes but exhaustive search finds no homomorphism")
        if verdict == NO and hom is not None:
            raise InternalInvariantError("consistency said no but exhaustive search found a homomorphism")
    if args.json:
        payload: dict = {"verdict": verdict, "instance": instance.to_json_dict()}
        if args.oracle:
            payload["oracle"] = None if hom is None else {str(v): t for v, t in sorted(hom.items())}
        _emit(payload)
    else:
        print(verdict)
        if args.oracle:
            print(f"oracle: {'yes' if hom is not None else 'no'}")
    return {YES: 0, NO: 1, MAYBE: 3}[verdict]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dgpoly",
        description="Maltsev and majority polymorphisms of finite digraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit a JSON object instead of plain text")

    p = sub.add_parser("rect", help="test rectangularity, printing a witness on failure")
    p.add_argument("graph", help="digraph text file")
    add_json(p)
    p.set_defaults(func=cmd_rect)

    p = sub.add_parser("factor", help="quotient by the shared-neighbor classes of one side")
    p.add_argument("graph", help="digraph text file")
    p.add_argument("--side", choices=[PLUS, MINUS], default=PLUS, help="which neighborhoods to group by")
    add_json(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("decide", help="decide Maltsev polymorphism existence, emitting a certificate")
    p.add_argument("graph", help="digraph text file")
    add_json(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("synth", help="synthesize a verified polymorphism table")
    p.add_argument("graph", help="digraph text file")
    p.add_argument("--kind", choices=[MAJORITY, MALTSEV], required=True)
    add_json(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check an operation table from stdin against a graph")
    p.add_argument("graph", help="digraph text file")
    p.add_argument("--kind", choices=[MAJORITY, MALTSEV], required=True)
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force polymorphism search, ignoring all structure")
    p.add_argument("graph", help="digraph text file")
    p.add_argument("--kind", choices=[MAJORITY, MALTSEV], required=True)
    add_json(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("census", help="count digraph classes for every size up to --n as CSV")
    p.add_argument("--n", type=int, required=True, help=f"largest size to census (at most {MAX_N})")
    p.add_argument("--mode", choices=[LABELED, UP_TO_ISO], default=LABELED)
    p.add_argument("--workers", type=int, default=1, help="shard the enumeration across processes")
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.add_argument("--plot", help="also render the counts to this image file")
    add_json(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("csp", help="decide homomorphism extendability by pairwise consistency")
    p.add_argument("--graph", required=True, help="target digraph text file")
    p.add_argument("--instance", help="instance JSON file")
    p.add_argument(
        "--seed",
        type=int,
        help=(
            "generate the instance deterministically instead of reading one "
            f"({RANDOM_VARS} variables, edge probability {RANDOM_EDGE_PROB}, "
            f"{RANDOM_PIN_COUNT} pins)"
        ),
    )
    p.add_argument("--oracle", action="store_true", help="cross-check against exhaustive search")
    add_json(p)
    p.set_defaults(func=cmd_csp)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "csp" and (args.instance is None) == (args.seed is None):
        parser.error("csp needs exactly one of --instance or --seed")
    try:
        return args.func(args)
    except DigraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotRectangularError as exc:
        print("non-rectangular: " + " ".join(str(v) for v in exc.witness))
        return 1
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())

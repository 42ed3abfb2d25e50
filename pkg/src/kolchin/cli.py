"""Command line interface.

Exit codes: 0 success (and Kolchin verdicts), 10 NotKolchin, 2 bad
input, 11 survey disagreement under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys

from .edge_twist import (build_edge_twist_digraph, decide_kolchin,
                         digraph_dot, digraph_json)
from .growth import (GrowthConfig, classify_growth, iterate_lengths, survey,
                     _GEN_NAMES, _word_automorphism)
from .twist import TwistSpec, validate_twist
from .twistfile import InputError, parse_twist_pair
from .words import parse_word

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_KOLCHIN = 10
EXIT_DISAGREEMENT = 11


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_pair(path: str, require_efficient: bool) -> tuple[TwistSpec, TwistSpec]:
    pair = parse_twist_pair(path)
    if require_efficient:
        for i, ts in enumerate(pair):
            if not ts.efficient:
                raise InputError(
                    "efficiency", f"$.twists[{i}].efficient",
                    "the verdict is only meaningful for efficient splittings; "
                    "set \"efficient\": true once that has been checked")
    return pair


def _cmd_validate(args: argparse.Namespace) -> int:
    a, b = parse_twist_pair(args.file, validate=False)
    blocks = []
    ok = True
    for ts in (a, b):
        report = validate_twist(ts)
        ok = ok and report.ok
        blocks.append({"name": ts.name, **report.as_dict()})
    _emit({"ok": ok, "twists": blocks})
    return EXIT_OK if ok else EXIT_INPUT


def _cmd_decide(args: argparse.Namespace) -> int:
    a, b = _load_pair(args.file, require_efficient=True)
    verdict = decide_kolchin(a, b)
    _emit(verdict.as_dict())
    return EXIT_OK if verdict.kolchin else EXIT_NOT_KOLCHIN


def _cmd_digraph(args: argparse.Namespace) -> int:
    a, b = _load_pair(args.file, require_efficient=True)
    digraph = build_edge_twist_digraph(a, b)
    if args.format == "dot":
        sys.stdout.write(digraph_dot(digraph))
    else:
        _emit(digraph_json(digraph))
    return EXIT_OK


def _twist_word_automorphism(args: argparse.Namespace, a: TwistSpec, b: TwistSpec):
    from .twist import twist_automorphism
    try:
        w = parse_word(args.word, _GEN_NAMES)
    except ValueError as err:
        raise InputError("word-grammar", "--word", str(err)) from err
    if not w:
        raise InputError("bad-value", "--word", "need a nonempty word in sigma, tau")
    return _word_automorphism(w, twist_automorphism(a), twist_automorphism(b))


def _cmd_growth(args: argparse.Namespace) -> int:
    a, b = _load_pair(args.file, require_efficient=False)
    aut = _twist_word_automorphism(args, a, b)
    seed_text = args.seed if args.seed is not None else a.marking.basis[0]
    try:
        seed = parse_word(seed_text, a.marking.basis)
    except ValueError as err:
        raise InputError("word-grammar", "--seed", str(err)) from err
    if not seed:
        raise InputError("bad-value", "--seed", "need a nonempty seed word")
    ceiling = args.ceiling if args.ceiling > 0 else None
    try:
        series = iterate_lengths(aut, seed, args.iters,
                                 label=args.word, length_ceiling=ceiling)
    except ValueError as err:
        raise InputError("bad-value", "--iters", str(err)) from err
    classification = classify_growth(series)
    _emit({
        "word": args.word,
        "seed": seed_text,
        "lengths": list(series.lengths),
        "classification": classification.as_dict(),
    })
    return EXIT_OK


def _cmd_survey(args: argparse.Namespace) -> int:
    if args.iters < 1:
        raise InputError("bad-value", "--iters", "need at least one iteration")
    if args.max_len < 0:
        raise InputError("bad-value", "--max-len", "must be nonnegative")
    a, b = _load_pair(args.file, require_efficient=True)
    seeds = None
    if args.seed:
        seeds = []
        for text in args.seed:
            try:
                w = parse_word(text, a.marking.basis)
            except ValueError as err:
                raise InputError("word-grammar", "--seed", str(err)) from err
            if not w:
                raise InputError("bad-value", "--seed", "need nonempty seed words")
            seeds.append(w)
    result = survey(a, b, max_word_length=args.max_len,
                    iterations=args.iters, seeds=seeds)
    _emit(result)
    if args.strict and result["disagreement"]:
        return EXIT_DISAGREEMENT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kolchin",
        description="Decide whether two Dehn twists of a free group generate "
                    "a Kolchin (polynomially growing) subgroup.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a twist-pair file and report problems")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("decide", help="run the acyclicity test on the edge-twist digraph")
    p.add_argument("file")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("digraph", help="print the edge-twist digraph")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=_cmd_digraph)

    p = sub.add_parser("growth", help="track cyclic word lengths under one twist word")
    p.add_argument("file")
    p.add_argument("--word", default="sigma tau",
                   help="word in sigma, tau naming the two twists (default: 'sigma tau')")
    p.add_argument("--seed", default=None,
                   help="seed word over the ambient basis (default: first letter)")
    p.add_argument("--iters", type=int, default=GrowthConfig.iterations)
    p.add_argument("--ceiling", type=int, default=GrowthConfig.length_ceiling,
                   help="stop once lengths pass this bound; 0 disables")
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("survey",
                       help="cross-check the verdict against observed growth")
    p.add_argument("file")
    p.add_argument("--max-len", type=int, default=2,
                   help="survey all twist words up to this length")
    p.add_argument("--iters", type=int, default=GrowthConfig.iterations)
    p.add_argument("--seed", action="append", default=None,
                   help="seed word over the ambient basis; may repeat")
    p.add_argument("--strict", action="store_true",
                   help="exit 11 if growth contradicts the verdict")
    p.set_defaults(func=_cmd_survey)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    hyperterm check SPEC.json            cocycle verdict
    hyperterm decompose SPEC.json        Ore-Sato form as JSON
    hyperterm structure SPEC.json        piecewise closed form as JSON
    hyperterm factorial SPEC.json        per-region factorial forms
    hyperterm pochhammer SPEC.json       per-region Pochhammer forms
    hyperterm eval SPEC.json --at z      closed-form value at a point
    hyperterm compare SPEC.json          closed form vs. propagation oracle

Exit status: 0 on success, 1 on mathematical failure (incompatible
generators, non-telescoping structure, grid mismatches), 2 on usage
errors.  All structured output is JSON with sorted keys, so identical
input and flags give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from typing import Optional

from .errors import HypertermError, ParseError
from .geometry import LatticeBox
from .jsonio import (
    factorial_to_json,
    form_to_json,
    fraction_to_json,
    pochhammer_to_json,
    report_to_json,
    spec_from_json,
    structure_to_json,
)
from .oracle import grid_compare
from .oresato import decompose
from .structure import build_structure, closed_form_eval, split_factorial, to_pochhammer
from .termratio import TermSpec, check_compatibility

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2


def _load_spec(path: str, seed_override: Optional[str]) -> TermSpec:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    spec = spec_from_json(obj)
    if seed_override is not None:
        point_text, _, value_text = seed_override.partition("=")
        if not value_text:
            raise ParseError("--seed expects 'z1,...,zk=p/q'")
        point = tuple(int(x) for x in point_text.split(","))
        spec = spec.with_seed(point, Fraction(value_text))
    return spec


def _parse_window(text: Optional[str], arity: int) -> LatticeBox:
    if text is None:
        return LatticeBox((-8,) * arity, 16)
    ranges = []
    for part in text.split(","):
        lo_text, _, hi_text = part.partition(":")
        if not hi_text:
            raise ParseError("--window expects 'lo:hi' per axis")
        lo, hi = int(lo_text), int(hi_text)
        if lo > hi:
            raise ParseError(f"empty window range {part!r}")
        ranges.append((lo, hi))
    if len(ranges) != arity:
        raise ParseError(f"expected {arity} window ranges, got {len(ranges)}")
    size = ranges[0][1] - ranges[0][0]
    if any(hi - lo != size for lo, hi in ranges):
        raise ParseError("window ranges must all have the same length")
    return LatticeBox(tuple(lo for lo, _ in ranges), size)


def _emit(obj: dict, output: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_check(spec: TermSpec, args) -> int:
    if check_compatibility(spec):
        print("compatible")
        return EXIT_OK
    print("incompatible")
    return EXIT_MATH


def _cmd_decompose(spec: TermSpec, args) -> int:
    form = decompose(spec)
    _emit(form_to_json(form), args.output)
    return EXIT_OK


def _cmd_structure(spec: TermSpec, args) -> int:
    ps = build_structure(spec)
    _emit(structure_to_json(ps), args.output)
    return EXIT_OK


def _cmd_factorial(spec: TermSpec, args) -> int:
    forms = split_factorial(build_structure(spec))
    _emit({"forms": [factorial_to_json(ff) for ff in forms]}, args.output)
    return EXIT_OK


def _cmd_pochhammer(spec: TermSpec, args) -> int:
    forms = [to_pochhammer(ff) for ff in split_factorial(build_structure(spec))]
    _emit({"forms": [pochhammer_to_json(pf) for pf in forms]}, args.output)
    return EXIT_OK


def _cmd_eval(spec: TermSpec, args) -> int:
    if args.at is None:
        raise ParseError("eval requires --at z1,...,zk")
    point = tuple(int(x) for x in args.at.split(","))
    ps = build_structure(spec)
    outcome = closed_form_eval(ps, point)
    if outcome.status == "ok":
        print(fraction_to_json(outcome.value))
    else:
        print(f"undefined: {outcome.status}")
    return EXIT_OK


def _cmd_compare(spec: TermSpec, args) -> int:
    ps = build_structure(spec)
    window = _parse_window(args.window, spec.arity)
    report = grid_compare(ps, spec, window)
    _emit(report_to_json(report), args.output)
    return EXIT_OK if report.clean else EXIT_MATH


_COMMANDS = {
    "check": _cmd_check,
    "decompose": _cmd_decompose,
    "structure": _cmd_structure,
    "factorial": _cmd_factorial,
    "pochhammer": _cmd_pochhammer,
    "eval": _cmd_eval,
    "compare": _cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperterm",
        description="Analyze a multivariate hypergeometric term given by its shift quotients.",
    )
    parser.add_argument("command", choices=sorted(_COMMANDS))
    parser.add_argument("spec", help="path to a term spec JSON file")
    parser.add_argument("-o", "--output", help="write JSON output to this file")
    parser.add_argument("--window", help="comparison window, one lo:hi range per axis")
    parser.add_argument("--at", help="evaluation point z1,...,zk")
    parser.add_argument("--seed", help="override the spec seed: 'z1,...,zk=p/q'")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress")
    # values like '-6:6,-6:6' or '-2,-3' are data, not option names
    parser._negative_number_matcher = re.compile(r"^-\d+([:,]-?\d+)*$")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    # invalid input (file, JSON, spec validation) is a usage error; failures
    # of the mathematics (incompatibility, non-telescoping structure) are not
    try:
        spec = _load_spec(args.spec, args.seed)
    except (HypertermError, OSError, ValueError, json.JSONDecodeError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](spec, args)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HypertermError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

One logical command per invocation; every command is deterministic given
its flags and seed.  Exit codes: 0 all checks pass, 1 a check failed,
2 usage or parse error.  JSON output is printed with sorted keys so
identical invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from .centralizer import centralizer_basis, verify_lemma_2_2, verify_lemma_4_1
from .errors import ParseError, WittkitError
from .parsing import parse_element
from .rigidity import (
    PointwiseMap,
    rigidity_pipeline,
    verify_lemma_3_2,
    verify_lemma_3_3,
    verify_lemma_3_4,
    verify_lemma_4_3,
    verify_lemma_4_4,
)
from .witt import (
    AlgebraVariant,
    WittAlgebra,
    bracket,
    check_antisymmetry,
    check_bilinearity,
    check_closure,
    check_jacobi,
    check_monomial_rule_agreement,
)

_LEMMAS = ("lemma2.2", "lemma3.2", "lemma3.3", "lemma3.4",
           "lemma4.1", "lemma4.3", "lemma4.4")
_LAWS = ("antisymmetry", "bilinearity", "jacobi", "closure", "monomial")


def _add_common_flags(sub: argparse.ArgumentParser, box_default: Optional[int] = 2) -> None:
    sub.add_argument("--arity", type=int, required=True, metavar="M",
                     help="ambient rank m (number of t variables)")
    sub.add_argument("--prefix", type=int, default=None, metavar="N",
                     help="mu prefix n; required for winf, defaults to the arity otherwise")
    sub.add_argument("--variant", default="wn",
                     help="wn | wnplus | wnplusplus | wnmu | winf (case-insensitive)")
    sub.add_argument("--box", type=int, default=box_default, metavar="N",
                     help="degree box |alpha_j| <= N")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--seed", type=int, default=0)


def _algebra_from(args: argparse.Namespace, parser: argparse.ArgumentParser) -> WittAlgebra:
    kind = args.variant.lower().replace("_", "").replace("-", "")
    m = args.arity
    n = args.prefix
    try:
        if kind == "wn":
            variant = AlgebraVariant.wn(m)
        elif kind == "wnplus":
            variant = AlgebraVariant.wnplus(m)
        elif kind == "wnplusplus":
            variant = AlgebraVariant.wnplusplus(m)
        elif kind == "wnmu":
            variant = AlgebraVariant.wnmu(m)
        elif kind in ("winf", "winftrunc"):
            if n is None:
                parser.error("--variant winf requires --prefix")
            variant = AlgebraVariant.winf(n, m)
        else:
            parser.error(f"unknown variant {args.variant!r}")
        if kind != "winf" and kind != "winftrunc" and n is not None and n != m:
            parser.error("--prefix must equal --arity unless the variant is winf")
    except WittkitError as exc:
        parser.error(str(exc))
    return WittAlgebra(variant)


def _emit(args: argparse.Namespace, payload: Dict[str, object],
          text_lines: Sequence[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _report_lines(payload: Dict[str, object]) -> List[str]:
    lines = []
    for key in payload:
        value = payload[key]
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        lines.append(f"{key}: {value}")
    return lines


def cmd_parse(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algebra = _algebra_from(args, parser)
    element = parse_element(args.element, algebra)
    text = algebra.format(element)
    _emit(args, {"element": text}, [text])
    return 0


def cmd_bracket(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algebra = _algebra_from(args, parser)
    x = parse_element(args.x, algebra)
    y = parse_element(args.y, algebra)
    text = algebra.format(bracket(x, y))
    _emit(args, {"bracket": text}, [text])
    return 0


def cmd_centralize(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algebra = _algebra_from(args, parser)
    z = parse_element(args.element, algebra)
    result = centralizer_basis(algebra, z, args.box)
    basis = [algebra.format(e) for e in result.basis]
    payload = {"dimension": result.dimension, "basis": basis, "box": args.box}
    lines = [f"dimension: {result.dimension}"] + [f"  {b}" for b in basis]
    _emit(args, payload, lines)
    return 0


def _verify_report(args: argparse.Namespace, parser: argparse.ArgumentParser):
    algebra = _algebra_from(args, parser)
    n = algebra.n
    m = algebra.m
    lemma = args.lemma

    def need_element() -> "WittElement":
        text = args.element if args.element is not None else args.x_option
        if text is None:
            parser.error(f"{lemma} needs an element argument")
        return parse_element(text, algebra)

    def need_k() -> int:
        if args.k is None:
            parser.error(f"{lemma} needs --k")
        return args.k

    if lemma == "lemma2.2":
        return verify_lemma_2_2(n, need_k(), args.box)
    if lemma == "lemma3.2":
        return verify_lemma_3_2(need_element(), args.box if args.box is not None else 2)
    if lemma == "lemma3.3":
        return verify_lemma_3_3(n, need_k())
    if lemma == "lemma3.4":
        return verify_lemma_3_4(need_element(), n)
    if lemma == "lemma4.1":
        if args.prefix is None:
            parser.error("lemma4.1 needs --prefix")
        return verify_lemma_4_1(args.prefix, m, need_k(), args.box)
    if lemma == "lemma4.3":
        if args.prefix is None:
            parser.error("lemma4.3 needs --prefix")
        return verify_lemma_4_3(args.prefix, m, need_k(),
                                args.box if args.box is not None else 2)
    if args.prefix is None:
        parser.error("lemma4.4 needs --prefix")
    return verify_lemma_4_4(need_element(), args.prefix, m, args.box)


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.lemma in ("lemma4.1", "lemma4.3", "lemma4.4") and args.prefix is not None:
        # winf geometry is implied; the flag only carries n here.
        args.variant = "winf"
    report = _verify_report(args, parser)
    payload = report.to_dict()
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"lemma {report.lemma} {json.dumps(report.parameters, sort_keys=True)}: {verdict}"]
    lines += ["  " + line for line in _report_lines(
        {k: v for k, v in payload.items() if k not in ("lemma", "parameters", "pass")})]
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def cmd_rigidity(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algebra = _algebra_from(args, parser)
    try:
        with open(args.probes, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot read probe table: {exc}")
    try:
        entries = document["probes"]
        pairs = [
            (parse_element(entry["x"], algebra), parse_element(entry["dx"], algebra))
            for entry in entries
        ]
    except (KeyError, TypeError) as exc:
        parser.error(f"malformed probe table: {exc}")
    delta = PointwiseMap(algebra, pairs)
    report = rigidity_pipeline(delta, args.box)
    payload = report.to_dict()
    passing = sum(1 for r in report.residuals if r.passed)
    lines = [f"verdict: {report.verdict}"]
    if report.recovered_a is not None:
        lines.append(f"recovered_a: {algebra.format(report.recovered_a)}")
        lines.append(f"residuals: {passing}/{len(report.residuals)} pass")
    if report.certificate is not None:
        lines.append(f"certificate: {json.dumps(payload['certificate'], sort_keys=True)}")
    _emit(args, payload, lines)
    return 0 if report.passed else 1


def cmd_fuzz(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    algebra = _algebra_from(args, parser)
    rng = random.Random(args.seed)
    field = algebra.field

    def sample():
        return algebra.random_element(rng, args.box)

    def random_scalar():
        return field.from_fraction(
            Fraction(rng.choice([s for s in range(-9, 10) if s]), rng.randint(1, 4)))

    checks: Dict[str, Callable[[], Optional[str]]] = {
        "antisymmetry": lambda: check_antisymmetry(sample(), sample()),
        "bilinearity": lambda: check_bilinearity(
            random_scalar(), random_scalar(), sample(), sample(), sample()),
        "jacobi": lambda: check_jacobi(sample(), sample(), sample()),
        "closure": lambda: check_closure(algebra, sample(), sample()),
        "monomial": lambda: check_monomial_rule_agreement(sample(), sample()),
    }
    run = checks[args.law]
    failures: List[str] = []
    for _ in range(args.count):
        message = run()
        if message is not None:
            failures.append(message)
    passes = args.count - len(failures)
    payload = {
        "law": args.law,
        "count": args.count,
        "passes": passes,
        "failures": len(failures),
        "first_failure": failures[0] if failures else None,
        "seed": args.seed,
    }
    lines = [f"{args.law}: {passes}/{args.count} pass"]
    if failures:
        lines.append(f"first failure: {failures[0]}")
    _emit(args, payload, lines)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittkit",
        description="Exact Witt-algebra computations: brackets, centralizers, "
                    "and 2-local derivation rigidity checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="echo the canonical form of an element")
    _add_common_flags(p_parse)
    p_parse.add_argument("element")
    p_parse.set_defaults(handler=cmd_parse)

    p_bracket = sub.add_parser("bracket", help="compute [x, y]")
    _add_common_flags(p_bracket)
    p_bracket.add_argument("x")
    p_bracket.add_argument("y")
    p_bracket.set_defaults(handler=cmd_bracket)

    p_cent = sub.add_parser("centralize", help="centralizer basis of z in a degree box")
    _add_common_flags(p_cent)
    p_cent.add_argument("element")
    p_cent.set_defaults(handler=cmd_centralize)

    p_verify = sub.add_parser("verify", help="run a lemma verifier")
    _add_common_flags(p_verify, box_default=None)
    p_verify.add_argument("lemma", choices=_LEMMAS)
    p_verify.add_argument("element", nargs="?", default=None,
                          help="element argument for lemma3.2 / lemma3.4 / lemma4.4")
    p_verify.add_argument("--x", dest="x_option", default=None, metavar="ELEMENT",
                          help="element argument as a flag, usable anywhere on the line")
    p_verify.add_argument("--k", type=int, default=None)
    p_verify.set_defaults(handler=cmd_verify)

    p_rig = sub.add_parser("rigidity", help="run the 2-local rigidity pipeline")
    _add_common_flags(p_rig)
    p_rig.add_argument("--probes", required=True, metavar="FILE",
                       help='JSON file {"probes": [{"x": "...", "dx": "..."}]}')
    p_rig.set_defaults(handler=cmd_rigidity)

    p_fuzz = sub.add_parser("fuzz", help="randomized law checking")
    _add_common_flags(p_fuzz)
    p_fuzz.add_argument("law", choices=_LAWS)
    p_fuzz.add_argument("--count", type=int, default=100)
    p_fuzz.set_defaults(handler=cmd_fuzz)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except WittkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend: counting, closed forms, verification, enumeration, fuzzing.

Exit codes: 0 success / verified pass, 1 verified failure (a check that ran
and did not hold), 2 usage or validation error.  All randomized behaviour
flows from the explicit ``--seed``; identical invocations produce
byte-identical output.  The environment variable ``BLOCKPROD_PRECISION``
overrides the default precision (an explicit ``--precision`` still wins).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from fractions import Fraction

from blockprod import __version__, _kernels
from blockprod.bigreal import GUARD_BITS, BigReal
from blockprod.identities import (
    FiniteSupportFn,
    ProductSpec,
    closed_form_base2,
    closed_form_baseB,
    grouping_identity_holds,
    lemma1_residual,
    rivoal_grouped_partial,
    rivoal_original_partial,
)
from blockprod.products import VerifyReport, enumerate_words, verify
from blockprod.words import Word, count_block

DEFAULT_TERMS = 10**5
DEFAULT_TOLERANCE = "1/1000"
FORMATS = ("text", "json", "csv")


def _default_precision() -> int:
    env = os.environ.get("BLOCKPROD_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"BLOCKPROD_PRECISION must be an integer, got {env!r}") from None
    return 128


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational list {text!r}: {exc}") from None


def _parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(part.strip()) for part in text.split(","))


def _emit_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _report_lines(report: VerifyReport) -> list[str]:
    return [
        f"spec: {report.spec_label()}",
        f"terms_used: {report.terms_used}",
        f"precision_bits: {report.precision_bits}",
        f"lhs: {report.lhs_partial.to_decimal()}",
        f"rhs: {report.rhs_closed.to_decimal()}",
        f"abs_gap: {report.abs_gap.to_decimal()}",
        f"rel_gap: {report.rel_gap.to_decimal()}",
        f"tail_estimate: {report.tail_estimate.to_decimal()}",
        f"verdict: {report.verdict}",
    ]


def _print_report(report: VerifyReport, fmt: str) -> None:
    if fmt == "text":
        print("\n".join(_report_lines(report)))
    elif fmt == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(_emit_csv(VerifyReport.CSV_COLUMNS, [report.to_csv_row()]))


def _make_spec(args) -> ProductSpec:
    if args.base is None or args.word is None:
        raise ValueError("--base and --word are required when no formula name is given")
    word = Word.parse(args.word, args.base)
    a = _parse_fraction_list(args.a) if args.a else None
    b = _parse_fraction_list(args.b) if args.b else None
    if (a is None) != (b is None):
        raise ValueError("give both --a and --b or neither")
    if a is None:
        a = (Fraction(1), Fraction(1))
        b = (Fraction(0), Fraction(2))
    return ProductSpec(args.base, word, a, b)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_count(args) -> int:
    word = Word.parse(args.word, args.base)
    n = args.n
    c = count_block(word, n)
    if args.format == "text":
        print(c)
    elif args.format == "json":
        print(json.dumps({"base": args.base, "word": word.render(), "n": n, "count": c}))
    else:
        print(_emit_csv(("base", "word", "n", "count"), [[args.base, word.render(), n, c]]))
    return 0


def cmd_closed_form(args) -> int:
    word = Word.parse(args.word, args.base)
    if args.a or args.b or args.base != 2:
        expr = closed_form_baseB(_make_spec(args))
    else:
        expr = closed_form_base2(word)
    if args.format == "text":
        print(expr.text())
    elif args.format == "json":
        obj = {"base": args.base, "word": word.render(), "text": expr.text()}
        obj.update(expr.to_json_dict())
        print(json.dumps(obj))
    else:
        print(_emit_csv(("base", "word", "text"), [[args.base, word.render(), expr.text()]]))
    return 0


_FORMULA_ALIASES = {"rivoal": "rivoal_eq1", "rivoal_eq1": "rivoal_eq1",
                    "companion": "companion_eq2", "companion_eq2": "companion_eq2"}


def cmd_verify(args) -> int:
    if args.formula:
        tag = _FORMULA_ALIASES.get(args.formula)
        if tag is None:
            raise ValueError(f"unknown formula {args.formula!r}; expected rivoal or companion")
        target = tag
    else:
        target = _make_spec(args)
    report = verify(target, N=args.terms, precision_bits=args.precision,
                    tolerance=Fraction(args.tolerance))
    _print_report(report, args.format)
    return 0 if report.passed else 1


def cmd_enumerate(args) -> int:
    reports = enumerate_words(
        args.base,
        args.max_len,
        N=args.terms,
        precision_bits=args.precision,
        tolerance=Fraction(args.tolerance),
        max_words=args.max_words,
    )
    if args.format == "text":
        for r in reports:
            print(f"{r.spec.word.render():<{args.max_len}}  {r.verdict:4}  "
                  f"rel_gap={r.rel_gap.to_decimal(12)}  tail={r.tail_estimate.to_decimal(12)}")
    elif args.format == "json":
        print(json.dumps([r.to_json_dict() for r in reports], indent=2))
    else:
        print(_emit_csv(VerifyReport.CSV_COLUMNS, [r.to_csv_row() for r in reports]))
    return 0 if all(r.passed for r in reports) else 1


def cmd_lemma1_fuzz(args) -> int:
    bases = _parse_int_list(args.bases)
    for b in bases:
        if b < 2:
            raise ValueError(f"bases must be >= 2, got {b}")
    rng = random.Random(args.seed)
    exact = 0
    counterexample = None
    for trial in range(args.trials):
        base = bases[rng.randrange(len(bases))]
        length = rng.randrange(1, args.max_word_len + 1)
        if args.misrange and rng.randrange(2):
            digits = (0,) * length  # exercise the all-zeros range specifically
        else:
            digits = tuple(rng.randrange(base) for _ in range(length))
        word = Word(base, digits)
        entries = {}
        for _ in range(rng.randrange(1, args.max_support + 1)):
            key = rng.randrange(1, 400)
            num = rng.randrange(-50, 51)
            entries[key] = Fraction(num if num else 1, rng.randrange(1, 30))
        value_at_zero = Fraction(rng.randrange(1, 9), 1) if args.misrange else Fraction(0)
        f = FiniteSupportFn(entries, value_at_zero=value_at_zero)
        residual = lemma1_residual(f, word, base, misrange=args.misrange)
        if residual == 0:
            exact += 1
        elif counterexample is None:
            counterexample = (trial, base, word, f, residual)
    ok = exact == args.trials
    if args.format == "json":
        obj = {"trials": args.trials, "exact": exact, "seed": args.seed,
               "misrange": bool(args.misrange)}
        if counterexample:
            trial, base, word, f, residual = counterexample
            obj["counterexample"] = {
                "trial": trial, "base": base, "word": word.render(),
                "f": {str(k): str(v) for k, v in sorted(f.entries.items())},
                "f0": str(f.value_at_zero), "residual": str(residual),
            }
        print(json.dumps(obj, indent=2))
    else:
        print(f"{exact}/{args.trials} exact")
        if counterexample:
            trial, base, word, f, residual = counterexample
            print(f"counterexample at trial {trial}: base={base} word={word.render()} "
                  f"f0={f.value_at_zero} residual={residual}")
    return 0 if ok else 1


def cmd_alternating(args) -> int:
    K = args.terms
    if K < 100:
        raise ValueError("--terms must be at least 100 for a Cauchy report")
    prec = args.precision
    F = prec + GUARD_BITS
    k0, k1 = K // 100, K // 10
    s0 = _kernels.logsum_alternating(1, k0, F)
    s1 = s0 + _kernels.logsum_alternating(k0 + 1, k1, F)
    s2 = s1 + _kernels.logsum_alternating(k1 + 1, K, F)
    e0 = BigReal.exp_of_fixed(s0, F, prec)
    e1 = BigReal.exp_of_fixed(s1, F, prec)
    e2 = BigReal.exp_of_fixed(s2, F, prec)
    gap1 = abs(e1 - e0)
    gap2 = abs(e2 - e1)
    stable = 0
    g = gap2.to_fraction()
    while g and g < Fraction(1, 10 ** (stable + 1)) and stable < prec:
        stable += 1
    if args.format == "json":
        print(json.dumps({
            "terms": K,
            "estimate": e2.to_decimal(),
            f"estimate_at_{k1}": e1.to_decimal(),
            f"estimate_at_{k0}": e0.to_decimal(),
            "cauchy_gap_coarse": gap1.to_decimal(12),
            "cauchy_gap_fine": gap2.to_decimal(12),
            "stable_digits": stable,
        }, indent=2))
    else:
        print(f"terms: {K}")
        print(f"estimate: {e2.to_decimal()}")
        print(f"estimate_at_{k1}: {e1.to_decimal()}")
        print(f"estimate_at_{k0}: {e0.to_decimal()}")
        print(f"cauchy_gap_coarse: {gap1.to_decimal(12)}")
        print(f"cauchy_gap_fine: {gap2.to_decimal(12)}")
        print(f"stable_digits: {stable}")
    return 0


def cmd_rivoal_forms(args) -> int:
    K = args.blocks
    if K < 1:
        raise ValueError("--blocks must be >= 1")
    exact = grouping_identity_holds(K)
    original = rivoal_original_partial(4 * K + 3, args.precision)
    grouped = rivoal_grouped_partial(K, args.precision)
    if args.format == "json":
        print(json.dumps({
            "blocks": K,
            "original_terms": 4 * K + 3,
            "exact_match": exact,
            "original_partial": original.to_decimal(),
            "grouped_partial": grouped.to_decimal(),
        }, indent=2))
    else:
        print(f"blocks: {K}")
        print(f"original_terms: {4 * K + 3}")
        print("exact match" if exact else "MISMATCH")
        print(f"original_partial: {original.to_decimal()}")
        print(f"grouped_partial: {grouped.to_decimal()}")
    return 0 if exact else 1


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *, terms: bool = False) -> None:
    p.add_argument("--precision", type=int, default=_default_precision(),
                   help="working precision in bits (default 128, env BLOCKPROD_PRECISION)")
    p.add_argument("--format", choices=FORMATS, default="text", help="output format")
    if terms:
        p.add_argument("--terms", "-N", type=int, default=DEFAULT_TERMS,
                       help=f"number of product terms (default {DEFAULT_TERMS})")
        p.add_argument("--tolerance", default=DEFAULT_TOLERANCE,
                       help="relative tolerance as a rational or decimal string")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockprod",
        description="Digit-block products: counting, Gamma closed forms, verification.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count block occurrences in a base-B expansion")
    p.add_argument("n", type=int, help="the integer whose expansion is scanned")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--word", required=True, help="digit word, e.g. 0010")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("closed-form", help="print the Gamma closed form for a word")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--a", help="comma-separated rationals, e.g. 1,1")
    p.add_argument("--b", help="comma-separated rationals, e.g. 0,2")
    _add_common(p)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", help="verify a product against its closed form")
    p.add_argument("formula", nargs="?",
                   help="named formula: rivoal (4/pi) or companion; omit to use --base/--word")
    p.add_argument("--base", type=int)
    p.add_argument("--word")
    p.add_argument("--a")
    p.add_argument("--b")
    _add_common(p, terms=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="verify every word up to a length bound")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-words", type=int, default=512,
                   help="corpus-size guard (default 512 words)")
    _add_common(p, terms=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("lemma1-fuzz", help="exact randomized checks of the summation identity")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bases", default="2,3,4,10", help="comma-separated bases")
    p.add_argument("--max-word-len", type=int, default=6)
    p.add_argument("--max-support", type=int, default=12)
    p.add_argument("--misrange", action="store_true",
                   help="debug: deliberately swap the summation ranges (negative control)")
    _add_common(p)
    p.set_defaults(func=cmd_lemma1_fuzz)

    p = sub.add_parser("alternating", help="Cauchy self-consistency estimate of the alternating product")
    _add_common(p, terms=True)
    p.set_defaults(func=cmd_alternating)

    p = sub.add_parser("rivoal-forms", help="exact block-grouping identity between the two 4/pi forms")
    p.add_argument("--blocks", type=int, default=1000)
    _add_common(p)
    p.set_defaults(func=cmd_rivoal_forms)

    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

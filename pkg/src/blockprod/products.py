"""Truncated product evaluation, tail bounds, and verification reports.

The normative value of every partial product is the sequential log-space
sum of exact per-term fixed-point logarithms.  Because those logarithms are
integers, summing disjoint index ranges in any order reproduces the
sequential result exactly, so concurrent range splitting is trivially
consistent (the documented contract allows 4 ulps; this implementation
gives 0).

Tail bound.  For a product with balanced parameter vectors the n-th term
satisfies ``|log term_n| <= C(N)/n^2`` for all ``n > N`` (derivation in
:func:`tail_estimate`), and the block count of an L-digit window never
exceeds the digit count ``floor(log_B n) + 1``.  Hence

    |log full - log partial_N|  <=  C(N) * integral_N^inf (log_B t + 1)/t^2 dt
                                 =  C(N) * (log_B N + 1 + 1/ln B) / N.

All constants are computed from the parameter vectors with exact rational
arithmetic (no fitted factors); the only non-rational inputs, ``log_B N``
and ``1/ln B``, are rounded *upward* with explicit slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from blockprod import _kernels
from blockprod.bigreal import GUARD_BITS, BigReal, _check_precision, pi_value
from blockprod.fixedpoint import fx_div, fx_log, log2_fixed
from blockprod.gammafn import eval_gamma_expr
from blockprod.identities import (
    ProductSpec,
    closed_form_baseB,
    companion_closed_form,
)
from blockprod.words import Word, all_words, padding_for

__all__ = [
    "VerifyReport",
    "eval_lhs_partial",
    "tail_estimate",
    "verify",
    "enumerate_words",
    "default_corpus",
    "NAMED_FORMULAS",
    "TAIL_FACTOR",
]

NAMED_FORMULAS = ("rivoal_eq1", "companion_eq2")

# verdict threshold is max(tolerance, TAIL_FACTOR * tail_estimate): a partial
# product cannot be expected to sit closer to the limit than its own tail.
TAIL_FACTOR = 2


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def eval_lhs_partial(spec: ProductSpec, N: int, precision_bits: int) -> BigReal:
    """First ``N`` factors of the block-exponent product, in log space.

    Exponents are the block-occurrence counts of ``spec.word``; terms with
    count 0 contribute nothing and are skipped.
    """
    prec = _check_precision(precision_bits)
    if N < 1:
        raise ValueError("N must be >= 1")
    F = prec + GUARD_BITS
    a_num, a_den, b_num, b_den = spec.kernel_args()
    logsum = _kernels.logsum_word_product(
        spec.base,
        spec.word.digits,
        padding_for(spec.word),
        a_num,
        a_den,
        b_num,
        b_den,
        1,
        N,
        F,
    )
    return BigReal.exp_of_fixed(logsum, F, prec)


# --------------------------------------------------------------------------
# tail bounds
# --------------------------------------------------------------------------

_TAIL_F = 96  # fixed-point scale for the two logarithms entering the bound
_TAIL_SLACK = 1 << (_TAIL_F - 64)  # generous upper slack for their rounding


def _log_ratio_upper(N: int, B: int) -> Fraction:
    """Upper bound on ``log_B N`` as an exact rational."""
    t = fx_div(fx_log(N << _TAIL_F, _TAIL_F), fx_log(B << _TAIL_F, _TAIL_F), _TAIL_F)
    return Fraction(t + _TAIL_SLACK, 1 << _TAIL_F)


def _inv_ln_upper(B: int) -> Fraction:
    """Upper bound on ``1 / ln B``."""
    t = fx_div(1 << _TAIL_F, fx_log(B << _TAIL_F, _TAIL_F), _TAIL_F)
    return Fraction(t + _TAIL_SLACK, 1 << _TAIL_F)


def _tail_fraction(spec: ProductSpec, N: int) -> Fraction:
    """Rigorous upper bound on ``|log full - log partial_N|`` (see module docstring).

    Per-term bound: write ``g_i(x) = log((x+a_i)/(x+b_i))``, so that

        log term_n = sum_i [ g_i(Bn) - sum_{k<B} g_i(B^2 n + Bk) ].

    Expanding ``g_i(x) = (a-b)/x - (a^2-b^2)/(2x^2) + O(x^-3)`` and using the
    exact harmonic sums of the inner k-average gives, for ``Bn >= 2*max(a,b,1)``,

        log term_n = Cmain / n^2 + R_n,   |R_n| <= D3 / n^3,

        Cmain = sum_i (a_i-b_i)(B-1)(1 - (a_i+b_i)/B) / (2 B^2),
        D3    = sum_i [ |a_i-b_i|/(3B) + |a_i^2-b_i^2|/B^3 + 4(a_i^3+b_i^3)/B^3 ].

    For n > N this yields ``|log term_n| <= (|Cmain| + D3/N)/n^2``.
    """
    B = spec.base
    biggest = max([Fraction(1), *spec.a, *spec.b])
    n_min = max(2, -(-2 * biggest.numerator // (biggest.denominator * B)))
    if N < n_min:
        raise ValueError(f"tail bound needs N >= {n_min} for these parameters")
    c_main = Fraction(0)
    d3 = Fraction(0)
    for ai, bi in zip(spec.a, spec.b):
        c_main += (ai - bi) * (B - 1) * (1 - (ai + bi) / B) / (2 * B * B)
        d3 += abs(ai - bi) / (3 * B) + abs(ai * ai - bi * bi) / B**3
        d3 += 4 * (ai**3 + bi**3) / B**3
    c_t = abs(c_main) + d3 / N
    return c_t * (_log_ratio_upper(N, B) + 1 + _inv_ln_upper(B)) / N


def tail_estimate(spec: ProductSpec, N: int) -> BigReal:
    """Upper bound on the log-gap left after ``N`` terms; decreasing in ``N``."""
    return BigReal.from_fraction(_tail_fraction(spec, N), 64)


def _tail_fraction_bitlen_form(N: int) -> Fraction:
    """Tail bound for the 4/pi family (exponent magnitude <= 2 * digit count).

    ``|log((4k+2)^2/((4k+1)(4k+3)))| = log(1 + 1/((4k+1)(4k+3))) <= 1/(16k^2)``
    and the exponent magnitude is at most ``2 (log2 k + 1)``, so the tail is
    bounded by ``integral_N^inf (log2 t + 1)/(8 t^2) dt = (log2 N + 1 + 1/ln 2)/(8N)``.
    """
    if N < 2:
        raise ValueError("tail bound needs N >= 2")
    log2_n = Fraction(
        fx_div(fx_log(N << _TAIL_F, _TAIL_F), log2_fixed(_TAIL_F), _TAIL_F) + _TAIL_SLACK,
        1 << _TAIL_F,
    )
    inv_ln2 = Fraction(
        fx_div(1 << _TAIL_F, log2_fixed(_TAIL_F), _TAIL_F) + _TAIL_SLACK, 1 << _TAIL_F
    )
    return (log2_n + 1 + inv_ln2) / (8 * N)


# --------------------------------------------------------------------------
# verification
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of comparing a truncated product against its closed form."""

    spec: ProductSpec | str
    terms_used: int
    precision_bits: int
    lhs_partial: BigReal
    rhs_closed: BigReal
    abs_gap: BigReal
    rel_gap: BigReal
    tail_estimate: BigReal
    tolerance: Fraction
    tail_factor: int
    passed: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def spec_label(self) -> str:
        if isinstance(self.spec, str):
            return self.spec
        a = ",".join(str(x) for x in self.spec.a)
        b = ",".join(str(x) for x in self.spec.b)
        return f"base={self.spec.base} word={self.spec.word.render()} a={a} b={b}"

    def to_json_dict(self) -> dict:
        spec_obj = {"formula": self.spec} if isinstance(self.spec, str) else self.spec.to_json_dict()
        return {
            "spec": spec_obj,
            "terms_used": self.terms_used,
            "precision_bits": self.precision_bits,
            "lhs": self.lhs_partial.to_decimal(),
            "rhs": self.rhs_closed.to_decimal(),
            "abs_gap": self.abs_gap.to_decimal(),
            "rel_gap": self.rel_gap.to_decimal(),
            "tail_estimate": self.tail_estimate.to_decimal(),
            "tolerance": str(self.tolerance),
            "tail_factor": self.tail_factor,
            "verdict": self.verdict,
        }

    CSV_COLUMNS = (
        "spec",
        "terms_used",
        "precision_bits",
        "lhs",
        "rhs",
        "abs_gap",
        "rel_gap",
        "tail_estimate",
        "verdict",
    )

    def to_csv_row(self) -> list[str]:
        return [
            self.spec_label(),
            str(self.terms_used),
            str(self.precision_bits),
            self.lhs_partial.to_decimal(),
            self.rhs_closed.to_decimal(),
            self.abs_gap.to_decimal(),
            self.rel_gap.to_decimal(),
            self.tail_estimate.to_decimal(),
            self.verdict,
        ]


def _as_tolerance(tolerance) -> Fraction:
    tol = Fraction(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    return tol


def verify(
    target,
    N: int = 10**5,
    precision_bits: int = 128,
    tolerance=Fraction(1, 1000),
) -> VerifyReport:
    """Compare a truncated product with its closed form and report the gaps.

    ``target`` is a :class:`ProductSpec` or one of the named formulas
    ``"rivoal_eq1"`` (grouped digit-count product vs ``4/pi``; the reference
    ``pi`` comes from the arctangent series, *not* from Gamma values) and
    ``"companion_eq2"`` (signed digit-count product vs its Gamma closed
    form).  The verdict is ``pass`` iff the relative gap is at most
    ``max(tolerance, TAIL_FACTOR * tail_estimate)``; invalid input raises
    instead of reporting a failure.
    """
    prec = _check_precision(precision_bits)
    tol = _as_tolerance(tolerance)
    if N < 1:
        raise ValueError("N must be >= 1")
    F = prec + GUARD_BITS
    if isinstance(target, str):
        if target not in NAMED_FORMULAS:
            raise ValueError(f"unknown formula {target!r}; expected one of {NAMED_FORMULAS}")
        if target == "rivoal_eq1":
            logsum = _kernels.logsum_rivoal_grouped(1, N, F)
            rhs = BigReal.from_int(4, prec) / pi_value(prec)
        else:
            logsum = _kernels.logsum_companion(1, N, F)
            rhs = eval_gamma_expr(companion_closed_form(), prec)
        lhs = BigReal.exp_of_fixed(logsum, F, prec)
        tail = _tail_fraction_bitlen_form(N)
    elif isinstance(target, ProductSpec):
        lhs = eval_lhs_partial(target, N, prec)
        rhs = eval_gamma_expr(closed_form_baseB(target), prec)
        tail = _tail_fraction(target, N)
    else:
        raise TypeError(f"target must be a ProductSpec or formula name, got {type(target).__name__}")
    abs_gap = abs(lhs - rhs)
    rel_gap = abs_gap / abs(rhs)
    threshold = max(tol, TAIL_FACTOR * tail)
    return VerifyReport(
        spec=target,
        terms_used=N,
        precision_bits=prec,
        lhs_partial=lhs,
        rhs_closed=rhs,
        abs_gap=abs_gap,
        rel_gap=rel_gap,
        tail_estimate=BigReal.from_fraction(tail, prec),
        tolerance=tol,
        tail_factor=TAIL_FACTOR,
        passed=rel_gap.to_fraction() <= threshold,
    )


DEFAULT_PARAMS = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(2)))


def enumerate_words(
    base: int,
    max_len: int,
    N: int = 10**5,
    precision_bits: int = 128,
    tolerance=Fraction(1, 1000),
    a=None,
    b=None,
    max_words: int = 512,
) -> list[VerifyReport]:
    """One verification report per nonempty word of length <= ``max_len``.

    Words are processed in lexicographic order of their rendered form.  The
    parameter vectors default to ``a = (1, 1)``, ``b = (0, 2)``.  The corpus
    is capped: ``max_len`` at 8, and the word count at ``max_words``.
    """
    if not 1 <= max_len <= 8:
        raise ValueError("max_len must be between 1 and 8")
    count = sum(base**ell for ell in range(1, max_len + 1))
    if count > max_words:
        raise ValueError(f"corpus of {count} words exceeds the maximum of {max_words}")
    a = DEFAULT_PARAMS[0] if a is None else tuple(Fraction(x) for x in a)
    b = DEFAULT_PARAMS[1] if b is None else tuple(Fraction(x) for x in b)
    return [
        verify(ProductSpec(base, w, a, b), N, precision_bits, tolerance)
        for w in all_words(base, max_len)
    ]


def default_corpus() -> list[Word]:
    """The desk-scale word corpus: base 2 up to length 5, bases 3 and 4 up to length 3."""
    words = all_words(2, 5)
    words += all_words(3, 3)
    words += all_words(4, 3)
    return words

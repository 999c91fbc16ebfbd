"""The paper-level identities as executable objects.

Three families live here:

* the exact summation identity relating block counts to a shifted sum
  (:func:`lemma1_lhs` / :func:`lemma1_rhs` / :func:`lemma1_residual`),
  evaluated end-to-end in exact rational arithmetic for finitely supported
  functions;
* the closed-form constructors for block-exponent products
  (:func:`closed_form_base2` for the canonical base-2 family and
  :func:`closed_form_baseB` for general base and parameter vectors);
* the concrete 4/pi product family: the original four-periodic form, the
  grouped form with digit-count exponents, the companion form with signed
  digit-count exponents, and the numerically estimated alternating form.

Floor-log exponents are always derived from integer bit length
(``floor(log2 k - 1) = bitlen(k) - 2`` and ``floor(log2 k + 1) = bitlen(k)``
for ``k >= 1``), never from floating logarithms, so powers of two are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from blockprod import _kernels
from blockprod.bigreal import GUARD_BITS, BigReal, _check_precision
from blockprod.gammafn import BalanceError, GammaExpr
from blockprod.words import ALL_ZEROS, Word, classify, count_block, word_value

__all__ = [
    "rho",
    "FiniteSupportFn",
    "ProductSpec",
    "lemma1_lhs",
    "lemma1_rhs",
    "lemma1_residual",
    "lemma1_residual_numeric",
    "closed_form_base2",
    "closed_form_baseB",
    "companion_closed_form",
    "rivoal_original_partial",
    "rivoal_grouped_partial",
    "companion_partial",
    "alternating_product_estimate",
    "rivoal_original_factors",
    "rivoal_grouped_factors",
    "grouping_identity_holds",
]

_RHO = (1, -1, 0, 0)


def rho(k: int) -> int:
    """The 4-periodic sequence with values 1, -1, 0, 0 starting at ``rho(0) = 1``."""
    if k < 0:
        raise ValueError("rho is defined for k >= 0")
    return _RHO[k & 3]


# --------------------------------------------------------------------------
# exact summation identity
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSupportFn:
    """A rational-valued function on the nonnegative integers, zero a.e.

    ``entries`` maps positive integers to nonzero rational values; the value
    at 0 is carried separately because the summation identity never reads it
    (only the deliberately mis-ranged debug variant does — that is exactly
    what makes the range split observable).
    """

    entries: Mapping[int, Fraction]
    value_at_zero: Fraction = field(default=Fraction(0))

    def __post_init__(self):
        clean = {}
        for k, v in dict(self.entries).items():
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"support keys must be integers >= 1, got {k!r}")
            fv = Fraction(v)
            if fv:
                clean[k] = fv
        object.__setattr__(self, "entries", clean)
        object.__setattr__(self, "value_at_zero", Fraction(self.value_at_zero))

    def __call__(self, n: int) -> Fraction:
        if n == 0:
            return self.value_at_zero
        return self.entries.get(n, Fraction(0))

    @property
    def support(self) -> list[int]:
        return sorted(self.entries)


def _check_lemma_args(f: FiniteSupportFn, w: Word, base: int) -> None:
    if w.is_empty:
        raise ValueError("the summation identity needs a nonempty word")
    if w.base != base:
        raise ValueError(f"word base {w.base} does not match base {base}")


def lemma1_lhs(f: FiniteSupportFn, w: Word, base: int) -> Fraction:
    """Exact value of ``sum_{n>=1} N_w(n) * (f(n) - sum_{k<B} f(Bn+k))``.

    Only finitely many ``n`` contribute: those in the support of ``f`` and
    those whose block ``[Bn, Bn+B-1]`` meets the support.
    """
    _check_lemma_args(f, w, base)
    candidates = set(f.support)
    for m in f.support:
        t = m // base
        if t >= 1:
            candidates.add(t)
    total = Fraction(0)
    for n in sorted(candidates):
        inner = f(n)
        for k in range(base):
            inner -= f(base * n + k)
        if inner:
            c = count_block(w, n)
            if c:
                total += c * inner
    return total


def lemma1_rhs(f: FiniteSupportFn, w: Word, base: int, misrange: bool = False) -> Fraction:
    """Exact value of ``sum f(B^L n + v(w))``.

    The sum runs over ``n >= 1`` when ``w`` is all zeros and over ``n >= 0``
    otherwise.  ``misrange=True`` deliberately swaps the two ranges; this is
    a debug/negative-control hook (the swapped all-zeros range reads
    ``f(0)``, which the correct identity never does).
    """
    _check_lemma_args(f, w, base)
    v = word_value(w)
    step = base ** len(w.digits)
    start = 1 if classify(w).kind == ALL_ZEROS else 0
    if misrange:
        start = 1 - start
    total = Fraction(0)
    for m in f.support:
        r = m - v
        if r >= 0 and r % step == 0 and r // step >= start:
            total += f(m)
    if start == 0 and v == 0:
        total += f.value_at_zero  # the n = 0 term of a mis-ranged all-zeros word
    return total


def lemma1_residual(f: FiniteSupportFn, w: Word, base: int, misrange: bool = False) -> Fraction:
    """``lemma1_lhs - lemma1_rhs``; exactly zero for every finite-support ``f``."""
    return lemma1_lhs(f, w, base) - lemma1_rhs(f, w, base, misrange=misrange)


def lemma1_residual_numeric(
    f: Callable[[int], float], w: Word, base: int, n_max: int
) -> float:
    """Truncated float residual for a general (decaying) ``f``.

    Both sides are truncated so that ``f`` is never evaluated beyond
    ``base * n_max + base - 1``; the residual tends to 0 as ``n_max`` grows
    provided ``sum |f(n)| log n`` converges.  No exactness is claimed.
    """
    _check_lemma_args(f, w, base)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    lhs = 0.0
    for n in range(1, n_max + 1):
        c = count_block(w, n)
        if c:
            inner = f(n)
            for k in range(base):
                inner -= f(base * n + k)
            lhs += c * inner
    v = word_value(w)
    step = base ** len(w.digits)
    n = 1 if classify(w).kind == ALL_ZEROS else 0
    bound = base * n_max + base - 1
    rhs = 0.0
    while step * n + v <= bound:
        rhs += f(step * n + v)
        n += 1
    return lhs - rhs


# --------------------------------------------------------------------------
# product specifications and closed forms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductSpec:
    """One block-exponent infinite product: base, word, parameter vectors.

    The parameter sums must balance exactly (rational check); that is the
    hypothesis making the product converge and collapse to a Gamma ratio.
    """

    base: int
    word: Word
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError("base must be >= 2")
        if self.word.is_empty:
            raise ValueError("word must be nonempty")
        if self.word.base != self.base:
            raise ValueError(f"word base {self.word.base} != spec base {self.base}")
        a = tuple(Fraction(x) for x in self.a)
        b = tuple(Fraction(x) for x in self.b)
        if len(a) != len(b) or not a:
            raise ValueError("parameter vectors must have equal nonzero length")
        if any(x < 0 for x in a + b):
            raise ValueError("parameters must be nonnegative rationals")
        if sum(a) != sum(b):
            raise BalanceError(f"sum(a) = {sum(a)} != sum(b) = {sum(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def canonical_base2(cls, word: Word) -> "ProductSpec":
        """The parameters ``a = (1, 1)``, ``b = (0, 2)`` that yield the base-2 family."""
        return cls(2, word, (Fraction(1), Fraction(1)), (Fraction(0), Fraction(2)))

    def kernel_args(self) -> tuple[tuple[int, ...], ...]:
        return (
            tuple(x.numerator for x in self.a),
            tuple(x.denominator for x in self.a),
            tuple(x.numerator for x in self.b),
            tuple(x.denominator for x in self.b),
        )

    def factor(self, n: int) -> Fraction:
        """Exact value of the n-th product term (before the block exponent)."""
        if n < 1:
            raise ValueError("terms are indexed from n = 1")
        B = self.base
        t = Fraction(1)
        for ai, bi in zip(self.a, self.b):
            t *= (B * n + ai) / (B * n + bi)
            for k in range(B):
                x = B * B * n + B * k
                t *= (x + bi) / (x + ai)
        return t

    def induced_f(self, n: int) -> Fraction:
        """The rational ``prod_i (Bn+a_i)/(Bn+b_i)`` whose log drives the identity."""
        if n < 1:
            raise ValueError("defined for n >= 1")
        B = self.base
        t = Fraction(1)
        for ai, bi in zip(self.a, self.b):
            t *= (B * n + ai) / (B * n + bi)
        return t

    def to_json_dict(self) -> dict:
        return {
            "base": self.base,
            "word": self.word.render(),
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "ProductSpec":
        base = int(obj["base"])
        return cls(
            base,
            Word.parse(obj["word"], base),
            tuple(Fraction(s) for s in obj["a"]),
            tuple(Fraction(s) for s in obj["b"]),
        )


def closed_form_base2(w: Word) -> GammaExpr:
    """Closed form of the canonical base-2 product with exponent ``2 N_w(n)``.

    All-zeros words of length ``j`` give
    ``2^(j+2) G(1/2^j) / G(1/2^(j+1))^2``; every other word gives
    ``G(v/2^L) G((v+1)/2^L) / G((2v+1)/2^(L+1))^2`` with ``v`` the word value
    and ``L`` its length.
    """
    if w.base != 2:
        raise ValueError("closed_form_base2 needs a base-2 word")
    cls = classify(w)  # raises on the empty word
    if cls.kind == ALL_ZEROS:
        j = cls.j
        return GammaExpr(
            Fraction(2 ** (j + 2)),
            num=(Fraction(1, 2**j),),
            den=(Fraction(1, 2 ** (j + 1)),) * 2,
        )
    v = word_value(w)
    L = len(w.digits)
    return GammaExpr(
        Fraction(1),
        num=(Fraction(v, 2**L), Fraction(v + 1, 2**L)),
        den=(Fraction(2 * v + 1, 2 ** (L + 1)),) * 2,
    )


def closed_form_baseB(spec: ProductSpec) -> GammaExpr:
    """Closed form of a general block-exponent product (prefactor 1).

    Numerator arguments come from ``b``, denominator arguments from ``a``:
    ``1 + x/B^(j+1)`` for all-zeros words of length ``j``, else
    ``v/B^L + x/B^(L+1)``.
    """
    cls = classify(spec.word)
    B = spec.base
    if cls.kind == ALL_ZEROS:
        m = Fraction(1, B ** (cls.j + 1))
        num = tuple(1 + bi * m for bi in spec.b)
        den = tuple(1 + ai * m for ai in spec.a)
    else:
        v = word_value(spec.word)
        L = len(spec.word.digits)
        head = Fraction(v, B**L)
        m = Fraction(1, B ** (L + 1))
        num = tuple(head + bi * m for bi in spec.b)
        den = tuple(head + ai * m for ai in spec.a)
    return GammaExpr(Fraction(1), num=num, den=den)


def companion_closed_form() -> GammaExpr:
    """``8 G(3/4)^2 / G(1/4)^2``, the value of the signed-exponent companion product.

    Via reflection this equals ``16 pi^2 / G(1/4)^4``; the package checks the
    two renditions against each other rather than against any decimal literal.
    """
    return GammaExpr(
        Fraction(8),
        num=(Fraction(3, 4), Fraction(3, 4)),
        den=(Fraction(1, 4), Fraction(1, 4)),
    )


# --------------------------------------------------------------------------
# the 4/pi product family
# --------------------------------------------------------------------------


def rivoal_original_partial(K: int, precision_bits: int) -> BigReal:
    """Product of ``(1 + 1/(k+1))^(2 rho(k) (bitlen(k)-2))`` over ``2 <= k <= K``."""
    prec = _check_precision(precision_bits)
    if K < 2:
        raise ValueError("K must be >= 2")
    F = prec + GUARD_BITS
    return BigReal.exp_of_fixed(_kernels.logsum_rivoal_original(2, K, F), F, prec)


def rivoal_grouped_partial(K: int, precision_bits: int) -> BigReal:
    """Product of ``((4k+2)^2/((4k+1)(4k+3)))^(2(N_0(k)+N_1(k)))`` over ``1 <= k <= K``.

    The exponent is twice the binary digit count of ``k``.
    """
    prec = _check_precision(precision_bits)
    if K < 1:
        raise ValueError("K must be >= 1")
    F = prec + GUARD_BITS
    return BigReal.exp_of_fixed(_kernels.logsum_rivoal_grouped(1, K, F), F, prec)


def companion_partial(K: int, precision_bits: int) -> BigReal:
    """Same factors with exponent ``2(N_0(k) - N_1(k))`` (signed digit balance)."""
    prec = _check_precision(precision_bits)
    if K < 1:
        raise ValueError("K must be >= 1")
    F = prec + GUARD_BITS
    return BigReal.exp_of_fixed(_kernels.logsum_companion(1, K, F), F, prec)


def alternating_product_estimate(K: int, precision_bits: int) -> BigReal:
    """Partial product with exponent ``2(-1)^k (N_0(k)+N_1(k))``.

    No closed form is known for the limit; this is a numeric estimator only,
    to be used with the Cauchy self-consistency report of the CLI.
    """
    prec = _check_precision(precision_bits)
    if K < 1:
        raise ValueError("K must be >= 1")
    F = prec + GUARD_BITS
    return BigReal.exp_of_fixed(_kernels.logsum_alternating(1, K, F), F, prec)


# --------------------------------------------------------------------------
# exact grouping identity
# --------------------------------------------------------------------------


def _bump(factors: dict[int, int], base: int, exponent: int) -> None:
    e = factors.get(base, 0) + exponent
    if e:
        factors[base] = e
    else:
        factors.pop(base, None)


def rivoal_original_factors(K: int) -> dict[int, int]:
    """The partial product over ``2 <= k <= K`` as a map ``integer -> exponent``.

    Each factor ``(1 + 1/(k+1))^e`` contributes ``(k+2)^e (k+1)^-e``; this
    factored form is the exact "rational-exponent log" representation.
    """
    factors: dict[int, int] = {}
    for k in range(2, K + 1):
        r = k & 3
        if r > 1:
            continue
        e = 2 * (k.bit_length() - 2)
        if not e:
            continue
        if r == 1:
            e = -e
        _bump(factors, k + 2, e)
        _bump(factors, k + 1, -e)
    return factors


def rivoal_grouped_factors(K: int) -> dict[int, int]:
    """The grouped partial product over ``1 <= k <= K`` in the same factored form."""
    factors: dict[int, int] = {}
    for k in range(1, K + 1):
        e = 2 * k.bit_length()
        _bump(factors, 4 * k + 2, 2 * e)
        _bump(factors, 4 * k + 1, -e)
        _bump(factors, 4 * k + 3, -e)
    return factors


def grouping_identity_holds(K: int) -> bool:
    """Whether the original partial up to ``4K+3`` equals the grouped partial up to ``K`` exactly."""
    if K < 1:
        raise ValueError("K must be >= 1")
    return rivoal_original_factors(4 * K + 3) == rivoal_grouped_factors(K)

"""Summation identity (exact), closed-form builders, and the 4/pi product family."""

import math
import random
from fractions import Fraction

import mpmath
import pytest
from helpers import assert_close, to_mpf

from blockprod.gammafn import BalanceError, eval_gamma_expr
from blockprod.identities import (
    FiniteSupportFn,
    ProductSpec,
    alternating_product_estimate,
    closed_form_base2,
    closed_form_baseB,
    companion_closed_form,
    companion_partial,
    grouping_identity_holds,
    lemma1_lhs,
    lemma1_residual,
    lemma1_residual_numeric,
    lemma1_rhs,
    rho,
    rivoal_grouped_factors,
    rivoal_grouped_partial,
    rivoal_original_factors,
    rivoal_original_partial,
)
from blockprod.words import Word


def random_fn(rng: random.Random, max_support: int = 10, key_bound: int = 300) -> FiniteSupportFn:
    entries = {}
    for _ in range(rng.randrange(1, max_support + 1)):
        num = rng.randrange(-60, 61)
        entries[rng.randrange(1, key_bound)] = Fraction(num if num else 1, rng.randrange(1, 40))
    return FiniteSupportFn(entries)


def random_word(rng: random.Random, base: int, max_len: int = 6) -> Word:
    return Word(base, tuple(rng.randrange(base) for _ in range(rng.randrange(1, max_len + 1))))


class TestRho:
    def test_period(self):
        assert [rho(k) for k in range(8)] == [1, -1, 0, 0, 1, -1, 0, 0]
        with pytest.raises(ValueError):
            rho(-1)


class TestFiniteSupportFn:
    def test_rejects_nonpositive_keys(self):
        with pytest.raises(ValueError):
            FiniteSupportFn({0: Fraction(1)})

    def test_drops_zero_values(self):
        f = FiniteSupportFn({3: Fraction(0), 4: Fraction(2)})
        assert f.support == [4]

    def test_value_at_zero(self):
        f = FiniteSupportFn({1: Fraction(1)}, value_at_zero=Fraction(9))
        assert f(0) == 9 and f(1) == 1 and f(2) == 0


class TestLemma1:
    def test_single_point_starts_nonzero(self):
        f = FiniteSupportFn({1: Fraction(1)})
        w = Word.parse("1", 2)
        assert lemma1_lhs(f, w, 2) == 1
        assert lemma1_rhs(f, w, 2) == 1
        assert lemma1_residual(f, w, 2) == 0

    def test_single_point_zero_word(self):
        f = FiniteSupportFn({1: Fraction(1)})
        assert lemma1_lhs(f, Word.parse("0", 2), 2) == 0

    def test_rhs_range_examples(self):
        f = FiniteSupportFn({2: Fraction(5)})
        assert lemma1_rhs(f, Word.parse("10", 2), 2) == 5  # n = 0 hits f(2)
        assert lemma1_rhs(f, Word.parse("00", 2), 2) == 0  # all-zeros range starts at 1

    def test_block_support(self):
        f = FiniteSupportFn({n: Fraction(1) for n in range(1, 51)})
        w = Word.parse("11", 2)
        assert lemma1_lhs(f, w, 2) == lemma1_rhs(f, w, 2)

    def test_harmonic_support(self):
        f = FiniteSupportFn({n: Fraction(1, n) for n in range(1, 101)})
        assert lemma1_residual(f, Word.parse("01", 2), 2) == 0

    def test_f0_never_read(self):
        """Perturbing f(0) changes nothing: the identity does not involve it."""
        rng = random.Random(5)
        for _ in range(20):
            entries = dict(random_fn(rng).entries)
            w = random_word(rng, 2)
            plain = lemma1_residual(FiniteSupportFn(entries), w, 2)
            bent = lemma1_residual(FiniteSupportFn(entries, value_at_zero=Fraction(17)), w, 2)
            assert plain == bent == 0

    def test_misrange_breaks_all_zeros(self):
        """Negative control: the swapped range reads f(0) for all-zeros words."""
        f = FiniteSupportFn({4: Fraction(3)}, value_at_zero=Fraction(7))
        w = Word.parse("00", 2)
        assert lemma1_residual(f, w, 2) == 0
        assert lemma1_residual(f, w, 2, misrange=True) == -7

    def test_misrange_breaks_nonzero_lead(self):
        f = FiniteSupportFn({1: Fraction(2)})
        w = Word.parse("1", 2)
        assert lemma1_residual(f, w, 2, misrange=True) == 2  # dropped n=0 term f(v)

    def test_random_campaign(self):
        rng = random.Random(2024)
        for _ in range(300):
            base = rng.choice([2, 3, 4, 10])
            f = random_fn(rng)
            w = random_word(rng, base)
            assert lemma1_residual(f, w, base) == 0

    def test_base_mismatch(self):
        with pytest.raises(ValueError):
            lemma1_lhs(FiniteSupportFn({1: Fraction(1)}), Word.parse("1", 2), 3)

    def test_numeric_mode_decaying_f(self):
        """Truncated residual for f(n) = 1/n^2 shrinks as the bound grows."""
        w = Word.parse("11", 2)
        res = [abs(lemma1_residual_numeric(lambda n: 1.0 / n**2, w, 2, m)) for m in (100, 1000, 10000)]
        assert res[0] > res[1] > res[2]
        assert res[2] < 1e-3  # decays like log(n_max)/n_max


class TestClosedFormBase2:
    def test_word_zero(self):
        assert closed_form_base2(Word.parse("0", 2)).text() == "8 * G(1/2) / (G(1/4)^2)"

    def test_word_one(self):
        assert closed_form_base2(Word.parse("1", 2)).text() == "G(1/2) / (G(3/4)^2)"

    def test_word_double_zero(self):
        assert closed_form_base2(Word.parse("00", 2)).text() == "16 * G(1/4) / (G(1/8)^2)"

    def test_general_branch(self):
        e = closed_form_base2(Word.parse("101", 2))  # v=5, L=3
        assert e.num == (Fraction(5, 8), Fraction(6, 8))
        assert e.den == (Fraction(11, 16), Fraction(11, 16))

    def test_rejects_wrong_base_or_empty(self):
        with pytest.raises(ValueError):
            closed_form_base2(Word.parse("2", 3))
        with pytest.raises(ValueError):
            closed_form_base2(Word(2, ()))


class TestClosedFormBaseB:
    def test_reduction_to_base2(self, mp_prec):
        """B=2, a=(1,1), b=(0,2) reproduces the base-2 closed forms numerically."""
        with mp_prec(128):
            for text in ("0", "1", "00", "011", "10101"):
                w = Word.parse(text, 2)
                general = eval_gamma_expr(closed_form_baseB(ProductSpec.canonical_base2(w)), 128)
                special = eval_gamma_expr(closed_form_base2(w), 128)
                assert abs((general / special).to_fraction() - 1) <= Fraction(1, 2**100)

    def test_trivial_parameters(self):
        spec = ProductSpec(3, Word.parse("2", 3), (Fraction(1),), (Fraction(1),))
        e = closed_form_baseB(spec)
        assert e.num == () and e.den == () and e.prefactor == 1
        assert eval_gamma_expr(e, 128).to_fraction() == 1

    def test_balance_enforced(self):
        with pytest.raises(BalanceError):
            ProductSpec(3, Word.parse("2", 3), (Fraction(1),), (Fraction(2),))

    def test_all_zeros_branch_args(self):
        spec = ProductSpec.canonical_base2(Word.parse("0", 2))
        e = closed_form_baseB(spec)
        # num: 1 + 0/4 (dropped as unit), 1 + 2/4; den: (1 + 1/4)^2
        assert e.num == (Fraction(3, 2),)
        assert e.den == (Fraction(5, 4), Fraction(5, 4))


class TestProductSpec:
    def test_json_round_trip(self):
        spec = ProductSpec(3, Word.parse("021", 3), (Fraction(1), Fraction(1)), (Fraction(1, 2), Fraction(3, 2)))
        d = spec.to_json_dict()
        assert d == {"base": 3, "word": "021", "a": ["1", "1"], "b": ["1/2", "3/2"]}
        assert ProductSpec.from_json_dict(d) == spec

    def test_factor_value(self):
        spec = ProductSpec.canonical_base2(Word.parse("1", 2))
        # the canonical parameters telescope to ((4n+2)^2/((4n+1)(4n+3)))^2
        for n in (1, 2, 17):
            want = Fraction((4 * n + 2) ** 2, (4 * n + 1) * (4 * n + 3)) ** 2
            assert spec.factor(n) == want

    def test_summability(self):
        """sum |log f(n)| log n over n <= 1e6 is bounded with Cauchy partial sums."""
        for spec in (
            ProductSpec(3, Word.parse("12", 3), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(2))),
            ProductSpec.canonical_base2(Word.parse("01", 2)),
            ProductSpec(4, Word.parse("3", 4), (Fraction(1, 2), Fraction(3, 2)), (Fraction(0), Fraction(2))),
        ):
            B = spec.base
            af = [float(x) for x in spec.a]
            bf = [float(x) for x in spec.b]
            partial = 0.0
            checkpoints = {}
            for n in range(1, 10**6 + 1):
                f = 0.0
                for ai, bi in zip(af, bf):
                    f += math.log((B * n + ai) / (B * n + bi))
                partial += abs(f) * math.log(max(n, 2))
                if n in (10**4, 10**5, 10**6):
                    checkpoints[n] = partial
            assert checkpoints[10**5] - checkpoints[10**4] > checkpoints[10**6] - checkpoints[10**5]
            assert checkpoints[10**6] < 2.0


class TestRivoalForms:
    def test_original_small(self):
        assert rivoal_original_partial(3, 128).to_fraction() == 1  # rho(2)=rho(3)=0

    def test_grouped_first_term(self):
        got = rivoal_grouped_partial(1, 128)
        want = Fraction(36, 35) ** 2
        assert abs(got.to_fraction() - want) <= want * Fraction(1, 2**110)

    def test_exponent_at_six(self):
        """k = 6 = 110_2 has 3 digits, so the grouped exponent is 2*3."""
        inc = rivoal_grouped_partial(6, 256).to_fraction() / rivoal_grouped_partial(5, 256).to_fraction()
        want = Fraction(26**2, 25 * 27) ** 6
        assert abs(inc - want) <= want * Fraction(1, 2**200)

    def test_block_grouping_exact(self):
        assert grouping_identity_holds(1)
        assert grouping_identity_holds(37)
        assert grouping_identity_holds(1000)

    def test_factored_forms_match(self):
        assert rivoal_original_factors(4 * 50 + 3) == rivoal_grouped_factors(50)
        # cutting at 4K leaves the k = 4K factor unpaired (4K+2, 4K+3 are inert)
        assert rivoal_original_factors(4 * 50) != rivoal_grouped_factors(50)

    def test_numeric_agreement(self):
        a = rivoal_original_partial(4 * 200 + 3, 128)
        b = rivoal_grouped_partial(200, 128)
        assert abs((a / b).to_fraction() - 1) <= Fraction(1, 2**110)

    def test_grouped_converges_to_4_over_pi(self, mp_prec):
        with mp_prec(128):
            got = rivoal_grouped_partial(10**4, 128)
            assert abs(to_mpf(got) - 4 / mpmath.pi) * mpmath.pi / 4 < mpmath.mpf("1e-3")

    def test_original_converges_to_4_over_pi(self, mp_prec):
        with mp_prec(128):
            got = rivoal_original_partial(4 * 10**5 + 3, 128)
            assert abs(to_mpf(got) - 4 / mpmath.pi) * mpmath.pi / 4 < mpmath.mpf("1e-4")


class TestCompanion:
    def test_closed_form_shape(self):
        e = companion_closed_form()
        assert e.prefactor == 8
        assert e.num == (Fraction(3, 4), Fraction(3, 4))
        assert e.den == (Fraction(1, 4), Fraction(1, 4))

    def test_equals_pi_gamma_rendition(self, mp_prec):
        """8 G(3/4)^2/G(1/4)^2 equals 16 pi^2 / G(1/4)^4 via reflection."""
        with mp_prec(256):
            got = eval_gamma_expr(companion_closed_form(), 256)
            want = 16 * mpmath.pi**2 / mpmath.gamma(mpmath.mpf(1) / 4) ** 4
            assert_close(got, want, mpmath.mpf(2) ** -248)

    def test_quotient_of_base2_instances(self):
        """Exponent N0 - N1 is the quotient of the w=0 and w=1 products."""
        zero = eval_gamma_expr(closed_form_base2(Word.parse("0", 2)), 192)
        one = eval_gamma_expr(closed_form_base2(Word.parse("1", 2)), 192)
        comp = eval_gamma_expr(companion_closed_form(), 192)
        assert abs((zero / one / comp).to_fraction() - 1) <= Fraction(1, 2**180)

    def test_partial_tracks_closed_form(self, mp_prec):
        with mp_prec(128):
            got = companion_partial(10**4, 128)
            want = 16 * mpmath.pi**2 / mpmath.gamma(mpmath.mpf(1) / 4) ** 4
            assert abs(to_mpf(got) - want) / want < mpmath.mpf("1e-3")


class TestAlternating:
    def test_first_terms(self):
        est1 = alternating_product_estimate(1, 128).to_fraction()
        want1 = Fraction(35 * 35, 36 * 36)
        assert abs(est1 - want1) <= want1 * Fraction(1, 2**110)
        est2 = alternating_product_estimate(2, 128).to_fraction()
        want2 = want1 * Fraction(100, 99) ** 4
        assert abs(est2 - want2) <= want2 * Fraction(1, 2**110)

    def test_cauchy_self_consistency(self):
        e4 = alternating_product_estimate(10**4, 128).to_fraction()
        e5 = alternating_product_estimate(10**5, 128).to_fraction()
        e6 = alternating_product_estimate(10**6, 128).to_fraction()
        gap_coarse = abs(e5 - e4)
        gap_fine = abs(e6 - e5)
        assert gap_fine > 0
        assert gap_coarse >= 5 * gap_fine

"""Gamma evaluation quality, closed-form expressions, and ratio products."""

import random
from fractions import Fraction

import mpmath
import pytest
from helpers import assert_close, to_mpf

from blockprod.bigreal import BigReal, pi_value
from blockprod.gammafn import (
    BalanceError,
    GammaExpr,
    PoleError,
    eval_gamma_expr,
    gamma,
    gamma_ratio_product,
    log_gamma,
    sin_pi,
)


def contract(prec: int) -> mpmath.mpf:
    return mpmath.mpf(2) ** (8 - prec)


class TestGammaValues:
    @pytest.mark.parametrize("prec", [128, 256])
    def test_half_is_sqrt_pi(self, prec, mp_prec):
        with mp_prec(prec):
            assert_close(gamma(Fraction(1, 2), prec), mpmath.sqrt(mpmath.pi), contract(prec))

    def test_gamma_one(self):
        g = gamma(1, 128)
        assert abs(g.to_fraction() - 1) <= Fraction(1, 2**120)

    @pytest.mark.parametrize("prec", [128, 256])
    def test_quarter_reflection_product(self, prec, mp_prec):
        with mp_prec(prec):
            prod = gamma(Fraction(1, 4), prec) * gamma(Fraction(3, 4), prec)
            assert_close(prod, mpmath.pi * mpmath.sqrt(2), contract(prec))

    def test_accepts_bigreal_argument(self, mp_prec):
        x = BigReal.from_fraction(Fraction(7, 2), 128)
        with mp_prec(128):
            assert_close(gamma(x, 128), mpmath.gamma(mpmath.mpf(7) / 2), contract(128))

    def test_poles_and_domain(self):
        with pytest.raises(PoleError):
            gamma(0, 128)
        with pytest.raises(PoleError):
            gamma(-3, 128)
        with pytest.raises(ValueError):
            gamma(Fraction(-1, 2), 128)
        with pytest.raises(ValueError):
            gamma(Fraction(1, 2), 32)  # precision too low

    def test_oracle_sweep(self, mp_prec):
        rng = random.Random(7)
        with mp_prec(192):
            for _ in range(40):
                x = Fraction(rng.randrange(1, 4000), rng.randrange(1, 400))
                want = mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator)
                assert_close(gamma(x, 192), want, contract(192))


class TestLogGamma:
    def test_log_gamma_one_and_two(self):
        for x in (1, 2):
            lg = log_gamma(x, 128)
            assert abs(lg.to_fraction()) <= Fraction(1, 2**110)

    def test_log_gamma_half(self, mp_prec):
        with mp_prec(128):
            assert_close(log_gamma(Fraction(1, 2), 128), mpmath.log(mpmath.pi) / 2, contract(128))

    def test_exp_consistency(self, mp_prec):
        """exp(log_gamma(x)) agrees with gamma(x) to target precision."""
        with mp_prec(160):
            for num, den in ((5, 3), (1, 7), (19, 4)):
                lg = log_gamma(Fraction(num, den), 160)
                g = gamma(Fraction(num, den), 160)
                assert abs(mpmath.exp(to_mpf(lg)) - to_mpf(g)) <= abs(to_mpf(g)) * contract(160)


class TestIdentities:
    def test_recurrence(self, mp_prec):
        """Gamma(1+x) = x Gamma(x) over random rationals in (0, 10)."""
        rng = random.Random(11)
        for prec in (128, 256):
            for _ in range(25):
                x = Fraction(rng.randrange(1, 1000), rng.randrange(100, 1000))
                lhs = gamma(1 + x, prec)
                rhs = gamma(x, prec) * x
                defect = abs((lhs / rhs).to_fraction() - 1)
                assert defect <= Fraction(2) ** (8 - prec)

    def test_reflection(self, mp_prec):
        """Gamma(z) Gamma(1-z) sin(pi z) / pi = 1 over random z in (0, 1)."""
        rng = random.Random(13)
        for prec in (128, 256):
            pi = pi_value(prec)
            for _ in range(25):
                z = Fraction(rng.randrange(1, 997), 997)
                value = gamma(z, prec) * gamma(1 - z, prec) * sin_pi(z, prec) / pi
                assert abs(value.to_fraction() - 1) <= Fraction(2) ** (8 - prec)

    def test_precision_scaling(self):
        """Doubling precision shrinks identity defects by at least 2**(p/2)."""
        z = Fraction(3, 7)
        defects = {}
        for prec in (128, 256):
            value = gamma(z, prec) * gamma(1 - z, prec) * sin_pi(z, prec) / pi_value(prec)
            defects[prec] = abs(value.to_fraction() - 1)
        assert defects[256] > 0
        assert defects[128] / defects[256] >= Fraction(2) ** 64


class TestGammaExpr:
    def test_canonical_text(self):
        e = GammaExpr(8, num=(Fraction(1, 2),), den=(Fraction(1, 4), Fraction(1, 4)))
        assert e.text() == "8 * G(1/2) / (G(1/4)^2)"
        e2 = GammaExpr(1, num=(Fraction(1, 2),), den=(Fraction(3, 4), Fraction(3, 4)))
        assert e2.text() == "G(1/2) / (G(3/4)^2)"
        assert GammaExpr(1).text() == "1"
        assert GammaExpr(Fraction(3, 4)).text() == "3/4"

    def test_unit_arguments_normalize_away(self):
        e = GammaExpr(1, num=(Fraction(1, 2), Fraction(1)), den=(Fraction(3, 4),) * 2)
        assert e.num == (Fraction(1, 2),)

    def test_cancellation_normalization(self):
        e = GammaExpr(2, num=(Fraction(1, 3), Fraction(1, 2)), den=(Fraction(1, 3),))
        assert e.num == (Fraction(1, 2),)
        assert e.den == ()

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(PoleError):
            GammaExpr(1, num=(Fraction(0),))
        with pytest.raises(PoleError):
            GammaExpr(1, den=(Fraction(-1, 2),))

    def test_json_round_trip(self):
        e = GammaExpr(Fraction(16), num=(Fraction(1, 4),), den=(Fraction(1, 8), Fraction(1, 8)))
        d = e.to_json_dict()
        assert d == {"prefactor": "16", "num": ["1/4"], "den": ["1/8", "1/8"]}
        assert GammaExpr.from_json_dict(d) == e

    def test_eval_empty_is_one(self):
        v = eval_gamma_expr(GammaExpr(1), 128)
        assert v.to_fraction() == 1

    def test_eval_examples(self, mp_prec):
        with mp_prec(128):
            e = GammaExpr(8, num=(Fraction(1, 2),), den=(Fraction(1, 4), Fraction(1, 4)))
            want = 8 * mpmath.sqrt(mpmath.pi) / mpmath.gamma(mpmath.mpf(1) / 4) ** 2
            assert_close(eval_gamma_expr(e, 128), want, contract(128))
            wallis = GammaExpr(1, num=(Fraction(1, 2), Fraction(3, 2)))
            assert_close(eval_gamma_expr(wallis, 128), mpmath.pi / 2, contract(128))


class TestRatioProduct:
    def test_wallis(self, mp_prec):
        """a=(1/2,3/2), b=(1,1): partial converges to 2/pi like C/N."""
        partial, closed = gamma_ratio_product(
            (Fraction(1, 2), Fraction(3, 2)), (Fraction(1), Fraction(1)), 10**5, 128
        )
        with mp_prec(128):
            want = 2 / mpmath.pi
            assert_close(closed, want, contract(128))
            assert abs(to_mpf(partial) - want) / want < mpmath.mpf("1e-4")

    def test_reciprocal_direction(self, mp_prec):
        partial, closed = gamma_ratio_product(
            (Fraction(1), Fraction(1)), (Fraction(1, 2), Fraction(3, 2)), 10**5, 128
        )
        with mp_prec(128):
            want = mpmath.pi / 2
            assert abs(to_mpf(partial) - want) / want < mpmath.mpf("1e-4")
            assert_close(closed, want, contract(128))

    def test_identical_vectors_give_one(self):
        partial, closed = gamma_ratio_product((Fraction(1),), (Fraction(1),), 1000, 128)
        assert partial.to_fraction() == 1
        assert closed.to_fraction() == 1

    def test_balance_error(self):
        with pytest.raises(BalanceError):
            gamma_ratio_product((Fraction(1),), (Fraction(2),), 10, 128)

    def test_pole_error(self):
        with pytest.raises(PoleError):
            gamma_ratio_product((Fraction(1), Fraction(-1)), (Fraction(-1), Fraction(1)), 10, 128)

    def test_convergence_slope(self, mp_prec):
        """The relative gap between partial and closed shrinks like C/N."""
        a = (Fraction(1, 2), Fraction(3, 2))
        b = (Fraction(1), Fraction(1))
        gaps = {}
        for N in (10**3, 10**4, 10**5):
            partial, closed = gamma_ratio_product(a, b, N, 128)
            gaps[N] = abs(partial.to_fraction() / closed.to_fraction() - 1)
        assert Fraction(4) <= gaps[10**3] / gaps[10**4] <= Fraction(25)
        assert Fraction(4) <= gaps[10**4] / gaps[10**5] <= Fraction(25)


class TestSinPi:
    def test_against_mpmath(self, mp_prec):
        with mp_prec(128):
            for num, den in ((1, 2), (1, 3), (5, 7), (996, 997)):
                want = mpmath.sin(mpmath.pi * num / den)
                assert_close(sin_pi(Fraction(num, den), 128), want, contract(128))

    def test_domain(self):
        with pytest.raises(ValueError):
            sin_pi(Fraction(3, 2), 128)

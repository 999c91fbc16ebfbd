"""Shared test helpers: conversions to the mpmath oracle and tolerance asserts."""

from __future__ import annotations

from fractions import Fraction

import mpmath

from blockprod.bigreal import BigReal


def to_mpf(x: BigReal) -> mpmath.mpf:
    """Exact conversion of a BigReal into the current mpmath context."""
    fr = x.to_fraction()
    return mpmath.mpf(fr.numerator) / fr.denominator


def rel_err(got: BigReal, want) -> mpmath.mpf:
    """Relative error of ``got`` against an mpmath reference value."""
    return abs(to_mpf(got) - want) / abs(want)


def assert_close(got: BigReal, want, bound) -> None:
    """Assert relative error below ``bound``."""
    err = rel_err(got, want)
    assert err <= bound, f"relative error {err} exceeds {bound}"


def frac_rel_err(got: Fraction, want: Fraction) -> Fraction:
    return abs(got - want) / abs(want)

"""Pytest fixtures shared across the suite."""

from __future__ import annotations

import mpmath
import pytest


@pytest.fixture
def mp_prec():
    """Factory returning an mpmath working-precision context with guard bits."""

    class _Ctx:
        def __call__(self, bits: int):
            return mpmath.workprec(bits + 64)

    return _Ctx()

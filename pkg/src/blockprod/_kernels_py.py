"""Pure-Python reference kernels for the hot per-term product loops.

These functions dominate the runtime of every truncated-product evaluation:
for each index ``n`` they count digit-block occurrences and accumulate an
integer fixed-point logarithm (scale ``F`` bits, see
:mod:`blockprod.fixedpoint`).  A Cython twin (``blockprod._kernels_cy``)
implements the exact same integer algorithms; ``blockprod._kernels`` picks
whichever is importable.  Both backends must return *bit-identical* integers
— the test suite enforces this — so all arithmetic here is exact integer
arithmetic with floor/round conventions that translate 1:1 to the compiled
code.

Because the accumulated log-sums are plain integer additions, splitting a
range ``[lo, hi]`` into disjoint chunks and adding the partial sums gives
*exactly* the sequential result, which is the normative definition of every
partial product in this package.
"""

from __future__ import annotations

BACKEND = "python"


# --------------------------------------------------------------------------
# fixed-point logs of rationals near 1
# --------------------------------------------------------------------------


def fx_log_ratio(p: int, q: int, F: int) -> int:
    """``log(p/q)`` for positive integers, exact-integer atanh series.

    Uses ``log(p/q) = 2*atanh((p-q)/(p+q))``; fast when ``p`` is close to
    ``q`` (every product term in this package converges to 1) but correct
    for any positive pair.
    """
    if p <= 0 or q <= 0:
        raise ValueError("fx_log_ratio needs positive integers")
    if p == q:
        return 0
    if p < q:
        return -fx_log_ratio(q, p, F)
    num = p - q
    den = p + q
    t = (num << F) // den
    t2 = (t * t) >> F
    u = t
    s = 0
    k = 1
    while u:
        s += u // k
        u = (u * t2) >> F
        k += 2
    return 2 * s


def fx_log1p_inv(q: int, F: int) -> int:
    """``log(1 + 1/q)`` for a positive integer ``q``, exact-integer series.

    ``log((q+1)/q) = 2*atanh(1/(2q+1)) = 2 * sum_{j>=0} (2q+1)^-(2j+1)/(2j+1)``.
    """
    if q <= 0:
        raise ValueError("fx_log1p_inv needs a positive integer")
    c = 2 * q + 1
    c2 = c * c
    u = (2 << F) // c
    s = 0
    k = 1
    while u:
        s += u // k
        u //= c2
        k += 2
    return s


# --------------------------------------------------------------------------
# digit-block counting on machine integers
# --------------------------------------------------------------------------


def count_word(n: int, base: int, digits: tuple, pad: int) -> int:
    """Occurrences of ``digits`` in the base-``base`` expansion of ``n``.

    ``pad`` leading zeros are prepended to the expansion (the caller passes
    ``len(digits) - 1`` for zero-leading mixed words, 0 otherwise).
    Occurrences may overlap.  ``n = 0`` has the empty expansion.
    """
    if n <= 0:
        return 0
    buf = []
    while n:
        n, r = divmod(n, base)
        buf.append(r)
    buf.reverse()
    if pad:
        buf = [0] * pad + buf
    L = len(digits)
    count = 0
    for i in range(len(buf) - L + 1):
        for j in range(L):
            if buf[i + j] != digits[j]:
                break
        else:
            count += 1
    return count


# --------------------------------------------------------------------------
# log-sum accumulators
# --------------------------------------------------------------------------


def logsum_word_product(
    base: int,
    digits: tuple,
    pad: int,
    a_num: tuple,
    a_den: tuple,
    b_num: tuple,
    b_den: tuple,
    lo: int,
    hi: int,
    F: int,
) -> int:
    """Sum of ``N_w(n) * log(term_n)`` for ``n`` in ``[lo, hi]``.

    ``term_n = prod_i (Bn+a_i)/(Bn+b_i) * prod_{k<B} (B^2 n+Bk+b_i)/(B^2 n+Bk+a_i)``
    with rational parameters ``a_i = a_num[i]/a_den[i]`` etc.  For the
    canonical base-2 parameters ``a = (1,1)``, ``b = (0,2)`` the term
    telescopes to ``((4n+2)^2 / ((4n+1)(4n+3)))^2`` and a fast path is used;
    both backends implement the identical fast path so results stay
    bit-identical.
    """
    d = len(a_num)
    canonical = (
        base == 2
        and d == 2
        and a_num == (1, 1)
        and b_num == (0, 2)
        and a_den == (1, 1)
        and b_den == (1, 1)
    )
    total = 0
    if canonical:
        for n in range(lo, hi + 1):
            c = count_word(n, 2, digits, pad)
            if c:
                total += (2 * c) * fx_log1p_inv((4 * n + 1) * (4 * n + 3), F)
        return total
    for n in range(lo, hi + 1):
        c = count_word(n, base, digits, pad)
        if not c:
            continue
        bn = base * n
        b2n = base * bn
        p = 1
        q = 1
        for i in range(d):
            p *= bn * a_den[i] + a_num[i]
            q *= a_den[i]
            q *= bn * b_den[i] + b_num[i]
            p *= b_den[i]
            for k in range(base):
                x = b2n + base * k
                p *= x * b_den[i] + b_num[i]
                q *= b_den[i]
                q *= x * a_den[i] + a_num[i]
                p *= a_den[i]
        total += c * fx_log_ratio(p, q, F)
    return total


def logsum_ratio_product(
    a_num: tuple,
    a_den: tuple,
    b_num: tuple,
    b_den: tuple,
    lo: int,
    hi: int,
    F: int,
) -> int:
    """Sum of ``log(prod_i (n+a_i)/(n+b_i))`` for ``n`` in ``[lo, hi]``."""
    d = len(a_num)
    total = 0
    for n in range(lo, hi + 1):
        p = 1
        q = 1
        for i in range(d):
            p *= n * a_den[i] + a_num[i]
            q *= a_den[i]
            q *= n * b_den[i] + b_num[i]
            p *= b_den[i]
        total += fx_log_ratio(p, q, F)
    return total


def logsum_rivoal_original(lo: int, hi: int, F: int) -> int:
    """Log-sum of ``(1 + 1/(k+1))^(2*rho(k)*(bitlen(k)-2))`` for ``k`` in ``[lo, hi]``.

    ``rho`` is the 4-periodic sequence 1, -1, 0, 0 and ``bitlen(k) - 2`` is
    the exact integer value of ``floor(log2(k) - 1)`` for ``k >= 2``.
    """
    total = 0
    for k in range(max(lo, 2), hi + 1):
        r = k & 3
        if r > 1:
            continue
        e = 2 * (k.bit_length() - 2)
        if e == 0:
            continue
        if r == 1:
            e = -e
        total += e * fx_log1p_inv(k + 1, F)
    return total


def logsum_rivoal_grouped(lo: int, hi: int, F: int) -> int:
    """Log-sum of ``((4k+2)^2/((4k+1)(4k+3)))^(2*bitlen(k))`` for ``k`` in ``[lo, hi]``.

    ``bitlen(k)`` equals the number of binary digits of ``k``, i.e. the total
    digit-block count ``N_0(k) + N_1(k)``.
    """
    total = 0
    for k in range(max(lo, 1), hi + 1):
        total += (2 * k.bit_length()) * fx_log1p_inv((4 * k + 1) * (4 * k + 3), F)
    return total


def logsum_companion(lo: int, hi: int, F: int) -> int:
    """Same factors with exponent ``2*(N_0(k) - N_1(k)) = 2*(bitlen - 2*popcount)``."""
    total = 0
    for k in range(max(lo, 1), hi + 1):
        e = 2 * (k.bit_length() - 2 * k.bit_count())
        if e:
            total += e * fx_log1p_inv((4 * k + 1) * (4 * k + 3), F)
    return total


def logsum_alternating(lo: int, hi: int, F: int) -> int:
    """Same factors with exponent ``2*(-1)^k*(N_0(k) + N_1(k))``."""
    total = 0
    for k in range(max(lo, 1), hi + 1):
        e = 2 * k.bit_length()
        if k & 1:
            e = -e
        total += e * fx_log1p_inv((4 * k + 1) * (4 * k + 3), F)
    return total

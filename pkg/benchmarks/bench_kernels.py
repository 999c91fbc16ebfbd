#!/usr/bin/env python3
"""Benchmark the pure-Python kernels against the compiled extension.

Both backends compute bit-identical integers (asserted here); only the
throughput differs.  Run from the repository root:

    python benchmarks/bench_kernels.py [--terms N] [--precision BITS]
"""

from __future__ import annotations

import argparse
import time

from blockprod import _kernels_py as pure

try:
    from blockprod import _kernels_cy as compiled
except ImportError:
    compiled = None


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


def run_case(name, fn_name, args):
    rows = []
    value_p, t_pure = timed(getattr(pure, fn_name), *args)
    if compiled is not None:
        value_c, t_comp = timed(getattr(compiled, fn_name), *args)
        assert value_p == value_c, f"backend mismatch in {fn_name}"
        rows.append((name, t_pure, t_comp, t_pure / t_comp))
    else:
        rows.append((name, t_pure, None, None))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--terms", type=int, default=200_000)
    parser.add_argument("--precision", type=int, default=128)
    args = parser.parse_args()

    N = args.terms
    F = args.precision + 32
    word_101 = (2, (1, 0, 1), 0, (1, 1), (1, 1), (0, 2), (1, 1), 1, N, F)
    word_b3 = (3, (1, 2), 0, (1, 1), (1, 1), (0, 2), (1, 1), 1, max(N // 4, 1), F)
    ratio = ((1, 3), (2, 2), (1, 1), (1, 1), 0, N, F)

    cases = [
        ("rivoal grouped (2*bitlen exponents)", "logsum_rivoal_grouped", (1, N, F)),
        ("rivoal original (4-periodic)", "logsum_rivoal_original", (2, 4 * N, F)),
        ("companion (signed digit balance)", "logsum_companion", (1, N, F)),
        ("alternating", "logsum_alternating", (1, N, F)),
        ("word product, base 2, w=101", "logsum_word_product", word_101),
        ("word product, base 3, w=12 (generic)", "logsum_word_product", word_b3),
        ("balanced ratio product (Wallis)", "logsum_ratio_product", ratio),
    ]

    if compiled is None:
        print("compiled extension not available; timing the pure backend only\n")
    header = f"{'kernel':42s} {'pure [s]':>9s} {'cython [s]':>11s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, fn_name, fn_args in cases:
        for label, t_pure, t_comp, speedup in run_case(name, fn_name, fn_args):
            if t_comp is None:
                print(f"{label:42s} {t_pure:9.3f} {'-':>11s} {'-':>8s}")
            else:
                print(f"{label:42s} {t_pure:9.3f} {t_comp:11.3f} {speedup:7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

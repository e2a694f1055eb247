#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs every hot scan on representative inputs with both backends and prints a
comparison table.  The first numba call of each kernel includes JIT
compilation, so each kernel is warmed up before timing.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from eblab._kernels import numpy_impl
from eblab.core import boolean_algebra, direct_product, godel_chain, mv_chain
from eblab.frames import function_algebra

try:
    from eblab._kernels import numba_impl

    HAS_NUMBA = True
except ImportError:
    numba_impl = None
    HAS_NUMBA = False


def _args(alg):
    tables = tuple(
        np.ascontiguousarray(t, dtype=np.int64)
        for t in (alg.meet, alg.join, alg.mult, alg.impl)
    )
    leq = np.ascontiguousarray(alg.leq, dtype=np.bool_)
    return tables + (leq, int(alg.bot), int(alg.top))


def cases():
    mv4 = _args(mv_chain(4))
    godel4 = _args(godel_chain(4))
    square = _args(direct_product(godel_chain(2), godel_chain(2)))
    bool3 = _args(boolean_algebra(3))
    big_chain = _args(function_algebra(mv_chain(4), 3).algebra)  # 64 elements
    yield "ebl-pair-scan mv4", "ebl_pair_scan", mv4
    yield "ebl-pair-scan godel4", "ebl_pair_scan", godel4
    yield "ebl-pair-scan 2x2 product", "ebl_pair_scan", square
    yield "godel-pair-scan godel4", "godel_pair_scan", godel4
    yield "godel-pair-scan 2x2 product", "godel_pair_scan", square
    yield "monadic-pair-scan mv4", "monadic_pair_scan", mv4
    yield "pseudomonadic-scan bool3 (8^7 tables)", "pseudomonadic_scan", (
        bool3[0], bool3[1], bool3[3], bool3[4], bool3[5], bool3[6],
    )
    yield "residuation mv4^3 (64^3 triples)", "residuation_witness", (
        big_chain[2], big_chain[3], big_chain[4],
    )


def timed(fn, args, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    opts = parser.parse_args()

    print(f"{'case':<40} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    print("-" * 73)
    for label, kernel, args in cases():
        np_time, np_result = timed(getattr(numpy_impl, kernel), args, opts.repeat)
        if HAS_NUMBA:
            jitted = getattr(numba_impl, kernel)
            jitted(*args)  # warm-up / compile
            nb_time, nb_result = timed(jitted, args, opts.repeat)
            if isinstance(np_result, np.ndarray):
                assert np.array_equal(np_result, nb_result), label
            else:
                assert np_result == nb_result, label
            print(
                f"{label:<40} {np_time * 1e3:>8.2f}ms {nb_time * 1e3:>8.2f}ms "
                f"{np_time / nb_time:>8.1f}x"
            )
        else:
            print(f"{label:<40} {np_time * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>9}")
    if not HAS_NUMBA:
        print("\nnumba not importable; only the fallback was timed")


if __name__ == "__main__":
    main()

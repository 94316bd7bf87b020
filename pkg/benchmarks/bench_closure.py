#!/usr/bin/env python3
"""Benchmark the closure kernels: compiled extension vs pure Python.

Enumerates all closed intents of random contexts with both backends, checks
they produce identical output, and reports wall time per backend.

Usage: python3 benchmarks/bench_closure.py [--objects N] [--attrs M] [--rounds K]
"""

from __future__ import annotations

import argparse
import random
import time

from latloc.fca import _closure_py

try:
    from latloc.fca import _closure_cy
except ImportError:
    _closure_cy = None


def make_rows(rng: random.Random, n_objects: int, n_attrs: int, density: float):
    return [
        sum(1 << j for j in range(n_attrs) if rng.random() < density)
        for _ in range(n_objects)
    ]


def bench(fn, contexts, cap) -> tuple[float, int]:
    start = time.perf_counter()
    total = 0
    for rows, n_attrs in contexts:
        total += len(fn(rows, n_attrs, cap))
    return time.perf_counter() - start, total


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--objects", type=int, default=40)
    parser.add_argument("--attrs", type=int, default=22)
    parser.add_argument("--rounds", type=int, default=30)
    parser.add_argument("--density", type=float, default=0.35)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    contexts = [
        (make_rows(rng, args.objects, args.attrs, args.density), args.attrs)
        for _ in range(args.rounds)
    ]
    cap = 10_000_000

    py_time, py_total = bench(_closure_py.closed_intents, contexts, cap)
    print(f"python kernel : {py_time:8.3f}s  ({py_total} closed sets)")

    if _closure_cy is None:
        print("cython kernel : not built (pip install -e . with a C toolchain)")
        return

    cy_time, cy_total = bench(_closure_cy.closed_intents, contexts, cap)
    print(f"cython kernel : {cy_time:8.3f}s  ({cy_total} closed sets)")
    assert py_total == cy_total
    for rows, n_attrs in contexts[:5]:
        assert _closure_cy.closed_intents(rows, n_attrs, cap) == _closure_py.closed_intents(
            rows, n_attrs, cap
        )
    print(f"speedup       : {py_time / cy_time:8.1f}x  (outputs identical)")


if __name__ == "__main__":
    main()

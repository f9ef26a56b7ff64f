"""Compiled vs pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times each hot kernel directly and the two end-to-end workloads that depend
on them (theta solve, 64-vertex clique audit) under both backends.
"""
import argparse
import time

import numpy as np

from exclusivity import _backend
from exclusivity.audit import e_principle_audit, product_exclusivity_graph, quantum_model
from exclusivity.events import london_events
from exclusivity.graphs import complement, from_events
from exclusivity.theta import lovasz_theta


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    rng = np.random.default_rng(0)
    mats = {}
    for n in (8, 16, 64):
        m = rng.normal(size=(n, n))
        mats[n] = m + m.T
    product = product_exclusivity_graph()
    prod_adj = list(product.adj)
    comp_adj = list(complement(product).adj)
    g_l = from_events(london_events())
    model = quantum_model()

    def use(k):
        _backend.kernels = k

    return [
        ("jacobi_eigh n=8", lambda k: k.jacobi_eigh(mats[8], 1e-12, 100)),
        ("jacobi_eigh n=16", lambda k: k.jacobi_eigh(mats[16], 1e-12, 100)),
        ("jacobi_eigh n=64", lambda k: k.jacobi_eigh(mats[64], 1e-12, 100)),
        ("max_cliques product graph", lambda k: k.max_cliques(prod_adj)),
        ("maximum_clique product complement", lambda k: k.maximum_clique(comp_adj)),
        ("lovasz_theta CHSH graph", lambda k: (use(k), lovasz_theta(g_l))),
        ("e_principle_audit", lambda k: (use(k), e_principle_audit(model, product))),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _backend.compiled is None:
        raise SystemExit("compiled extension not built; run `pip install -e . --no-build-isolation`")

    original = _backend.kernels
    rows = []
    try:
        for name, fn in workloads():
            py = best_of(lambda: fn(_backend.fallback), args.repeat)
            c = best_of(lambda: fn(_backend.compiled), args.repeat)
            rows.append((name, py, c))
    finally:
        _backend.kernels = original

    width = max(len(r[0]) for r in rows)
    print(f"{'workload'.ljust(width)}  {'python [ms]':>12}  {'compiled [ms]':>14}  {'speedup':>8}")
    for name, py, c in rows:
        print(f"{name.ljust(width)}  {py * 1e3:12.3f}  {c * 1e3:14.3f}  {py / c:7.1f}x")


if __name__ == "__main__":
    main()

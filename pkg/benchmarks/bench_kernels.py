#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the two hot paths: the BP message-passing loop on the [[512,174]]
product code and packed GF(2) solving on erasure-sized systems.

Usage: python benchmarks/bench_kernels.py [--trials N]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from prodcss import sim
from prodcss._kernels import load_backend
from prodcss.build import SpcParams, spc
from prodcss.css import PauliVector, syndromes
from prodcss.decode import BpConfig, TannerGraph


def bench_bp(impl, graph, cfg, syndromes_batch):
    n_edges = graph.edge_vn.shape[0]
    v2c = np.zeros(n_edges)
    c2v = np.zeros(n_edges)
    est = np.zeros(graph.n_vn, dtype=np.int8)
    t0 = time.perf_counter()
    total_iters = 0
    for syn in syndromes_batch:
        _, iters = impl.bp_run(
            graph.edge_vn, graph.edge_label, graph.vn_ptr, graph.vn_edges,
            graph.cn_ptr, syn, graph.n_f4, cfg.prior_f4, cfg.prior_f2,
            cfg.max_iters, cfg.llr_clamp, v2c, c2v, est,
        )
        total_iters += iters
    dt = time.perf_counter() - t0
    return dt, total_iters


def bench_solve(impl, systems):
    t0 = time.perf_counter()
    for mat, rhs in systems:
        impl.solve_bits(mat, rhs)
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200)
    args = ap.parse_args()

    backends = {}
    for name in ("cython", "pure"):
        try:
            backends[name] = load_backend(name)
        except ImportError:
            print(f"{name}: unavailable")
    if len(backends) < 2:
        print("need both backends for a comparison")

    code = spc(SpcParams(3, 1))
    graph = TannerGraph(code)
    eps = 0.04
    cfg = BpConfig(epsilon=eps)
    batch = []
    for t in range(args.trials):
        e, _, _, _ = sim.sample_error(sim.depolarizing(eps), code.n, sim.trial_rng(0, t))
        sx, sz = syndromes(code, e)
        batch.append(np.concatenate([sx, sz]).astype(np.uint8))

    print(f"BP decode, [[512,174]] code, eps={eps}, {args.trials} syndromes:")
    base = None
    for name, impl in backends.items():
        dt, iters = bench_bp(impl, graph, cfg, batch)
        rate = 1000.0 * dt / args.trials
        line = f"  {name:7s} {dt:8.3f} s  ({rate:7.3f} ms/decode, {iters} iterations)"
        if base is None:
            base = dt
        else:
            line += f"  speedup vs first: {base / dt:.2f}x" if dt < base else f"  slowdown: {dt / base:.2f}x"
        print(line)

    rng = np.random.default_rng(1)
    systems = []
    for _ in range(args.trials * 5):
        mat = rng.integers(0, 2, (192, 140), dtype=np.uint8)
        rhs = rng.integers(0, 2, 192, dtype=np.uint8)
        systems.append((np.ascontiguousarray(mat), rhs))

    print(f"GF(2) solve, 192x140 systems, {len(systems)} solves:")
    for name, impl in backends.items():
        dt = bench_solve(impl, systems)
        print(f"  {name:7s} {dt:8.3f} s  ({1e6 * dt / len(systems):8.1f} us/solve)")


if __name__ == "__main__":
    main()

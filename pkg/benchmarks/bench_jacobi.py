#!/usr/bin/env python3
"""Benchmark: compiled rotation kernel vs the pure-Python fallback.

Times full eigendecompositions of dense symmetric matrices of the kinds the
package actually produces (random symmetric, Hilbert-type, and plain moment
matrices of a random atomic measure) and prints the speedup. The two kernels
must agree on every eigenvalue to 1e-10; the benchmark aborts otherwise.

Usage: python benchmarks/bench_jacobi.py [--sizes 20,60,120]
"""

import argparse
import time

import numpy as np

from momint._jacobi_py import jacobi_cyclic as python_kernel

try:
    from momint._jacobi import jacobi_cyclic as compiled_kernel
except ImportError:
    compiled_kernel = None

from momint.moments import MeasureSpec, from_measure


def test_matrices(n: int, rng) -> dict:
    raw = rng.normal(size=(n, n))
    random_sym = raw + raw.T
    hilbert = np.array([[1.0 / (i + j + 1) for j in range(n)] for i in range(n)])
    return {"random": random_sym, "hilbert": hilbert}


def moment_matrix_case(rng) -> np.ndarray:
    spec = MeasureSpec(
        atoms=[(tuple(rng.uniform(-2, 2, size=3)), 1.0 / 3.0) for _ in range(3)]
    )
    seq = from_measure(spec, 12)
    return np.array(seq.moment_matrix(6).matrix.data)


def run_kernel(kernel, matrix: np.ndarray) -> tuple[np.ndarray, float]:
    work = np.array(matrix, order="C")
    vecs = np.eye(matrix.shape[0], order="C")
    tol = 1e-12 * np.linalg.norm(matrix)
    start = time.perf_counter()
    kernel(work, vecs, tol, 100)
    elapsed = time.perf_counter() - start
    return np.sort(np.diag(work)), elapsed


def best_of(kernel, matrix: np.ndarray, repeats: int = 3) -> tuple[np.ndarray, float]:
    values, best = run_kernel(kernel, matrix)
    for _ in range(repeats - 1):
        _, t = run_kernel(kernel, matrix)
        best = min(best, t)
    return values, best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="20,60,120", help="comma-separated orders")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if compiled_kernel is None:
        print("compiled kernel not built (pure-Python install); nothing to compare")
        return 0

    rng = np.random.default_rng(12345)
    cases = []
    for n in sizes:
        for name, matrix in test_matrices(n, rng).items():
            cases.append((f"{name} {n}x{n}", matrix))
    mm = moment_matrix_case(rng)
    cases.append((f"moment matrix {mm.shape[0]}x{mm.shape[0]}", mm))

    header = f"{'case':>24} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, matrix in cases:
        py_values, py_time = best_of(python_kernel, matrix)
        c_values, c_time = best_of(compiled_kernel, matrix)
        drift = float(np.max(np.abs(py_values - c_values)))
        scale = 1.0 + float(np.max(np.abs(py_values)))
        if drift > 1e-10 * scale:
            print(f"kernel disagreement on {name}: {drift:.3e}")
            return 1
        print(f"{name:>24} {py_time * 1e3:>10.2f}ms {c_time * 1e3:>10.2f}ms {py_time / c_time:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

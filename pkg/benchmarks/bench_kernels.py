#!/usr/bin/env python3
"""Compiled (numba) vs fallback (pure Python / numpy) iteration kernels.

    python benchmarks/bench_kernels.py [--steps 1000000] [--batch 1000] [--batch-steps 5000]

Both paths are timed in the same process and their outputs compared bit for
bit. LBEMAP_DISABLE_NUMBA has no effect here; the script calls both twins.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lbemap import _accel, kernels
from lbemap.mapcore import RANGE_HI, RANGE_LO


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def single(fn, form, r, x0, steps):
    def go():
        out = np.empty(steps + 1)
        out[0] = x0
        fn(form, r, out, RANGE_LO, RANGE_HI)
        return out
    return go


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--steps", type=int, default=1_000_000)
    ap.add_argument("--batch", type=int, default=1000)
    ap.add_argument("--batch-steps", type=int, default=5000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    r, x0 = 3.8283, 0.3
    rng = np.random.default_rng(0)
    rb = rng.uniform(3.5, 4.0, args.batch)
    xb = rng.uniform(0.0, 1.0, args.batch)

    # compile outside the timed region
    t0 = time.perf_counter()
    single(kernels._iterate_jit, 0, r, x0, 10)()
    kernels._iterate_batch_jit(0, rb[:2], xb[:2], 10, RANGE_LO, RANGE_HI)
    compile_s = time.perf_counter() - t0

    print(f"numba {_accel._numba.__version__}, first-call compile {compile_s:.2f}s\n")
    print(f"{'workload':<34}{'form':>5}{'numba [s]':>12}{'fallback [s]':>14}{'speedup':>9}  identical")
    for form, name in ((kernels.FORM_A, "A"), (kernels.FORM_B, "B")):
        tj, oj = best_of(single(kernels._iterate_jit, form, r, x0, args.steps), args.repeat)
        tp, op = best_of(single(kernels._iterate_py, form, r, x0, args.steps), args.repeat)
        print(f"{f'single orbit, {args.steps} steps':<34}{name:>5}{tj:>12.4f}{tp:>14.4f}{tp / tj:>9.1f}  "
              f"{oj.tobytes() == op.tobytes()}")
    for form, name in ((kernels.FORM_A, "A"), (kernels.FORM_B, "B")):
        run_j = lambda: kernels._iterate_batch_jit(form, rb, xb, args.batch_steps, RANGE_LO, RANGE_HI)
        run_p = lambda: kernels._iterate_batch_py(form, rb, xb, args.batch_steps, RANGE_LO, RANGE_HI)
        tj, (oj, _) = best_of(run_j, args.repeat)
        tp, (op, _) = best_of(run_p, args.repeat)
        label = f"batch {args.batch} x {args.batch_steps} steps"
        print(f"{label:<34}{name:>5}{tj:>12.4f}{tp:>14.4f}{tp / tj:>9.1f}  {oj.tobytes() == op.tobytes()}")


if __name__ == "__main__":
    main()

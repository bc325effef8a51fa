#!/usr/bin/env python3
"""Timing and agreement check for the two supremum-sampling backends.

The compiled kernel and the numpy fallback consume the same counter-based
random stream, so with a shared seed they walk the same paths. This script
reports per-sample cost for both and the largest relative disagreement on
the shared prefix of the workload. Exit status 1 if the backends disagree
beyond 1e-9.
"""

import argparse
import sys
import time

import numpy as np

from levysup import _mc_fallback as fallback

try:
    from levysup import _mc_kernel as kernel
except ImportError:
    kernel = None


def measure(mod, alpha, n_paths, n_steps, seed):
    step_scale = (1.0 / n_steps) ** (1.0 / alpha)
    mod.grid_suprema(alpha, -1.0, step_scale, n_steps, 64, seed)  # warm up
    t0 = time.perf_counter()
    sup, _ = mod.grid_suprema(alpha, -1.0, step_scale, n_steps, n_paths,
                              seed)
    return sup, time.perf_counter() - t0


def main(argv=None):
    ap = argparse.ArgumentParser(
        description="compare compiled and pure-python supremum backends")
    ap.add_argument("--steps", type=int, default=4096)
    ap.add_argument("--seed", type=int, default=20260818)
    ap.add_argument("--python-paths", type=int, default=2000,
                    help="workload for the numpy fallback")
    ap.add_argument("--compiled-paths", type=int, default=20000,
                    help="workload for the compiled kernel")
    args = ap.parse_args(argv)

    print(f"{'backend':<10} {'case':<14} {'paths':>8} {'steps':>6} "
          f"{'ns/sample':>10} {'speedup':>8}")
    worst = 0.0
    for label, alpha in (("stable a=1.5", 1.5), ("gaussian", 2.0)):
        sup_py, dt_py = measure(fallback, alpha, args.python_paths,
                                args.steps, args.seed)
        ns_py = 1e9 * dt_py / (args.python_paths * args.steps)
        print(f"{'python':<10} {label:<14} {args.python_paths:>8} "
              f"{args.steps:>6} {ns_py:>10.1f} {'':>8}")
        if kernel is None:
            continue
        sup_ck, dt_ck = measure(kernel, alpha, args.compiled_paths,
                                args.steps, args.seed)
        ns_ck = 1e9 * dt_ck / (args.compiled_paths * args.steps)
        print(f"{'compiled':<10} {label:<14} {args.compiled_paths:>8} "
              f"{args.steps:>6} {ns_ck:>10.1f} {ns_py / ns_ck:>7.1f}x")
        n = min(len(sup_py), len(sup_ck))
        scale = np.maximum(np.abs(sup_py[:n]), 1e-3)
        worst = max(worst, float(
            np.max(np.abs(sup_py[:n] - sup_ck[:n]) / scale)))

    if kernel is None:
        print("\ncompiled kernel not built (see setup.py); "
              "fallback timings only")
        return 0
    print(f"\nmax relative disagreement over shared paths: {worst:.2e}")
    if worst > 1e-9:
        print("backends disagree beyond 1e-9", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Compare the compiled and pure-Python backends on the hot kernels.

Run from the repository root:

    python3 benchmarks/bench_backends.py [--repeat 5]

Each workload is timed under both backends (selected via the
POLYGINIBRE_BACKEND environment variable in a subprocess so module state
stays clean) and the best-of-N wall times plus speedup are printed.
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json
import time

import numpy as np

from polyginibre import _backend as b
from polyginibre import statistics


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(repeat):
    x = np.linspace(0.01, 40.0, 20000)
    betas = np.linspace(0.001, 0.999, 400)
    workloads = {
        "laguerre_array n=60": lambda: b.laguerre_array(60, 3.0, x),
        "laguerre scalar x1e4": lambda: [b.laguerre(25, 2.0, 0.001 * i)
                                         for i in range(10000)],
        "gammainc x1e4": lambda: [b.gammainc_lower_reg(7.5, 0.004 * i)
                                  for i in range(10000)],
        "hyper_series x2e3": lambda: [
            b.hyper_series((1.0, 1.5), (3.0, 2.0), -0.002 * i, 1e-16, 400)
            for i in range(2000)],
        "poisson_binomial n=400": lambda: b.poisson_binomial_pmf(betas),
        "variance route 3.8": lambda: statistics.variance_quadrature_38(
            2, 3.0),
    }
    out = {name: _time(fn, repeat) for name, fn in workloads.items()}
    print(json.dumps({"backend": b.BACKEND, "times": out}))


main(REPEAT)
"""


def run_backend(name, repeat):
    code = _WORKER.replace("REPEAT", str(repeat))
    env = dict(os.environ, POLYGINIBRE_BACKEND=name)
    proc = subprocess.run(
        [sys.executable, "-c", code],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timing repetitions per workload (best is kept)")
    args = ap.parse_args()
    results = {}
    for backend in ("pure", "compiled"):
        doc = run_backend(backend, args.repeat)
        if doc["backend"] != backend:
            print(f"warning: requested {backend}, got {doc['backend']} "
                  "(extension not built?)", file=sys.stderr)
        results[backend] = doc["times"]
    width = max(len(k) for k in results["pure"])
    print(f"{'workload':<{width}}  {'pure [ms]':>10}  {'compiled [ms]':>13}"
          f"  {'speedup':>7}")
    for name in results["pure"]:
        tp = results["pure"][name] * 1e3
        tc = results["compiled"][name] * 1e3
        print(f"{name:<{width}}  {tp:>10.3f}  {tc:>13.3f}"
              f"  {tp / tc:>6.2f}x")


if __name__ == "__main__":
    main()

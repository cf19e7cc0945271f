"""Time the hot kernels with and without numba.

Each backend runs in its own interpreter because the backend is fixed at
import time by ``SPECACT_DISABLE_JIT``.  Usage::

    python3 benchmarks/bench_jit.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, sys, time
import numpy as np
from specact import backend
from specact.coeffs import CoeffKind, Representation, coeff
from specact.gibbs import ThermoParams, thermo
from specact.kernels import Quantity, Statistics, laplace_weight
from specact.spectra import torus_spectrum

repeat = int(sys.argv[1])
spec = torus_spectrum(3, 40)
p = ThermoParams(0.05, -1.0, Statistics.FERMI)
ts = np.linspace(0.01, 2.0, 2000)

def cases():
    yield "thermo torus(3,40)", lambda: thermo(spec, p)
    yield "coeff bessel x50", lambda: [coeff(CoeffKind.GAMMA, a, -0.3, Representation.BESSEL)
                                      for a in np.linspace(-2, 3, 50)]
    yield "laplace weight x2000", lambda: laplace_weight(Statistics.BOSE, Quantity.ENTROPY, -1.0, ts)

out = {"backend": backend(), "cases": {}}
for name, fn in cases():
    t0 = time.perf_counter(); fn(); first = time.perf_counter() - t0
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter(); fn(); best = min(best, time.perf_counter() - t0)
    out["cases"][name] = {"first": first, "best": best}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ, SPECACT_DISABLE_JIT="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", WORKLOAD, str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    jit, plain = run(False, args.repeat), run(True, args.repeat)
    print(f"{'case':<24}{'numba best':>12}{'numpy best':>12}{'speedup':>9}{'numba 1st':>11}")
    for name, j in jit["cases"].items():
        n = plain["cases"][name]
        print(f"{name:<24}{j['best']:>11.4f}s{n['best']:>11.4f}s"
              f"{n['best'] / j['best']:>8.1f}x{j['first']:>10.3f}s")


if __name__ == "__main__":
    main()

import json
import os
import subprocess
import sys

import numpy as np

from specact import _kernels, backend

PROBE = r"""
import json
import numpy as np
from specact import _kernels, backend
from specact.coeffs import CoeffKind, Representation, coeff
from specact.kernels import Quantity, Statistics, laplace_weight
rng = np.random.default_rng(7)
y = np.sort(rng.uniform(0.01, 50, 500)); eps = y / 0.3; m = rng.integers(1, 4, 500).astype(float)
print(json.dumps({
    "backend": backend(),
    "sums": [list(_kernels.mode_sums(y, eps, m, b)) for b in (False, True)],
    "tree": _kernels.tree_sum(y),
    "coeff": [coeff(CoeffKind.OMEGA, a, -0.7, Representation.BESSEL).value for a in (-1.5, 0.25, 2.0)],
    "weight": laplace_weight(Statistics.FERMI, Quantity.ENERGY, -1.0, np.linspace(0.01, 3, 7)).tolist(),
}))
"""


def _probe(disable):
    env = dict(os.environ, SPECACT_DISABLE_JIT="1" if disable else "0")
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_numpy_fallback_matches_compiled_kernels():
    jit, plain = _probe(False), _probe(True)
    assert (jit["backend"], plain["backend"]) == ("numba", "numpy")
    for key in ("sums", "coeff", "weight"):
        np.testing.assert_allclose(np.array(jit[key]), np.array(plain[key]), rtol=1e-13, atol=0)
    assert jit["tree"] == plain["tree"]


def test_tree_sum_is_pairwise():
    x = np.array([1e16, 1.0, -1e16, 1.0])
    # pairs (1e16 + 1) and (-1e16 + 1) round to 1e16 and -1e16
    assert _kernels.tree_sum(x) == 0.0
    assert _kernels.tree_sum(np.arange(10.0)) == 45.0
    assert backend() in ("numba", "numpy")

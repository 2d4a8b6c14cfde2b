import os
import subprocess
import sys

import numpy as np
import pytest

from kseeker import _kernels
from kseeker.fields import make_field

needs_numba = pytest.mark.skipif(_kernels.NUMBA_KERNELS is None, reason="numba not installed")


def naive_pair(a, b, shifts, p):
    n = len(a)
    out = np.zeros((len(shifts), p), dtype=np.int64)
    for r, s in enumerate(shifts):
        for k in range(n):
            out[r, (a[k] + b[(s + k) % n]) % p] += 1
    return out


@pytest.mark.parametrize("kernels", ["numpy", pytest.param("numba", marks=needs_numba)])
def test_pair_histograms(kernels):
    impl = (_kernels.NUMPY_KERNELS if kernels == "numpy" else _kernels.NUMBA_KERNELS)["pair_histograms"]
    rng = np.random.default_rng(5)
    for p, n in ((3, 8), (7, 48), (11, 120)):
        a, b = rng.integers(-20, 20, n), rng.integers(0, 50, n)
        shifts = np.array([0, 1, n - 1, 5, -3])
        assert np.array_equal(impl(a, b, shifts, p), naive_pair(a, b, shifts, p))


@needs_numba
@pytest.mark.parametrize("p,m", [(3, 5), (7, 3), (11, 4), (13, 2)])
def test_backends_agree_on_exp_tables(p, m):
    fs = make_field(p, m)
    mm = fs.mulmat
    assert np.array_equal(_kernels.NUMPY_KERNELS["exp_table"](mm, p, fs.q),
                          _kernels.NUMBA_KERNELS["exp_table"](mm, p, fs.q))


@needs_numba
def test_backends_agree_on_large_histograms():
    fs = make_field(11, 4)
    a = fs.trace_by_log[(-np.arange(fs.order)) % fs.order]
    shifts = np.arange(0, fs.order, 97)
    assert np.array_equal(_kernels.NUMPY_KERNELS["pair_histograms"](a, fs.trace_by_log, shifts, 11),
                          _kernels.NUMBA_KERNELS["pair_histograms"](a, fs.trace_by_log, shifts, 11))


def _cli(args, backend):
    env = {**os.environ, "KSEEKER_BACKEND": backend}
    return subprocess.run([sys.executable, "-m", "kseeker", *args], env=env,
                          capture_output=True, text=True, check=True).stdout


@needs_numba
def test_cli_output_independent_of_backend():
    args = ["search", "--p", "11", "--m", "2", "--b", "all"]
    assert _cli(args, "numpy") == _cli(args, "numba")


def test_bad_backend_name():
    env = {**os.environ, "KSEEKER_BACKEND": "fortran"}
    r = subprocess.run([sys.executable, "-c", "import kseeker"], env=env, capture_output=True, text=True)
    assert r.returncode != 0 and "KSEEKER_BACKEND" in r.stderr

"""Hot inner loops, with a numba path and a pure-numpy path.

The backend is picked once at import time from ``KSEEKER_BACKEND``
(``numba`` or ``numpy``).  If numba is requested but cannot be imported the
numpy path is used silently.  Both implementations are always importable
as ``NUMPY_KERNELS`` / ``NUMBA_KERNELS`` so tests and the benchmark can
compare them directly.
"""
import os

import numpy as np

# rows * n elements per numpy chunk in pair_histograms
_CHUNK = 1 << 22


def _np_exp_table(mulmat, p, q):
    """Powers g^0 .. g^(q-2) encoded as base-p integers.

    ``mulmat`` is the m x m matrix of multiplication by g acting on
    coefficient vectors (low degree first).
    """
    m = mulmat.shape[0]
    n = q - 1
    weights = p ** np.arange(m, dtype=np.int64)
    block = max(1, int(np.sqrt(n)))
    cols = np.zeros((m, block), dtype=np.int64)
    v = np.zeros(m, dtype=np.int64)
    v[0] = 1
    for j in range(block):
        cols[:, j] = v
        v = (mulmat @ v) % p
    # v now holds g^block as a vector; build the matrix of multiplication by it
    step = np.eye(m, dtype=np.int64)
    for _ in range(block):
        step = (mulmat @ step) % p
    out = np.empty(n + block, dtype=np.int64)
    pos = 0
    while pos < n:
        out[pos:pos + block] = weights @ cols
        cols = (step @ cols) % p
        pos += block
    return out[:n]


def _np_pair_histograms(a, b, shifts, p):
    """counts[r, c] = #{k : (a[k] + b[(shifts[r] + k) % n]) % p == c}."""
    n = a.shape[0]
    shifts = np.asarray(shifts, dtype=np.int64)
    rows = shifts.shape[0]
    out = np.empty((rows, p), dtype=np.int64)
    k = np.arange(n, dtype=np.int64)
    step = max(1, _CHUNK // max(n, 1))
    for lo in range(0, rows, step):
        hi = min(rows, lo + step)
        idx = (shifts[lo:hi, None] + k[None, :]) % n
        c = (a[None, :] + b[idx]) % p
        c += p * np.arange(hi - lo, dtype=np.int64)[:, None]
        out[lo:hi] = np.bincount(c.ravel(), minlength=(hi - lo) * p).reshape(hi - lo, p)
    return out


NUMPY_KERNELS = {
    "exp_table": _np_exp_table,
    "pair_histograms": _np_pair_histograms,
}

try:
    from numba import njit
except ImportError:  # pragma: no cover
    NUMBA_KERNELS = None
else:

    @njit(cache=True)
    def _nb_exp_table(mulmat, p, q):
        m = mulmat.shape[0]
        n = q - 1
        out = np.empty(n, dtype=np.int64)
        v = np.zeros(m, dtype=np.int64)
        w = np.zeros(m, dtype=np.int64)
        v[0] = 1
        for k in range(n):
            code = 0
            scale = 1
            for i in range(m):
                code += v[i] * scale
                scale *= p
            out[k] = code
            for i in range(m):
                s = 0
                for j in range(m):
                    s += mulmat[i, j] * v[j]
                w[i] = s % p
            for i in range(m):
                v[i] = w[i]
        return out

    @njit(cache=True)
    def _nb_pair_histograms(a, b, shifts, p):
        n = a.shape[0]
        rows = shifts.shape[0]
        out = np.zeros((rows, p), dtype=np.int64)
        for r in range(rows):
            s = shifts[r] % n
            for k in range(n):
                j = s + k
                if j >= n:
                    j -= n
                c = a[k] + b[j]
                if c >= p:
                    c -= p
                out[r, c] += 1
        return out

    def _nb_pair_histograms_checked(a, b, shifts, p):
        # the numba loop relies on inputs already reduced into [0, p)
        return _nb_pair_histograms(
            np.ascontiguousarray(a, dtype=np.int64) % p,
            np.ascontiguousarray(b, dtype=np.int64) % p,
            np.ascontiguousarray(shifts, dtype=np.int64),
            p,
        )

    def _nb_exp_table_checked(mulmat, p, q):
        return _nb_exp_table(np.ascontiguousarray(mulmat, dtype=np.int64) % p, p, q)

    NUMBA_KERNELS = {
        "exp_table": _nb_exp_table_checked,
        "pair_histograms": _nb_pair_histograms_checked,
    }


def _select():
    want = os.environ.get("KSEEKER_BACKEND", "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"KSEEKER_BACKEND must be 'numba' or 'numpy', got {want!r}")
    if want == "numba" and NUMBA_KERNELS is not None:
        return "numba", NUMBA_KERNELS
    return "numpy", NUMPY_KERNELS


BACKEND, _ACTIVE = _select()


def exp_table(mulmat, p, q):
    return _ACTIVE["exp_table"](np.asarray(mulmat, dtype=np.int64), p, q)


def pair_histograms(a, b, shifts, p):
    """Histogram of (a[k] + b[shift + k]) mod p over k, one row per shift.

    Indices into ``b`` wrap modulo ``len(a)``.  Every character sum in the
    package (Kloosterman sums, Walsh coefficients) reduces to this loop once
    field elements are written as powers of a generator.
    """
    return _ACTIVE["pair_histograms"](
        np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64),
        np.atleast_1d(np.asarray(shifts, dtype=np.int64)), p)

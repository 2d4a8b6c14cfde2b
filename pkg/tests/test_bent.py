import cmath
import random

import numpy as np
import pytest

from kseeker.bent import (HypothesisError, check_variant, equivalence_scan, eval_f, f_table,
                          is_regular_bent, kloosterman_side, parseval_holds, regular_shape,
                          walsh, walsh_counts)
from kseeker.cyclotomic import CycInt
from kseeker.fields import make_field

from conftest import complex_value, naive_pow


def naive_walsh(fs, table, lam):
    p = fs.p
    return sum(cmath.exp(2j * cmath.pi * ((table[x] - fs.trace_direct(fs.mul(lam, x))) % p) / p)
               for x in range(fs.q))


@pytest.mark.parametrize("p,n,t", [(3, 2, 1), (5, 2, 2), (3, 4, 1)])
def test_f_against_naive_power(p, n, t):
    fs = make_field(p, n)
    q = p ** (n // 2)
    rng = random.Random(n)
    for _ in range(3):
        a, b = rng.randrange(fs.q), rng.randrange(p)
        table = f_table(fs, a, b, t)
        for x in range(1, fs.q):
            first = fs.trace_direct(fs.mul(a, naive_pow(fs, x, t * (q - 1))))
            chi = 1 if naive_pow(fs, x, (fs.q - 1) // 2) == 1 else -1
            assert table[x] == (first + b * chi) % p == eval_f(fs, a, b, t, x)
        assert table[0] == 0


def test_walsh_against_float_sum():
    fs = make_field(5, 2)
    table = f_table(fs, 7, 2, 2)
    counts = walsh_counts(fs, table)
    for lam in range(fs.q):
        w = naive_walsh(fs, table, lam)
        assert abs(complex_value(counts[lam]) - w) < 1e-8
        assert walsh(fs, table, lam) == CycInt(5, list(counts[lam]))


def test_zero_function():
    fs = make_field(3, 2)
    counts = walsh_counts(fs, np.zeros(fs.q, dtype=np.int64))
    assert list(counts[0]) == [9, 0, 0]
    assert all(list(r) == [3, 3, 3] for r in counts[1:])


def test_parseval_random_tables():
    rng = np.random.default_rng(0)
    for p, n in ((3, 2), (3, 4), (5, 2), (7, 2)):
        fs = make_field(p, n)
        assert parseval_holds(fs, walsh_counts(fs, rng.integers(0, p, fs.q)))
    fs = make_field(3, 2)
    bad = walsh_counts(fs, np.zeros(fs.q, dtype=np.int64))
    bad[0, 0] += 1
    assert not parseval_holds(fs, bad)


def test_quadratic_is_regular_bent():
    # Tr(x^2) on F_9 is the textbook regular bent function
    fs = make_field(3, 2)
    table = np.array([fs.trace(fs.mul(x, x)) for x in range(fs.q)])
    shape = regular_shape(walsh_counts(fs, table), 3)
    assert np.all(shape >= 0)
    for lam in range(fs.q):
        assert abs(abs(naive_walsh(fs, table, lam)) - 3) < 1e-9


@pytest.mark.parametrize("p,m,t,variant", [(3, 1, 1, None), (3, 2, 1, None), (5, 1, 2, 2),
                                           (7, 1, 1, None), (7, 1, 3, None)])
def test_equivalence_scan(p, m, t, variant):
    s = equivalence_scan(p, m, t, variant)
    assert s.disagreements == []
    assert s.parseval_failures == 0 and s.norm_failures == 0
    assert s.pairs == (p ** (2 * m) - 1) * p


def test_regular_bent_at_p7():
    # f_(a,1,1) over F_49 with N(a) = 3 has |W_f| = 7 everywhere, matching
    # K_7(3) = 1 - 2/(zeta + zeta^-1)
    fs = make_field(7, 2)
    a = fs.gen_pow(5)
    assert fs.pow(a, 8) == 3
    rep = is_regular_bent(fs, a, 1, 1)
    assert rep.regular and rep.kloosterman_side
    table = f_table(fs, a, 1, 1)
    mags = {round(abs(naive_walsh(fs, table, lam)), 9) for lam in range(0, fs.q, 4)}
    assert mags == {7.0}


def test_a_zero_bucket():
    s = equivalence_scan(3, 1, 1)
    zero = {z["b"]: (z["regular"], z["kloosterman"]) for z in s.zero_bucket}
    assert zero[0] == (False, True)  # K(0) = 0 matches b = 0, but f = 0 is not bent
    assert kloosterman_side(make_field(3, 2), 0, 0)


def test_hypotheses():
    assert check_variant(3, 1, 1) == 1
    assert check_variant(5, 1, 2) == 2
    with pytest.raises(HypothesisError, match="gcd"):
        check_variant(5, 1, 3)  # gcd(3, 6) = 3
    with pytest.raises(HypothesisError, match="q = 1 mod 4"):
        check_variant(3, 1, 2, 2)
    with pytest.raises(HypothesisError):
        equivalence_scan(5, 1, 2, variant=1)
    with pytest.raises(ValueError):
        eval_f(make_field(3, 3), 1, 1, 1, 1)

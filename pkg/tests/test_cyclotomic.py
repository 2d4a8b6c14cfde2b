import cmath

import pytest
from hypothesis import given, settings, strategies as st

from kseeker.cyclotomic import (CycInt, from_exponent_counts, is_special_value, legendre,
                                special_value, special_value_norm, special_value_product)
from kseeker.fields import make_field

from conftest import complex_value, naive_kloosterman_counts

P = 7


def cyc(p=P):
    return st.lists(st.integers(-50, 50), min_size=p, max_size=p).map(lambda v: CycInt(p, v))


def to_complex(x: CycInt):
    return complex_value(x.full())


@settings(max_examples=60, deadline=None)
@given(cyc(), cyc(), cyc())
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x - x == CycInt.integer(P, 0)
    assert abs(to_complex(x * y) - to_complex(x) * to_complex(y)) < 1e-6


@settings(max_examples=60, deadline=None)
@given(cyc(), st.integers(1, P - 1), st.integers(1, P - 1))
def test_galois_composition_and_homomorphism(x, i, j):
    assert x.galois(i).galois(j) == x.galois(i * j)
    assert (x * x).galois(i) == x.galois(i) * x.galois(i)
    assert x.galois(-1) == x.conj()


def test_length_p_and_length_p_minus_one_agree():
    # 1 + zeta + ... + zeta^(p-1) = 0
    assert CycInt(5, [1, 1, 1, 1, 1]).is_zero()
    assert CycInt(5, [3, 1, 1, 1, 1]) == CycInt(5, [2, 0, 0, 0])


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_special_value_numerically(p):
    for b in range(p):
        want = 0 if b == 0 else 1 - 2 / (2 * cmath.cos(2 * cmath.pi * b / p))
        got = to_complex(special_value(p, b))
        assert abs(got - want) < 1e-9
        assert is_special_value(special_value(p, b), b)


def test_kloosterman_sums_over_f7_naive():
    fs = make_field(7, 1)
    for a in range(1, 7):
        counts = naive_kloosterman_counts(fs, a)
        K = from_exponent_counts(7, counts)
        direct = sum(cmath.exp(2j * cmath.pi * ((pow(x, 5, 7) + a * x) % 7) / 7) for x in range(7))
        assert abs(to_complex(K) - direct) < 1e-9
        assert K.galois(-1) == K  # real
        for b in range(7):
            assert is_special_value(K, b) == (abs(direct - (0 if b == 0 else 1 - 1 / cmath.cos(2 * cmath.pi * b / 7))) < 1e-9)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_legendre_against_squares(p):
    squares = {x * x % p for x in range(1, p)}
    for a in range(-p, 2 * p):
        want = 0 if a % p == 0 else (1 if a % p in squares else -1)
        assert legendre(a, p) == want


@pytest.mark.parametrize("p", [13, 17, 19, 23])
def test_product_congruence(p):
    value, expected = special_value_product(p)
    assert value == expected
    # the product is exactly +-p here, which is stronger than the congruence
    assert abs(special_value_norm(p)) == p


def test_product_check_range():
    with pytest.raises(ValueError, match="outside stated range"):
        special_value_product(11)
    value, expected = special_value_product(11, allow_small=True)
    assert value == expected
    with pytest.raises(ValueError):
        special_value_product(15)

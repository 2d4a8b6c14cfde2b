import cmath
from fractions import Fraction

import pytest

from kseeker.cyclotomic import is_special_value
from kseeker.fields import make_field
from kseeker.kloosterman import kloosterman_value
from kseeker.special import (TRACE_TARGETS, available_stages, rescaling_check, search_special,
                             subfield_case_analysis, symmetric_targets, trace_filter, trace_targets)

from conftest import complex_value, naive_kloosterman_counts


def naive_hits(fs, bs):
    """(a, b) with K_q(a) numerically equal to 1 - 2/(zeta^b + zeta^-b)."""
    out = set()
    for a in range(1, fs.q):
        z = complex_value(naive_kloosterman_counts(fs, a))
        for b in bs:
            v = 0 if b == 0 else 1 - 1 / cmath.cos(2 * cmath.pi * b / fs.p)
            if abs(z - v) < 1e-7:
                out.add((a, b))
    return out


def hit_set(rep):
    p = rep.field["p"]
    return {(sum(c * p ** i for i, c in enumerate(h["a"])), h["b"]) for h in rep.hits}


@pytest.mark.parametrize("p,m", [(3, 2), (5, 2), (7, 1), (7, 2), (11, 2), (13, 1)])
def test_search_matches_naive(p, m):
    fs = make_field(p, m)
    bs = range((p - 1) // 2 + 1)
    rep = search_special(fs)
    assert hit_set(rep) == naive_hits(fs, bs)


def test_p3_hits_are_the_value_three():
    # over F_9, b = 1 gives 1 - 2/(-1) = 3
    fs = make_field(3, 2)
    rep = search_special(fs, [1])
    want = {a for a in range(1, 9) if abs(complex_value(naive_kloosterman_counts(fs, a)) - 3) < 1e-9}
    assert {a for a, _ in hit_set(rep)} == want and want


@pytest.mark.parametrize("m", [1, 2, 3])
def test_no_hits_at_p11(m):
    rep = search_special(make_field(11, m))
    assert rep.hits == [] and set(rep.census.values()) == {0}


@pytest.mark.parametrize("p,m", [(7, 2), (7, 3), (13, 1), (13, 2), (13, 3)])
def test_no_prime_field_hits_in_extensions(p, m):
    assert search_special(make_field(p, m), restrict=1).hits == []


def test_prime_field_hits_at_p7():
    # K_7(a) does take the special values for three a in F_7; the sum is then
    # an honest algebraic integer of the right shape, checked numerically here
    fs = make_field(7, 1)
    rep = search_special(fs)
    assert sorted((h["a"][0], h["b"]) for h in rep.hits) == [(3, 1), (5, 2), (6, 3)]
    for h in rep.hits:
        z = complex_value(naive_kloosterman_counts(fs, h["a"][0]))
        assert abs(z - (1 - 1 / cmath.cos(2 * cmath.pi * h["b"] / 7))) < 1e-9


@pytest.mark.parametrize("p,m", [(7, 1), (7, 2), (11, 2), (11, 3), (13, 2), (17, 2)])
def test_filter_does_not_change_hits(p, m):
    fs = make_field(p, m)
    assert search_special(fs, use_filter=True).hits == search_special(fs).hits


@pytest.mark.parametrize("p,m", [(11, 2), (13, 2), (7, 2)])
def test_filter_is_sound(p, m):
    # every a with K(a) = V_1 passes the trace conditions (checked over all a
    # scaled to b = 1 through the rescaling identity)
    fs = make_field(p, m)
    for a in range(1, fs.q):
        K = kloosterman_value(fs, a)
        if is_special_value(K, 1):
            assert trace_filter(fs, a).ok


def test_worker_count_does_not_change_output():
    fs = make_field(11, 3)
    one = search_special(fs, workers=1).to_dict(timing=False)
    many = search_special(fs, workers=3).to_dict(timing=False)
    assert one == many


def test_trace_targets():
    for p in (13, 17, 37):
        t = trace_targets(p, 1)
        assert t == {k: x.numerator * pow(x.denominator, -1, p) % p for k, x in zip((1, 2, 3, 4), TRACE_TARGETS)}
        assert trace_targets(p, 0) == {1: 0, 2: 0, 3: 0, 4: 0}
    assert available_stages(7, 1) == [1, 2]
    assert available_stages(11, 1) == [1, 2, 3]  # 33 = 0 mod 11
    assert available_stages(13, 1) == [1, 2, 3, 4]


def test_symmetric_targets_from_newton_identities():
    t = list(TRACE_TARGETS)
    e = [Fraction(1)]
    for k in range(1, 5):
        e.append(sum((-1) ** (i - 1) * e[k - i] * t[i - 1] for i in range(1, k + 1)) / k)
    assert e[2:] == [Fraction(7, 24), Fraction(-41, 240), Fraction(8879, 88704)]
    for p in (13, 17, 19):
        assert symmetric_targets(p) == tuple(x.numerator * pow(x.denominator, -1, p) % p for x in e[2:])
    assert len(symmetric_targets(11)) == 2  # 88704 = 2^7 3^2 7 11


def test_subfield_analysis_values():
    r = subfield_case_analysis(13, 2)
    assert r["r"] == "-108/77"
    assert r["c_values"] == ["54/77", "72/5929", "-29556/2282665", "147780/35153041"]
    assert r["gcd"] == 29556 == 2 ** 2 * 3 ** 2 * 821
    assert r["verdict"] == "excluded"
    r = subfield_case_analysis(821, 2)
    assert (r["c1_mod_p"], r["c2_mod_p"], r["roots"]) == (86, 659, [300, 607])
    assert all((x * x - 86 * x + 659) % 821 == 0 for x in r["roots"])
    assert subfield_case_analysis(13, 26)["branch"] == "p | m"
    with pytest.raises(ValueError):
        subfield_case_analysis(11, 2)


@pytest.mark.parametrize("p,m", [(7, 2), (11, 2)])
def test_rescaling_identity_exhaustive(p, m):
    fs = make_field(p, m)
    for a in range(1, fs.q):
        for i in range(1, p):
            assert rescaling_check(fs, a, i)

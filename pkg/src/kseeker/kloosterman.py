"""Kloosterman sums K_q(a) = sum_x zeta^Tr(x^(q-2) + a x) and their pi-adic digits.

The digits of K_q(a) mod pi^10 are available three independent ways:

* from the exact exponent histogram, substituting the pi-adic zeta;
* from the closed forms in Tr(a), ..., Tr(a^4);
* from -sum g(j)^2 omega^j(a) over p-digit weights 1..4, with each Gauss
  sum replaced by its Stickelberger leading term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from . import _kernels
from .cyclotomic import CycInt, from_exponent_counts
from .fields import FieldSpec
from .padic import (DigitExpansion, RamifiedElem, digits, lifted_trace,
                    precision_for, zeta_expansion)

DEFAULT_DIGITS = 10


def _inv_log_trace(fs: FieldSpec) -> np.ndarray:
    # Tr(g^-k), i.e. the trace of x^(q-2) for x = g^k
    n = fs.order
    return fs.trace_by_log[(-np.arange(n)) % n]


def kloosterman_counts(fs: FieldSpec, a: int) -> np.ndarray:
    """N_c = #{x in F_q : Tr(x^(q-2) + a x) = c}, for c = 0..p-1."""
    fs.check(a)
    if a == 0:
        counts = _kernels.pair_histograms(_inv_log_trace(fs), np.zeros(fs.order, dtype=np.int64), [0], fs.p)[0]
    else:
        counts = _kernels.pair_histograms(_inv_log_trace(fs), fs.trace_by_log, [fs.dlog(a)], fs.p)[0]
    counts = counts.copy()
    counts[0] += 1  # x = 0
    return counts


def kloosterman_counts_by_log(fs: FieldSpec, logs) -> np.ndarray:
    """Histogram rows for a = g^k, one per k in ``logs``."""
    out = _kernels.pair_histograms(_inv_log_trace(fs), fs.trace_by_log, logs, fs.p)
    out[:, 0] += 1
    return out


def subgroup_counts_by_log(trace_by_log: np.ndarray, logs, p: int) -> np.ndarray:
    """Kloosterman histograms for a field given only by its trace-by-log table."""
    n = len(trace_by_log)
    inv = trace_by_log[(-np.arange(n)) % n]
    out = _kernels.pair_histograms(inv, trace_by_log, logs, p)
    out[:, 0] += 1
    return out


def kloosterman_value(fs: FieldSpec, a: int) -> CycInt:
    return from_exponent_counts(fs.p, kloosterman_counts(fs, a))


@lru_cache(maxsize=None)
def _zeta_powers(p: int, N: int) -> tuple[RamifiedElem, ...]:
    z = zeta_expansion(p, N)
    out = [RamifiedElem.scalar(p, z.K, 1, N)]
    for _ in range(p - 1):
        out.append(out[-1] * z)
    return tuple(out)


def counts_to_expansion(p: int, counts, N: int = DEFAULT_DIGITS) -> RamifiedElem:
    """sum_c counts[c] zeta^c as a truncated pi-adic element."""
    powers = _zeta_powers(p, N)
    K = powers[0].K
    mod = p ** K
    acc = [0] * (p - 1)
    for c, n in enumerate(counts):
        n = int(n) % mod
        if n:
            for j, z in enumerate(powers[c].coeffs):
                acc[j] += n * z
    return RamifiedElem(p, K, acc, N)


def expansion_from_counts(fs: FieldSpec, a: int, N: int = DEFAULT_DIGITS) -> DigitExpansion:
    """First N Teichmuller digits of K_q(a), from its exponent histogram."""
    return digits(counts_to_expansion(fs.p, kloosterman_counts(fs, a), N), N)


def _r(x: Fraction, p: int) -> int:
    return x.numerator * pow(x.denominator, -1, p) % p


def formula_valid(p: int, m: int, k: int) -> bool:
    """Whether the closed form for digit a_{2k} holds on F_{p^m}.

    The Gauss-sum identity is only a congruence mod q = pi^(m(p-1)), and the
    Stickelberger error after squaring is pi^(2w+p-1); both must clear pi^(2k+1).
    """
    return p >= 7 and m * (p - 1) >= 2 * k + 1 and p + 1 >= 2 * k + 1


def expansion_formula(fs: FieldSpec, a: int) -> tuple[int, int, int | None, int | None]:
    """(a_2, a_4, a_6, a_8) mod p from Tr(a), Tr(a^2), Tr(a^3), Tr(a^4).

    A digit whose closed form does not hold on this field is None: a_8 below
    p = 11, and a_6 on F_7 itself.
    """
    p = fs.p
    if p < 7:
        raise ValueError(f"closed-form digits need p >= 7, got p = {p}")
    t1, t2, t3, t4 = fs.power_traces(a, 4)
    a2 = -t1 % p
    a4 = _r(Fraction(t2 - 2 * t1 * t1, 4), p)
    a6 = a8 = None
    if formula_valid(p, fs.m, 3):
        a6 = _r(Fraction(-(4 * t3 + 6 * t1 ** 3 - 9 * t1 * t2), 36), p)
    if formula_valid(p, fs.m, 4):
        a8 = _r(Fraction(-(24 * t1 ** 4 - 72 * t1 ** 2 * t2 + 64 * t1 * t3 + 18 * t2 ** 2 - 33 * t4), 576), p)
    return a2, a4, a6, a8


def digit_weight(j: int, p: int) -> tuple[int, list[int]]:
    ds = []
    while j:
        j, r = divmod(j, p)
        ds.append(r)
    return sum(ds), ds


def gauss_stickelberger(fs: FieldSpec, j: int, N: int | None = None) -> RamifiedElem:
    """Leading term pi^wt / (j_0! ... j_{m-1}!) of g(j), exact mod pi^(wt + p - 1)."""
    if not 1 <= j <= fs.q - 2:
        raise ValueError(f"j must lie in [1, q-2] = [1, {fs.q - 2}], got {j}")
    p = fs.p
    wt, ds = digit_weight(j, p)
    limit = wt + p - 1
    N = limit if N is None else N
    if N > limit:
        raise ValueError(f"the congruence only determines g({j}) mod pi^{limit}")
    denom = 1
    for d in ds:
        denom *= factorial(d)
    K = precision_for(p, N)
    return RamifiedElem.pi_power(p, K, wt, N) * Fraction(1, denom)


# pattern -> sum over pairwise distinct ordered index tuples (i_1, ..., i_t) of
# prod_s omega(a)^(pattern[s] * p^(i_s))
PATTERNS = ((1, 1), (2, 1), (1, 1, 1), (2, 2), (3, 1), (2, 1, 1), (1, 1, 1, 1))


def _symmetric_from_traces(T, mod) -> dict:
    t1, t2, t3, t4 = T
    return {
        (1, 1): (t1 * t1 - t2) % mod,
        (2, 1): (t1 * t2 - t3) % mod,
        (1, 1, 1): (t1 ** 3 - 3 * t1 * t2 + 2 * t3) % mod,
        (2, 2): (t2 * t2 - t4) % mod,
        (3, 1): (t1 * t3 - t4) % mod,
        (2, 1, 1): (t1 * t1 * t2 - 2 * t1 * t3 - t2 * t2 + 2 * t4) % mod,
        (1, 1, 1, 1): (t1 ** 4 - 6 * t1 * t1 * t2 + 3 * t2 * t2 + 8 * t1 * t3 - 6 * t4) % mod,
    }


def lifted_power_traces(fs: FieldSpec, a: int, K: int = 1) -> list[int]:
    if a == 0:
        return [0, 0, 0, 0]
    return [lifted_trace(fs, a, k, K) for k in range(1, 5)]


def symmetric_power_sums(fs: FieldSpec, a: int, K: int = 1) -> dict:
    """The seven distinct-index omega power sums, from lifted traces, in Z/p^K."""
    return _symmetric_from_traces(lifted_power_traces(fs, a, K), fs.p ** K)


# (digit pattern of j, factor turning the ordered distinct-index sum into the
# sum over the distinct j with that digit multiset)
_WEIGHT_CLASSES = {
    1: [((1,), 1)],
    2: [((2,), 1), ((1, 1), 2)],
    3: [((3,), 1), ((2, 1), 1), ((1, 1, 1), 6)],
    4: [((4,), 1), ((2, 2), 2), ((3, 1), 1), ((2, 1, 1), 2), ((1, 1, 1, 1), 24)],
}


def expansion_from_gauss(fs: FieldSpec, a: int, N: int = DEFAULT_DIGITS) -> DigitExpansion:
    """Digits of K_q(a) mod pi^10 from -sum_{wt(j) <= 4} g(j)^2 omega^j(a)."""
    p = fs.p
    if p < 11:
        raise ValueError(f"the weight <= 4 reconstruction needs p >= 11, got p = {p}")
    if N > DEFAULT_DIGITS:
        raise ValueError("weight <= 4 terms only determine K_q(a) mod pi^10")
    K = precision_for(p, N)
    mod = p ** K
    T = lifted_power_traces(fs, a, K)
    sums = _symmetric_from_traces(T, mod)
    total = RamifiedElem(p, K, [], N)
    for w, classes in _WEIGHT_CLASSES.items():
        for pattern, multiplicity in classes:
            if len(pattern) > fs.m:
                continue
            if len(pattern) == 1:
                s = T[pattern[0] - 1]
            else:
                s = sums[pattern] * pow(multiplicity, -1, mod) % mod
            j = sum(d * p ** i for i, d in enumerate(pattern))
            g = gauss_stickelberger(fs, j, N)
            total = total - g * g * s
    return digits(total, N)


@dataclass
class KloostermanProfile:
    a: int
    a_log: int | None
    counts: tuple[int, ...]
    value: CycInt
    digits: DigitExpansion
    formula_digits: tuple | None = None
    flags: list[str] = field(default_factory=list)

    def to_dict(self, fs: FieldSpec) -> dict:
        out = {
            "a": {"exp": self.a_log, "coeffs": fs.coeffs(self.a)},
            "counts": [int(c) for c in self.counts],
            "value": self.value.to_list(),
            "digits": self.digits.residues(),
            "formula_digits": None if self.formula_digits is None else list(self.formula_digits),
            "flags": list(self.flags),
        }
        return out


def profile(fs: FieldSpec, a: int, N: int = DEFAULT_DIGITS) -> KloostermanProfile:
    counts = kloosterman_counts(fs, a)
    exp = digits(counts_to_expansion(fs.p, counts, N), N)
    formula = expansion_formula(fs, a) if fs.p >= 7 else None
    return KloostermanProfile(
        a=a,
        a_log=None if a == 0 else fs.dlog(a),
        counts=tuple(int(c) for c in counts),
        value=from_exponent_counts(fs.p, counts),
        digits=exp,
        formula_digits=formula,
        flags=["a=0"] if a == 0 else [],
    )

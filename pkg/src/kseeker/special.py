"""Where K_q(a) can equal 1 - 2/(zeta^b + zeta^-b): filters, searches, subfield algebra."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from math import gcd

import numpy as np

from . import _shard
from .cyclotomic import from_exponent_counts, is_special_value, special_value
from .fields import FieldSpec, factorint, is_prime
from .kloosterman import formula_valid, kloosterman_counts_by_log, kloosterman_value
from .padic import digits, special_value_expansion

# digit a_{2k} of K_q(a) is pinned by Tr(a), ..., Tr(a^k); these are the
# closed forms solved for Tr(a^k) given the target digit t = a_{2k}
_STAGE_DENOMS = {1: 1, 2: 1, 3: 4, 4: 33}


def stage_valid(p: int, m: int, k: int) -> bool:
    """Stage k of the trace filter is usable: the digit formula holds and
    the solved trace is well defined mod p."""
    return formula_valid(p, m, k) and _STAGE_DENOMS[k] % p != 0


def available_stages(p: int, m: int) -> list[int]:
    return [k for k in (1, 2, 3, 4) if stage_valid(p, m, k)]


def trace_targets(p: int, b: int = 1, stages=(1, 2, 3, 4)) -> dict[int, int]:
    """Tr(a^k) mod p forced by K_q(a) == 1 - 2/(zeta^b + zeta^-b), per stage k."""
    b %= p
    if b == 0:
        t = [0, 0, 0, 0]
    else:
        d = digits(special_value_expansion(p, b, 10), 10).residues()
        t = [d[2], d[4], d[6], d[8]]
    out = {}
    T = [None] * 5
    inv = lambda x: pow(x, -1, p)  # noqa: E731
    T[1] = -t[0] % p
    T[2] = (4 * t[1] + 2 * T[1] ** 2) % p
    if 3 in stages or 4 in stages:
        T[3] = (-36 * t[2] - 6 * T[1] ** 3 + 9 * T[1] * T[2]) * inv(4) % p
    if 4 in stages:
        T[4] = (576 * t[3] + 24 * T[1] ** 4 - 72 * T[1] ** 2 * T[2] + 64 * T[1] * T[3]
                + 18 * T[2] ** 2) * inv(33) % p
    for k in stages:
        out[k] = T[k]
    return out


@dataclass
class FilterVerdict:
    stages: list[int]
    passed: list[int]

    @property
    def ok(self) -> bool:
        return len(self.passed) == len(self.stages)

    @property
    def first_failure(self) -> int | None:
        for k in self.stages:
            if k not in self.passed:
                return k
        return None


def trace_filter(fs: FieldSpec, a: int, b: int = 1) -> FilterVerdict:
    """Necessary trace conditions for K_q(a) == 1 - 2/(zeta^b + zeta^-b).

    Stages run in order of trace power and stop at the first failure.
    """
    if fs.p < 7:
        raise ValueError(f"trace conditions need p >= 7, got p = {fs.p}")
    stages = available_stages(fs.p, fs.m)
    targets = trace_targets(fs.p, b, tuple(stages))
    traces = fs.power_traces(a, 4)
    passed = []
    for k in stages:
        if traces[k - 1] != targets[k]:
            break
        passed.append(k)
    return FilterVerdict(stages, passed)


def _filter_mask(fs: FieldSpec, logs: np.ndarray, b: int, pass_counts: dict) -> np.ndarray:
    stages = available_stages(fs.p, fs.m)
    targets = trace_targets(fs.p, b, tuple(stages))
    keep = np.ones(len(logs), dtype=bool)
    for k in stages:
        tr = fs.trace_by_log[(k * logs) % fs.order]
        keep &= tr == targets[k]
        pass_counts[k] = pass_counts.get(k, 0) + int(keep.sum())
    return keep


def symmetric_targets(p: int) -> tuple[int, ...]:
    """7/24, -41/240, 8879/88704 mod p, as far as the denominators allow."""
    if p < 7:
        raise ValueError(f"symmetric targets need p >= 7, got p = {p}")
    vals = [Fraction(7, 24), Fraction(-41, 240), Fraction(8879, 88704)]
    out = []
    for v in vals:
        if v.denominator % p == 0:
            break
        out.append(v.numerator * pow(v.denominator, -1, p) % p)
    return tuple(out)


def rescale(fs: FieldSpec, a: int, i: int) -> int:
    """a / i^2 for i in F_p^*."""
    return fs.mul(a, fs.inv(fs.embed(i * i)))


def rescaling_check(fs: FieldSpec, a: int, i: int) -> bool:
    """sigma_{1/i}(K_q(a)) == K_q(a/i^2), and equal special-value status."""
    p = fs.p
    if i % p == 0:
        raise ValueError("i must be prime to p")
    K = kloosterman_value(fs, a)
    K_scaled = kloosterman_value(fs, rescale(fs, a, i))
    if K.galois(pow(i, -1, p)) != K_scaled:
        return False
    return is_special_value(K, i) == is_special_value(K_scaled, 1)


@dataclass
class SearchReport:
    field: dict
    b_values: list[int]
    filter_mode: bool
    restrict: int | None
    searched: int
    hits: list[dict]
    census: dict[int, int]
    filter_pass_counts: dict
    edge_cases: list[str] = field(default_factory=list)
    timing: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "field": self.field,
            "b_values": self.b_values,
            "filter": self.filter_mode,
            "restrict_subfield": self.restrict,
            "searched": self.searched,
            "hits": self.hits,
            "census": {str(k): v for k, v in self.census.items()},
            "filter_pass_counts": {str(b): {str(k): v for k, v in c.items()}
                                   for b, c in self.filter_pass_counts.items()},
            "edge_cases": self.edge_cases,
        }
        if timing:
            out["seconds"] = round(self.timing, 3)
        return out


def _hits_in_shard(logs, fs: FieldSpec, targets: dict):
    if len(logs) == 0:
        return []
    counts = kloosterman_counts_by_log(fs, logs)
    out = []
    for b, want in targets.items():
        diff = counts - want[None, :]
        same = np.all(diff == diff[:, :1], axis=1)
        out.extend((int(k), b) for k in logs[same])
    return out


def search_special(fs: FieldSpec, bs=None, use_filter: bool = False, restrict: int | None = None,
                   workers: int | None = None) -> SearchReport:
    """Exhaustive exact search for K_q(a) == 1 - 2/(zeta^b + zeta^-b), a != 0.

    ``restrict=s`` limits a to the subfield F_{p^s}.  With ``use_filter`` an
    a is only tested for b once it passes the trace conditions for b.
    """
    start = time.perf_counter()
    p = fs.p
    half = (p - 1) // 2
    bs = sorted({b % p for b in (range(half + 1) if bs is None else bs)})
    # b and -b give the same value; fold onto 0..(p-1)/2
    bs = sorted({min(b, p - b) for b in bs})
    logs = np.arange(fs.order, dtype=np.int64)
    if restrict is not None:
        if fs.m % restrict:
            raise ValueError(f"F_{p}^{restrict} is not a subfield of F_{p}^{fs.m}")
        logs = logs[logs % (fs.order // (p ** restrict - 1)) == 0]
    if use_filter and p < 7:
        raise ValueError("the trace filter needs p >= 7")
    workers = _shard.worker_count(workers)
    targets = {b: np.array(special_value(p, b).full(), dtype=np.int64) for b in bs}

    raw = []
    pass_counts = {}
    if use_filter:
        for b in bs:
            pass_counts[b] = {}
            # K(a) = V_b  iff  K(a/b^2) = V_1, so filter a/b^2 against the b = 1 targets
            if b == 0:
                cand = logs[_filter_mask(fs, logs, 0, pass_counts[b])]
            else:
                shift = fs.dlog(fs.inv(fs.embed(b * b)))
                scaled = (logs + shift) % fs.order
                cand = logs[_filter_mask(fs, scaled, 1, pass_counts[b])]
            shards = _shard.split(cand, workers)
            for part in _shard.map_shards(partial(_hits_in_shard, fs=fs, targets={b: targets[b]}),
                                          shards, workers):
                raw.extend(part)
    else:
        shards = _shard.split(logs, workers)
        for part in _shard.map_shards(partial(_hits_in_shard, fs=fs, targets=targets), shards, workers):
            raw.extend(part)

    raw.sort()
    hits = []
    for k, b in raw:
        a = fs.gen_pow(k)
        if not is_special_value(kloosterman_value(fs, a), b):
            raise AssertionError(f"hit a = g^{k}, b = {b} failed exact re-verification")
        hits.append({"a_exp": k, "a": fs.coeffs(a), "b": b})
    census = {i: 0 for i in range(1, half + 1) if i in bs}
    if 0 in bs:
        census = {0: 0, **census}
    for h in hits:
        census[h["b"]] += 1
    edge = []
    if 0 in bs:
        edge.append("a=0: K_q(0) = 0 equals the b=0 value; excluded from the search")
    return SearchReport(
        field={**fs.to_dict(), "generator": fs.generator},
        b_values=bs,
        filter_mode=use_filter,
        restrict=restrict,
        searched=int(len(logs)),
        hits=hits,
        census=census,
        filter_pass_counts=pass_counts,
        edge_cases=edge,
        timing=time.perf_counter() - start,
    )


# -- the F_{p^2} case, in exact rationals -------------------------------------

TRACE_TARGETS = (Fraction(-1, 2), Fraction(-1, 3), Fraction(-1, 5), Fraction(-136, 1155))


def _padd(a, b):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pscale(a, c):
    return [c * x for x in a]


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _prem(a, b):
    a, b = _ptrim(a), _ptrim(b)
    while len(a) >= len(b):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = _ptrim(a)
    return a


def _peval(a, x):
    return sum(c * x ** i for i, c in enumerate(a))


def elementary_from_traces(traces) -> list[list[Fraction]]:
    """c_1..c_4 as polynomials in r when Tr(a^k) = traces[k-1] * r (Newton's identities)."""
    P = [None] + [[Fraction(0), Fraction(t)] for t in traces]
    e = [[Fraction(1)]]
    for k in range(1, 5):
        acc = [Fraction(0)]
        for i in range(1, k + 1):
            acc = _padd(acc, _pscale(_pmul(e[k - i], P[i]), (-1) ** (i - 1)))
        e.append(_pscale(acc, Fraction(1, k)))
    return [_ptrim(x) for x in e[1:]]


def _root_mod(c1: int, c2: int, p: int) -> list[int]:
    return [x for x in range(p) if (x * x - c1 * x + c2) % p == 0]


def subfield_case_analysis(p: int, m: int) -> dict:
    """Rule out a in F_{p^2} \\ F_p with K_q(a) = 1 - 2/(zeta + zeta^-1), p >= 13, 2 | m."""
    if not is_prime(p) or p < 13:
        raise ValueError(f"the F_(p^2) analysis needs a prime p >= 13, got {p}")
    if m % 2:
        raise ValueError(f"m must be even, got {m}")
    report = {"p": p, "m": m}
    if m % p == 0:
        # Tr^m_1(a) = (m/2) Tr^2_1(a) = 0 cannot equal -1/2
        report.update(branch="p | m", contradiction="1/2 = 0 mod p", verdict="excluded")
        return report

    c = elementary_from_traces(TRACE_TARGETS)
    # c_3 = c_4 = 0 with r != 0: divide out r and eliminate
    q3, q4 = c[2][1:], c[3][1:]
    a_, b_ = q4, q3
    while len(_ptrim(b_)) > 2:
        a_, b_ = b_, _prem(a_, b_)
    lin = _ptrim(b_)
    r_star = -lin[0] / lin[1]
    c_vals = [_peval(ci, r_star) for ci in c]
    g = gcd(c_vals[2].numerator, c_vals[3].numerator)
    report.update(
        branch="p does not divide m",
        r_from_m=2 * pow(m, -1, p) % p,
        c_polynomials=[[str(x) for x in ci] for ci in c],
        r=str(r_star),
        c_values=[str(v) for v in c_vals],
        gcd=g,
        gcd_factorization={str(k): v for k, v in factorint(g).items()},
    )
    if g % p:
        report.update(verdict="excluded", reason=f"c_3 = c_4 = 0 mod p needs p | {g}")
        return report
    c1 = c_vals[0].numerator * pow(c_vals[0].denominator, -1, p) % p
    c2 = c_vals[1].numerator * pow(c_vals[1].denominator, -1, p) % p
    roots = _root_mod(c1, c2, p)
    report.update(c1_mod_p=c1, c2_mod_p=c2, roots=roots)
    if roots:
        report.update(verdict="excluded",
                      reason=f"x^2 - {c1}x + {c2} = " + "".join(f"(x - {r})" for r in
                                                                  (roots if len(roots) == 2 else roots * 2))
                      + " splits, so a would lie in F_p")
    else:
        report.update(verdict="not excluded", reason="minimal polynomial is irreducible")
    return report

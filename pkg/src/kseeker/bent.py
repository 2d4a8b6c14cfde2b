"""Exact Walsh spectra of f(x) = Tr^n_1(a x^(t(q-1))) + b x^((p^n-1)/2) over F_{p^n}, n = 2m.

Regular bentness is checked exactly: W_f(lambda) = p^m zeta^c holds iff the
exponent histogram of W_f(lambda) is constant except for an excess of p^m
at c.  The Kloosterman side K_q(a^(q+1)) is evaluated on the subfield F_q
inside F_{p^n}, with Tr^m_1(y) = Tr^n_1(y) / 2 for y in F_q.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import partial
from math import gcd

import numpy as np

from . import _kernels, _shard
from .cyclotomic import CycInt, from_exponent_counts, is_special_value, special_value
from .fields import FieldSpec, make_field
from .kloosterman import subgroup_counts_by_log


class HypothesisError(ValueError):
    pass


def _need_even(fs_n: FieldSpec) -> int:
    if fs_n.m % 2:
        raise ValueError(f"f_(a,b,t) needs an even extension degree, got n = {fs_n.m}")
    return fs_n.m // 2


def eval_f(fs_n: FieldSpec, a: int, b: int, t: int, x: int) -> int:
    m = _need_even(fs_n)
    q = fs_n.p ** m
    if x == 0:
        return 0
    first = fs_n.trace(fs_n.mul(a, fs_n.pow(x, t * (q - 1))))
    chi = fs_n.pow(x, (fs_n.q - 1) // 2)  # 1 or p-1 encodes +-1
    return (first + b * chi) % fs_n.p


def f_by_log(fs_n: FieldSpec, a: int, b: int, t: int) -> np.ndarray:
    """f(g^k) for k = 0..p^n-2 (f(0) = 0)."""
    m = _need_even(fs_n)
    q = fs_n.p ** m
    n = fs_n.order
    k = np.arange(n, dtype=np.int64)
    chi = np.where(k % 2 == 0, 1, -1)
    if a == 0:
        first = np.zeros(n, dtype=np.int64)
    else:
        first = fs_n.trace_by_log[(fs_n.dlog(a) + (k * (t * (q - 1) % n)) % n) % n]
    return (first + b * chi) % fs_n.p


def f_table(fs_n: FieldSpec, a: int, b: int, t: int) -> np.ndarray:
    """f(x) for every encoded x."""
    out = np.zeros(fs_n.q, dtype=np.int64)
    out[fs_n.exp] = f_by_log(fs_n, a, b, t)
    return out


def walsh_counts(fs_n: FieldSpec, table) -> np.ndarray:
    """Exponent histograms of W_f(lambda) for every encoded lambda (rows)."""
    table = np.asarray(table, dtype=np.int64)
    p = fs_n.p
    by_log = table[fs_n.exp]
    out = np.empty((fs_n.q, p), dtype=np.int64)
    out[0] = np.bincount(table % p, minlength=p)
    rows = _kernels.pair_histograms(by_log, (-fs_n.trace_by_log) % p,
                                    np.arange(fs_n.order, dtype=np.int64), p)
    rows[:, table[0] % p] += 1  # x = 0
    out[fs_n.exp] = rows
    return out


def walsh(fs_n: FieldSpec, table, lam: int) -> CycInt:
    """W_f(lambda) = sum_x zeta^(f(x) - Tr(lambda x))."""
    table = np.asarray(table, dtype=np.int64)
    p = fs_n.p
    if lam == 0:
        return from_exponent_counts(p, np.bincount(table % p, minlength=p))
    row = _kernels.pair_histograms(table[fs_n.exp], (-fs_n.trace_by_log) % p, [fs_n.dlog(lam)], p)[0]
    row[table[0] % p] += 1
    return from_exponent_counts(p, row)


def regular_shape(counts: np.ndarray, scale: int):
    """Per row: c if the row is scale * zeta^c exactly, else -1."""
    c = np.argmax(counts, axis=1)
    diff = counts.copy()
    diff[np.arange(len(c)), c] -= scale
    ok = np.all(diff == diff[:, :1], axis=1)
    return np.where(ok, c, -1)


def parseval_holds(fs_n: FieldSpec, counts: np.ndarray) -> bool:
    """sum_lambda W(lambda) * conj(W(lambda)) == p^(2n), exactly."""
    p = fs_n.p
    total = np.zeros(p, dtype=object)
    for e in range(p):
        # coefficient of zeta^e in W * conj(W) is sum_c N_c N_(c-e)
        total[e] = int((counts.astype(object) * np.roll(counts, e, axis=1).astype(object)).sum())
    return from_exponent_counts(p, total) == CycInt.integer(p, fs_n.q ** 2)


def check_variant(p: int, m: int, t: int, variant: int | None = None) -> int:
    """Which hypothesis set applies (1: gcd(t, q+1) = 1; 2: the t = 2 mod 4 case)."""
    q = p ** m
    v1 = gcd(t, q + 1) == 1
    v2 = q % 4 == 1 and t % 4 == 2 and gcd(t // 2, q + 1) == 1
    if variant is None:
        if v1:
            return 1
        if v2:
            return 2
        raise HypothesisError(
            f"neither hypothesis set holds for p={p}, m={m}, t={t}: gcd(t, q+1) = {gcd(t, q + 1)}")
    if variant == 1 and not v1:
        raise HypothesisError(f"variant 1 needs gcd(t, q+1) = 1, but gcd({t}, {q + 1}) = {gcd(t, q + 1)}")
    if variant == 2:
        if q % 4 != 1:
            raise HypothesisError(f"variant 2 needs q = 1 mod 4, but q = {q}")
        if t % 4 != 2:
            raise HypothesisError(f"variant 2 needs t = 2 mod 4, but t = {t}")
        if gcd(t // 2, q + 1) != 1:
            raise HypothesisError(f"variant 2 needs gcd(t/2, q+1) = 1, but gcd({t // 2}, {q + 1}) = "
                                  f"{gcd(t // 2, q + 1)}")
    if variant not in (1, 2):
        raise HypothesisError(f"unknown variant {variant}")
    return variant


def subfield_trace_by_log(fs_n: FieldSpec) -> np.ndarray:
    """Tr^m_1(h^k) for h = g^(q+1), the generator of F_q inside F_{p^n}."""
    m = _need_even(fs_n)
    p, q = fs_n.p, fs_n.p ** m
    k = np.arange(q - 1, dtype=np.int64)
    return fs_n.trace_by_log[(k * (q + 1)) % fs_n.order] * pow(2, -1, p) % p


def norm(fs_n: FieldSpec, a: int) -> int:
    m = _need_even(fs_n)
    return fs_n.pow(a, fs_n.p ** m + 1)


def kloosterman_side(fs_n: FieldSpec, a: int, b: int, sub_trace=None) -> bool:
    """Whether K_q(a^(q+1)) == 1 - 2/(zeta^b + zeta^-b)."""
    m = _need_even(fs_n)
    p, q = fs_n.p, fs_n.p ** m
    if a == 0:
        K = CycInt.integer(p, 0)
    else:
        sub_trace = subfield_trace_by_log(fs_n) if sub_trace is None else sub_trace
        counts = subgroup_counts_by_log(sub_trace, [fs_n.dlog(a) % (q - 1)], p)[0]
        K = from_exponent_counts(p, counts)
    return is_special_value(K, b)


@dataclass
class BentReport:
    n: int
    a: int
    b: int
    t: int
    variant: int | None
    regular: bool
    dual: list[int] | None
    witness: int | None
    kloosterman_side: bool
    parseval: bool

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("n", "a", "b", "t", "variant", "regular", "dual", "witness", "kloosterman_side", "parseval")}


def is_regular_bent(fs_n: FieldSpec, a: int, b: int, t: int) -> BentReport:
    m = _need_even(fs_n)
    p = fs_n.p
    counts = walsh_counts(fs_n, f_table(fs_n, a, b, t))
    shape = regular_shape(counts, p ** m)
    regular = bool(np.all(shape >= 0))
    try:
        variant = check_variant(p, m, t)
    except HypothesisError:
        variant = None
    return BentReport(
        n=fs_n.m, a=a, b=b % p, t=t, variant=variant,
        regular=regular,
        dual=[int(c) for c in shape] if regular else None,
        witness=None if regular else int(np.argmin(shape)),
        kloosterman_side=kloosterman_side(fs_n, a, b),
        parseval=parseval_holds(fs_n, counts),
    )


def _scan_shard(logs, fs_n: FieldSpec, t: int, bs, sub_trace, check_parseval: bool):
    p = fs_n.p
    m = fs_n.m // 2
    q = p ** m
    scale = p ** m
    special = {b: np.array(special_value(p, b).full(), dtype=np.int64) for b in bs}
    out = []
    for la in logs:
        la = int(la)
        a = int(fs_n.exp[la])
        nrm = fs_n.pow(a, q + 1)
        in_subfield = fs_n.pow(nrm, q) == nrm
        kc = subgroup_counts_by_log(sub_trace, [la % (q - 1)], p)[0]
        for b in bs:
            counts = walsh_counts(fs_n, f_table(fs_n, a, b, t))
            shape = regular_shape(counts, scale)
            regular = bool(np.all(shape >= 0))
            diff = kc - special[b]
            kside = bool(np.all(diff == diff[0]))
            parseval = parseval_holds(fs_n, counts) if check_parseval else True
            out.append((la, b, regular, kside, parseval, in_subfield))
    return out


@dataclass
class ScanSummary:
    p: int
    m: int
    t: int
    variant: int
    pairs: int
    agreements: int
    disagreements: list[dict]
    bent_census: dict[int, int]
    kloosterman_census: dict[int, int]
    parseval_failures: int
    norm_failures: int
    zero_bucket: list[dict] = field(default_factory=list)
    timing: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "p": self.p, "m": self.m, "t": self.t, "variant": self.variant,
            "pairs": self.pairs, "agreements": self.agreements,
            "disagreements": self.disagreements,
            "bent_census": {str(k): v for k, v in self.bent_census.items()},
            "kloosterman_census": {str(k): v for k, v in self.kloosterman_census.items()},
            "parseval_failures": self.parseval_failures,
            "norm_failures": self.norm_failures,
            "a_zero": self.zero_bucket,
        }
        if timing:
            out["seconds"] = round(self.timing, 3)
        return out


def equivalence_scan(p: int, m: int, t: int, variant: int | None = None, bs=None,
                     workers: int | None = None, check_parseval: bool = True) -> ScanSummary:
    """Compare exact regular-bentness with the Kloosterman condition over all a != 0 and b."""
    start = time.perf_counter()
    variant = check_variant(p, m, t, variant)
    fs_n = make_field(p, 2 * m)
    bs = list(range(p)) if bs is None else sorted({b % p for b in bs})
    sub_trace = subfield_trace_by_log(fs_n)
    workers = _shard.worker_count(workers)
    shards = _shard.split(np.arange(fs_n.order, dtype=np.int64), workers)
    rows = []
    for part in _shard.map_shards(partial(_scan_shard, fs_n=fs_n, t=t, bs=bs, sub_trace=sub_trace,
                                          check_parseval=check_parseval), shards, workers):
        rows.extend(part)

    disagreements = []
    bent_census = {b: 0 for b in bs}
    k_census = {b: 0 for b in bs}
    parseval_failures = norm_failures = 0
    for la, b, regular, kside, parseval, in_sub in rows:
        bent_census[b] += regular
        k_census[b] += kside
        parseval_failures += not parseval
        norm_failures += not in_sub
        if regular != kside:
            disagreements.append({"a_exp": la, "b": b, "regular": regular, "kloosterman": kside})

    zero = []
    for b in bs:
        rep = is_regular_bent(fs_n, 0, b, t)
        zero.append({"b": b, "regular": rep.regular, "kloosterman": rep.kloosterman_side})

    return ScanSummary(
        p=p, m=m, t=t, variant=variant, pairs=len(rows),
        agreements=len(rows) - len(disagreements), disagreements=disagreements,
        bent_census=bent_census, kloosterman_census=k_census,
        parseval_failures=parseval_failures, norm_failures=norm_failures,
        zero_bucket=zero, timing=time.perf_counter() - start,
    )

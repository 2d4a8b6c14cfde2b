"""Finite fields F_p and F_{p^m} for odd p.

Elements are plain Python ints: the coefficient vector (c_0, ..., c_{m-1})
of an element in the power basis of the modulus root is encoded as
c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  So 0 and 1 are the field's zero and
one, the prime subfield is 0..p-1, and the modulus root beta is ``p``
(for m >= 2).

Discrete-log, exponential and trace tables are built lazily and only for
q <= TABLE_CAP; above that every operation is computed on the fly.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _kernels

TABLE_CAP = 1 << 24


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def factorint(n: int) -> dict[int, int]:
    out = {}
    for d in prime_factors(abs(n)):
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        out[d] = e
    return out


# -- polynomials over F_p, coefficient lists low degree first ----------------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b, p):
    a = _trim(x % p for x in a)
    b = _trim(x % p for x in b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(b[-1], -1, p)
    quot = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        quot[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return quot, a


def _poly_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _poly_divmod(prod, mod, p)[1]


def _poly_powmod(a, e, mod, p):
    result = [1]
    base = _poly_divmod(a, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(x % p for x in a), _trim(x % p for x in b)
    while b:
        a, b = b, _poly_divmod(a, b, p)[1]
    return a


def smallest_factor_degree(f, p):
    """Degree of the smallest irreducible factor of f over F_p (f monic)."""
    n = len(f) - 1
    x = [0, 1]
    xp = x
    for d in range(1, n // 2 + 1):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, diff, p)
        if len(g) > 1:
            return d
    return n


def is_irreducible(f, p) -> bool:
    return smallest_factor_degree(f, p) == len(f) - 1


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m >= 2.

    Coefficient tuples (c_0, ..., c_{m-1}) are compared c_0 first.
    """
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


def primitive_root(p: int) -> int:
    factors = prime_factors(p - 1)
    for g in range(1, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise FieldError(f"{p} has no primitive root")  # pragma: no cover


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FieldSpec:
    """A concrete F_{p^m}: modulus (low degree first, monic) and a generator."""

    p: int
    m: int
    modulus: tuple[int, ...]
    generator: int

    @property
    def q(self) -> int:
        return self.p ** self.m

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def has_tables(self) -> bool:
        return self.q <= TABLE_CAP

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.m, self.modulus, self.generator) == (
            other.p, other.m, other.modulus, other.generator)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus, self.generator))

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={list(self.modulus)}, generator={self.generator})"

    def __getstate__(self):
        # tables are rebuilt lazily on the other side of a process boundary
        return {k: self.__dict__[k] for k in ("p", "m", "modulus", "generator")}

    def __setstate__(self, state):
        self.__dict__.update(state)

    # encoding -------------------------------------------------------------

    def coeffs(self, x: int) -> list[int]:
        out = []
        for _ in range(self.m):
            x, r = divmod(x, self.p)
            out.append(r)
        return out

    def element(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) != self.m:
            raise FieldError(f"expected {self.m} coefficients, got {len(coeffs)}")
        x = 0
        for c in reversed(coeffs):
            x = x * self.p + (int(c) % self.p)
        return x

    def check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise FieldError(f"{x} does not encode an element of F_{self.p}^{self.m}")
        return x

    def embed(self, c: int) -> int:
        """The prime-field element c mod p."""
        return c % self.p

    # additive structure ---------------------------------------------------

    def add(self, x: int, y: int) -> int:
        p = self.p
        out, scale = 0, 1
        while x or y:
            x, a = divmod(x, p)
            y, b = divmod(y, p)
            out += ((a + b) % p) * scale
            scale *= p
        return out

    def neg(self, x: int) -> int:
        return self.scale(-1, x)

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def scale(self, c: int, x: int) -> int:
        return self.element([c * a for a in self.coeffs(x)])

    # multiplicative structure ---------------------------------------------

    def _mul_poly(self, x: int, y: int) -> int:
        r = _poly_mulmod(self.coeffs(x), self.coeffs(y), list(self.modulus), self.p)
        return self.element(r + [0] * (self.m - len(r)))

    def _pow_poly(self, x: int, e: int) -> int:
        r = _poly_powmod(self.coeffs(x), e, list(self.modulus), self.p)
        return self.element(r + [0] * (self.m - len(r)))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.has_tables:
            return int(self.exp[(self.log[x] + self.log[y]) % self.order])
        return self._mul_poly(x, y)

    def pow(self, x: int, e: int) -> int:
        """x^e for e >= 0, with 0^0 = 1 and 0^e = 0 otherwise."""
        if e < 0:
            return self.pow(self.inv(x), -e)
        if x == 0:
            return 1 if e == 0 else 0
        if self.has_tables:
            return int(self.exp[(int(self.log[x]) * e) % self.order])
        return self._pow_poly(x, e % self.order)

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(x, self.q - 2)

    def inv_map(self, x: int) -> int:
        """x^(q-2): the inverse on F_q^* extended by 0 -> 0."""
        return 0 if x == 0 else self.inv(x)

    def dlog(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("discrete log of zero")
        if not self.has_tables:
            raise FieldError("dlog needs tables; field too large")
        return int(self.log[x])

    def gen_pow(self, k: int) -> int:
        return self.pow(self.generator, k % self.order)

    def frobenius(self, x: int, times: int = 1) -> int:
        return self.pow(x, self.p ** (times % self.m)) if x else 0

    def trace_direct(self, x: int) -> int:
        """Sum of the m conjugates x^(p^i), computed by repeated p-th powers."""
        total, y = 0, x
        for _ in range(self.m):
            total = self.add(total, y)
            y = self._pow_poly(y, self.p) if y else 0
        if total >= self.p:
            raise FieldError("trace left the prime field")  # pragma: no cover
        return total

    def trace(self, x: int) -> int:
        if self.has_tables:
            return int(self.trace_table[x])
        return self.trace_direct(x)

    def power_traces(self, x: int, kmax: int) -> list[int]:
        """(Tr(x), Tr(x^2), ..., Tr(x^kmax))."""
        if kmax < 1:
            raise FieldError("kmax must be >= 1")
        if x == 0:
            return [0] * kmax
        if self.has_tables:
            lx = int(self.log[x])
            return [int(self.trace_by_log[(k * lx) % self.order]) for k in range(1, kmax + 1)]
        out, y = [], 1
        for _ in range(kmax):
            y = self._mul_poly(y, x)
            out.append(self.trace_direct(y))
        return out

    def elements(self):
        return range(self.q)

    def subfield_elements(self, s: int) -> list[int]:
        """Elements of the subfield F_{p^s}, s | m, in increasing encoding."""
        if self.m % s:
            raise FieldError(f"{s} does not divide {self.m}")
        if s == self.m:
            return list(range(self.q))
        step = self.order // (self.p ** s - 1)
        return sorted([0] + [int(self.exp[(k * step) % self.order]) for k in range(self.p ** s - 1)])

    # tables ---------------------------------------------------------------

    @cached_property
    def mulmat(self) -> np.ndarray:
        """Matrix of multiplication by the generator on coefficient vectors."""
        cols = []
        for i in range(self.m):
            basis = [0] * self.m
            basis[i] = 1
            cols.append(self.coeffs(self._mul_poly(self.element(basis), self.generator)))
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def exp(self) -> np.ndarray:
        if not self.has_tables:
            raise FieldError("field too large for tables")
        return _kernels.exp_table(self.mulmat, self.p, self.q)

    @cached_property
    def log(self) -> np.ndarray:
        """log[x] = k with generator^k = x; log[0] = -1."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp] = np.arange(self.order, dtype=np.int64)
        return out

    @cached_property
    def trace_basis(self) -> list[int]:
        out = []
        for i in range(self.m):
            basis = [0] * self.m
            basis[i] = 1
            out.append(self.trace_direct(self.element(basis)))
        return out

    @cached_property
    def trace_table(self) -> np.ndarray:
        """trace_table[x] = Tr(x) for every encoded x, by linearity."""
        if not self.has_tables:
            raise FieldError("field too large for tables")
        x = np.arange(self.q, dtype=np.int64)
        out = np.zeros(self.q, dtype=np.int64)
        for t in self.trace_basis:
            out += t * (x % self.p)
            x //= self.p
        return out % self.p

    @cached_property
    def trace_by_log(self) -> np.ndarray:
        """trace_by_log[k] = Tr(generator^k)."""
        return self.trace_table[self.exp]

    # serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}


def make_field(p: int, m: int, modulus=None, generator: int | None = None) -> FieldSpec:
    """Build and validate F_{p^m}.

    Without a modulus, m = 1 uses x - g for the smallest primitive root g and
    m >= 2 uses the lexicographically smallest irreducible.  Without a
    generator, the smallest encoded element of order q - 1 is chosen.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if m < 1:
        raise FieldError("degree must be >= 1")
    if modulus is None:
        if m == 1:
            modulus = ((-primitive_root(p)) % p, 1)
        else:
            modulus = smallest_irreducible(p, m)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != m + 1 or modulus[-1] != 1:
        raise FieldError(f"modulus must be monic of degree {m}: {list(modulus)}")
    d = smallest_factor_degree(list(modulus), p)
    if d != m:
        raise FieldError(f"modulus {list(modulus)} is reducible: it has a factor of degree {d}")

    q = p ** m
    factors = prime_factors(q - 1)
    probe = FieldSpec(p, m, modulus, 1)

    def is_generator(g):
        return g != 0 and all(probe._pow_poly(g, (q - 1) // r) != 1 for r in factors)

    if generator is None:
        generator = next(g for g in range(1, q) if is_generator(g))
    elif not (0 <= generator < q and is_generator(generator)):
        raise FieldError(f"{generator} does not generate F_{p}^{m}*")
    return FieldSpec(p, m, modulus, int(generator))


def load_field(source) -> FieldSpec:
    """Field from a dict or a JSON file with keys p, m, modulus."""
    if isinstance(source, (str, Path)):
        source = json.loads(Path(source).read_text())
    return make_field(int(source["p"]), int(source["m"]), source.get("modulus"))


def dump_field(fs: FieldSpec, path) -> None:
    Path(path).write_text(json.dumps(fs.to_dict(), sort_keys=True) + "\n")


"""Truncated arithmetic in Z_p[pi] / (pi^(p-1) + p) and in unramified lifts.

A RamifiedElem stores coordinates c_0..c_{p-2} in the basis 1, pi, ...,
pi^(p-2) with every c_j taken mod p^K, which is the same as working mod
pi^(K(p-1)).  ``N <= K(p-1)`` records how many pi-adic digits of the value
are actually meaningful; equality and digit extraction respect it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def precision_for(p: int, N: int) -> int:
    """Smallest K with K(p-1) >= N."""
    return max(1, -(-N // (p - 1)))


def teichmuller(u: int, p: int, K: int) -> int:
    """The (p-1)-st root of unity (or 0) in Z/p^K congruent to u mod p."""
    mod = p ** K
    x = u % p
    for _ in range(K):
        x = pow(x, p, mod)
    return x


def _as_residue(c, mod):
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, mod) % mod
    return int(c) % mod


class RamifiedElem:
    __slots__ = ("p", "K", "N", "coeffs")

    def __init__(self, p: int, K: int, coeffs, N: int | None = None):
        mod = p ** K
        coeffs = [_as_residue(c, mod) for c in coeffs]
        if len(coeffs) > p - 1:
            raise ValueError(f"expected at most {p - 1} coordinates")
        coeffs += [0] * (p - 1 - len(coeffs))
        self.p, self.K = p, K
        self.N = K * (p - 1) if N is None else min(N, K * (p - 1))
        self.coeffs = tuple(coeffs)

    # constructors ---------------------------------------------------------

    @classmethod
    def scalar(cls, p, K, c, N=None):
        return cls(p, K, [c], N)

    @classmethod
    def pi_power(cls, p, K, e, N=None):
        """pi^e, folding pi^(p-1) = -p."""
        t, s = divmod(e, p - 1)
        coeffs = [0] * (p - 1)
        coeffs[s] = (-p) ** t
        return cls(p, K, coeffs, N)

    @classmethod
    def from_digits(cls, p, K, digits, N=None):
        total = cls(p, K, [], N)
        for i, d in enumerate(digits):
            if d:
                total = total + cls.pi_power(p, K, i) * d
        if N is not None:
            total.N = min(total.N, N)
        return total

    # arithmetic -----------------------------------------------------------

    @property
    def modulus(self) -> int:
        return self.p ** self.K

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return RamifiedElem.scalar(self.p, self.K, other)
        if not isinstance(other, RamifiedElem) or other.p != self.p:
            raise TypeError("operands live in different rings")
        if other.K != self.K:
            other = other.with_precision(self.K)
        return other

    def with_precision(self, K: int) -> "RamifiedElem":
        out = RamifiedElem(self.p, K, self.coeffs)
        out.N = min(self.N, out.N)
        return out

    def truncate(self, N: int) -> "RamifiedElem":
        out = RamifiedElem(self.p, self.K, self.coeffs, min(N, self.N))
        return out

    def __add__(self, other):
        other = self._check(other)
        return RamifiedElem(self.p, self.K, [a + b for a, b in zip(self.coeffs, other.coeffs)],
                            min(self.N, other.N))

    __radd__ = __add__

    def __neg__(self):
        return RamifiedElem(self.p, self.K, [-a for a in self.coeffs], self.N)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_residue(other, self.modulus)
            return RamifiedElem(self.p, self.K, [c * a for a in self.coeffs], self.N)
        other = self._check(other)
        p, n = self.p, self.p - 1
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        if k >= n:
                            out[k - n] -= p * a * b
                        else:
                            out[k] += a * b
        # a product is as precise as its least precise factor, shifted by the
        # valuation of the other factor; the plain minimum is a safe bound
        return RamifiedElem(p, self.K, out, min(self.N, other.N))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.invert_unit() ** (-e)
        result = RamifiedElem.scalar(self.p, self.K, 1, self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def valuation(self) -> int:
        """pi-adic valuation, capped at N."""
        best = self.N
        p = self.p
        for j, c in enumerate(self.coeffs):
            if c:
                v = 0
                while c % p == 0:
                    c //= p
                    v += 1
                best = min(best, v * (p - 1) + j)
        return best

    def is_unit(self) -> bool:
        return self.coeffs[0] % self.p != 0

    def invert_unit(self) -> "RamifiedElem":
        if not self.is_unit():
            raise ZeroDivisionError("element is not a unit")
        x = RamifiedElem.scalar(self.p, self.K, pow(self.coeffs[0], -1, self.modulus), self.N)
        # Newton: each step doubles the number of correct pi-adic digits
        correct = 1
        while correct < self.K * (self.p - 1):
            x = x * (2 - self * x)
            correct *= 2
        x.N = self.N
        return x

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RamifiedElem.scalar(self.p, self.K, other)
        if not isinstance(other, RamifiedElem):
            return NotImplemented
        if other.p != self.p:
            return False
        return (self - other).valuation() >= min(self.N, other.N)

    def __hash__(self):
        raise TypeError("RamifiedElem is unhashable (equality is up to precision)")

    def __repr__(self):
        return f"RamifiedElem(p={self.p}, K={self.K}, N={self.N}, coeffs={list(self.coeffs)})"

    def to_dict(self) -> dict:
        return {"p": self.p, "K": self.K, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class DigitExpansion:
    """Teichmuller digits a_0, a_1, ... of a ramified element (values in Z/p^K)."""

    p: int
    K: int
    digits: tuple[int, ...]

    def residues(self) -> list[int]:
        return [d % self.p for d in self.digits]

    def signed(self) -> list[int]:
        """Residues mod p shifted into (-p/2, p/2]."""
        half = self.p // 2
        return [r - self.p if r > half else r for r in self.residues()]

    def value(self) -> RamifiedElem:
        return RamifiedElem.from_digits(self.p, self.K, self.digits, len(self.digits))

    def __len__(self):
        return len(self.digits)

    def __getitem__(self, i):
        return self.digits[i]


def digits(e: RamifiedElem, count: int | None = None) -> DigitExpansion:
    """Greedy Teichmuller-digit extraction of the first ``count`` digits.

    Each step takes the Teichmuller lift of the constant coordinate mod p,
    subtracts it and divides by pi (pi^(p-1) = -p turns the constant term
    c_0 = p*u into -u at pi^(p-2)).
    """
    p, K = e.p, e.K
    count = e.N if count is None else count
    mod = p ** K
    c = list(e.coeffs)
    out = []
    for _ in range(count):
        d = teichmuller(c[0], p, K)
        out.append(d)
        u = (c[0] - d) % mod
        assert u % p == 0
        c = c[1:] + [(-(u // p)) % mod]
    return DigitExpansion(p, K, tuple(out))


def sigma_apply(e: RamifiedElem, i: int) -> RamifiedElem:
    """sigma_i: fixes Z_p, sends pi to omega(i) * pi."""
    p = e.p
    if i % p == 0:
        raise ValueError(f"sigma_{i} is undefined for p = {p}")
    w = teichmuller(i, p, e.K)
    mod = e.modulus
    return RamifiedElem(p, e.K, [c * pow(w, j, mod) for j, c in enumerate(e.coeffs)], e.N)


@lru_cache(maxsize=None)
def _zeta_digits(p: int, N: int) -> tuple[int, ...]:
    # Solve for the digits of the root of z^p = 1 with z = 1 + pi mod pi^2.
    # If z^p - 1 = e*pi^(p+i) mod pi^(p+i+1), then z + omega(e)*pi^(i+1) kills
    # that term, because p*pi^(i+1) = -pi^(p+i).
    Kw = precision_for(p, p + N) + 1
    ds = [1, 1]
    z = RamifiedElem.from_digits(p, Kw, ds)
    for i in range(1, N - 1):
        r = z ** p - 1
        v = p + i
        if r.valuation() < v:
            raise ArithmeticError(f"zeta root-finding lost precision at digit {i + 1}")
        lead = digits(r, v + 1).digits[v]
        d = teichmuller(lead, p, Kw)
        ds.append(d)
        z = z + RamifiedElem.pi_power(p, Kw, i + 1) * d
    if (z ** p - 1).valuation() < p + N - 1:
        raise ArithmeticError("zeta expansion failed to converge")  # pragma: no cover
    return tuple(ds[:N])


def zeta_expansion(p: int, N: int) -> RamifiedElem:
    """zeta mod pi^N, normalised by zeta = 1 + pi mod pi^2."""
    if N < 2:
        raise ValueError("need N >= 2 to pin down zeta = 1 + pi")
    K = precision_for(p, N)
    return RamifiedElem.from_digits(p, K, _zeta_digits(p, N), N)


def special_value_expansion(p: int, b: int, N: int) -> RamifiedElem:
    """1 - 2/(zeta^b + zeta^-b) mod pi^N."""
    b %= p
    if b == 0:
        raise ValueError("b must be nonzero mod p")
    z = zeta_expansion(p, N)
    s = z ** b + z ** (p - b)
    return 1 - s.invert_unit() * 2


def zeta_sum_expansion(p: int, b: int, N: int) -> RamifiedElem:
    """zeta^b + zeta^-b mod pi^N."""
    z = zeta_expansion(p, N)
    return z ** (b % p) + z ** ((-b) % p)


# -- unramified extension ----------------------------------------------------

class UnramifiedElem:
    """Element of (Z/p^K)[y] / h(y), h a monic integer lift of the field modulus."""

    __slots__ = ("p", "K", "h", "coeffs")

    def __init__(self, p: int, K: int, h, coeffs):
        mod = p ** K
        m = len(h) - 1
        coeffs = [int(c) % mod for c in coeffs]
        coeffs += [0] * (m - len(coeffs))
        self.p, self.K, self.h = p, K, tuple(h)
        self.coeffs = tuple(coeffs)

    @property
    def m(self):
        return len(self.h) - 1

    def __add__(self, other):
        return UnramifiedElem(self.p, self.K, self.h, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if isinstance(other, int):
            return UnramifiedElem(self.p, self.K, self.h, [other * a for a in self.coeffs])
        m, mod = self.m, self.p ** self.K
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        for k in range(len(prod) - 1, m - 1, -1):
            c = prod[k] % mod
            if c:
                for i in range(m):
                    prod[k - m + i] -= c * self.h[i]
        return UnramifiedElem(self.p, self.K, self.h, prod[:m])

    def __pow__(self, e: int):
        result = UnramifiedElem(self.p, self.K, self.h, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        return isinstance(other, UnramifiedElem) and (self.p, self.K, self.h, self.coeffs) == (
            other.p, other.K, other.h, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.K, self.h, self.coeffs))

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])

    def reduce(self) -> list[int]:
        return [c % self.p for c in self.coeffs]

    def __repr__(self):
        return f"UnramifiedElem(p={self.p}, K={self.K}, coeffs={list(self.coeffs)})"


def unramified_lift(fs, x: int, K: int) -> UnramifiedElem:
    """The naive lift of an F_q element: coefficients copied into [0, p)."""
    return UnramifiedElem(fs.p, K, fs.modulus, fs.coeffs(x))


def teichmuller_lift(u, K: int, *, p: int | None = None, fs=None):
    """omega(u): a scalar in Z/p^K (pass ``p``), or an UnramifiedElem (pass ``fs``).

    Computed as the fixed point of x -> x^q starting from the naive lift;
    K iterations are enough since each one fixes one more p-adic digit.
    """
    if fs is None:
        if p is None:
            raise TypeError("teichmuller_lift needs either p or fs")
        return teichmuller(u, p, K)
    x = unramified_lift(fs, u, K)
    for _ in range(K):
        x = x ** fs.q
    return x


def lifted_trace(fs, a: int, k: int, K: int) -> int:
    """sum_i omega(a^k)^(p^i) in Z/p^K."""
    w = teichmuller_lift(fs.pow(a, k), K, fs=fs)
    total = UnramifiedElem(fs.p, K, fs.modulus, [])
    for _ in range(fs.m):
        total = total + w
        w = w ** fs.p
    if not total.is_scalar():
        raise ArithmeticError(f"lifted trace is not in Z/p^{K}: {total}")
    return total.coeffs[0]

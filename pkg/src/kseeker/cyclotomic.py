"""Exact arithmetic in Z[zeta_p].

An element is stored by its coordinates in the basis 1, zeta, ..., zeta^(p-2)
after reduction modulo 1 + x + ... + x^(p-1), so equality is coordinate-wise.
Coordinates are Python ints; nothing here is ever reduced modulo anything.
"""
from __future__ import annotations

from .fields import is_prime


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) == p:
            top = coeffs[-1]
            coeffs = tuple(c - top for c in coeffs[:-1])
        if len(coeffs) != p - 1:
            raise ValueError(f"Z[zeta_{p}] needs {p - 1} coordinates, got {len(coeffs)}")
        self.p = p
        self.coeffs = coeffs

    @classmethod
    def integer(cls, p: int, n: int) -> "CycInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        v = [0] * p
        v[k % p] = 1
        return cls(p, v)

    def full(self) -> list[int]:
        """Length-p exponent vector (last entry 0) representing self."""
        return list(self.coeffs) + [0]

    def _same(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        if not isinstance(other, CycInt) or other.p != self.p:
            raise TypeError("operands live in different cyclotomic rings")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __add__(self, other):
        other = self._same(other)
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [other * a for a in self.coeffs])
        other = self._same(other)
        p = self.p
        out = [0] * p
        b = other.coeffs
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[(i + j) % p] += ai * bj
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not defined in Z[zeta]")
        result, base = CycInt.integer(self.p, 1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def galois(self, i: int) -> "CycInt":
        """Image under zeta -> zeta^i."""
        p = self.p
        if i % p == 0:
            raise ValueError(f"sigma_{i} is not an automorphism of Q(zeta_{p})")
        out = [0] * p
        for j, c in enumerate(self.full()):
            out[(j * i) % p] += c
        return CycInt(p, out)

    def conj(self) -> "CycInt":
        return self.galois(-1)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def from_exponent_counts(p: int, counts) -> CycInt:
    """sum_c counts[c] * zeta^c."""
    counts = [int(c) for c in counts]
    if len(counts) != p:
        raise ValueError(f"expected {p} exponent counts, got {len(counts)}")
    return CycInt(p, counts)


def galois(e: CycInt, i: int) -> CycInt:
    return e.galois(i)


def special_value(p: int, b: int) -> CycInt:
    """1 - 2/(zeta^b + zeta^-b) as an element of Z[zeta].

    For b != 0, (1 + zeta^c) * sum_k (-1)^k zeta^(ck) = 2 with c = 2b and k
    running over 0..p-1, so 2 zeta^b / (1 + zeta^(2b)) is integral.
    For b = 0 the value is 0.
    """
    b %= p
    if b == 0:
        return CycInt.integer(p, 0)
    v = [0] * p
    v[0] += 1
    for k in range(p):
        v[(b + 2 * b * k) % p] -= (-1) ** k
    return CycInt(p, v)


def is_special_value(K: CycInt, b: int) -> bool:
    """Whether K == 1 - 2/(zeta^b + zeta^-b) exactly."""
    p = K.p
    if b % p == 0:
        return K.is_zero()
    s = CycInt.zeta(p, b) + CycInt.zeta(p, -b)
    return (s * (K - 1) + 2).is_zero()


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def special_value_norm(p: int) -> int:
    """The exact product over i = 1..(p-1)/2 of 1 - 2/(zeta^i + zeta^-i)."""
    prod = CycInt.integer(p, 1)
    for i in range(1, (p - 1) // 2 + 1):
        prod = prod * special_value(p, i)
    if not prod.is_rational():
        raise ArithmeticError(f"product of special values is not rational: {prod}")
    return prod.coeffs[0]


def special_value_product(p: int, allow_small: bool = False) -> tuple[int, int]:
    """(product mod p^2, (-2/p) * p mod p^2)."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    if p <= 11 and not allow_small:
        raise ValueError(f"p = {p} is outside stated range (p > 11)")
    p2 = p * p
    return special_value_norm(p) % p2, (legendre(-2, p) * p) % p2

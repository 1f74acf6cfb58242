"""Exact arithmetic: rationals, the cyclotomic field Q(zeta_N), Bernoulli values.

Rationals are plain :class:`fractions.Fraction` objects.  Elements of Q(zeta_N)
are stored in the power basis 1, zeta, ..., zeta^(phi(N)-1), i.e. reduced modulo
the N-th cyclotomic polynomial, so equality is coefficient equality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Rat = Fraction

__all__ = [
    "Rat",
    "CycElem",
    "bernoulli",
    "frac_part",
    "extended_gcd",
    "cyclotomic_poly",
    "euler_phi",
    "zeta_pow",
    "cyc_mul",
    "rat_to_str",
    "rat_from_str",
]


def frac_part(x) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def bernoulli(k: int, x) -> Fraction:
    """B_k(x) for k in {1, 2} and 0 <= x < 1."""
    x = Fraction(x)
    if k not in (1, 2):
        raise ValueError(f"bernoulli: k must be 1 or 2, got {k}")
    if not 0 <= x < 1:
        raise ValueError(f"bernoulli: argument {x} outside [0, 1)")
    if k == 1:
        return x - Fraction(1, 2)
    return x * x - x + Fraction(1, 6)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) > 0."""
    if a == 0 and b == 0:
        raise ValueError("extended_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_x, x = x, old_x - quo * x
        old_y, y = y, old_y - quo * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists are lowest degree first; den is monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic_poly needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Canonical coordinates of zeta_n^e for e = 0..2*phi(n) (covers any product)."""
    phi_poly = cyclotomic_poly(n)
    deg = len(phi_poly) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(max(2 * deg, n) + 1):
        rows.append(tuple(cur))
        # multiply by x and reduce with x^deg = -sum phi_i x^i
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi_poly[i]
    return tuple(rows)


class CycElem:
    """Element of Q(zeta_N) in canonical reduced power-basis form."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        deg = euler_phi(level)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) > deg:
            coeffs = _reduce(level, coeffs)
        elif len(coeffs) < deg:
            coeffs = coeffs + (Fraction(0),) * (deg - len(coeffs))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycElem is immutable")

    @classmethod
    def rational(cls, level: int, value) -> "CycElem":
        return cls(level, (Fraction(value),))

    @classmethod
    def zero(cls, level: int) -> "CycElem":
        return cls(level, ())

    @classmethod
    def from_powers(cls, level: int, vec) -> "CycElem":
        """Build sum_e vec[e] * zeta^e from a length-N vector indexed by exponent mod N."""
        table = _power_table(level)
        deg = euler_phi(level)
        out = [Fraction(0)] * deg
        for e, c in enumerate(vec):
            if c:
                row = table[e % level]
                for i in range(deg):
                    if row[i]:
                        out[i] += c * row[i]
        return cls(level, out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def _check(self, other: "CycElem"):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def _coerce(self, other):
        if isinstance(other, CycElem):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycElem.rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElem(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.level, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycElem(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, CycElem):
            return NotImplemented
        return cyc_mul(self, other)

    __rmul__ = __mul__

    def scale(self, r) -> "CycElem":
        r = Fraction(r)
        return CycElem(self.level, [a * r for a in self.coeffs])

    def inverse(self) -> "CycElem":
        """Multiplicative inverse via linear algebra on the multiplication map."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if self.is_rational():
            return CycElem.rational(self.level, 1 / self.coeffs[0])
        n = self.level
        deg = len(self.coeffs)
        basis = [zeta_pow(n, i) for i in range(deg)]
        # column i = coordinates of self * zeta^i
        cols = [cyc_mul(self, b).coeffs for b in basis]
        mat = [[cols[j][i] for j in range(deg)] + [Fraction(int(i == 0))] for i in range(deg)]
        sol = _solve(mat, deg)
        return CycElem(n, sol)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        self._check(other)
        return cyc_mul(self, other.inverse())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __repr__(self):
        return f"CycElem({self.level}, {self})"

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list[str]:
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, level: int, data) -> "CycElem":
        if len(data) != euler_phi(level):
            raise ValueError("CycElem JSON has wrong length for its level")
        return cls(level, [rat_from_str(s) for s in data])


def _solve(aug: list[list[Fraction]], n: int) -> list[Fraction]:
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _reduce(level: int, coeffs) -> tuple[Fraction, ...]:
    table = _power_table(level)
    deg = euler_phi(level)
    if len(coeffs) > len(table):
        raise ValueError("polynomial degree too large to reduce")
    out = [Fraction(0)] * deg
    for e, c in enumerate(coeffs):
        if c:
            row = table[e]
            for i in range(deg):
                if row[i]:
                    out[i] += c * row[i]
    return tuple(out)


def cyc_mul(a: CycElem, b: CycElem) -> CycElem:
    if a.level != b.level:
        raise ValueError(f"level mismatch: {a.level} vs {b.level}")
    if a.is_rational():
        return b.scale(a.coeffs[0])
    if b.is_rational():
        return a.scale(b.coeffs[0])
    deg = len(a.coeffs)
    prod = [Fraction(0)] * (2 * deg - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                if y:
                    prod[i + j] += x * y
    return CycElem(a.level, _reduce(a.level, prod))


def zeta_pow(n: int, e: int) -> CycElem:
    if n < 1:
        raise ValueError("zeta_pow needs N >= 1")
    return CycElem(n, _power_table(n)[e % n])


def rat_to_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den) if den else 1)

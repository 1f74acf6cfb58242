"""Truncated q-expansions in powers of q^(1/N) with coefficients in Q(zeta_N).

A term ``c * q^(e/N)`` is stored under the integer key ``e``.  ``prec`` is the
exponent-numerator cutoff: every coefficient with ``e < prec`` is exact, nothing
at or beyond ``prec`` is known.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .exactcore import CycElem

__all__ = ["QSeries", "add", "mul", "invert", "q_ddq"]


class QSeries:
    __slots__ = ("level", "prec", "terms")

    def __init__(self, level: int, terms, prec: int):
        if prec <= 0:
            raise ValueError("QSeries precision must be positive")
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for e, c in items:
            if not isinstance(c, CycElem):
                c = CycElem.rational(level, c)
            elif c.level != level:
                raise ValueError("coefficient level differs from series level")
            if e < 0:
                raise ValueError("negative exponents are not supported")
            if e < prec and not c.is_zero():
                clean[e] = c
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    @classmethod
    def zero(cls, level: int, prec: int) -> "QSeries":
        return cls(level, {}, prec)

    @classmethod
    def one(cls, level: int, prec: int) -> "QSeries":
        return cls(level, {0: 1}, prec)

    @classmethod
    def monomial(cls, level: int, e: int, coeff, prec: int) -> "QSeries":
        return cls(level, {e: coeff}, prec)

    def __getitem__(self, e: int) -> CycElem:
        if e >= self.prec:
            raise IndexError(f"coefficient q^({e}/{self.level}) is beyond precision {self.prec}")
        return self.terms.get(e, CycElem.zero(self.level))

    def coeff(self, e: int):
        """Coefficient of q^(e/N); returned as a Fraction when it is rational."""
        c = self[e]
        return c.to_rational() if c.is_rational() else c

    def valuation(self) -> int:
        return next(iter(self.terms), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self.level, self.terms, min(prec, self.prec))

    def _check(self, other: "QSeries"):
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {type(other).__name__}")
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, CycElem)):
            other = QSeries(self.level, {0: other}, self.prec)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.level, {e: -c for e, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, CycElem)):
            other = QSeries(self.level, {0: other}, self.prec)
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycElem)):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        return QSeries(self.level, {e: v * c for e, v in self.terms.items()}, self.prec)

    def rescale(self, factor: int) -> "QSeries":
        """Substitute tau -> factor*tau (exponent numerators and precision scale)."""
        return QSeries(self.level, {e * factor: c for e, c in self.terms.items()}, self.prec * factor)

    def __eq__(self, other):
        """Equality up to the common precision."""
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.level != other.level:
            return False
        p = min(self.prec, other.prec)
        a = {e: c for e, c in self.terms.items() if e < p}
        b = {e: c for e, c in other.terms.items() if e < p}
        return a == b

    __hash__ = None

    def first_difference(self, other: "QSeries"):
        """Smallest exponent numerator where the two series differ, or None."""
        self._check(other)
        p = min(self.prec, other.prec)
        keys = sorted(set(self.terms) | set(other.terms))
        for e in keys:
            if e >= p:
                break
            if self[e] != other[e]:
                return e
        return None

    def __repr__(self):
        return f"QSeries(N={self.level}, prec={self.prec}, {self.format()})"

    def format(self, integral: bool = False) -> str:
        """Human readable text; ``integral`` writes q^(e/N) as q^(e//N) (requires N | e)."""
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms.items():
            if integral:
                if e % self.level:
                    raise ValueError("series has non-integral exponents")
                x = e // self.level
                mono = "" if x == 0 else ("q" if x == 1 else f"q^{x}")
            else:
                x = Fraction(e, self.level)
                mono = "" if e == 0 else ("q" if x == 1 else f"q^({x})")
            s = str(c)
            if not c.is_rational() and mono:
                s = f"({s})"
            if not mono:
                out.append(s)
            elif s == "1":
                out.append(mono)
            elif s == "-1":
                out.append("-" + mono)
            else:
                out.append(f"{s}*{mono}")
        return " + ".join(out).replace("+ -", "- ")

    def to_dict(self) -> dict:
        return {
            "N": self.level,
            "prec": self.prec,
            "terms": [{"e": e, "c": c.to_json()} for e, c in self.terms.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "QSeries":
        n = int(data["N"])
        terms = {int(t["e"]): CycElem.from_json(n, t["c"]) for t in data["terms"]}
        return cls(n, terms, int(data["prec"]))

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        return cls.from_dict(json.loads(text))


def add(a: QSeries, b: QSeries) -> QSeries:
    a._check(b)
    p = min(a.prec, b.prec)
    out = {e: c for e, c in a.terms.items() if e < p}
    for e, c in b.terms.items():
        if e >= p:
            break
        out[e] = out[e] + c if e in out else c
    return QSeries(a.level, out, p)


def mul(a: QSeries, b: QSeries) -> QSeries:
    a._check(b)
    p = min(a.prec + b.valuation(), b.prec + a.valuation())
    out: dict = {}
    bt = list(b.terms.items())
    for ea, ca in a.terms.items():
        if ea >= p:
            break
        for eb, cb in bt:
            e = ea + eb
            if e >= p:
                break
            v = ca * cb
            out[e] = out[e] + v if e in out else v
    return QSeries(a.level, out, p)


def invert(a: QSeries) -> QSeries:
    c0 = a.terms.get(0)
    if c0 is None:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = c0.inverse()
    tail = [(e, c) for e, c in a.terms.items() if e > 0]
    out = {0: inv0}
    for e in range(1, a.prec):
        acc = None
        for j, cj in tail:
            if j > e:
                break
            prev = out.get(e - j)
            if prev is not None:
                v = cj * prev
                acc = v if acc is None else acc + v
        if acc is not None and not acc.is_zero():
            out[e] = -(acc * inv0)
    return QSeries(a.level, out, a.prec)


def q_ddq(a: QSeries) -> QSeries:
    n = a.level
    return QSeries(n, {e: c.scale(Fraction(e, n)) for e, c in a.terms.items()}, a.prec)

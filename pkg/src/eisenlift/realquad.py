"""Real-quadratic data attached to a hyperbolic element of Gamma1(N)."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional
from fractions import Fraction
from math import gcd, isqrt

from .modsym import MatZ, classify, in_gamma1
from .qseries import QSeries
from .thetalift import lift_cycle

__all__ = [
    "QuadInt",
    "QuadraticData",
    "DiagonalRestriction",
    "quad_invariants",
    "fundamental_unit",
    "fundamental_unit_bruteforce",
    "unit_matrix",
    "primitivity",
    "quad_data",
    "diagonal_restriction",
]


@dataclass(frozen=True)
class QuadInt:
    """(t + s*sqrt(D)) / 2."""

    t: int
    s: int
    D: int

    def __mul__(self, o: "QuadInt") -> "QuadInt":
        if o.D != self.D:
            raise ValueError("discriminant mismatch")
        t = (self.t * o.t + self.D * self.s * o.s) // 2
        s = (self.t * o.s + self.s * o.t) // 2
        return QuadInt(t, s, self.D)

    def __pow__(self, k: int) -> "QuadInt":
        out = QuadInt(2, 0, self.D)
        for _ in range(k):
            out = out * self
        return out

    def norm(self) -> Fraction:
        return Fraction(self.t * self.t - self.D * self.s * self.s, 4)

    def conj(self) -> "QuadInt":
        return QuadInt(self.t, -self.s, self.D)

    def is_totally_positive(self) -> bool:
        # both t +- s sqrt(D) positive
        return self.t > 0 and self.t * self.t > self.D * self.s * self.s

    def to_list(self) -> list[int]:
        return [self.t, self.s]

    def __str__(self):
        return f"({self.t} + {self.s}*sqrt({self.D}))/2"


@dataclass(frozen=True)
class QuadraticData:
    D: int  # tr^2 - 4
    form: tuple[int, int, int]  # primitive (A, B, C) with root nu
    Delta: int
    eps: QuadInt  # eigenvalue, in terms of sqrt(D)
    eps0: QuadInt  # fundamental totally positive unit, in terms of sqrt(Delta)
    nu: tuple[Fraction, Fraction]  # nu = x + y*sqrt(D)
    m: int = 0
    k: int = 0
    primitive: bool = False
    gamma1: Optional[MatZ] = None

    def to_dict(self) -> dict:
        out = {
            "D": self.D,
            "form": list(self.form),
            "Delta": self.Delta,
            "eps": self.eps.to_list(),
            "eps0": self.eps0.to_list(),
            "nu": [str(self.nu[0]), str(self.nu[1])],
            "m": self.m,
            "k": self.k,
            "primitive": self.primitive,
        }
        if self.gamma1 is not None:
            out["gamma1"] = str(self.gamma1)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "QuadraticData":
        return cls(
            D=d["D"],
            form=tuple(d["form"]),
            Delta=d["Delta"],
            eps=QuadInt(*d["eps"], d["D"]),
            eps0=QuadInt(*d["eps0"], d["Delta"]),
            nu=(Fraction(d["nu"][0]), Fraction(d["nu"][1])),
            m=d["m"],
            k=d["k"],
            primitive=d["primitive"],
            gamma1=MatZ.parse(d["gamma1"]) if "gamma1" in d else None,
        )


def _require_hyperbolic(g: MatZ, N: int):
    if not in_gamma1(g, N):
        raise ValueError(f"{g} is not in Gamma1({N})")
    if classify(g) != "hyperbolic":
        raise ValueError(f"{g} is not hyperbolic")


def _form(g: MatZ) -> tuple[int, int, int]:
    A, B, C = g.c, g.d - g.a, -g.b
    content = gcd(gcd(A, B), C)
    return A // content, B // content, C // content


def fundamental_unit(Delta: int) -> QuadInt:
    """Least (t, s), s > 0, with t^2 - Delta s^2 = 4: the generator of totally positive units.

    Walks the regular continued fraction of omega = (sigma + sqrt(Delta))/2 and tests
    the unit p - q*conj(omega) at each convergent.
    """
    if Delta <= 0 or Delta % 4 not in (0, 1) or isqrt(Delta) ** 2 == Delta:
        raise ValueError(f"{Delta} is not a positive non-square discriminant")
    sigma = Delta % 2
    # omega = (P + sqrt(d))/Q with Q | d - P^2; use the scaled form to keep that true
    P, Q, d = sigma, 2, Delta
    if (d - P * P) % Q:
        P, Q, d = P * 2, Q * 2, d * 4
    r = isqrt(d)
    p_prev, p_cur = 0, 1
    q_prev, q_cur = 1, 0
    for _ in range(10 * Delta + 100):
        a = (P + r) // Q
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        t, s = 2 * p_cur - sigma * q_cur, q_cur
        if t * t - Delta * s * s == 4:
            return QuadInt(t, s, Delta)
        P = a * Q - P
        Q = (d - P * P) // Q
    raise ArithmeticError(f"no unit found for discriminant {Delta}")


def fundamental_unit_bruteforce(Delta: int, limit: int = 10**6) -> QuadInt:
    for s in range(1, limit):
        t2 = Delta * s * s + 4
        t = isqrt(t2)
        if t * t == t2:
            return QuadInt(t, s, Delta)
    raise ArithmeticError("search limit reached")


def unit_matrix(form: tuple[int, int, int], u: QuadInt) -> MatZ:
    """The integer matrix of (t + s sqrt(Delta))/2 acting on the lattice of the form."""
    A, B, C = form
    return MatZ((u.t - u.s * B) // 2, -u.s * C, u.s * A, (u.t + u.s * B) // 2)


def quad_invariants(g: MatZ, N: int) -> QuadraticData:
    _require_hyperbolic(g, N)
    tr = g.trace()
    D = tr * tr - 4
    form = _form(g)
    A, B, C = form
    Delta = B * B - 4 * A * C
    # nu = ((a - d) - sqrt(D)) / (2c) is a root of c x^2 + (d - a) x - b
    nu = (Fraction(g.a - g.d, 2 * g.c), Fraction(-1, 2 * g.c))
    eps = QuadInt(abs(tr), 1, D)
    return QuadraticData(D, form, Delta, eps, fundamental_unit(Delta), nu)


def _gamma1_sign(h: MatZ, N: int):
    if in_gamma1(h, N):
        return h
    if in_gamma1(-h, N):
        return -h
    return None


def _ladder(g: MatZ, N: int, qd: QuadraticData) -> tuple[MatZ, int, int]:
    form, e0 = qd.form, qd.eps0
    # +-g has the totally positive eigenvalue (|tr| + sqrt(D))/2, a power of eps0
    target = QuadInt(qd.eps.t, isqrt(qd.D // qd.Delta), qd.Delta)
    j, cur = 1, e0
    while cur.t < target.t:
        j, cur = j + 1, cur * e0
    if cur != target:
        raise ArithmeticError(f"eigenvalue {target} is not a power of {e0}")
    m, g1 = None, None
    cur = e0
    for i in range(1, j + 1):
        h = _gamma1_sign(unit_matrix(form, cur), N)
        if h is not None:
            m, g1 = i, h
            break
        cur = cur * e0
    if m is None or j % m:
        raise ArithmeticError("unit ladder is inconsistent")
    k = j // m
    if g.trace() < 0:
        # g is -eps^(-1) in the order, so the generator runs the other way
        g1 = g1.inv()
    if g1 ** k != g:
        raise ArithmeticError(f"certificate failed: ({g1})^{k} != {g}")
    return g1, m, k


def primitivity(g: MatZ, N: int) -> tuple[MatZ, int]:
    """(g1, k) with g = g1^k and g1 the primitive generator of Q(g) cap Gamma1(N)."""
    g1, _, k = _ladder(g, N, quad_invariants(g, N))
    return g1, k


def quad_data(g: MatZ, N: int) -> QuadraticData:
    """quad_invariants with the ladder data m (g1 <-> eps0^m), k and the primitivity flag."""
    qd = quad_invariants(g, N)
    g1, m, k = _ladder(g, N, qd)
    return replace(qd, m=m, k=k, primitive=k == 1, gamma1=g1)


@dataclass(frozen=True)
class DiagonalRestriction:
    series: QSeries  # the lift of the cycle of g
    data: QuadraticData

    @property
    def k(self) -> int:
        return self.data.k

    @property
    def restriction(self) -> QSeries:
        """The series divided by k: the q-expansion of the diagonal restriction."""
        return self.series * Fraction(1, self.k)

    def to_dict(self) -> dict:
        return {"series": self.series.to_dict(), "data": self.data.to_dict()}


def diagonal_restriction(g: MatZ, N: int, prec: int) -> DiagonalRestriction:
    data = quad_data(g, N)
    return DiagonalRestriction(lift_cycle(g, N, prec), data)

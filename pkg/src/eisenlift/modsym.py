"""SL2(Z) / Gamma1(N) matrices, cusps, negative continued fractions, cycle splitting.

A cycle {z0, gamma z0} on Y1(N) is split into closed modular caps plus a sum of
unimodular symbols g{0, oo}, using the Hirzebruch-Jung expansion of gamma(oo) = a/c.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .exactcore import extended_gcd

__all__ = [
    "MatZ",
    "Cusp",
    "MinusCF",
    "CycleDecomposition",
    "ModularSymbolSum",
    "classify",
    "minus_cf",
    "gamma_k",
    "parabolic_data",
    "decompose_cycle",
    "cusp_equivalent",
    "matrix_for_cusp",
    "reduce_symbol",
    "hecke_sigma",
    "hecke_reps",
    "in_gamma1",
    "gamma1_generators",
    "IDENTITY",
]


@dataclass(frozen=True)
class MatZ:
    a: int
    b: int
    c: int
    d: int

    @classmethod
    def parse(cls, text: str) -> "MatZ":
        parts = [int(x) for x in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError(f"matrix needs 4 comma-separated integers, got {text!r}")
        return cls(*parts)

    def __str__(self):
        return f"{self.a},{self.b},{self.c},{self.d}"

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, o: "MatZ") -> "MatZ":
        return MatZ(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self) -> "MatZ":
        return MatZ(-self.a, -self.b, -self.c, -self.d)

    def inv(self) -> "MatZ":
        if self.det() != 1:
            raise ValueError(f"{self} is not in SL2(Z)")
        return MatZ(self.d, -self.b, -self.c, self.a)

    def __pow__(self, k: int) -> "MatZ":
        base = self if k >= 0 else self.inv()
        out, k = IDENTITY, abs(k)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def act(self, r: "Cusp") -> "Cusp":
        return Cusp(self.a * r.m + self.b * r.n, self.c * r.m + self.d * r.n)

    def require_sl2(self):
        if self.det() != 1:
            raise ValueError(f"matrix {self} has determinant {self.det()}, expected 1")


IDENTITY = MatZ(1, 0, 0, 1)


@dataclass(frozen=True)
class Cusp:
    """A point [m : n] of P1(Q), normalised to gcd 1, n >= 0, and oo = [1 : 0]."""

    m: int
    n: int

    def __post_init__(self):
        m, n = self.m, self.n
        if m == 0 and n == 0:
            raise ValueError("[0:0] is not a cusp")
        g = gcd(m, n)
        m, n = m // g, n // g
        if n < 0 or (n == 0 and m < 0):
            m, n = -m, -n
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @classmethod
    def infinity(cls) -> "Cusp":
        return cls(1, 0)

    @classmethod
    def parse(cls, text: str) -> "Cusp":
        text = text.strip()
        if text in ("inf", "oo", "1/0"):
            return cls(1, 0)
        num, _, den = text.partition("/")
        return cls(int(num), int(den) if den else 1)

    def is_infinity(self) -> bool:
        return self.n == 0

    def value(self) -> Optional[Fraction]:
        return None if self.n == 0 else Fraction(self.m, self.n)

    def __str__(self):
        return "inf" if self.n == 0 else f"{self.m}/{self.n}"


def classify(g: MatZ):
    """Return 'identity', 'elliptic', 'hyperbolic' or ('parabolic', fixed cusp)."""
    g.require_sl2()
    if g in (IDENTITY, -IDENTITY):
        return "identity"
    t = abs(g.trace())
    if t > 2:
        return "hyperbolic"
    if t < 2:
        return "elliptic"
    if g.c == 0:
        return ("parabolic", Cusp.infinity())
    return ("parabolic", Cusp(g.a - g.d, 2 * g.c))


def is_parabolic(g: MatZ) -> bool:
    return isinstance(classify(g), tuple)


@dataclass(frozen=True)
class MinusCF:
    """a/c = b0 - 1/(b1 - 1/(... - 1/bn)); p[k+1], q[k+1] hold p_k, q_k for k = -1..n."""

    b: tuple[int, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.b) - 1

    def pk(self, k: int) -> int:
        return self.p[k + 1]

    def qk(self, k: int) -> int:
        return self.q[k + 1]

    def to_dict(self) -> dict:
        return {"b": list(self.b), "p": list(self.p), "q": list(self.q)}


def minus_cf(a: int, c: int) -> MinusCF:
    if c == 0:
        raise ValueError("minus_cf: denominator is zero")
    if gcd(a, c) != 1:
        raise ValueError(f"minus_cf: {a} and {c} are not coprime")
    x = Fraction(a, c)
    bs = []
    while True:
        b = -((-x.numerator) // x.denominator)  # ceiling
        bs.append(b)
        rest = b - x
        if rest == 0:
            break
        x = 1 / rest
    ps, qs = [1, bs[0]], [0, 1]
    for b in bs[1:]:
        ps.append(b * ps[-1] - ps[-2])
        qs.append(b * qs[-1] - qs[-2])
    return MinusCF(tuple(bs), tuple(ps), tuple(qs))


def gamma_k(cf: MinusCF, k: int) -> MatZ:
    if not -1 <= k <= cf.n:
        raise IndexError(f"gamma_k index {k} outside -1..{cf.n}")
    if k == -1:
        return IDENTITY
    return MatZ(-cf.pk(k), cf.pk(k - 1), -cf.qk(k), cf.qk(k - 1))


def matrix_for_cusp(r: Cusp) -> MatZ:
    """gamma_r = (m, i; n, j) in SL2(Z) with gamma_r(oo) = r and |i| minimal (ties: i >= 0)."""
    m, n = r.m, r.n
    if n == 0:
        return IDENTITY
    if m == 0:
        return MatZ(0, -1, 1, 0)
    _, x, y = extended_gcd(m, n)  # m x + n y = 1, so j = x, i = -y
    i, j = -y, x
    # shift (i, j) by t (m, n) to minimise |i|
    t0 = (-i) // m
    t = min(range(t0 - 1, t0 + 3), key=lambda t: (abs(i + t * m), i + t * m < 0))
    return MatZ(m, i + t * m, n, j + t * n)


def parabolic_data(g: MatZ) -> tuple[Cusp, MatZ, int]:
    """(fixed cusp r, gamma_r, b) with gamma_r^-1 g gamma_r = +-(1, b; 0, 1), sign normalised."""
    kind = classify(g)
    if not isinstance(kind, tuple):
        raise ValueError(f"{g} is not parabolic ({kind})")
    r = kind[1]
    gr = matrix_for_cusp(r)
    conj = gr.inv() @ g @ gr
    if conj.a < 0:
        conj = -conj
    assert conj.a == 1 and conj.c == 0 and conj.d == 1, conj
    return r, gr, conj.b


def in_gamma1(g: MatZ, N: int) -> bool:
    return g.det() == 1 and (g.a - 1) % N == 0 and (g.d - 1) % N == 0 and g.c % N == 0


@dataclass(frozen=True)
class CycleDecomposition:
    """Caps (cusp, gamma_r, coefficient) plus unimodular symbols (g, coefficient) for g{0, oo}."""

    kind: str
    source: MatZ
    caps: tuple[tuple[Cusp, MatZ, int], ...] = ()
    symbols: tuple[tuple[MatZ, int], ...] = ()
    cf: Optional[MinusCF] = None

    def symbol_boundary(self) -> dict[Cusp, int]:
        return ModularSymbolSum(self.symbols).boundary()

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "source": str(self.source),
            "caps": [{"cusp": str(r), "gamma_r": str(g), "coeff": c} for r, g, c in self.caps],
            "symbols": [{"gamma": str(g), "coeff": c} for g, c in self.symbols],
        }
        if self.cf is not None:
            out["cf"] = self.cf.to_dict()
        return out


def decompose_cycle(g: MatZ, N: int) -> CycleDecomposition:
    """Split the cycle of g in Gamma1(N) into caps and unimodular symbols."""
    if N < 4:
        raise ValueError("decompose_cycle needs N >= 4")
    if not in_gamma1(g, N):
        raise ValueError(f"{g} is not in Gamma1({N})")
    kind = classify(g)
    if kind == "identity":
        raise ValueError("the identity has the trivial cycle")
    if kind == "elliptic":
        raise ValueError(f"{g} is elliptic")
    if isinstance(kind, tuple):
        r, gr, b = parabolic_data(g)
        return CycleDecomposition("parabolic", g, caps=((r, gr, b),))
    if g.c == 0:
        raise AssertionError("hyperbolic element of Gamma1(N) with c = 0")
    cf = minus_cf(g.a, g.c)
    n = cf.n
    # cusp oo: the horocycle piece from gamma(m') to b0, where gamma_n = +-gamma (1, m; 0, 1)
    m = cf.pk(n - 1) * g.d - g.b * cf.qk(n - 1)
    shift = m if g.c < 0 else -m
    caps = [(Cusp.infinity(), IDENTITY, cf.b[0] - shift)]
    for k in range(n):
        gk = gamma_k(cf, k)
        caps.append((gk.act(Cusp.infinity()), gk, cf.b[k + 1]))
    symbols = tuple((gamma_k(cf, k), 1) for k in range(n + 1))
    return CycleDecomposition("hyperbolic", g, caps=tuple(caps), symbols=symbols, cf=cf)


@dataclass(frozen=True)
class ModularSymbolSum:
    """Formal sum of unimodular symbols c * g{0, oo}."""

    terms: tuple[tuple[MatZ, int], ...] = field(default_factory=tuple)

    def boundary(self) -> dict[Cusp, int]:
        out: dict[Cusp, int] = {}
        zero = Cusp(0, 1)
        for g, c in self.terms:
            for r, s in ((g.act(Cusp.infinity()), c), (g.act(zero), -c)):
                out[r] = out.get(r, 0) + s
        return {r: c for r, c in out.items() if c}

    def __add__(self, other: "ModularSymbolSum") -> "ModularSymbolSum":
        return ModularSymbolSum(self.terms + other.terms)


def _symbol_from_infinity(r: Cusp) -> list[tuple[MatZ, int]]:
    if r.is_infinity():
        return []
    cf = minus_cf(r.m, r.n)
    return [(gamma_k(cf, k), 1) for k in range(cf.n + 1)]


def reduce_symbol(r1: Cusp, r2: Cusp) -> ModularSymbolSum:
    """Write {r1, r2} as a sum of unimodular symbols via {r1, oo} + {oo, r2}."""
    if r1 == r2:
        raise ValueError("modular symbol with equal endpoints")
    s = r2.m * r1.n - r1.m * r2.n
    if abs(s) == 1:
        return ModularSymbolSum(((MatZ(r2.m, s * r1.m, r2.n, s * r1.n), 1),))
    terms = [(g, -c) for g, c in _symbol_from_infinity(r1)] + _symbol_from_infinity(r2)
    return ModularSymbolSum(tuple(terms))


def cusp_equivalent(N: int, c1: Cusp, c2: Cusp) -> bool:
    """Gamma1(N)-equivalence: (m2, n2) = +-(m1 + j n1, n1) mod N for some j."""
    for s in (1, -1):
        if (c2.n - s * c1.n) % N:
            continue
        for j in range(N):
            if (c2.m - s * (c1.m + j * c1.n)) % N == 0:
                return True
    return False


def hecke_sigma(a: int, N: int) -> MatZ:
    """sigma_a in SL2(Z) congruent to diag(a^-1, a) mod N."""
    if gcd(a, N) != 1:
        raise ValueError(f"hecke_sigma: gcd({a}, {N}) != 1")
    if a == 1:
        return IDENTITY
    x = pow(a, -1, N * N)
    return MatZ(x, N, (x * a - 1) // N, a)


def hecke_reps(n: int, N: int) -> list[MatZ]:
    """Coset representatives sigma_a (a, b; 0, d), ad = n, gcd(a, N) = 1, 0 <= b < d."""
    if n < 1:
        raise ValueError("hecke_reps needs n >= 1")
    reps = []
    for a in range(1, n + 1):
        if n % a or gcd(a, N) != 1:
            continue
        d = n // a
        sa = hecke_sigma(a, N)
        for b in range(d):
            reps.append(sa @ MatZ(a, b, 0, d))
    return reps


_S = MatZ(0, -1, 1, 0)
_T = MatZ(1, 1, 0, 1)


def gamma1_generators(N: int) -> list[MatZ]:
    """Schreier generators of Gamma1(N) from the cosets of SL2(Z) = <S, T>.

    Right cosets Gamma1(N) g are labelled by the bottom row of g mod N.
    """
    if N < 2:
        raise ValueError("gamma1_generators needs N >= 2")

    def label(g: MatZ):
        return (g.c % N, g.d % N)

    reps = {label(IDENTITY): IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        r = queue.popleft()
        for s in (_S, _T):
            h = r @ s
            if label(h) not in reps:
                reps[label(h)] = h
                queue.append(h)
    gens = []
    seen = set()
    for r in reps.values():
        for s in (_S, _T):
            h = r @ s
            g = h @ reps[label(h)].inv()
            assert in_gamma1(g, N)
            if g not in (IDENTITY,) and g not in seen:
                seen.add(g)
                gens.append(g)
    return gens

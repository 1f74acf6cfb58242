"""Closed-form theta lift of caps, unimodular symbols and Gamma1(N) cycles.

Also builds unimodular triangles/polygons and checks the Eisenstein relations
they force.  ``prec`` is always a count of integral q-powers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Optional

from .eisenstein import expand_G, expand_H
from .exactcore import extended_gcd
from .modsym import (
    Cusp,
    MatZ,
    classify,
    decompose_cycle,
    in_gamma1,
    minus_cf,
    parabolic_data,
)
from .qseries import QSeries

__all__ = [
    "CAP_SIGN",
    "RelationReport",
    "Triangle",
    "lift_cap",
    "lift_unimodular",
    "lift_cycle",
    "lift_cycle_closed_form",
    "build_triangle",
    "verify_triangle",
    "verify_polygon",
    "boundary_zero",
    "polygon_weights",
]

# Orientation sign of the cap terms in a closed boundary (sides + CAP_SIGN * caps = 0).
# Fixed once on the N = 5 reference triangle (1, 1, 3); see tests/test_thetalift.py.
CAP_SIGN = 1

MIN_NONZERO = 5


@lru_cache(maxsize=None)
def _G(k: int, r: int, N: int, prec: int) -> QSeries:
    return expand_G(k, r, N, prec)


@lru_cache(maxsize=None)
def _H(p: int, q: int, N: int, prec: int) -> QSeries:
    if q % N:
        p = 0  # H_{p,q} does not depend on p then
    return expand_H(p, q, N, prec)


@lru_cache(maxsize=None)
def _GG(a: int, b: int, N: int, prec: int) -> QSeries:
    if a > b:
        return _GG(b, a, N, prec)
    return _G(1, a, N, prec) * _G(1, b, N, prec)


def GG(a: int, b: int, N: int, prec: int) -> QSeries:
    """G^(1)_a G^(1)_b, memoised on the residues."""
    return _GG(a % N, b % N, N, prec)


def G(k: int, r: int, N: int, prec: int) -> QSeries:
    return _G(k, r % N, N, prec)


def H(p: int, q: int, N: int, prec: int) -> QSeries:
    return _H(p % N, q % N, N, prec)


def lift_cap(gamma_r: MatZ, N: int, prec: int) -> QSeries:
    """Lift of the closed cap at gamma_r(oo): H^(2)_{j,-n} for gamma_r = (m, i; n, j)."""
    gamma_r.require_sl2()
    return H(gamma_r.d, -gamma_r.c, N, prec)


def lift_unimodular(g: MatZ, N: int, prec: int) -> QSeries:
    """Lift of g{0, oo}: -G^(1)_d G^(1)_c."""
    g.require_sl2()
    return -GG(g.d, g.c, N, prec)


def lift_cycle(g: MatZ, N: int, prec: int) -> QSeries:
    """Lift of the cycle {z0, g z0}, summed over its cap/symbol decomposition."""
    if not in_gamma1(g, N):
        raise ValueError(f"{g} is not in Gamma1({N})")
    if classify(g) == "identity":
        return QSeries.zero(N, prec * N)
    dec = decompose_cycle(g, N)
    total = QSeries.zero(N, prec * N)
    for _, gr, coeff in dec.caps:
        if coeff:
            total = total + lift_cap(gr, N, prec) * coeff
    for gs, coeff in dec.symbols:
        if coeff:
            total = total + lift_unimodular(gs, N, prec) * coeff
    return total


def lift_cycle_closed_form(g: MatZ, N: int, prec: int) -> QSeries:
    """Same lift written directly in the continued-fraction data (no matrices).

    hyperbolic: c_oo H_{1,0} + sum b_{k+1} H_{q_{k-1},q_k} + sum G_{q_k} G_{q_{k-1}},
    with c_oo = b0 -+ (p_{n-1} d - b q_{n-1}), the sign following sign(c).
    """
    if not in_gamma1(g, N):
        raise ValueError(f"{g} is not in Gamma1({N})")
    kind = classify(g)
    if kind == "identity":
        return QSeries.zero(N, prec * N)
    if isinstance(kind, tuple):
        _, gr, b = parabolic_data(g)
        return H(gr.d, -gr.c, N, prec) * b
    cf = minus_cf(g.a, g.c)
    n = cf.n
    m = cf.pk(n - 1) * g.d - g.b * cf.qk(n - 1)
    c_inf = cf.b[0] - m if g.c < 0 else cf.b[0] + m
    total = H(1, 0, N, prec) * c_inf
    for k in range(n):
        total = total + H(cf.qk(k - 1), cf.qk(k), N, prec) * cf.b[k + 1]
    for k in range(n + 1):
        total = total + GG(cf.qk(k), cf.qk(k - 1), N, prec)
    return total


@dataclass(frozen=True)
class RelationReport:
    level: int
    kind: str
    data: dict
    prec: int
    status: str
    mismatch: Optional[dict] = None
    reason: Optional[str] = None
    nonzero_compared: int = 0

    @property
    def exit_code(self) -> int:
        return {"verified": 0, "failed": 1}.get(self.status, 2)

    @property
    def meaningful(self) -> bool:
        return self.status == "verified" and self.nonzero_compared >= MIN_NONZERO

    def to_dict(self) -> dict:
        out = {
            "level": self.level,
            "kind": self.kind,
            "data": self.data,
            "prec": self.prec,
            "status": self.status,
            "nonzero_compared": self.nonzero_compared,
        }
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "RelationReport":
        return cls(
            level=d["level"],
            kind=d["kind"],
            data=d["data"],
            prec=d["prec"],
            status=d["status"],
            mismatch=d.get("mismatch"),
            reason=d.get("reason"),
            nonzero_compared=d.get("nonzero_compared", 0),
        )


def _compare(N, kind, data, prec, lhs: QSeries, rhs: QSeries) -> RelationReport:
    e = lhs.first_difference(rhs)
    nonzero = len(lhs.terms)
    if e is None:
        return RelationReport(N, kind, data, prec, "verified", nonzero_compared=nonzero)
    mismatch = {"e": e, "lhs": lhs[e].to_json(), "rhs": rhs[e].to_json()}
    return RelationReport(N, kind, data, prec, "failed", mismatch=mismatch, nonzero_compared=nonzero)


def _rejected(N, kind, data, prec, reason) -> RelationReport:
    return RelationReport(N, kind, data, prec, "rejected", reason=reason)


@dataclass(frozen=True)
class Triangle:
    """Unimodular triangle with vertices r_i = -m_i/n_i and n1 + n2 + n3 = 0."""

    n: tuple[int, int, int]
    m: tuple[int, int, int]
    sides: tuple[MatZ, MatZ, MatZ]  # gamma_12, gamma_23, gamma_31
    caps: tuple[MatZ, MatZ, MatZ]  # matrices carrying [0,1]_oo to the caps at r_1, r_2, r_3

    def vertices(self) -> list[tuple[int, int]]:
        return [(-mi, ni) for mi, ni in zip(self.m, self.n)]


def _triangle_precondition(N, ns) -> Optional[str]:
    if N < 2:
        return "level must be >= 2"
    bad = [x for x in ns if gcd(x, N) != 1]
    if bad:
        return f"indices {bad} are not coprime to N={N}"
    if sum(ns) % N:
        return f"n1+n2+n3 = {sum(ns)} is not 0 mod {N}"
    return None


def build_triangle(N: int, n1: int, n2: int, n3: int) -> Triangle:
    reason = _triangle_precondition(N, (n1, n2, n3))
    if reason:
        raise ValueError(reason)
    # shift n2 by a multiple of N so that gcd(n1, n2) = 1
    mod = abs(n1)
    k2 = ((n2 - 1) * pow(N, -1, mod)) % mod if mod > 1 else 0
    n2 = n2 - k2 * N
    assert gcd(n1, n2) == 1
    n3 = -n1 - n2
    # m1 n2 - m2 n1 = 1
    _, x, y = extended_gcd(n2, -n1)
    m1, m2 = x, y
    m3 = -m1 - m2
    g12 = MatZ(m2, m1, -n2, -n1)
    g23 = MatZ(m3, m2, -n3, -n2)
    g31 = MatZ(m1, m3, -n1, -n3)
    for g in (g12, g23, g31):
        g.require_sl2()
    return Triangle((n1, n2, n3), (m1, m2, m3), (g12, g23, g31), (g31, g12, g23))


def verify_triangle(N: int, n1: int, n2: int, n3: int, prec: int) -> RelationReport:
    """G1_a G1_b + G1_b G1_c + G1_c G1_a = G2_a + G2_b + G2_c up to q^prec."""
    ns = (n1, n2, n3)
    data = {"n": list(ns)}
    reason = _triangle_precondition(N, ns)
    if reason:
        return _rejected(N, "triangle", data, prec, reason)
    data["pairwise_coprime"] = all(gcd(x, y) == 1 for x, y in ((n1, n2), (n2, n3), (n3, n1)))
    g1 = [G(1, x, N, prec) for x in ns]
    lhs = g1[0] * g1[1] + g1[1] * g1[2] + g1[2] * g1[0]
    rhs = G(2, n1, N, prec) + G(2, n2, N, prec) + G(2, n3, N, prec)
    return _compare(N, "triangle", data, prec, lhs, rhs)


def _det(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _polygon_check(N, verts) -> Optional[str]:
    d = len(verts)
    if d < 3:
        return "a polygon needs at least 3 vertices"
    for i in range(d):
        s = _det(verts[i], verts[(i + 1) % d])
        if abs(s) != 1:
            return f"side {i} ({verts[i][0]}/{verts[i][1]} -> {verts[(i + 1) % d][0]}/{verts[(i + 1) % d][1]}) is not unimodular (det {s})"
    bad = [v[1] for v in verts if gcd(v[1], N) != 1]
    if bad:
        return f"denominators {bad} are not coprime to N={N}"
    return None


def polygon_weights(verts) -> tuple[list[int], list[int]]:
    """Side signs eps_i = det(v_i, v_{i+1}) and cap widths w_i = eps_{i-1} eps_i det(v_{i+1}, v_{i-1})."""
    d = len(verts)
    eps = [_det(verts[i], verts[(i + 1) % d]) for i in range(d)]
    widths = [eps[i - 1] * eps[i] * _det(verts[(i + 1) % d], verts[i - 1]) for i in range(d)]
    return eps, widths


def verify_polygon(N: int, verts, prec: int) -> RelationReport:
    """Relation forced by a polygon of cusps m_i/n_i with unimodular sides.

    ``verts`` are integer pairs (m_i, n_i) taken as given (signs matter).  The
    checked identity is sum eps_i G1_{n_i} G1_{n_{i+1}} = sum w_i G2_{n_i}; for a
    triangle with all eps_i = 1 every w_i is 1.
    """
    verts = [tuple(int(x) for x in v) for v in verts]
    data = {"cusps": [f"{m}/{n}" for m, n in verts]}
    reason = _polygon_check(N, verts)
    if reason:
        return _rejected(N, "polygon", data, prec, reason)
    eps, widths = polygon_weights(verts)
    data["side_signs"], data["cap_widths"] = eps, widths
    d = len(verts)
    lhs = QSeries.zero(N, prec * N)
    rhs = QSeries.zero(N, prec * N)
    for i in range(d):
        ni, nj = verts[i][1], verts[(i + 1) % d][1]
        lhs = lhs + GG(ni, nj, N, prec) * eps[i]
        rhs = rhs + G(2, ni, N, prec) * widths[i]
    return _compare(N, "polygon", data, prec, lhs, rhs)


def _side_matrix(u, v) -> MatZ:
    """g in SL2(Z) with g(0) = u, g(oo) = v for a unimodular pair of vectors."""
    s = _det(u, v)
    return MatZ(v[0], -s * u[0], v[1], -s * u[1])


def boundary_zero(N: int, verts, prec: int, cap_sign: int = CAP_SIGN) -> RelationReport:
    """Lift of the closed boundary of a unimodular polygon: sides + cap_sign * caps.

    The cap at vertex i is the horocycle arc between its neighbours; in the chart
    g_{i-1} (which sends oo to r_i and 0 to r_{i-1}) it runs from 0 to the integer
    g_{i-1}^{-1}(r_{i+1}), and lifts to that length times lift_cap(g_{i-1}).
    """
    verts = [tuple(int(x) for x in v) for v in verts]
    data = {"cusps": [f"{m}/{n}" for m, n in verts], "cap_sign": cap_sign}
    reason = _polygon_check(N, verts)
    if reason:
        return _rejected(N, "boundary-zero", data, prec, reason)
    d = len(verts)
    sides = [_side_matrix(verts[i], verts[(i + 1) % d]) for i in range(d)]
    total = QSeries.zero(N, prec * N)
    widths = []
    for i in range(d):
        total = total + lift_unimodular(sides[i], N, prec)
    for i in range(d):
        g = sides[i - 1]
        x = g.inv().act(Cusp(*verts[(i + 1) % d]))
        assert x.n == 1, "neighbouring cusps of a unimodular polygon are integers in the chart"
        widths.append(x.m)
        total = total + lift_cap(g, N, prec) * (cap_sign * x.m)
    data["cap_lengths"] = widths
    zero = QSeries.zero(N, prec * N)
    report = _compare(N, "boundary-zero", data, prec, total, zero)
    # the total itself is zero when verified; count nonzero terms of the side sum instead
    side_sum = QSeries.zero(N, prec * N)
    for g in sides:
        side_sum = side_sum + lift_unimodular(g, N, prec)
    return RelationReport(
        report.level, report.kind, report.data, report.prec, report.status,
        report.mismatch, report.reason, len(side_sum.terms),
    )

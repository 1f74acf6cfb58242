"""Small invariant suite behind ``eisenlift selftest``.

Each check is a top-level function returning (passed, detail) so it can run in a
worker process.  Sizes are kept small; the pytest suite runs the full versions.
"""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .eisenstein import expand_E, expand_Ehat, expand_G, siegel_log_deriv
from .exactcore import bernoulli
from .modsym import IDENTITY, gamma1_generators, hecke_reps, minus_cf
from .realquad import fundamental_unit, fundamental_unit_bruteforce
from .thetalift import boundary_zero, build_triangle, lift_cycle, verify_triangle


def _words(N, rng, count, maxlen):
    gens = gamma1_generators(N)
    gens = gens + [g.inv() for g in gens]
    out = []
    for _ in range(count):
        w = IDENTITY
        for _ in range(rng.randint(1, maxlen)):
            w = w @ rng.choice(gens)
        out.append(w)
    return out


def check_triangle_anchor():
    rep = verify_triangle(5, 1, 1, 3, 20)
    g = [expand_G(1, n, 5, 20) for n in (1, 1, 3)]
    lhs = g[0] * g[1] + g[1] * g[2] + g[2] * g[0]
    anchors = lhs.coeff(0) == Fraction(3, 100) and lhs.coeff(5) == Fraction(2, 5)
    return rep.status == "verified" and anchors, f"N=5 (1,1,3) {rep.status}, anchors {anchors}"


def check_triangles_N7():
    bad = [t for t in [(1, 2, 4), (1, 1, 5), (3, 5, 6)] if verify_triangle(7, *t, 15).status != "verified"]
    return not bad, f"failures {bad}"


def check_additivity():
    rng = random.Random(7)
    fails = 0
    for N in (4, 5):
        ws = _words(N, rng, 16, 4)
        for a, b in zip(ws[::2], ws[1::2]):
            if lift_cycle(a @ b, N, 8) != lift_cycle(a, N, 8) + lift_cycle(b, N, 8):
                fails += 1
    return fails == 0, f"{fails} failures in 16 pairs"


def check_inverse():
    rng = random.Random(8)
    ws = _words(5, rng, 8, 4)
    fails = sum(lift_cycle(w.inv(), 5, 8) != -lift_cycle(w, 5, 8) for w in ws)
    return fails == 0, f"{fails} failures in 8 words"


def check_siegel():
    N, fails = 5, 0
    for p in range(N):
        for q in range(N):
            if p or q:
                fails += not (expand_E(2, p, q, N, 8) + siegel_log_deriv(p, q, N, 8)).is_zero()
    return fails == 0, f"{fails} failures over N=5"


def check_ehat():
    N, fails = 5, 0
    for p in range(N):
        for q in range(N):
            if p or q:
                fails += expand_Ehat(1, p, q, N, 8) != expand_E(1, p, q, N, 8)
    return fails == 0, f"{fails} failures over N=5"


def check_continued_fractions():
    rng = random.Random(9)
    ok = minus_cf(7, 3).b == (3, 2, 2) and minus_cf(1, 4).b == (1, 2, 2, 2)
    for _ in range(200):
        a, c = rng.randint(-500, 500), rng.randint(1, 500)
        if gcd(a, c) != 1:
            continue
        cf = minus_cf(a, c)
        ok &= Fraction(cf.pk(cf.n), cf.qk(cf.n)) == Fraction(a, c)
        ok &= all(cf.pk(k - 1) * cf.qk(k) - cf.pk(k) * cf.qk(k - 1) == 1 for k in range(cf.n + 1))
    return ok, "reference cases and 200 random fractions"


def check_hecke():
    reps = hecke_reps(2, 5)
    return len(reps) == 3, f"{len(reps)} representatives for n=2, N=5"


def check_bernoulli():
    rng = random.Random(10)
    ok = True
    for _ in range(50):
        s = rng.choice((1, 2))
        while True:
            x, y = Fraction(rng.randint(0, 99), 100), Fraction(rng.randint(0, 99), 100)
            z = s - x - y
            if 0 <= z < 1:
                break
        b1 = [bernoulli(1, t) for t in (x, y, z)]
        b2 = [bernoulli(2, t) for t in (x, y, z)]
        ok &= b1[0] * b1[1] + b1[1] * b1[2] + b1[2] * b1[0] == -sum(b2) / 2
    return ok, "50 random triples"


def check_boundary():
    t = build_triangle(7, 1, 2, 4)
    rep = boundary_zero(7, t.vertices(), 10)
    return rep.status == "verified", f"N=7 triangle boundary {rep.status}"


def check_units():
    ok = all(fundamental_unit(d) == fundamental_unit_bruteforce(d) for d in (5, 8, 12, 13, 21, 32, 40))
    return ok, "Pell brute force on small discriminants"


CHECKS = [name for name in dir() if name.startswith("check_")]


def run(name: str) -> dict:
    try:
        passed, detail = globals()[name]()
    except Exception as e:  # report, never crash the runner
        passed, detail = False, f"{type(e).__name__}: {e}"
    return {"name": name[len("check_"):], "passed": bool(passed), "detail": detail}

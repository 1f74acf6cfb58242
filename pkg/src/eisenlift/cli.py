"""Command line front end: ``eisenlift <subcommand> ...``.

Exit codes: 0 success, 1 failed verification, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import selfcheck
from .eisenstein import EisensteinID, ExpansionCache
from .modsym import MatZ, classify, decompose_cycle, hecke_reps
from .realquad import quad_data
from .thetalift import lift_cycle, verify_polygon, verify_triangle


class InputError(Exception):
    pass


def _ints(text: str, what: str, count=None) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"{what}: expected comma-separated integers, got {text!r}")
    if count is not None and len(vals) != count:
        raise InputError(f"{what}: expected {count} integers, got {len(vals)}")
    return vals


def _matrix(text) -> MatZ:
    if text is None:
        raise InputError("--matrix is required")
    g = MatZ(*_ints(text, "--matrix", 4))
    if g.det() != 1:
        raise InputError(f"--matrix: determinant is {g.det()}, not 1")
    return g


def _cusp_pair(text: str) -> tuple[int, int]:
    text = text.strip()
    if text in ("inf", "oo"):
        return (1, 0)
    num, _, den = text.partition("/")
    try:
        return (int(num), int(den) if den else 1)
    except ValueError:
        raise InputError(f"--cusps: cannot parse {text!r}")


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InputError(f"--{n} is required for this command")


def _series_id(args) -> EisensteinID:
    _need(args, "series")
    tag, N = args.series, args.N
    if tag == "E2_00":
        return EisensteinID(tag, N, 2)
    if tag == "G":
        _need(args, "k", "r")
        return EisensteinID(tag, N, args.k, (args.r,))
    if tag == "Ghat2":
        _need(args, "p")
        return EisensteinID(tag, N, 2, (args.p,))
    if tag in ("H", "SiegelLogDeriv"):
        _need(args, "p", "q")
        return EisensteinID(tag, N, 2, (args.p, args.q))
    _need(args, "k", "p", "q")
    return EisensteinID(tag, N, args.k, (args.p, args.q))


def _series_text(s) -> str:
    try:
        return s.format(integral=True)
    except ValueError:
        return s.format()


def cmd_expand(args):
    if args.N < 1:
        raise InputError("--N must be positive")
    try:
        sid = _series_id(args)
    except ValueError as e:
        raise InputError(str(e))
    cache = ExpansionCache.from_env(args.cache_dir)
    try:
        s = cache.get(sid, args.prec)
    except ValueError as e:
        raise InputError(str(e))
    doc = {"id": sid.key(), "series": s.to_dict()}
    return 0, doc, _series_text(s)


def _geometry(args):
    if args.N < 4:
        raise InputError("--N must be >= 4 for geometry commands")


def cmd_decompose(args):
    _geometry(args)
    g = _matrix(args.matrix)
    try:
        dec = decompose_cycle(g, args.N)
    except ValueError as e:
        raise InputError(str(e))
    d = dec.to_dict()
    lines = [f"{dec.kind} {g}"]
    lines += [f"cap {c['coeff']} * [{c['cusp']}] via {c['gamma_r']}" for c in d["caps"]]
    lines += [f"symbol {s['coeff']} * ({s['gamma']}){{0, oo}}" for s in d["symbols"]]
    return 0, d, "\n".join(lines)


def cmd_lift(args):
    _geometry(args)
    g = _matrix(args.matrix)
    if classify(g) == "elliptic":
        raise InputError(f"{g} is elliptic")
    try:
        s = lift_cycle(g, args.N, args.prec)
    except ValueError as e:
        raise InputError(str(e))
    doc = {"series": s.to_dict()}
    text = _series_text(s)
    if classify(g) != "identity":
        dec = decompose_cycle(g, args.N)
        doc["decomposition"] = dec.to_dict()
    return 0, doc, text


def _report(rep):
    text = f"{rep.kind} {rep.status}"
    if rep.reason:
        text += f": {rep.reason}"
    if rep.mismatch:
        text += f" at q^({rep.mismatch['e']}/{rep.level})"
    if rep.status == "verified":
        text += f" ({rep.nonzero_compared} nonzero coefficients compared)"
    return rep.exit_code, rep.to_dict(), text


def cmd_verify_triangle(args):
    _geometry(args)
    _need(args, "n")
    n = _ints(args.n, "--n", 3)
    return _report(verify_triangle(args.N, *n, args.prec))


def cmd_verify_polygon(args):
    _geometry(args)
    _need(args, "cusps")
    verts = [_cusp_pair(c) for c in args.cusps.split(",")]
    return _report(verify_polygon(args.N, verts, args.prec))


def cmd_quad(args):
    _geometry(args)
    g = _matrix(args.matrix)
    try:
        qd = quad_data(g, args.N)
    except ValueError as e:
        raise InputError(str(e))
    d = qd.to_dict()
    text = "\n".join(f"{k}: {v}" for k, v in d.items())
    return 0, d, text


def cmd_hecke(args):
    _geometry(args)
    _need(args, "n")
    (n,) = _ints(args.n, "--n", 1)
    if n < 1:
        raise InputError("--n must be positive")
    reps = [str(g) for g in hecke_reps(n, args.N)]
    return 0, {"n": n, "N": args.N, "reps": reps}, "\n".join(reps)


def cmd_selftest(args):
    checks = selfcheck.CHECKS
    workers = max(1, args.jobs)
    if workers == 1:
        results = [selfcheck.run(name) for name in checks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(selfcheck.run, checks))
    ok = all(r["passed"] for r in results)
    doc = {"passed": ok, "checks": results}
    text = "\n".join(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}: {r['detail']}" for r in results)
    return (0 if ok else 1), doc, text


COMMANDS = {
    "expand": cmd_expand,
    "decompose": cmd_decompose,
    "lift": cmd_lift,
    "verify-triangle": cmd_verify_triangle,
    "verify-polygon": cmd_verify_polygon,
    "quad": cmd_quad,
    "hecke": cmd_hecke,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eisenlift", description="Exact theta lifts of modular symbols to Eisenstein series.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--N", type=int, default=5)
    ap.add_argument("--prec", type=int, default=10, help="number of integral q-powers")
    ap.add_argument("--matrix", help="a,b,c,d (row-major)")
    ap.add_argument("--series", help="E, E2_00, Ehat, G, Ghat2, H or SiegelLogDeriv")
    ap.add_argument("--k", type=int)
    ap.add_argument("--r", type=int)
    ap.add_argument("--p", type=int)
    ap.add_argument("--q", type=int)
    ap.add_argument("--n", help="index triple for verify-triangle, degree for hecke")
    ap.add_argument("--cusps", help="comma-separated m/n vertices, signs taken as given")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--cache-dir", help="on-disk expansion cache (default: $EISENLIFT_CACHE)")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for selftest")
    return ap


def run(argv=None) -> tuple[int, str]:
    """Parse and execute; returns (exit code, output text)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), ""
    try:
        if args.prec < 1:
            raise InputError("--prec must be >= 1")
        code, doc, text = COMMANDS[args.command](args)
    except InputError as e:
        msg = str(e).replace("\n", " ")
        if args.format == "json":
            return 2, json.dumps({"error": msg}, sort_keys=True)
        return 2, f"error: {msg}"
    if args.format == "json":
        return code, json.dumps(doc, sort_keys=True, indent=1)
    return code, text


def main(argv=None) -> int:
    code, out = run(argv)
    if out:
        stream = sys.stderr if code == 2 else sys.stdout
        print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())

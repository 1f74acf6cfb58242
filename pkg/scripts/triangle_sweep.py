"""Sweep admissible index triples and verify the triangle relation at each level.

    python3 scripts/triangle_sweep.py --levels 5 7 9 --prec 30
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from math import gcd

from eisenlift.thetalift import verify_triangle


@dataclass
class SweepConfig:
    levels: list[int] = field(default_factory=lambda: [5, 7, 9, 11])
    prec: int = 30
    out: str | None = None


def triples(N: int):
    units = [u for u in range(1, N) if gcd(u, N) == 1]
    for t in combinations_with_replacement(units, 3):
        if sum(t) % N == 0:
            yield t


def sweep(cfg: SweepConfig) -> list[dict]:
    rows = []
    for N in cfg.levels:
        for t in triples(N):
            t0 = time.perf_counter()
            rep = verify_triangle(N, *t, cfg.prec)
            rows.append({
                "N": N,
                "n": list(t),
                "status": rep.status,
                "nonzero": rep.nonzero_compared,
                "seconds": round(time.perf_counter() - t0, 3),
            })
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--levels", type=int, nargs="+")
    ap.add_argument("--prec", type=int)
    ap.add_argument("--out")
    ns = ap.parse_args()
    cfg = SweepConfig(**{k: v for k, v in vars(ns).items() if v is not None})
    rows = sweep(cfg)
    for r in rows:
        print(f"N={r['N']:<3} n={r['n']}  {r['status']:<9} {r['nonzero']:>4} nonzero  {r['seconds']}s")
    bad = [r for r in rows if r["status"] != "verified"]
    print(f"{len(rows) - len(bad)}/{len(rows)} verified")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=1)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())

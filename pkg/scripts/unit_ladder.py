"""Tabulate real-quadratic data (Delta, eps0, m, k) for powers of hyperbolic elements.

    python3 scripts/unit_ladder.py --N 4 --count 10
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from eisenlift.modsym import IDENTITY, classify, gamma1_generators
from eisenlift.realquad import quad_data


@dataclass
class LadderConfig:
    N: int = 4
    count: int = 10
    max_power: int = 3
    seed: int = 1


def hyperbolic_words(cfg: LadderConfig):
    rng = random.Random(cfg.seed)
    gens = gamma1_generators(cfg.N)
    gens = gens + [g.inv() for g in gens]
    found = 0
    while found < cfg.count:
        w = IDENTITY
        for _ in range(rng.randint(2, 5)):
            w = w @ rng.choice(gens)
        if classify(w) == "hyperbolic":
            found += 1
            yield w


def main():
    ap = argparse.ArgumentParser()
    for name, default in vars(LadderConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = LadderConfig(**vars(ap.parse_args()))
    print(f"{'gamma':<28} {'j':>2} {'Delta':>7} {'eps0 (t,s)':>22} {'m':>3} {'k':>3}")
    for g in hyperbolic_words(cfg):
        for j in range(1, cfg.max_power + 1):
            qd = quad_data(g ** j, cfg.N)
            eps0 = f"({qd.eps0.t},{qd.eps0.s})"
            print(f"{str(g):<28} {j:>2} {qd.Delta:>7} {eps0:>22} {qd.m:>3} {qd.k:>3}")
            assert qd.k % j == 0
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Random words in Gamma1(N): lift additivity, inverses and the closed form.

    python3 scripts/additivity_demo.py --N 5 --pairs 20
"""
from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from eisenlift.modsym import IDENTITY, classify, gamma1_generators
from eisenlift.thetalift import lift_cycle, lift_cycle_closed_form


@dataclass
class DemoConfig:
    N: int = 5
    pairs: int = 20
    max_len: int = 5
    prec: int = 15
    seed: int = 0


def kind(g):
    k = classify(g)
    return k if isinstance(k, str) else "parabolic"


def word(rng, gens, max_len):
    w = IDENTITY
    for _ in range(rng.randint(1, max_len)):
        w = w @ rng.choice(gens)
    return w


def run(cfg: DemoConfig) -> int:
    rng = random.Random(cfg.seed)
    gens = gamma1_generators(cfg.N)
    gens = gens + [g.inv() for g in gens]
    fails = 0
    for i in range(cfg.pairs):
        a, b = word(rng, gens, cfg.max_len), word(rng, gens, cfg.max_len)
        la, lb, lab = (lift_cycle(x, cfg.N, cfg.prec) for x in (a, b, a @ b))
        add_ok = lab == la + lb
        inv_ok = lift_cycle(a.inv(), cfg.N, cfg.prec) == -la
        cf_ok = kind(a) != "hyperbolic" or lift_cycle_closed_form(a, cfg.N, cfg.prec) == la
        fails += not (add_ok and inv_ok and cf_ok)
        print(f"{i:>3} {kind(a):<10} {kind(b):<10} additive={add_ok} inverse={inv_ok} closed_form={cf_ok}")
    print(f"{cfg.pairs - fails}/{cfg.pairs} pairs consistent")
    return 1 if fails else 0


def main():
    ap = argparse.ArgumentParser()
    for name, default in vars(DemoConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    return run(DemoConfig(**vars(ap.parse_args())))


if __name__ == "__main__":
    raise SystemExit(main())

"""Random checks: Serre duality and count_pI against brute-force fibre counts.

    python3 scripts/duality_and_oracle.py --classes 200 --seed 1
"""

import argparse
import itertools
import random
from dataclasses import dataclass

from immaculatum import (builtin_catalog, class_of, cohomology, count_pI, divisor_rep,
                         picard_group, serre_dual, tempting_sets)


@dataclass
class CheckConfig:
    classes: int = 200
    seed: int = 1
    radius: int = 5
    oracle_box: int = 12


def fibre_count(pic, c, I, bound):
    """Number of a in [0, bound]^n with pi_I(a) in the class of c (small n only)."""
    target = class_of(pic, c)
    Iset = set(I)
    hits = 0
    for a in itertools.product(range(bound + 1), repeat=pic.n):
        d = [-(1 + ai) if i in Iset else ai for i, ai in enumerate(a)]
        hits += class_of(pic, d) == target
    return hits


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--classes", type=int, default=CheckConfig.classes)
    ap.add_argument("--seed", type=int, default=CheckConfig.seed)
    ns = ap.parse_args()
    cfg = CheckConfig(classes=ns.classes, seed=ns.seed)
    rng = random.Random(cfg.seed)
    for fan in builtin_catalog():
        pic = picard_group(fan)
        cat = tempting_sets(fan)
        bad = 0
        for _ in range(cfg.classes):
            L = pic.make_class([rng.randint(-cfg.radius, cfg.radius) for _ in range(pic.r)])
            if cohomology(pic, cat, L) != cohomology(pic, cat, serre_dual(pic, L))[::-1]:
                bad += 1
        line = f"{str(fan):12s} serre {cfg.classes - bad}/{cfg.classes}"
        if fan.n <= 4:
            L = pic.make_class([rng.randint(-2, 2) for _ in range(pic.r)])
            c = divisor_rep(pic, L)
            agree = all(count_pI(pic, L, I) == fibre_count(pic, c, I, cfg.oracle_box) for I, _ in cat)
            line += f"  oracle {'ok' if agree else 'MISMATCH'} on {L}"
        print(line)


if __name__ == "__main__":
    main()

"""How often is a random weight multiset prime, and how often is t = 1/2?

Also cross-checks every decision against the equal-2-adic-valuation criterion.
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from circlesig.fixedpoint import prime_check


@dataclass
class Config:
    samples: int = 5000
    max_weight: int = 12
    max_size: int = 6
    seed: int = 0


def two_adic(k: int) -> int:
    return (abs(k) & -abs(k)).bit_length() - 1


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    orders = Counter()
    mismatches = 0
    for _ in range(cfg.samples):
        ws = [rng.choice((-1, 1)) * rng.randint(1, cfg.max_weight) for _ in range(rng.randint(1, cfg.max_size))]
        res = prime_check(ws)
        mismatches += bool(res) != (len({two_adic(k) for k in ws}) == 1)
        orders[res.order if res else "refused"] += 1
    print(f"{cfg.samples} multisets, |k| <= {cfg.max_weight}, size <= {cfg.max_size}")
    for key, n in sorted(orders.items(), key=lambda kv: (kv[0] == "refused", kv[0] if kv[0] != "refused" else 0)):
        label = f"order {key}" if key != "refused" else "not prime"
        print(f"  {label:<12} {n:>6}  ({n / cfg.samples:.1%})")
    print(f"2-adic criterion mismatches: {mismatches}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in ("samples", "max_weight", "max_size", "seed"):
        ap.add_argument(f"--{f.replace('_', '-')}", type=int, default=getattr(Config, f))
    a = ap.parse_args()
    raise SystemExit(main(Config(a.samples, a.max_weight, a.max_size, a.seed)))

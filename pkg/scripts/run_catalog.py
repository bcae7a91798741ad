"""Recompute every catalog entry and print a per-check table."""

import argparse
import time
from dataclasses import dataclass

from circlesig.catalog import catalog_entries, check_entry


@dataclass
class Config:
    q_order: int = 3
    only: str | None = None
    failures_only: bool = False


def main(cfg: Config) -> int:
    start = time.perf_counter()
    failed = 0
    for d in catalog_entries():
        if cfg.only and d.name != cfg.only:
            continue
        for r in check_entry(d, cfg.q_order):
            failed += not r.ok
            if r.ok and cfg.failures_only:
                continue
            print(f"{'ok  ' if r.ok else 'FAIL'}  {d.name:<20} {r.check}" + ("" if r.ok else f"  ({r.detail})"))
    print(f"{failed} failing checks, {time.perf_counter() - start:.2f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q-order", type=int, default=Config.q_order)
    ap.add_argument("--only")
    ap.add_argument("--failures-only", action="store_true")
    a = ap.parse_args()
    raise SystemExit(main(Config(a.q_order, a.only, a.failures_only)))

"""Tabulate the twisted signature series of each catalog entry.

For every coefficient prints whether it is constant in g, its constant value
if so, and the non-equivariant index sign(M, R_i) read off at g = 1.
"""

import argparse
from dataclasses import dataclass

from circlesig.catalog import catalog_entries
from circlesig.io import scalar_to_json
from circlesig.twisted import twisted_signature_series


@dataclass
class Config:
    q_order: int = 3
    show_functions: bool = False


def main(cfg: Config) -> None:
    header = f"{'entry':<20} {'spin':<5} {'i':>2}  {'constant':<8} {'value':>8} {'index':>8}"
    print(header)
    print("-" * len(header))
    for d in catalog_entries():
        rep = twisted_signature_series(d, cfg.q_order)
        for i, c in enumerate(rep.coefficients):
            value = scalar_to_json(rep.values[i]) or "-"
            index = scalar_to_json(rep.indices[i]) or "-"
            print(f"{d.name:<20} {str(d.spin):<5} {i:>2}  {str(rep.constant[i]):<8} {value:>8} {index:>8}")
            if cfg.show_functions and not rep.constant[i]:
                print(f"{'':<31}{c}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q-order", type=int, default=Config.q_order)
    ap.add_argument("--show-functions", action="store_true")
    a = ap.parse_args()
    main(Config(a.q_order, a.show_functions))

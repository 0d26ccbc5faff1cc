"""Classify every corpus nerve and print n per family.

Groupoid nerves use ``nerve_groupoid``, 2-groupoids (abelian 2-groups and
promoted groupoids) use ``nerve_two_groupoid``; both are checked through
``--dim``.
"""
from __future__ import annotations

import argparse
import csv
import sys
import time
from collections import Counter
from dataclasses import dataclass

from kanforge.corpus import abelian_two_groups, groupoid_corpus
from kanforge.groupoid import nerve_groupoid
from kanforge.kan import classify_n_groupoid
from kanforge.two_gpd import nerve_two_groupoid, promote_groupoid


@dataclass
class TableConfig:
    dim: int = 4
    promoted: bool = False
    csv_out: str | None = None


def rows(cfg: TableConfig):
    for c in groupoid_corpus():
        yield "groupoid", c.name, c.G.n_obj, c.G.n_arr, classify_n_groupoid(nerve_groupoid(c.G, cfg.dim), cfg.dim)
    for name, D in abelian_two_groups().items():
        yield "2-group", name, D.sizes[0], D.sizes[1], classify_n_groupoid(nerve_two_groupoid(D, cfg.dim), cfg.dim)
    if cfg.promoted:
        for c in groupoid_corpus():
            X = nerve_two_groupoid(promote_groupoid(c.G), cfg.dim)
            yield "promoted", c.name, c.G.n_obj, c.G.n_arr, classify_n_groupoid(X, cfg.dim)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--promoted", action="store_true", help="also classify promoted groupoids (slow)")
    p.add_argument("--csv-out")
    cfg = TableConfig(**vars(p.parse_args()))
    t0 = time.perf_counter()
    tally = Counter()
    table = [(family, name, o, a, c.n, c.checked_dim) for family, name, o, a, c in rows(cfg)]
    for family, _, _, _, n, _ in table:
        tally[(family, n)] += 1
    if cfg.csv_out:
        with open(cfg.csv_out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["family", "name", "objects", "arrows", "n", "checked_dim"])
            w.writerows(table)
    print(f"{'family':<10} {'n':>4} {'count':>6}")
    for (family, n), k in sorted(tally.items(), key=lambda t: (t[0][0], -1 if t[0][1] is None else t[0][1])):
        print(f"{family:<10} {str(n):>4} {k:>6}")
    print(f"dim {cfg.dim}, {time.perf_counter() - t0:.1f} s", file=sys.stderr)


if __name__ == "__main__":
    main()

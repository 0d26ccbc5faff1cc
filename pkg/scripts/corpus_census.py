"""Count the corpus by number of objects and arrows, and list the 2-groupoids."""
from __future__ import annotations

import argparse
import json
from collections import Counter
from dataclasses import asdict, dataclass

from kanforge.corpus import abelian_two_groups, exhaustive_groupoids, random_groupoids


@dataclass
class CensusConfig:
    max_obj: int = 3
    max_arr: int = 12
    random_count: int = 50
    seed: int = 20240611
    out: str | None = None


def census(cfg: CensusConfig) -> dict:
    exhaustive = exhaustive_groupoids(cfg.max_obj, cfg.max_arr)
    rand = random_groupoids(cfg.random_count, cfg.seed)
    by_shape = Counter((c.G.n_obj, c.G.n_arr) for c in exhaustive)
    return {
        "config": asdict(cfg),
        "exhaustive": len(exhaustive),
        "by_objects": dict(sorted(Counter(c.G.n_obj for c in exhaustive).items())),
        "by_objects_and_arrows": {f"{o},{a}": n for (o, a), n in sorted(by_shape.items())},
        "random": len(rand),
        "random_discrete": sum(c.G.is_discrete() for c in rand),
        "two_groups": {k: list(D.sizes) for k, D in abelian_two_groups().items()},
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(CensusConfig()).items():
        p.add_argument(f"--{name.replace('_', '-')}", type=type(default) if default is not None else str,
                       default=default)
    cfg = CensusConfig(**vars(p.parse_args()))
    res = census(cfg)
    text = json.dumps(res, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


if __name__ == "__main__":
    main()

"""Certify the cover instances and print one line per instance.

For each ``Z -> X`` the line shows |PB(dDelta[k])| and the fibre sizes per
level, then whether the composite with a second cover and the projection
out of ``Z x_X Z`` certify.
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from kanforge.corpus import cover_instances
from kanforge.hyper import compose_hypercovers, fibre_product_ngroupoids


@dataclass
class DemoConfig:
    only: str | None = None
    fibre_products: bool = True


def describe(cert) -> str:
    parts = []
    for l in cert.levels:
        sizes = sorted({len(f) for f in l.fibres})
        parts.append(f"k={l.k}:{l.pb_size}{'=' if l.required == 'iso' else '<'}{sizes}")
    return " ".join(parts)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--only", help="substring filter on instance names")
    p.add_argument("--no-fibre-products", dest="fibre_products", action="store_false")
    cfg = DemoConfig(**vars(p.parse_args()))
    failures = 0
    for inst in cover_instances():
        if cfg.only and cfg.only not in inst.name:
            continue
        t = time.perf_counter()
        _, cf, cg, ch = compose_hypercovers(inst.upper, inst.cover, inst.n, inst.check_dim)
        line = f"{inst.name:<16} n={inst.n} {describe(cg)} composite={'ok' if ch.ok else ch.failure}"
        ok = cf.ok and cg.ok and ch.ok
        if cfg.fibre_products:
            W, _, _, cls, cert = fibre_product_ngroupoids(inst.cover, inst.cover, inst.n, inst.check_dim)
            line += f" W={W.sizes} W-n={cls.n} projection={'ok' if cert.ok else cert.failure}"
            ok = ok and cert.ok and cls.n is not None and cls.n <= inst.n
        failures += not ok
        print(f"{line} ({time.perf_counter() - t:.2f} s)")
    print(f"{failures} failures")


if __name__ == "__main__":
    main()

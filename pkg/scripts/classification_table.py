"""Print the isomorphism classes of irreducibles for a sweep of (p, r, chi)."""

import argparse
from dataclasses import dataclass

from higher_uea.analysis import classify, expected_class_count
from higher_uea.weights import ChiForm


@dataclass
class Config:
    primes: tuple = (3, 5)
    levels: tuple = (0, 1)
    c: int = 1
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5")
    ap.add_argument("--levels", default="0,1")
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    cfg = Config(tuple(int(x) for x in ns.primes.split(",")), tuple(int(x) for x in ns.levels.split(",")), seed=ns.seed)
    print(f"{'p':>2} {'r':>2} {'chi':<11} {'classes':>7} {'expected':>8}  dims (dimN x multiplicity)")
    for p in cfg.primes:
        for r in cfg.levels:
            for kind in ("zero", "nilpotent", "semisimple"):
                chi = ChiForm(kind, p, r, cfg.c if kind == "semisimple" else 0)
                classes = classify(chi, seed=cfg.seed)
                shapes = [(c.dim, c.restriction["dimN"], c.restriction["multiplicity"]) for c in classes]
                summary = ", ".join(f"{d}={n}x{m}^{shapes.count((d, n, m))}" for d, n, m in sorted(set(shapes)))
                print(f"{p:>2} {r:>2} {kind:<11} {len(classes):>7} {expected_class_count(chi):>8}  {summary}")


if __name__ == "__main__":
    main()

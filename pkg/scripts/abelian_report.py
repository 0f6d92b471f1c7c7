"""Structure of the reduced algebras of G_a and G_m, with a brute-force idempotent check at p = 3, r = 0."""

import argparse
from dataclasses import dataclass

from higher_uea.abelian import analyze_ring, build_additive, build_multiplicative, count_idempotents_bruteforce
from higher_uea.field import make_artin_schreier, prime_field


@dataclass
class Config:
    primes: tuple = (3, 5, 7)
    levels: tuple = (0, 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="3,5,7")
    ap.add_argument("--levels", default="0,1")
    ns = ap.parse_args()
    cfg = Config(tuple(int(x) for x in ns.primes.split(",")), tuple(int(x) for x in ns.levels.split(",")))
    cols = ["group", "p", "r", "chi", "dim", "radical_dim", "idempotents", "splitting_degree",
            "base_idempotents", "stated_copies"]
    print(" ".join(f"{c:>16}" for c in cols))
    for p in cfg.primes:
        for r in cfg.levels:
            for c in (0, 1):
                for build in (build_additive, build_multiplicative):
                    rep = analyze_ring(build(p, r, c))
                    print(" ".join(f"{str(rep[k]):>16}" for k in cols))
    gm = build_multiplicative(3, 0, 1)
    print("brute force idempotents of G_m, p=3, r=0, chi=1:",
          "over F_3:", count_idempotents_bruteforce(gm, prime_field(3)),
          "over F_27:", count_idempotents_bruteforce(gm, make_artin_schreier(3, 1)))


if __name__ == "__main__":
    main()

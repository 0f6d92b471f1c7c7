"""Time Verma construction, engine induction and irreducible quotients as p^(r+1) grows."""

import argparse
import time
from dataclasses import dataclass

from higher_uea.analysis import irreducible_quotient, is_irreducible
from higher_uea.modules import baby_verma, induced_verma
from higher_uea.weights import ChiForm, enumerate_weights


@dataclass
class Config:
    cases: tuple = ((3, 1), (5, 1), (3, 2), (7, 1))
    per_case: int = 3


def clock(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--per-case", type=int, default=3)
    cfg = Config(per_case=ap.parse_args().per_case)
    print(f"{'p':>2} {'r':>2} {'chi':<11} {'N':>4} {'verma':>8} {'engine':>8} {'quotient':>9} {'irred':>8}")
    for p, r in cfg.cases:
        for kind in ("zero", "nilpotent", "semisimple"):
            chi = ChiForm(kind, p, r, 1 if kind == "semisimple" else 0)
            tv = te = tq = ti = 0.0
            for lam in enumerate_weights(chi)[: cfg.per_case]:
                tv += clock(lambda: baby_verma(chi, lam))[1]
                te += clock(lambda: induced_verma(chi, lam))[1]
                L, t = clock(lambda: irreducible_quotient(lam))
                tq += t
                ti += clock(lambda: is_irreducible(L))[1]
            n = cfg.per_case
            print(f"{p:>2} {r:>2} {kind:<11} {chi.N:>4} {tv / n:>8.3f} {te / n:>8.3f} {tq / n:>9.3f} {ti / n:>8.3f}")


if __name__ == "__main__":
    main()

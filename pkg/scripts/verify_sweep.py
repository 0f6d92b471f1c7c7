"""Run the full verification battery over several (p, r) and report suite timings."""

import argparse
import time
from dataclasses import dataclass

from higher_uea.cli import RunConfig, run_verify


@dataclass
class Config:
    cases: tuple = ((3, 0), (5, 0), (3, 1), (5, 1), (3, 2))
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cases", default="3:0,5:0,3:1,5:1,3:2", help="comma list of p:r")
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    cfg = Config(tuple(tuple(int(v) for v in c.split(":")) for c in ns.cases.split(",")), ns.seed)
    all_ok = True
    for p, r in cfg.cases:
        t0 = time.perf_counter()
        cert = run_verify(RunConfig("verify", p=p, r=r, seed=cfg.seed, max_dim=p ** (r + 1)))
        all_ok &= cert["ok"]
        print(f"p={p} r={r} ok={cert['ok']} total={time.perf_counter() - t0:.1f}s")
        for name, suite in cert["suites"].items():
            print(f"    {name:<28} {'ok' if suite['ok'] else 'FAIL':<4} {suite['seconds']:>7.2f}s")
    raise SystemExit(0 if all_ok else 2)


if __name__ == "__main__":
    main()

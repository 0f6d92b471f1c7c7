"""Command line entry point: classify, verify, export.

Exit codes: 0 ok, 1 usage error, 2 theorem violation, 3 resource guard.
"""

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass

from .combinatorics import is_prime
from .errors import InvalidChiError, InvalidWeightError, ResourceGuardError, TheoremViolation

EXIT_OK, EXIT_USAGE, EXIT_THEOREM, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    p: int = 3
    r: int = 1
    chi: str = None
    c: int = 1
    lam: tuple = None
    fmt: str = "json"
    seed: int = 0
    out: str = None
    max_dim: int = 81
    inject_fault: bool = False
    obj: str = "verma"

    def validate(self):
        if not is_prime(self.p) or self.p <= 2:
            raise UsageError(f"--p must be an odd prime, got {self.p}")
        if self.r < 0:
            raise UsageError("--r must be nonnegative")
        if self.p ** (self.r + 1) > self.max_dim:
            raise ResourceGuardError(f"Verma dimension {self.p ** (self.r + 1)} exceeds --max-dim {self.max_dim}")

    def chi_form(self, kind=None):
        from .weights import standard_chi

        kind = kind or self.chi or "zero"
        try:
            return standard_chi(kind, self.p, self.r, self.c if kind == "semisimple" else None)
        except InvalidChiError as exc:
            raise UsageError(str(exc)) from exc

    def chi_kinds(self):
        return [self.chi] if self.chi else ["zero", "nilpotent", "semisimple"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="higher-uea", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("classify", "verify", "export"):
        sp = sub.add_parser(name)
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--r", type=int, default=1)
        sp.add_argument("--chi", choices=["zero", "nilpotent", "semisimple"], default=None)
        sp.add_argument("--c", type=int, default=1, help="chi(binom(h, p^r)) for semisimple chi")
        sp.add_argument("--lambda", dest="lam", default=None,
                        help="comma list; the last entry j means theta + j when chi is semisimple")
        sp.add_argument("--format", dest="fmt", choices=["json", "csv"], default="json")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        sp.add_argument("--max-dim", type=int, default=81)
        sp.add_argument("--inject-fault", action="store_true")
        if name == "export":
            sp.add_argument("--object", dest="obj", choices=["verma", "irreducible", "ga", "gm"], default="verma")
    return parser


def parse_config(argv):
    ns = build_parser().parse_args(argv)
    lam = None
    if ns.lam is not None:
        try:
            lam = tuple(int(x) for x in ns.lam.split(","))
        except ValueError as exc:
            raise UsageError(f"--lambda must be a comma list of integers, got {ns.lam!r}") from exc
    return RunConfig(command=ns.command, p=ns.p, r=ns.r, chi=ns.chi, c=ns.c, lam=lam, fmt=ns.fmt,
                     seed=ns.seed, out=ns.out, max_dim=ns.max_dim, inject_fault=ns.inject_fault,
                     obj=getattr(ns, "obj", "verma"))


def _weight(cfg, chi):
    from .weights import make_weight

    if cfg.lam is None:
        raise UsageError("--lambda is required")
    try:
        return make_weight(chi, cfg.lam)
    except InvalidWeightError as exc:
        raise UsageError(str(exc)) from exc


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------- commands


def cmd_classify(cfg):
    from .analysis import classification_to_json, classify

    chi = cfg.chi_form()
    classes = classify(chi, seed=cfg.seed)
    report = classification_to_json(chi, classes)
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lambda", "dim", "members", "dimN", "multiplicity"])
        for cls in classes:
            fmt = lambda lam: " ".join([str(x) for x in lam.low] + [repr(lam.top).replace(" ", "")])
            w.writerow([fmt(cls.representative), cls.dim, "|".join(fmt(m) for m in cls.members),
                        cls.restriction["dimN"], cls.restriction["multiplicity"]])
        _emit(cfg, buf.getvalue())
    else:
        _emit(cfg, _dumps(report))
    return EXIT_OK


def _suite(results, name, fn):
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok = True if detail is None else bool(detail.pop("ok", True))
    except TheoremViolation as exc:
        ok, detail = False, {"error": str(exc)}
    results[name] = {"ok": ok, "seconds": round(time.perf_counter() - t0, 3), **(detail or {})}
    return ok


def run_verify(cfg):
    """Run every invariant suite; returns the certificate dict."""
    from . import linalg as la
    from .abelian import analyze_ring, build_additive, build_multiplicative
    from .algebra import verify_centrality
    from .analysis import (classify, expected_class_count, irreducible_quotient, is_irreducible,
                           kw_divisibility, maximal_submodule, restrict_and_decompose, find_isomorphism)
    from .modules import baby_verma, induced_verma, lift_module, teenage_verma, verify_relations
    from .weights import enumerate_weights

    results = {}
    for kind in cfg.chi_kinds():
        chi = cfg.chi_form(kind)
        weights = enumerate_weights(chi)
        vermas = {lam: baby_verma(chi, lam) for lam in weights}
        tag = kind

        def relations():
            bad = []
            for n, (lam, Z) in enumerate(vermas.items()):
                if cfg.inject_fault and n == 0:
                    Z = Z.copy()
                    Z.E[0][0, 0, 0] = (Z.E[0][0, 0, 0] + 1) % chi.p
                rep = verify_relations(Z)
                cen = verify_centrality(Z)
                if not (rep["ok"] and cen["ok"]):
                    bad.append({"lambda": lam.to_json()["lambda"], "violations": rep["violations"] + cen["violations"]})
            if bad:
                raise TheoremViolation(f"relations fail: {bad[0]['violations'][:3]} at lambda {bad[0]['lambda']}")
            return {"modules": len(vermas)}

        def submodules():
            for lam, Z in vermas.items():
                maximal_submodule(lam, Z, verify=True)
            return {"modules": len(vermas)}

        def dimensions():
            verdicts = {}
            for lam, Z in vermas.items():
                L = irreducible_quotient(lam, Z)
                cert = is_irreducible(L, seed=cfg.seed)
                if cert.verdict is not True:
                    raise TheoremViolation(f"L({lam.to_json()['lambda']}) not certified irreducible ({cert.strategy})")
                verdicts[cert.strategy] = verdicts.get(cert.strategy, 0) + 1
            return {"strategies": verdicts}

        def classification():
            classes = classify(chi, seed=cfg.seed, with_restriction=False)
            return {"classes": len(classes), "expected": expected_class_count(chi)}

        def restriction():
            mults = sorted({restrict_and_decompose(lam).multiplicity for lam in weights})
            return {"multiplicities": mults}

        def cross_validation():
            for lam, Z in vermas.items():
                W = induced_verma(chi, lam)
                if not all(la.equal(a, b) for a, b in zip(Z.matrices(), W.matrices())):
                    raise TheoremViolation(f"engine and closed form differ at {lam.to_json()['lambda']}")
            return {"modules": len(vermas)}

        def lifts():
            count = 0
            for s in range(chi.r):
                chi_s = chi.with_level(s)
                for lam in enumerate_weights(chi_s):
                    lifted = lift_module(irreducible_quotient(lam), chi.r)
                    for name in ("E", "H", "F"):
                        for M in getattr(lifted, name)[: chi.r - s]:
                            if not la.is_zero(M):
                                raise TheoremViolation("lower levels do not act by zero after lifting")
                    count += 1
            return {"lifted": count}

        _suite(results, f"relations[{tag}]", relations)
        _suite(results, f"submodules[{tag}]", submodules)
        _suite(results, f"dimensions[{tag}]", dimensions)
        _suite(results, f"classification[{tag}]", classification)
        _suite(results, f"restriction[{tag}]", restriction)
        _suite(results, f"cross_validation[{tag}]", cross_validation)
        _suite(results, f"lift[{tag}]", lifts)
        if kind != "zero":
            _suite(results, f"divisibility[{tag}]", lambda: kw_divisibility(chi) and {"ok": True})

            def teenage():
                if chi.r == 0:
                    return {"skipped": "r = 0"}
                for lam in weights:
                    T, _ = teenage_verma(irreducible_quotient(lam.restricted()), lam.top, chi)
                    if not verify_relations(T)["ok"] or is_irreducible(T, seed=cfg.seed).verdict is not True:
                        raise TheoremViolation(f"teenage module at {lam.to_json()['lambda']} is not irreducible")
                    if find_isomorphism(T, irreducible_quotient(lam), seed=cfg.seed) is None:
                        raise TheoremViolation(f"teenage module at {lam.to_json()['lambda']} is not L(lambda)")
                return {"modules": len(weights)}

            _suite(results, f"teenage[{tag}]", teenage)

    def abelian():
        out = []
        for c in sorted({0, cfg.c % cfg.p}):
            ga = analyze_ring(build_additive(cfg.p, cfg.r, c))
            gm = analyze_ring(build_multiplicative(cfg.p, cfg.r, c))
            if not ga["local"] or gm["radical_dim"] != 0 or gm["idempotents"] != cfg.p ** (cfg.r + 1):
                raise TheoremViolation(f"abelian ring structure unexpected at chi = {c}")
            out += [ga, gm]
        return {"reports": out}

    _suite(results, "abelian", abelian)
    ok = all(v["ok"] for v in results.values())
    failed = sorted(k for k, v in results.items() if not v["ok"])
    return {"p": cfg.p, "r": cfg.r, "ok": ok, "failed": failed, "suites": results}


def cmd_verify(cfg):
    cert = run_verify(cfg)
    # timings vary run to run; keep the certificate byte-stable
    for v in cert["suites"].values():
        v.pop("seconds", None)
    _emit(cfg, _dumps(cert))
    if not cert["ok"]:
        sys.stderr.write("theorem check failed: " + ", ".join(cert["failed"]) + "\n")
        return EXIT_THEOREM
    return EXIT_OK


def cmd_export(cfg):
    from .abelian import analyze_ring, build_additive, build_multiplicative
    from .analysis import irreducible_quotient
    from .modules import baby_verma

    if cfg.obj in ("ga", "gm"):
        c = cfg.c % cfg.p if cfg.chi == "semisimple" or cfg.chi is None else 0
        A = (build_additive if cfg.obj == "ga" else build_multiplicative)(cfg.p, cfg.r, c)
        obj = analyze_ring(A)
        obj["table"] = [[{"m": int(m), "coeff": int(A.table[k, l, m])} for m in A.table[k, l].nonzero()[0]]
                        for k in range(A.dim) for l in range(A.dim)]
        _emit(cfg, _dumps(obj))
        return EXIT_OK
    chi = cfg.chi_form()
    lam = _weight(cfg, chi)
    rep = baby_verma(chi, lam) if cfg.obj == "verma" else irreducible_quotient(lam)
    obj = rep.to_json()
    obj["weight"] = lam.to_json()
    _emit(cfg, _dumps(obj))
    return EXIT_OK


COMMANDS = {"classify": cmd_classify, "verify": cmd_verify, "export": cmd_export}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        return EXIT_THEOREM
    except ResourceGuardError as exc:
        sys.stderr.write(f"resource guard: {exc}\n")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())

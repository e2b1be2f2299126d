"""Command-line interface.

Exit codes: 0 on success (warnings included), 1 when a verification fails,
2 on usage errors.  Output is byte-identical whatever ``--jobs`` is.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import chains, crystal, plethysm, qchar
from .chains import NoBuiltinSeed, SeedSpec
from .report import Report
from .seedlang import SeedLangError, load

JOBS_ENV = "YOUNGCRYSTAL_JOBS"
MAX_JOBS = 8


class UsageError(Exception):
    pass


class BuildFailure(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    r_values: list[int]
    m: int | None
    fmt: str
    out: str | None
    seed: SeedSpec | None
    jobs: int


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        try:
            jobs = int(env)
        except ValueError:
            raise UsageError(f"{JOBS_ENV} must be an integer, got {env!r}") from None
        if jobs < 1:
            raise UsageError(f"{JOBS_ENV} must be positive")
        return jobs
    return max(1, min(os.cpu_count() or 1, MAX_JOBS))


def _pmap(fn, items: list, jobs: int) -> list:
    # results come back in input order, so output never depends on jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


# -- workers (module level so they pickle) ----------------------------------------

def _character_job(args):
    n, r, seed = args
    return r, str(plethysm.character(n, r, seed))


def _constituents_job(args):
    n, r, seed = args
    rep = plethysm.constituent_report(n, r, seed)
    return r, rep


def _axioms_job(args):
    n, r, seed = args
    return crystal.verify_axioms(crystal.build(n, r, seed))


def _recursion_job(args):
    n, r = args
    return qchar.RECURSIONS[n](r)


# -- commands ------------------------------------------------------------------

def _need_seed(cfg: RunConfig) -> None:
    if cfg.seed is None and cfg.n > 4:
        raise UsageError(f"no builtin seed for n={cfg.n}; pass --seed-file")


def cmd_crystal(cfg: RunConfig) -> tuple[str, int]:
    _need_seed(cfg)
    (r,) = cfg.r_values
    g = crystal.build(cfg.n, r, cfg.seed)
    if cfg.fmt == "dot":
        return g.to_dot(), 0
    if cfg.fmt == "json":
        return g.to_json(), 0
    lines = []
    for comp in g.components():
        lines.append(" -> ".join(str(g.tableau(i)) for i in comp))
    return "\n".join(lines) + "\n", 0


def cmd_scd(cfg: RunConfig) -> tuple[str, int]:
    _need_seed(cfg)
    fam = plethysm.scd(cfg.n, cfg.m, cfg.seed)
    rep = plethysm.verify_scd(fam)
    code = 0 if rep.passed else 1
    if cfg.fmt == "json":
        return fam.to_json(), code
    lines = []
    for c in fam.chains:
        lines.append(" < ".join("(" + ",".join(map(str, p)) + ")" if p else "∅" for p in c))
    lines.append(rep.line())
    return "\n".join(lines) + "\n", code


def cmd_character(cfg: RunConfig) -> tuple[str, int]:
    _need_seed(cfg)
    rows = _pmap(_character_job, [(cfg.n, r, cfg.seed) for r in cfg.r_values], cfg.jobs)
    if cfg.fmt == "json":
        return json.dumps([{"n": cfg.n, "r": r, "character": s} for r, s in rows]) + "\n", 0
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "r", "character"])
        w.writerows([cfg.n, r, s] for r, s in rows)
        return buf.getvalue(), 0
    if len(rows) == 1:
        return rows[0][1] + "\n", 0
    return "".join(f"r={r}: {s}\n" for r, s in rows), 0


def cmd_coeff(cfg: RunConfig, k: int | None) -> tuple[str, int]:
    _need_seed(cfg)
    (r,) = cfg.r_values
    table = plethysm.coefficients(cfg.n, r, cfg.seed)
    if k is not None:
        table = {k: table.get(k, 0)}
    if cfg.fmt == "json":
        return json.dumps({"n": cfg.n, "r": r, "coefficients": {str(a): b for a, b in table.items()}}) + "\n", 0
    if cfg.fmt == "text" and k is not None:
        return f"{table[k]}\n", 0
    return plethysm.coefficient_csv([(cfg.n, r, table)]), 0


def cmd_constituents(cfg: RunConfig) -> tuple[str, int]:
    _need_seed(cfg)
    rows = _pmap(_constituents_job, [(cfg.n, r, cfg.seed) for r in cfg.r_values], cfg.jobs)
    failed = any(not rep.passed for _, rep in rows)
    if cfg.fmt == "json":
        return json.dumps([rep.to_dict() for _, rep in rows], sort_keys=True) + "\n", int(failed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "r", "constituents", "oracle", "closed_form", "status"])
    for r, rep in rows:
        d = rep.details
        status = "fail" if not rep.passed else ("warn" if rep.warnings else "ok")
        w.writerow([cfg.n, r, d["crystal"], d["oracle"], d.get("closed_form", ""), status])
    return buf.getvalue(), int(failed)


def _render_reports(reports: list[Report], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], sort_keys=True, ensure_ascii=False) + "\n"
    lines = []
    for rep in reports:
        lines.append(rep.line())
        lines += [f"  warning: {w}" for w in rep.warnings]
        lines += [f"  failure: {f}" for f in rep.failures]
        lines += [f"  counterexample: {json.dumps(c, sort_keys=True)}" for c in rep.counterexamples]
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig, target: str) -> tuple[str, int]:
    n, rs = cfg.n, cfg.r_values
    if target == "axioms":
        _need_seed(cfg)
        reports = _pmap(_axioms_job, [(n, r, cfg.seed) for r in rs], cfg.jobs)
    elif target == "seed":
        seed = cfg.seed
        if seed is None:
            try:
                seed = chains.builtin_seed(n)
            except NoBuiltinSeed as exc:
                raise UsageError(str(exc)) from None
        r_max = rs[-1]
        reports = [
            chains.verify_problem1(seed, n, r_max),
            crystal.verify_problem2(seed, n, r_max),
            crystal.verify_problem3(seed, n, r_max),
        ]
    elif target == "recursions":
        if n not in qchar.RECURSIONS:
            raise UsageError(f"no recursion identity for n={n}")
        checks = _pmap(_recursion_job, [(n, r) for r in rs if r >= n], cfg.jobs)
        rep = Report(f"recursion n={n} r<={rs[-1]}")
        for c in checks:
            if not c.equal:
                rep.counterexample(c.to_dict())
        rep.details["checked"] = len(checks)
        if cfg.fmt == "csv":
            return qchar.recursion_csv(checks), int(not rep.passed)
        reports = [rep]
    else:
        if n not in plethysm.HW_PREDICATES:
            raise UsageError(f"no printed claims for n={n}")
        reports = [plethysm.printed_claims(n, rs[-1])]
    code = 0 if all(r.passed for r in reports) else 1
    fmt = "json" if cfg.fmt == "json" else "text"
    return _render_reports(reports, fmt), code


def cmd_bench(cfg: RunConfig) -> tuple[str, int]:
    """Build, check all axioms, and compare with the q-binomial, timing each stage."""
    _need_seed(cfg)
    (r,) = cfg.r_values
    t0 = time.perf_counter()
    g = crystal.build(cfg.n, r, cfg.seed)
    t1 = time.perf_counter()
    rep = crystal.verify_axioms(g)
    t2 = time.perf_counter()
    want = qchar.peel(qchar.q_binom(r + 1, cfg.n))
    got = plethysm.character(cfg.n, r, graph=g)
    match = got == want and g.weight_poly() == qchar.q_binom(r + 1, cfg.n)
    t3 = time.perf_counter()
    if not match:
        rep.fail("character differs from the q-binomial")
    out = {
        "n": cfg.n, "r": r, "nodes": len(g), "axioms": "pass" if not rep.counterexamples else "fail",
        "character": "match" if match else "mismatch",
        "seconds": {"build": round(t1 - t0, 3), "axioms": round(t2 - t1, 3), "character": round(t3 - t2, 3)},
    }
    # timings vary between runs by nature; everything else is stable
    if cfg.fmt == "json":
        text = json.dumps(out, sort_keys=True) + "\n"
    else:
        s = out["seconds"]
        text = (
            f"n={cfg.n} r={r} nodes={len(g)} axioms={out['axioms']} character={out['character']}\n"
            f"build {s['build']:.3f}s  axioms {s['axioms']:.3f}s  character {s['character']:.3f}s"
            f"  total {t3 - t0:.3f}s\n"
        )
    return text, 0 if rep.passed else 1


# -- argument handling ------------------------------------------------------------

FORMATS = {
    "crystal": ("dot", "json", "text"),
    "scd": ("json", "text"),
    "character": ("text", "json", "csv"),
    "coeff": ("csv", "text", "json"),
    "constituents": ("csv", "json"),
    "verify": ("text", "json", "csv"),
    "bench": ("text", "json"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="youngcrystal", description="Crystals on plethystic tableaux and SCDs of L(n, m).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, ranges: bool, single_r: bool = True):
        sp.add_argument("--n", type=int, required=True)
        if single_r:
            sp.add_argument("--r", type=int)
        if ranges:
            sp.add_argument("--r-min", type=int)
            sp.add_argument("--r-max", type=int)
        sp.add_argument("--seed-file")
        sp.add_argument("--out")
        sp.add_argument("--jobs", type=int)

    for name in FORMATS:
        sp = sub.add_parser(name)
        if name == "verify":
            sp.add_argument("target", choices=["axioms", "seed", "recursions", "paper-claims"])
        if name == "scd":
            sp.add_argument("--n", type=int, required=True)
            sp.add_argument("--m", type=int, required=True)
            sp.add_argument("--seed-file")
            sp.add_argument("--out")
            sp.add_argument("--jobs", type=int)
        else:
            common(sp, ranges=name in ("character", "constituents", "verify"))
        if name == "coeff":
            sp.add_argument("--k", type=int)
        sp.add_argument("--format", choices=FORMATS[name], default=FORMATS[name][0])
    return p


def _r_values(ns: argparse.Namespace) -> list[int]:
    r = getattr(ns, "r", None)
    lo, hi = getattr(ns, "r_min", None), getattr(ns, "r_max", None)
    if r is not None and (lo is not None or hi is not None):
        raise UsageError("give either --r or --r-min/--r-max, not both")
    if r is not None:
        lo = hi = r
    if hi is None:
        raise UsageError("--r or --r-max is required")
    if lo is None:
        lo = ns.n if ns.command in ("verify", "character", "constituents") else hi
    if lo < 0 or hi < lo:
        raise UsageError(f"empty range r={lo}..{hi}")
    if lo < ns.n:
        raise UsageError(f"r must be at least n={ns.n}")
    return list(range(lo, hi + 1))


def make_config(ns: argparse.Namespace) -> RunConfig:
    if ns.n < 0:
        raise UsageError("--n must be nonnegative")
    seed = None
    if ns.seed_file:
        try:
            seed = load(ns.seed_file)
        except OSError as exc:
            raise UsageError(f"cannot read seed file: {exc}") from None
        except (SeedLangError, chains.SeedError) as exc:
            raise UsageError(f"{ns.seed_file}: {exc}") from None
        if seed.n != ns.n:
            raise UsageError(f"seed file is for n={seed.n}, not n={ns.n}")
    if ns.command == "scd":
        if ns.m < 0:
            raise UsageError("--m must be nonnegative")
        r_values = [ns.n + ns.m - 1]
    else:
        r_values = _r_values(ns)
    if ns.jobs is not None and ns.jobs < 1:
        raise UsageError("--jobs must be positive")
    jobs = ns.jobs if ns.jobs is not None else default_jobs()
    return RunConfig(ns.command, ns.n, r_values, getattr(ns, "m", None), ns.format, ns.out, seed, jobs)


def run(argv: list[str] | None = None) -> tuple[str, int, str | None]:
    """Parse ``argv`` and run the command; returns (output, exit code, out path)."""
    ns = build_parser().parse_args(argv)
    cfg = make_config(ns)
    handlers = {
        "crystal": cmd_crystal,
        "scd": cmd_scd,
        "character": cmd_character,
        "coeff": lambda c: cmd_coeff(c, ns.k),
        "constituents": cmd_constituents,
        "verify": lambda c: cmd_verify(c, ns.target),
        "bench": cmd_bench,
    }
    try:
        text, code = handlers[cfg.command](cfg)
    except NoBuiltinSeed as exc:
        raise UsageError(str(exc)) from None
    except chains.SeedError as exc:
        raise BuildFailure(str(exc)) from None
    return text, code, cfg.out


def main(argv: list[str] | None = None) -> int:
    try:
        text, code, out = run(argv)
    except UsageError as exc:
        print(f"youngcrystal: error: {exc}", file=sys.stderr)
        return 2
    except BuildFailure as exc:
        print(f"youngcrystal: failed: {exc}", file=sys.stderr)
        return 1
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

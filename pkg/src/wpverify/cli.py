"""Command-line driver: ``python3 -m wpverify --identity THM1 --order 30``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bank import IdentityCase, bank
from .errors import ExhaustionError
from .verify import FAIL, PASS, SKIPPED, VerificationReport, random_spec, verify

ORDER_ENV = "WPVERIFY_ORDER"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    order: int = 30
    seeds: int = 3
    identities: tuple = ("all",)
    report: str | None = None
    failFast: bool = False
    jobs: int = 1
    timing: bool = False

    def validate(self):
        if self.order < 5:
            raise ConfigError(f"order must be at least 5, got {self.order}")
        if self.seeds < 1:
            raise ConfigError(f"seeds must be at least 1, got {self.seeds}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return 30
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{ORDER_ENV} must be an integer, got {raw!r}")


def build_parser(default_order: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wpverify",
                                description="Check WP-Bailey pair and Lambert series identities exactly.")
    p.add_argument("--order", type=int, default=default_order,
                   help=f"q-order to compare to (default {default_order}; env {ORDER_ENV})")
    p.add_argument("--seeds", type=int, default=3, help="number of random specializations per identity")
    p.add_argument("--identity", action="append", metavar="ID",
                   help="identity id to run (repeatable, comma separated, or 'all')")
    p.add_argument("--list", action="store_true", help="list identity ids and exit")
    p.add_argument("--report", metavar="PATH", help="write one JSON record per (identity, seed)")
    p.add_argument("--fail-fast", action="store_true", help="stop at the first FAIL")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true", help="include elapsed milliseconds in the report")
    p.add_argument("-q", "--quiet", action="store_true", help="print only the summary")
    return p


def select(cases: list[IdentityCase], wanted) -> list[IdentityCase]:
    ids = []
    for w in wanted or ["all"]:
        ids += [x.strip() for x in w.split(",") if x.strip()]
    if not ids or "all" in ids:
        return list(cases)
    byid = {c.id: c for c in cases}
    unknown = [i for i in ids if i not in byid]
    if unknown:
        raise ConfigError(f"unknown identity: {', '.join(unknown)}")
    seen = []
    for i in ids:
        if byid[i] not in seen:
            seen.append(byid[i])
    return seen


def run_one(case: IdentityCase, seed: int, order: int) -> VerificationReport:
    try:
        spec = random_spec(case, seed)
    except ExhaustionError as e:
        return VerificationReport(case.id, case.paperEq, "-", order, SKIPPED, seed, reason=str(e))
    return verify(case, spec, order)


def _run_by_id(case_id: str, seed: int, order: int) -> VerificationReport:
    case = next(c for c in bank() if c.id == case_id)
    return run_one(case, seed, order)


def write_report(reports, path: str, timing: bool = False) -> None:
    """Newline-delimited JSON, sorted by identity id and seed."""
    rows = sorted(reports, key=lambda r: (r.id, r.seed if r.seed is not None else -1))
    try:
        with open(path, "w", encoding="utf-8") as fh:
            for r in rows:
                fh.write(json.dumps(r.record(timing), ensure_ascii=False) + "\n")
    except OSError as e:
        raise OSError(f"cannot write report to {path}: {e.strerror}") from e


def _line(r: VerificationReport) -> str:
    s = f"{r.status:7} {r.id} seed={r.seed} [{r.spec}] order={r.order}"
    if r.status == FAIL:
        if r.firstMismatchExp is not None:
            s += f" :: {r.equality}: first mismatch at q^{r.firstMismatchExp}: {r.lhsCoeff} != {r.rhsCoeff}"
        else:
            s += f" :: {r.equality}: {r.reason}"
    elif r.status == SKIPPED:
        s += f" :: {r.reason}"
    return s + f" ({r.millis} ms)"


def main(argv=None, cases: list[IdentityCase] | None = None) -> int:
    try:
        default_order = _default_order()
    except ConfigError as e:
        print(f"wpverify: {e}", file=sys.stderr)
        return 2
    parser = build_parser(default_order)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    registry = bank() if cases is None else list(cases)
    if args.list:
        for c in registry:
            print(f"{c.id:14} {c.paperEq}")
        return 0
    cfg = RunConfig(args.order, args.seeds, tuple(args.identity or ["all"]), args.report,
                    args.fail_fast, args.jobs, args.timing)
    try:
        cfg.validate()
        selected = select(registry, args.identity)
    except ConfigError as e:
        print(f"wpverify: {e}", file=sys.stderr)
        return 2

    jobs = [(c, s) for c in selected for s in range(1, cfg.seeds + 1)]
    reports: list[VerificationReport] = []
    emit = (lambda r: None) if args.quiet else (lambda r: print(_line(r), flush=True))
    if cfg.jobs > 1 and cases is None:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futs = [pool.submit(_run_by_id, c.id, s, cfg.order) for c, s in jobs]
            for f in futs:
                r = f.result()
                reports.append(r)
                emit(r)
                if cfg.failFast and r.status == FAIL:
                    for g in futs:
                        g.cancel()
                    break
    else:
        for c, s in jobs:
            r = run_one(c, s, cfg.order)
            reports.append(r)
            emit(r)
            if cfg.failFast and r.status == FAIL:
                break

    if cfg.report:
        try:
            write_report(reports, cfg.report, cfg.timing)
        except OSError as e:
            print(f"wpverify: {e}", file=sys.stderr)
            return 2
    counts = {k: sum(r.status == k for r in reports) for k in (PASS, FAIL, SKIPPED)}
    print(f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped "
          f"({len(selected)} identities, order {cfg.order}, {cfg.seeds} seeds)")
    return 1 if counts[FAIL] else 0


if __name__ == "__main__":
    sys.exit(main())

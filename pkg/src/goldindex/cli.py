"""Command-line front end.

Exit codes: 0 success, 1 internal inconsistency, 2 usage or input error,
3 an even number with no prime pair (the counterexample path).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import TextIO

from . import __version__
from .codec import from_data, to_data
from .effnum import EvenTarget, census, classify_residue
from .errors import GoldbachCounterexample, GoldIndexError, InternalInconsistency
from .index import composite_base_probe, find_collisions, index_table
from .linsys import Variant, build_system, factor_complement
from .orbit import DEFAULT_MAX_J, mult_order, orbit_table, power_step
from .scan import DEFAULT_SIEVE_LIMIT, AuditRecord, PrimeSieve, iter_scan, summarize

log = logging.getLogger("goldindex")

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


class Writer:
    """Serialized output in one of the three formats."""

    def __init__(self, fmt: str, out: TextIO):
        self.fmt = fmt
        self.out = out
        self._csv = None

    def line(self, text: str = "") -> None:
        if self.fmt == "text":
            print(text, file=self.out)

    def record(self, data: dict) -> None:
        if self.fmt == "json":
            print(json.dumps(data, separators=(",", ":")), file=self.out)
        elif self.fmt == "csv":
            flat = {k: _cell(v) for k, v in data.items()}
            if self._csv is None:
                self._csv = csv.DictWriter(self.out, fieldnames=list(flat), lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow(flat)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _target(n2: int) -> EvenTarget:
    return EvenTarget.of(n2)


def cmd_classify(args, w: Writer) -> int:
    t = _target(args.n2)
    c = census(t)
    if w.fmt == "text":
        w.line(f"2N = {t.n2}: {c.s} eff-primes, {c.product_count} eff-products, F = {t.partition_count} eff-partitions")
        w.line("eff-primes:   " + ", ".join(map(str, c.eff_primes)))
        w.line("eff-products: " + (", ".join(map(str, c.eff_products)) or "(none)"))
        w.line(f"boundary {t.n2 - 1} is {'prime' if c.boundary_is_prime else 'composite'}")
        if c.half_is_prime:
            w.line(f"N = {t.half} is prime: {t.n2} = {t.half} + {t.half}")
        if c.s > c.product_count:
            w.line("eff-primes outnumber eff-products")
    elif w.fmt == "json":
        w.record(to_data(c))
    else:
        for r in range(1, t.n2, 2):
            w.record({"n2": t.n2, "residue": r, "eff_class": classify_residue(t, r).value})
    return EXIT_OK


def cmd_orbit(args, w: Writer) -> int:
    t = _target(args.n2)
    f = mult_order(args.base, t)
    j_max = f - 1 if args.max_j is None else args.max_j
    rows = orbit_table(t, args.base, j_max, cap=None if args.no_cap else DEFAULT_MAX_J)
    if w.fmt == "text":
        w.line(f"period f({args.base}, {t.n2}) = {f}; F = {t.partition_count}")
        for row in rows:
            w.line(row.formula(t.n2))
    else:
        for row in rows:
            w.record(to_data(row))
    return EXIT_OK


def _because(t: EvenTarget, base: int, entry) -> str:
    step = power_step(t, base, entry.index)
    m = step.multiplier
    if entry.form.value == "Residue":
        return f"{entry.prime} = {base}^{entry.index} - {m - 1}*{t.n2}"
    return f"{entry.prime} = {m}*{t.n2} - {base}^{entry.index}"


def cmd_indexes(args, w: Writer) -> int:
    t = _target(args.n2)
    table = index_table(t, args.base)
    collisions = find_collisions(table)
    if w.fmt == "text":
        w.line(f"indexes of the eff-primes of {t.n2} based on {args.base} (period {table.period})")
        for e in table.unit_entries + tuple(table.entries.values()):
            w.line(f"J({args.base}, {e.prime}) = {e.index} [{e.form.value}], because {_because(t, args.base, e)}")
        if table.missing:
            w.line("missing: " + ", ".join(map(str, table.missing)))
        for c in collisions:
            w.line(f"collision J({args.base}, {c.p}) = J({args.base}, {c.q}) = {table.entries[c.p].index}: {t.n2} = {c.p} + {c.q}")
        if not collisions:
            w.line("no index collisions")
    elif w.fmt == "json":
        w.record({"index_table": to_data(table), "collisions": to_data(collisions)})
    else:
        for e in table.entries.values():
            w.record({"n2": t.n2, "base": args.base, **to_data(e)})
        for p in table.missing:
            w.record({"n2": t.n2, "base": args.base, "prime": p, "index": None, "form": None})
    return EXIT_OK


def _product(fact, primes) -> str:
    parts = []
    for p, k in fact.factors(primes).items():
        parts.append(f"{p}^{k}" if k > 1 else str(p))
    return "*".join(parts)


def cmd_system(args, w: Writer) -> int:
    t = _target(args.n2)
    table = index_table(t, args.base)
    variant = None if args.variant is None else Variant[args.variant.capitalize()]
    system = build_system(t, table, variant)
    c = census(t)
    if w.fmt == "json":
        w.record(to_data(system))
        return EXIT_OK
    if w.fmt == "csv":
        for row in system.rows:
            w.record({"n2": t.n2, "base": args.base, "prime": row.prime, "q_value": row.q_value,
                      "m_value": row.m_value, "index": table.entries[row.prime].index, "rhs": row.rhs})
        return EXIT_OK
    f = table.partition_period
    w.line(f"index-likes based on {args.base} for {t.n2} ({system.variant.value} variant, modulus {f})")
    for row in system.rows:
        fact = factor_complement(t, row.prime)
        terms = [(p, k) for p, k in fact.factors(c.eff_primes).items()]
        sym = " + ".join(f"{k}*J_{p}" if k > 1 else f"J_{p}" for p, k in terms)
        num = " + ".join(f"{k}*{table.entries[p].index}" if k > 1 else str(table.entries[p].index) for p, k in terms)
        j = table.entries[row.prime].index
        w.line(f"{t.n2} = {row.prime} + {_product(fact, c.eff_primes)}")
        w.line(f"  Q_{row.prime} = {sym} (= {num} = {row.q_value} = {row.m_value}*{f} + J_{row.prime}, J_{row.prime} = {j})")
    for wit in system.witnesses:
        w.line(f"prime complement: {t.n2} = {wit.p} + {wit.q}")
    if system.skipped:
        w.line("rows not formed (index missing): " + ", ".join(map(str, system.skipped)))
    cl = system.closing
    if system.variant is Variant.Anchored:
        w.line(f"closing row: J_{system.anchor} = {cl.rhs}")
    else:
        tail = f" = {cl.m_x}*{table.period} + 1" if cl.sum_is_one_mod_f else f" (not 1 mod {table.period})"
        w.line(f"closing row: sum of J = {cl.rhs}{tail}")
    n_rows = len(system.rows) + 1
    w.line(f"rank = {system.rank} over {n_rows} rows and {system.unknowns} unknowns; "
           f"{'consistent' if system.rank == system.augmented_rank else 'INCONSISTENT'}")
    if system.dependency is None:
        w.line("dependency: none (rows are independent)")
    else:
        w.line("dependency: " + " ".join(str(x) for x in system.dependency))
    return EXIT_OK


def cmd_probe(args, w: Writer) -> int:
    t = _target(args.n2)
    probe = composite_base_probe(t)
    if w.fmt != "text":
        w.record(to_data(probe))
        return EXIT_OK
    w.line(f"composite base P = product of {len(probe.factor_multiset)} eff-primes of {t.n2}")
    w.line(f"P mod {t.n2} = {probe.base_residue}; P_x = {probe.px}; P_y = {probe.py}; period = {probe.period}")
    if probe.degenerate:
        w.line("degenerate: P == 1, every eff-prime is missing")
    w.line(f"indexed {len(probe.per_prime.entries)} of {len(probe.factor_multiset)} eff-primes; missing {probe.missing_count}")
    if probe.index_sum is not None:
        verdict = f"holds, m_x = {probe.probe_m_x}" if probe.sum_congruence_holds else "does not hold"
        w.line(f"sum of indexes = {probe.index_sum}; sum == 1 (mod {probe.period}) {verdict}")
    return EXIT_OK


class Cache:
    """Append-only JSON-lines file of audit records keyed by (n2, version, mode)."""

    def __init__(self, path: Path, full: bool):
        self.path = path
        self.mode = "full" if full else "sieve"

    def load(self, lo: int, hi: int) -> dict[int, AuditRecord]:
        out: dict[int, AuditRecord] = {}
        if not self.path.exists():
            return out
        with self.path.open() as fh:
            for line in fh:
                try:
                    item = json.loads(line)
                except json.JSONDecodeError:
                    continue
                if item.get("version") != __version__ or item.get("mode") != self.mode:
                    continue
                rec = from_data(AuditRecord, item["record"])
                if lo <= rec.n2 <= hi:
                    out[rec.n2] = rec
        return out

    def append(self, records: Iterable[AuditRecord]) -> Iterator[AuditRecord]:
        with self.path.open("a") as fh:
            for rec in records:
                fh.write(json.dumps({"version": __version__, "mode": self.mode, "n2": rec.n2,
                                     "record": to_data(rec)}, separators=(",", ":")) + "\n")
                fh.flush()
                yield rec


def _merged(cached: dict[int, AuditRecord], fresh: Iterator[AuditRecord]) -> Iterator[AuditRecord]:
    pending = sorted(cached.items())
    i = 0
    for rec in fresh:
        while i < len(pending) and pending[i][0] < rec.n2:
            yield pending[i][1]
            i += 1
        yield rec
    for _, rec in pending[i:]:
        yield rec


def _record_line(r: AuditRecord) -> str:
    wit = f"{r.smallest_witness[0]} + {r.smallest_witness[1]}" if r.smallest_witness else "NONE"
    text = f"{r.n2}: s={r.s} products={r.product_count} witness={wit}"
    if r.full:
        probe = r.composite_probe_summary
        text += (f" coverage_base={r.coverage_base_found} collisions={r.collision_witness_count}"
                 f" criterion_mismatch={r.paper_criterion_mismatch}"
                 f" probe(f={probe.period}, missing={probe.missing_count}, sum==1:{probe.sum_congruence_holds})")
    return text


def _run_range(args, w: Writer, full: bool, audit: bool) -> int:
    lo, hi = args.lo, args.hi
    cache = Cache(Path(args.cache), full) if args.cache else None
    cached = cache.load(lo, hi) if cache else {}
    fresh = iter_scan(lo, hi, full=full, jobs=args.jobs, sieve_limit=args.sieve_limit, skip=cached)
    if cache:
        fresh = cache.append(fresh)
    records = []
    code = EXIT_OK
    try:
        for rec in _merged(cached, fresh):
            records.append(rec)
            if not rec.has_sieve_witness:
                raise GoldbachCounterexample(rec)
            if not args.summary_only:
                w.record(to_data(rec)) if w.fmt != "text" else w.line(_record_line(rec))
    except GoldbachCounterexample as exc:
        w.record(to_data(exc.record)) if w.fmt != "text" else w.line(_record_line(exc.record))
        print(f"COUNTEREXAMPLE: no prime pair for {exc.record.n2}", file=sys.stderr)
        code = EXIT_COUNTEREXAMPLE
    summary = summarize(records, PrimeSieve(hi, max_limit=args.sieve_limit), lo, hi)
    _emit_summary(summary, w, audit)
    return code


def _emit_summary(s, w: Writer, audit: bool) -> None:
    if w.fmt == "json":
        w.record({"summary": to_data(s)})
        return
    if w.fmt == "csv":
        return
    w.line(f"summary: {s.count} even numbers in [{s.lo}, {s.hi}], Goldbach witness for "
           f"{s.witness_count} ({100 * s.witness_rate:.2f}%)")
    w.line(f"eff-primes outnumber eff-products for {s.pigeonhole_count} of them")
    if not s.full:
        return
    w.line(f"coverage base found for {s.coverage_count} ({100 * s.coverage_fraction:.2f}%); "
           f"no single coverage base for {len(s.no_coverage)}")
    w.line(f"bases where 'f = F' disagrees with full coverage: present for {s.criterion_mismatch_count} targets")
    w.line(f"index-collision witnesses: {s.collision_witness_total}, sieve-unconfirmed: {len(s.unconfirmed_collisions)}")
    w.line(f"targets with a coverage base but no collision: {len(s.covered_without_collision)}")
    if audit and s.no_coverage:
        w.line("no coverage base: " + ", ".join(map(str, s.no_coverage)))
        holds = sum(p.sum_congruence_holds for _, p in s.no_coverage_probes)
        complete = sum(p.missing_count == 0 for _, p in s.no_coverage_probes)
        w.line(f"composite-base probe on those: all eff-primes indexed for {complete}, "
               f"index sum == 1 (mod f) for {holds}")
        for n2, p in s.no_coverage_probes:
            w.line(f"  probe {n2}: f={p.period} missing={p.missing_count} sum==1:{p.sum_congruence_holds}")


def cmd_scan(args, w: Writer) -> int:
    return _run_range(args, w, full=args.full, audit=False)


def cmd_audit(args, w: Writer) -> int:
    return _run_range(args, w, full=not args.sieve_only, audit=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scan/audit")
    common.add_argument("--max-j", type=int, default=None, help="last exponent listed by orbit")
    common.add_argument("--no-cap", action="store_true", help=f"allow --max-j beyond {DEFAULT_MAX_J}")
    common.add_argument("--cache", default=None, help="append-only record cache for scan/audit")
    common.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="goldindex", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="eff-primes and eff-products of 2N")
    p.add_argument("n2", type=int)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbit", parents=[common], help="power orbit table of a base")
    p.add_argument("n2", type=int)
    p.add_argument("base", type=int)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("indexes", parents=[common], help="index table and collisions")
    p.add_argument("n2", type=int)
    p.add_argument("base", type=int)
    p.set_defaults(func=cmd_indexes)

    p = sub.add_parser("system", parents=[common], help="index-like rows and rank analysis")
    p.add_argument("n2", type=int)
    p.add_argument("base", type=int)
    p.add_argument("--variant", choices=("anchored", "summed"), default=None)
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("probe", parents=[common], help="composite-base probe")
    p.add_argument("n2", type=int)
    p.set_defaults(func=cmd_probe)

    for name, fn in (("scan", cmd_scan), ("audit", cmd_audit)):
        p = sub.add_parser(name, parents=[common], help=f"{name} a range of even numbers")
        p.add_argument("lo", type=int)
        p.add_argument("hi", type=int)
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--sieve-only", action="store_true", help="sieve witness and counts only")
        mode.add_argument("--full", action="store_true", help="index audit per even number")
        p.add_argument("--summary-only", action="store_true", help="suppress per-record output")
        p.set_defaults(func=fn)
    return parser


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    w = Writer(args.format, out or sys.stdout)
    try:
        return args.func(args, w)
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GoldIndexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

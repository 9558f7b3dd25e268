"""Command line front end: ``metakappa <analyze|table|verify|counterexample>``.

Exit codes: 0 success, 2 usage or group-spec error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable, Optional

from .bounds import kappa
from .errors import MetakappaError
from .lattice import (
    divisors,
    enumerate_gamma,
    is_normal_descriptor,
    kmn_normal_order,
    normal_orders,
    quotient_params,
    subgroup_orders,
)
from .presentation import (
    DEFAULT_MAX_ORDER,
    PresentationParams,
    build_table,
    cyclic_params,
    kmn_params,
    validate_params,
)
from .solver import OPTIMAL, SearchBudget, exact_mu, mu_exceeds
from .witness import WitnessPair, construct_witness, verify_witness

log = logging.getLogger("metakappa")

CSV_FIELDS = (
    "m", "n_exp", "g", "h", "r", "s",
    "kappa", "dkappa", "nkappa", "mu", "status",
    "witness_a", "witness_b",
)
KNOWN_FAILING_PAIRS = ((5, 9), (6, 8), (6, 9), (8, 9), (9, 9))
DEFAULT_COUNTEREXAMPLE_PAIRS = ((5, 9), (6, 8))


class UsageError(Exception):
    pass


@dataclass
class ResultRecord:
    m: int
    n_exp: int
    g: int
    h: int
    r: int
    s: int
    kappa: int
    dkappa: int
    nkappa: int
    mu: Optional[int]
    status: str
    witness_a: str
    witness_b: str

    @property
    def key(self) -> tuple[int, ...]:
        return (self.m, self.n_exp, self.g, self.h, self.r, self.s)


class ResultCache:
    """Append-only JSON-lines store of solved cells.

    Only optimal records are reused, and only after the stored witness has
    been re-multiplied and found to give the stored value.
    """

    def __init__(self, path: Path):
        self.path = Path(path)
        self.records: dict[tuple[int, ...], ResultRecord] = {}
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        names = [f.name for f in fields(ResultRecord)]
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    rec = ResultRecord(**{k: obj[k] for k in names})
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("%s:%d: skipping corrupt cache line (%s)", self.path, lineno, exc)
                    continue
                self.records[rec.key] = rec

    def get(self, params: PresentationParams, r: int, s: int) -> Optional[ResultRecord]:
        rec = self.records.get(params.key + (r, s))
        if rec is None or rec.status != OPTIMAL:
            return None
        table = build_table(params)
        try:
            a, b = table.decode(rec.witness_a), table.decode(rec.witness_b)
        except ValueError:
            return None
        if len(a) != r or len(b) != s or len(table.product(a, b)) != rec.mu:
            log.warning("cache entry %s failed re-verification; recomputing", rec.key)
            return None
        return rec

    def put(self, rec: ResultRecord) -> None:
        self.records[rec.key] = rec
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(asdict(rec)) + "\n")


def parse_group(args: argparse.Namespace) -> tuple[PresentationParams, Optional[tuple[int, int, int]]]:
    """Group presentation plus its (m, n, g) when it is a K_{m,n}."""
    given = [x for x in (args.kmn, args.raw, args.named) if x is not None]
    if len(given) != 1:
        raise UsageError("give exactly one of --kmn, --raw, --named")
    try:
        if args.kmn is not None:
            m, n, g = _ints(args.kmn, 3)
            return kmn_params(m, n, g), (m, n, g)
        if args.raw is not None:
            params = validate_params(*_ints(args.raw, 4))
            return params, _as_kmn(params)
        name = args.named.strip().lower()
        if name == "c7xc3":
            return validate_params(7, 3, 0, 2), None
        kind, _, value = name.partition(":")
        if not value:
            raise UsageError(f"unknown group name {args.named!r}")
        k = int(value)
        if kind == "dihedral":
            return kmn_params(k, 1, 0), (k, 1, 0)
        if kind == "dicyclic":
            return kmn_params(2 * k, 1, k), (2 * k, 1, k)
        if kind == "cyclic":
            return cyclic_params(k), None
        raise UsageError(f"unknown group name {args.named!r}")
    except (MetakappaError, ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from exc


def _ints(text: str, count: int) -> list[int]:
    parts = [int(p) for p in text.split(",")]
    if len(parts) != count:
        raise UsageError(f"expected {count} comma-separated integers, got {text!r}")
    return parts


def _as_kmn(params: PresentationParams) -> Optional[tuple[int, int, int]]:
    m = params.m
    if params.n_exp % 2 or params.h != (m - 1) % m:
        return None
    if params.g not in ({0, m // 2} if m % 2 == 0 else {0}):
        return None
    return m, params.n_exp // 2, params.g


def parse_pairs(text: Optional[str], order: int) -> list[tuple[int, int]]:
    if text is None:
        return [(r, s) for r in range(1, order + 1) for s in range(r, order + 1)]
    pairs = []
    for item in filter(None, text.split(",")):
        try:
            r, s = (int(v) for v in item.split(":"))
        except ValueError as exc:
            raise UsageError(f"bad pair {item!r}; expected r:s") from exc
        if not (1 <= r <= order and 1 <= s <= order):
            raise UsageError(f"pair {item} outside [1, {order}]")
        pairs.append((r, s))
    return pairs


def _budget(args: argparse.Namespace) -> SearchBudget:
    try:
        return SearchBudget(args.budget_nodes, args.budget_seconds, args.lower_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def solve_cell(
    params: PresentationParams,
    r: int,
    s: int,
    budget: SearchBudget,
    cache: Optional[ResultCache],
) -> ResultRecord:
    if cache is not None:
        hit = cache.get(params, r, s)
        if hit is not None:
            return hit
    table = build_table(params)
    prof = kappa(params, r, s)
    res = exact_mu(table, r, s, budget)
    rec = ResultRecord(
        *params.key, r, s, prof.kappa, prof.dkappa, prof.nkappa,
        res.value, res.status,
        res.witness.A.encode(table), res.witness.B.encode(table),
    )
    if cache is not None:
        cache.put(rec)
    return rec


def check_record(params: PresentationParams, rec: ResultRecord) -> Optional[str]:
    """Reason the row fails verification, or None."""
    table = build_table(params)
    a, b = table.decode(rec.witness_a), table.decode(rec.witness_b)
    size = verify_witness(table, WitnessPair(a, b, rec.mu, 1), rec.r, rec.s)
    if size != rec.mu:
        return f"witness gives {size}, record says {rec.mu}"
    if rec.mu < max(rec.r, rec.s):
        return "mu below max(r, s)"
    if rec.status == OPTIMAL and not rec.dkappa <= rec.mu <= rec.nkappa:
        return f"sandwich violated: {rec.dkappa} <= {rec.mu} <= {rec.nkappa} fails"
    if rec.status != OPTIMAL and rec.mu < rec.dkappa:
        return "upper bound below dkappa"
    return None


def write_records(records: Iterable[ResultRecord], fmt: str, witnesses: bool, out) -> None:
    rows = []
    for rec in records:
        row = asdict(rec)
        if not witnesses:
            row["witness_a"] = row["witness_b"] = ""
        rows.append(row)
    if fmt == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    out.write(buf.getvalue())


def analyze_report(params: PresentationParams, kmn: Optional[tuple[int, int, int]]) -> dict:
    gamma = enumerate_gamma(params)
    subgroups = []
    for d in gamma:
        normal = is_normal_descriptor(params, d)
        entry = {"k": d.k, "l": d.l, "beta": d.beta, "normal": normal}
        if normal:
            entry["quotient"] = list(quotient_params(params, d).key)
        subgroups.append(entry)
    report = {
        "omega": list(params.key),
        "order": params.order,
        "abelian": params.is_abelian,
        "subgroup_count": len(gamma),
        "subgroups": subgroups,
        "normal_orders": sorted(normal_orders(params)),
        "subgroup_orders": sorted(subgroup_orders(params)),
    }
    if kmn is not None:
        m, n, g = kmn
        lattice_normal = normal_orders(params)
        rows = []
        for k in divisors(params.order):
            fast = kmn_normal_order(m, n, g, k)
            rows.append({"k": k, "predicate": fast, "lattice": k in lattice_normal})
        report["kmn"] = {"m": m, "n": n, "g": g, "normal_order_check": rows}
        report["non_normal_orders"] = [row["k"] for row in rows if not row["lattice"]]
    return report


def _print_report(report: dict, out) -> None:
    w = out.write
    w(f"group {tuple(report['omega'])}  order {report['order']}"
      f"{'  (abelian)' if report['abelian'] else ''}\n")
    w(f"subgroups: {report['subgroup_count']}\n")
    w("   k    l  beta  normal  quotient\n")
    for e in report["subgroups"]:
        q = tuple(e["quotient"]) if "quotient" in e else ""
        w(f"{e['k']:4d} {e['l']:4d} {e['beta']:5d}  {'yes' if e['normal'] else 'no':6s}  {q}\n")
    w(f"N(G) = {report['normal_orders']}\n")
    w(f"H(G) = {report['subgroup_orders']}\n")
    if "kmn" in report:
        k = report["kmn"]
        w(f"K_({k['m']},{k['n']}) g={k['g']}: divisor  predicate  lattice\n")
        for row in k["normal_order_check"]:
            flag = "" if row["predicate"] == row["lattice"] else "  MISMATCH"
            w(f"  {row['k']:6d}  {str(row['predicate']):9s}  {row['lattice']}{flag}\n")
        w(f"non-normal orders: {report['non_normal_orders']}\n")


def cmd_analyze(args, out) -> int:
    params, kmn = parse_group(args)
    report = analyze_report(params, kmn)
    if args.format == "json":
        out.write(json.dumps(report, indent=1) + "\n")
    else:
        _print_report(report, out)
    if "kmn" in report and any(
        row["predicate"] != row["lattice"] for row in report["kmn"]["normal_order_check"]
    ):
        return 3
    return 0


def _open_cache(args) -> Optional[ResultCache]:
    return ResultCache(Path(args.cache)) if args.cache else None


def cmd_table(args, out) -> int:
    params, _ = parse_group(args)
    budget = _budget(args)
    pairs = parse_pairs(args.pairs, params.order)
    cache = _open_cache(args)
    records, failure = [], None
    for r, s in pairs:
        rec = solve_cell(params, r, s, budget, cache)
        records.append(rec)
        problem = check_record(params, rec)
        if problem and failure is None:
            failure = f"{params} ({r}, {s}): {problem}"
    write_records(records, args.format or "csv", args.witnesses, out)
    if failure:
        print(f"verification failed: {failure}", file=sys.stderr)
        return 3
    return 0


def kmn_family(max_order: int) -> list[tuple[int, int, int]]:
    out = []
    for m in range(1, max_order + 1):
        for n in range(1, max_order + 1):
            if 2 * m * n > max_order:
                break
            for g in sorted({0, m // 2} if m % 2 == 0 else {0}):
                out.append((m, n, g))
    return out


def cmd_verify(args, out) -> int:
    if args.max_order < 1 or args.max_order > DEFAULT_MAX_ORDER:
        raise UsageError(f"--max-order must be in [1, {DEFAULT_MAX_ORDER}]")
    budget = _budget(args)
    groups = cells = solved = 0
    for m, n, g in kmn_family(args.max_order):
        params = kmn_params(m, n, g)
        table = build_table(params)
        groups += 1
        for r in range(1, params.order + 1):
            for s in range(1, params.order + 1):
                prof = kappa(params, r, s)
                try:
                    pair = construct_witness(params, r, s)
                    size = verify_witness(table, pair, r, s)
                except MetakappaError as exc:
                    print(f"FAIL m={m} n={n} g={g} r={r} s={s}: {exc}", file=out)
                    return 3
                cells += 1
                if size > prof.kappa:
                    print(f"FAIL m={m} n={n} g={g} r={r} s={s}: |AB|={size} > kappa={prof.kappa}", file=out)
                    return 3
                if args.witness_only:
                    continue
                res = exact_mu(table, r, s, budget)
                if res.status == OPTIMAL:
                    solved += 1
                    if res.value != prof.kappa:
                        print(f"FAIL m={m} n={n} g={g} r={r} s={s}: mu={res.value} != kappa={prof.kappa}", file=out)
                        return 3
    mode = "witness only" if args.witness_only else f"{solved} cells certified optimal"
    print(f"PASS: {groups} groups K_(m,n) with 2mn <= {args.max_order}, {cells} cells, {mode}", file=out)
    return 0


def cmd_counterexample(args, out) -> int:
    if all(x is None for x in (args.kmn, args.raw, args.named)):
        args.named = "c7xc3"
    params, _ = parse_group(args)
    pairs = parse_pairs(args.pairs, params.order) if args.pairs else list(DEFAULT_COUNTEREXAMPLE_PAIRS)
    budget = _budget(args)
    cache = _open_cache(args)
    table = build_table(params)
    records, ok = [], True
    for r, s in pairs:
        prof = kappa(params, r, s)
        above = mu_exceeds(table, r, s, prof.kappa, budget)
        rec = solve_cell(params, r, s, budget, cache)
        records.append(rec)
        verdict = {True: "mu > kappa", False: "mu = kappa", None: "undecided"}[above]
        print(f"({r}, {s}): kappa={prof.kappa} nkappa={prof.nkappa} mu={rec.mu} [{rec.status}] {verdict}",
              file=sys.stderr)
        if above is not True or rec.status != OPTIMAL or check_record(params, rec):
            ok = False
    write_records(records, args.format or "csv", args.witnesses, out)
    return 0 if ok else 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kmn", metavar="m,n,g")
    common.add_argument("--raw", metavar="m,nexp,g,h")
    common.add_argument("--named", metavar="NAME",
                        help="dihedral:n, dicyclic:n, cyclic:N or c7xc3")
    common.add_argument("--pairs", metavar="r:s,...")
    common.add_argument("--max-order", type=int, default=24)
    common.add_argument("--budget-nodes", type=int, default=10**9)
    common.add_argument("--budget-seconds", type=float, default=1800.0)
    common.add_argument("--lower-bound", choices=("dkappa", "trivial"), default="dkappa")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--cache", metavar="PATH")
    common.add_argument("--witnesses", action="store_true")
    common.add_argument("--witness-only", action="store_true")

    parser = argparse.ArgumentParser(prog="metakappa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="subgroup lattice report")
    sub.add_parser("table", parents=[common], help="kappa / mu table as CSV or JSON")
    sub.add_parser("verify", parents=[common], help="sweep every K_(m,n) up to --max-order")
    sub.add_parser("counterexample", parents=[common], help="certify mu > kappa (default C7 x| C3)")
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "table": cmd_table,
    "verify": cmd_verify,
    "counterexample": cmd_counterexample,
}


def main(argv: Optional[list[str]] = None, out=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"metakappa: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

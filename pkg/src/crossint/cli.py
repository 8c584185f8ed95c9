"""Command-line driver: sweeps, searches, family utilities, reports.

Subcommands
-----------
sweep-inequalities   evaluate the inequality grid, streaming one JSON record
                     per point to --out, with a CSV/JSON summary and
                     crash-safe --resume
search               exact product/sum optimum at one (n, k, t), by brute
                     force or the generating-set scan, witnesses included
frankl               r-window family sizes at one (n, k, t) as CSV, with the
                     maximizer, ties, and the threshold regime
compress             left-compress a family file by simultaneous shifts
genset               minimal generating set of a family file, or expand a
                     generating set back to its k-uniform family
verify-case4         explicit-construction checks at one (n, k)
verify-main-small    search-based confirmation of the product bound

Exit codes: 0 when every executed check passes, 1 on usage errors, 2 on any
violation, integrity failure, or capacity refusal.  Machine output goes to
--out ("-" means standard output; with CROSSINT_OUT_DIR set, bare subcommands
default to files under that directory); the human summary goes to standard
error.  Record streams are deterministic: the same flags always produce
byte-identical output, and a resumed sweep reproduces the fresh stream.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, TextIO

from .compression import is_left_compressed, left_compress
from .errors import (
    CapacityError,
    CrossIntError,
    DomainError,
    IntegrityError,
    UsageError,
)
from .families import (
    WORD_CAP,
    UniformFamily,
    elements_of,
    family_to_text,
    read_family,
    write_family,
)
from .frankl import FranklParams, ak_regime, frankl_max, frankl_size, valid_r_range
from .gensets import (
    EXPAND_CAP,
    GenSet,
    genset_to_text,
    minimal_genset,
    read_genset,
    size_from_genset,
    upset_k,
    write_genset,
)
from .inequalities import VerificationRecord, sweep
from .search import (
    MainTheoremReport,
    SearchResult,
    Section4Report,
    brute_force_best,
    genset_search_best_product,
    verify_main_theorem_small,
    verify_section4_constructions,
)

#: Environment variable naming the default output directory for --out.
OUT_DIR_ENV = "CROSSINT_OUT_DIR"

#: Canonical check names, in report order, for summaries of record streams.
CHECK_ORDER = (
    "thm32",
    "ratio_identity",
    "lemma_f",
    "lemma_g",
    "lemma_h",
    "lemma_phi",
    "equa1",
    "equac2",
    "st",
    "equac1",
    "equac3",
    "appendix",
)

_STATUSES = ("holds", "excluded", "violated", "skipped")

_LEMMAS = ("lemma_f", "lemma_g", "lemma_h", "lemma_phi")


# ---------------------------------------------------------------------------
# Record-stream digestion and summary emission


@dataclass
class Campaign:
    """A resumable record-producing run: command, ranges, sink, marker.

    The resume marker is the canonical (t, k, n, s, i) tuple of the last
    complete record already on disk, recovered by parsing the stream itself
    (never a byte offset), so partially written tails are trimmed instead of
    corrupting a resumed run."""

    command: str
    params: dict[str, int]
    out_path: str
    resume_marker: tuple[int, int, int, int, int] | None = None


@dataclass
class RecordDigest:
    """Running totals over a stream of verification records."""

    records: int = 0
    status_counts: dict[str, dict[str, int]] = field(default_factory=dict)
    min_slack: dict[str, int] = field(default_factory=dict)
    min_ratio: Fraction | None = None
    violations: list[tuple[int, int, int, int, int, str]] = field(default_factory=list)
    last_point: tuple[int, int, int, int, int] | None = None

    VIOLATION_CAP = 1000

    def absorb(self, record: VerificationRecord) -> None:
        self.records += 1
        self.last_point = record.point
        if record.checks.get("thm32") != "excluded":
            ratio = Fraction(record.t_num, record.t_den)
            if self.min_ratio is None or ratio < self.min_ratio:
                self.min_ratio = ratio
        violated = []
        for name, status in record.checks.items():
            bucket = self.status_counts.setdefault(name, {})
            bucket[status] = bucket.get(status, 0) + 1
            if status == "violated":
                violated.append(name)
        for name in _LEMMAS:
            if record.checks.get(name) == "excluded":
                continue
            slack_text = record.values.get(name + "_slack")
            if slack_text is None:
                continue
            slack = int(slack_text)
            if name not in self.min_slack or slack < self.min_slack[name]:
                self.min_slack[name] = slack
        if violated:
            if len(self.violations) < self.VIOLATION_CAP:
                self.violations.append(
                    (
                        record.n,
                        record.k,
                        record.s,
                        record.i,
                        record.t,
                        ",".join(violated),
                    )
                )

    @property
    def violation_count(self) -> int:
        counts = 0
        for bucket in self.status_counts.values():
            counts += bucket.get("violated", 0)
        return counts

    def check_names(self) -> tuple[str, ...]:
        extra = sorted(set(self.status_counts) - set(CHECK_ORDER))
        return tuple(CHECK_ORDER) + tuple(extra)

    def min_value_text(self, name: str) -> str:
        if name == "thm32":
            return "" if self.min_ratio is None else str(self.min_ratio)
        if name in _LEMMAS and name in self.min_slack:
            return str(Fraction(self.min_slack[name]))
        return ""

    def to_csv(self) -> str:
        lines = ["check,holds,excluded,violated,skipped,min_value"]
        lines.append(f"records,{self.records},,,,")
        for name in self.check_names():
            bucket = self.status_counts.get(name, {})
            cells = ",".join(str(bucket.get(status, 0)) for status in _STATUSES)
            lines.append(f"{name},{cells},{self.min_value_text(name)}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "records": self.records,
            "checks": {
                name: {
                    status: self.status_counts.get(name, {}).get(status, 0)
                    for status in _STATUSES
                }
                for name in self.check_names()
            },
            "min_slack": {
                name: str(Fraction(value)) for name, value in sorted(self.min_slack.items())
            },
            "thm32_min_ratio": None if self.min_ratio is None else str(self.min_ratio),
            "violations": [list(v) for v in self.violations],
            "last_point": list(self.last_point) if self.last_point else None,
        }


def parse_record_line(lineno: int, line: str) -> VerificationRecord:
    """One JSON record line to a verification record, or integrity error."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise IntegrityError(f"line {lineno}: not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise IntegrityError(f"line {lineno}: record must be a JSON object")
    try:
        return VerificationRecord.from_json_obj(obj)
    except IntegrityError as exc:
        raise IntegrityError(f"line {lineno}: {exc}") from None


def digest_lines(lines: Iterable[str]) -> RecordDigest:
    """Digest a JSON-lines record stream; malformed lines name their number."""
    digest = RecordDigest()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        digest.absorb(parse_record_line(lineno, line))
    return digest


def emit_summary(lines: Iterable[str]) -> tuple[str, str]:
    """CSV and JSON summary texts for a JSON-lines record stream.

    An empty stream yields the zeroed summary over the canonical checks.
    Identical streams always yield byte-identical summaries."""
    digest = digest_lines(lines)
    json_text = json.dumps(digest.to_json_obj(), sort_keys=True, indent=2) + "\n"
    return digest.to_csv(), json_text


def record_to_line(record: VerificationRecord) -> str:
    """The canonical one-line serialization of a record (deterministic)."""
    return json.dumps(record.to_json_obj(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Output plumbing


def resolve_out(out: str | None, default_name: str) -> str:
    """--out value, or a file under the default output directory, or "-"."""
    if out:
        return out
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        return os.path.join(out_dir, default_name)
    return "-"


def _write_out(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _say(message: str) -> None:
    print(message, file=sys.stderr)


# ---------------------------------------------------------------------------
# sweep-inequalities


def _trim_to_last_record(path: str, digest: RecordDigest) -> tuple | None:
    """Recover the resume marker from an existing record stream.

    Complete leading records are digested and kept; a partial or unparsable
    final line (an interrupted write) is trimmed away.  Damage anywhere else
    is an integrity error: silently resuming over it would corrupt the
    stream.  Returns the canonical tuple of the last intact record."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    keep: list[str] = []
    marker: tuple | None = None
    for lineno, raw in enumerate(lines, start=1):
        final = lineno == len(lines)
        line = raw.strip()
        if not line:
            if final:
                break
            raise IntegrityError(f"line {lineno}: blank line inside record stream")
        try:
            record = parse_record_line(lineno, line)
        except IntegrityError:
            if final:
                break  # interrupted tail write: trim it
            raise
        if final and not raw.endswith("\n"):
            break  # complete-looking JSON but unterminated: treat as partial
        if marker is not None and record.point <= marker:
            raise IntegrityError(
                f"line {lineno}: record out of canonical order; stream corrupt"
            )
        digest.absorb(record)
        marker = record.point
        keep.append(record_to_line(record) + "\n")
    if len(keep) != len(lines):
        with open(path, "w", encoding="utf-8") as fh:
            fh.writelines(keep)
    return marker


def _cmd_sweep(args: argparse.Namespace) -> int:
    out = resolve_out(args.out, "sweep-records.jsonl")
    if args.resume and out == "-":
        raise UsageError("--resume needs --out pointing at a file")
    digest = RecordDigest()
    marker = None
    if args.resume and os.path.exists(out):
        marker = _trim_to_last_record(out, digest)
    campaign = Campaign(
        command="sweep-inequalities",
        params={
            "t_min": args.t_min,
            "t_max": args.t_max,
            "k_span": args.k_span,
            "n_span": args.n_span,
        },
        out_path=out,
        resume_marker=marker,
    )
    if marker is not None:
        _say(f"resuming after canonical point (t,k,n,s,i) = {marker}")

    if out == "-":
        fh: TextIO = sys.stdout
    else:
        fh = open(out, "a" if marker is not None else "w", encoding="utf-8")
    try:
        def sink(record: VerificationRecord) -> None:
            digest.absorb(record)
            fh.write(record_to_line(record) + "\n")

        sweep(
            t_lo=campaign.params["t_min"],
            t_hi=campaign.params["t_max"],
            k_span=campaign.params["k_span"],
            n_span=campaign.params["n_span"],
            sink=sink,
            resume_after=marker,
        )
    finally:
        if fh is not sys.stdout:
            fh.close()

    csv_text = digest.to_csv()
    json_text = json.dumps(digest.to_json_obj(), sort_keys=True, indent=2) + "\n"
    if out != "-":
        _write_out(out + ".summary.csv", csv_text)
        _write_out(out + ".summary.json", json_text)
        _say(f"records: {out}")
        _say(f"summary: {out}.summary.csv, {out}.summary.json")
    _say(
        f"checked {digest.records} grid points "
        f"(t in [{args.t_min},{args.t_max}], k span {args.k_span}, n span {args.n_span})"
    )
    for name in digest.check_names():
        bucket = digest.status_counts.get(name, {})
        if not bucket:
            continue
        counts = " ".join(
            f"{status}={bucket.get(status, 0)}"
            for status in _STATUSES
            if bucket.get(status, 0)
        )
        extra = digest.min_value_text(name)
        tail = f" min={extra}" if extra else ""
        _say(f"  {name}: {counts}{tail}")
    if digest.violations:
        _say(f"violations ({digest.violation_count} check(s)):")
        for n, k, s, i, t, names in digest.violations[:50]:
            _say(f"  (n,k,s,i,t)=({n},{k},{s},{i},{t}): {names}")
        return 2
    _say("no violations")
    return 0


# ---------------------------------------------------------------------------
# search


def _expandable(n: int, k: int) -> bool:
    return n <= WORD_CAP and comb(n, k) <= EXPAND_CAP


def _side_obj(side, n: int, k: int) -> dict:
    if isinstance(side, GenSet):
        obj: dict = {
            "kind": "genset",
            "elements": [list(elements_of(m)) for m in side.elements],
            "genset": genset_to_text(side),
        }
        if _expandable(n, k):
            obj["family"] = family_to_text(upset_k(side))
        return obj
    return {"kind": "family", "family": family_to_text(side)}


def _search_json_obj(result: SearchResult) -> dict:
    return {
        "n": result.n,
        "k": result.k,
        "t": result.t,
        "objective": result.objective,
        "method": result.method,
        "value": str(result.value),
        "witnesses": [
            {
                "a": _side_obj(a, result.n, result.k),
                "b": _side_obj(b, result.n, result.k),
            }
            for a, b in result.witnesses
        ],
        "stats": dict(result.stats),
    }


def _cmd_search(args: argparse.Namespace) -> int:
    if args.method == "brute":
        result = brute_force_best(args.n, args.k, args.t, args.objective)
    else:
        if args.objective != "product":
            raise UsageError(
                "the genset method maximizes the product only; "
                "use --method brute for the sum objective"
            )
        result = genset_search_best_product(args.n, args.k, args.t, s_max=args.s_max)
    out = resolve_out(args.out, f"search-{args.n}-{args.k}-{args.t}.json")
    _write_out(out, json.dumps(_search_json_obj(result), sort_keys=True, indent=2) + "\n")
    _say(
        f"{result.objective} optimum at (n,k,t)=({args.n},{args.k},{args.t}) "
        f"by {result.method}: {result.value} with {len(result.witnesses)} witness pair(s)"
    )
    return 0


# ---------------------------------------------------------------------------
# frankl


def _cmd_frankl(args: argparse.Namespace) -> int:
    best = frankl_max(args.n, args.k, args.t)
    lines = ["r,size,max,tie"]
    for r in valid_r_range(args.n, args.k, args.t):
        size = frankl_size(FranklParams(args.n, args.k, args.t, r))
        is_max = int(r in best.best_r)
        tie = int(is_max and len(best.best_r) > 1)
        lines.append(f"{r},{size},{is_max},{tie}")
    out = resolve_out(args.out, f"frankl-{args.n}-{args.k}-{args.t}.csv")
    _write_out(out, "\n".join(lines) + "\n")
    _say(
        f"max window size at (n,k,t)=({args.n},{args.k},{args.t}): "
        f"{best.size} at r in {best.best_r}"
    )
    try:
        regime = ak_regime(args.n, args.k, args.t)
    except CrossIntError:
        _say("regime: out of scope (every pair of k-sets already meets in >= t points)")
    else:
        thr = Fraction(regime.threshold_num, regime.threshold_den)
        _say(f"regime: {regime.kind} r={regime.r} tied={regime.tied} threshold={thr}")
    return 0


# ---------------------------------------------------------------------------
# compress / genset file utilities


def _read_family_arg(path: str) -> UniformFamily:
    if path == "-":
        return read_family(sys.stdin)
    return read_family(path)


def _cmd_compress(args: argparse.Namespace) -> int:
    family = _read_family_arg(args.infile)
    already = is_left_compressed(family)
    compressed = left_compress(family)
    if len(compressed) != len(family):
        raise IntegrityError(
            f"compression changed the family size: {len(family)} -> {len(compressed)}"
        )
    out = resolve_out(args.out, "compressed-family.txt")
    if out == "-":
        write_family(compressed, sys.stdout)
    else:
        write_family(compressed, out)
    _say(
        f"family n={family.n} k={family.k} members={len(family)}: "
        + ("already left-compressed" if already else "compressed")
    )
    return 0


def _cmd_genset(args: argparse.Namespace) -> int:
    out = resolve_out(args.out, "genset.txt")
    if args.expand:
        genset = read_genset(sys.stdin) if args.infile == "-" else read_genset(args.infile)
        family = upset_k(genset)
        if out == "-":
            write_family(family, sys.stdout)
        else:
            write_family(family, out)
        _say(
            f"expanded {len(genset)} generator(s) on n={genset.n}, k={genset.k} "
            f"to {len(family)} member(s)"
        )
        return 0
    family = _read_family_arg(args.infile)
    genset = minimal_genset(family)
    counted = size_from_genset(genset)
    if counted != len(family):
        raise IntegrityError(
            f"cell count {counted} disagrees with family size {len(family)}"
        )
    if out == "-":
        write_genset(genset, sys.stdout)
    else:
        write_genset(genset, out)
    _say(
        f"minimal generating set of n={family.n} k={family.k} "
        f"members={len(family)}: {len(genset)} element(s)"
    )
    return 0


# ---------------------------------------------------------------------------
# verify-case4


def _section4_json_obj(report: Section4Report) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "t": report.t,
        "checks": [
            {
                "name": check.name,
                "params": dict(check.params),
                "skipped": check.skipped,
                "skip_reason": check.skip_reason,
                "expanded": check.expanded,
                "sizes": {label: str(v) for label, v in check.sizes.items()},
                "rows": [
                    {
                        "label": row.label,
                        "lhs": str(row.lhs),
                        "relation": row.relation,
                        "rhs": str(row.rhs),
                        "guard": row.guard,
                        "guard_met": row.guard_met,
                        "holds": row.holds,
                    }
                    for row in check.rows
                ],
            }
            for check in report.checks
        ],
    }


def _cmd_verify_case4(args: argparse.Namespace) -> int:
    report = verify_section4_constructions(args.n, args.k, args.t)
    out = resolve_out(args.out, f"case4-{args.n}-{args.k}-{args.t}.json")
    _write_out(out, json.dumps(_section4_json_obj(report), sort_keys=True, indent=2) + "\n")
    for check in report.checks:
        if check.skipped:
            _say(f"  {check.name}: skipped ({check.skip_reason})")
            continue
        ok = sum(1 for row in check.rows if row.holds)
        info = sum(1 for row in check.rows if not row.holds and not row.guard_met)
        tag = f" ({info} outside printed hypotheses)" if info else ""
        _say(f"  {check.name}: {ok}/{len(check.rows)} rows hold{tag}")
    guarded = report.guarded_failures()
    if guarded:  # pragma: no cover - the builder raises before returning
        for row in guarded:
            _say(
                f"FAILED {row.construction}: {row.label}: "
                f"{row.lhs} {row.relation} {row.rhs} under {row.guard}"
            )
        return 2
    _say(
        f"all printed comparisons hold under their hypotheses at "
        f"(n,k,t)=({args.n},{args.k},{args.t})"
    )
    return 0


# ---------------------------------------------------------------------------
# verify-main-small


def _main_small_json_obj(report: MainTheoremReport) -> dict:
    return {
        "n": report.n,
        "k": report.k,
        "t": report.t,
        "threshold": report.threshold,
        "star_value": str(report.star_value),
        "value": str(report.value),
        "methods": list(report.methods),
        "witnesses": [
            {
                "a": _side_obj(a, report.n, report.k),
                "b": _side_obj(b, report.n, report.k),
            }
            for a, b in report.witnesses
        ],
        "structures": list(report.structures),
        "bound_confirmed": report.bound_confirmed,
        "all_star": report.all_star,
        "shift_trials": report.shift_trials,
        "shift_ok": report.shift_ok,
        "stats": dict(report.stats),
    }


def _cmd_verify_main_small(args: argparse.Namespace) -> int:
    report = verify_main_theorem_small(
        args.n, args.k, args.t, shift_trials=args.shift_trials, seed=args.seed
    )
    out = resolve_out(args.out, f"main-small-{args.n}-{args.k}-{args.t}.json")
    _write_out(out, json.dumps(_main_small_json_obj(report), sort_keys=True, indent=2) + "\n")
    _say(
        f"optimum {report.value} vs star product {report.star_value} "
        f"(threshold n >= {report.threshold}); structures: {', '.join(report.structures)}"
    )
    failed = report.bound_confirmed is False or report.shift_ok is False
    if report.bound_confirmed is None:
        _say("n below the threshold: the star product is not claimed to be optimal")
    else:
        _say(f"bound confirmed: {report.bound_confirmed}")
    if report.shift_trials:
        _say(f"shift stress ({report.shift_trials} trials): ok={report.shift_ok}")
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# Parser assembly


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage failures raise instead of exiting 2."""

    def error(self, message: str):  # noqa: D401 - argparse contract
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crossint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-inequalities", help="evaluate the inequality grid")
    p.add_argument("--t-min", type=int, default=3)
    p.add_argument("--t-max", type=int, default=8)
    p.add_argument("--k-span", type=int, default=12)
    p.add_argument("--n-span", type=int, default=40)
    p.add_argument("--out", help="record stream path ('-' = stdout)")
    p.add_argument(
        "--resume",
        action="store_true",
        help="continue an interrupted stream at --out, trimming a partial tail",
    )
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("search", help="exact optimum at one (n, k, t)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--objective", choices=("product", "sum"), default="product")
    p.add_argument("--method", choices=("brute", "genset"), default="genset")
    p.add_argument("--s-max", type=int, default=None, help="generator window cap")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("frankl", help="r-window family sizes as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_frankl)

    p = sub.add_parser("compress", help="left-compress a family file")
    p.add_argument("--in", dest="infile", required=True, help="family file ('-' = stdin)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_compress)

    p = sub.add_parser("genset", help="minimal generating set of a family file")
    p.add_argument("--in", dest="infile", required=True, help="input file ('-' = stdin)")
    p.add_argument(
        "--expand",
        action="store_true",
        help="treat the input as a generating set and write its k-uniform family",
    )
    p.add_argument("--out")
    p.set_defaults(func=_cmd_genset)

    p = sub.add_parser("verify-case4", help="explicit-construction checks at (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_case4)

    p = sub.add_parser(
        "verify-main-small", help="confirm the product bound by exhaustive search"
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--shift-trials", type=int, default=0)
    p.add_argument("--seed", type=int, default=0, help="shift-trial randomness only")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_main_small)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        partial = getattr(exc, "partial_best", None)
        if partial is not None:
            print(
                f"partial best before the cap: {partial.value} "
                f"(stats: {dict(partial.stats)})",
                file=sys.stderr,
            )
        return 2
    except IntegrityError as exc:
        print(f"integrity: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

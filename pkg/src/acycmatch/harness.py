"""Table reproduction, run configuration and report serialization."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from . import kernels
from ._accel import worker_count
from .errors import ArgumentError
from .groups import GroupSpec, Subset
from .matching import compatibility, has_acyclic_matching
from .search import (ACYCLIC, WEAK_ACYCLIC, SearchReport, Witness, WitnessKind, acyclic_property_search,
                     weak_acyclic_search)

# Reference counterexample pairs for Z/pZ; p = 2, 3, 5 are listed as "Yes".
REFERENCE_TABLE: dict[int, tuple[str, str] | None] = {
    2: None,
    3: None,
    5: None,
    7: ("{0,4,6}", "{3,5,6}"),
    11: ("{0,6,8,9,10}", "{5,7,8,9,10}"),
    13: ("{0,6,8,9,10,11,12}", "{3,5,7,9,10,11,12}"),
    17: ("{0,8,10,11,12,13,14,15,16}", "{3,5,7,9,11,13,14,15,16}"),
    19: ("{0,8,11,12,13,14,15,16,17,18}", "{5,7,11,12,13,14,15,16,17,18}"),
}

TSV_HEADER = "modulus\tproperty\toutcome\twitnessA\twitnessB\tpairs\tseconds"
FORMATS = ("human", "json", "tsv")


@dataclass
class TableRow:
    p: int
    verdict: str  # "Yes" | "No"
    A: str | None = None
    B: str | None = None
    method: str = "full-search"
    verified: bool = True
    matchings: int | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def verify_pair(p: int, A_text: str, B_text: str, compare_bijections: bool = False) -> tuple[bool, int]:
    """(has a matching but no acyclic matching, number of matchings)."""
    spec = GroupSpec.cyclic(p)
    A, B = Subset.parse(spec, A_text), Subset.parse(spec, B_text)
    allowed, _ = compatibility(spec, A, B)
    count = int(kernels.count_matchings(allowed))
    ok = count > 0 and not has_acyclic_matching(spec, A, B, compare_bijections=compare_bijections)
    return ok, count


def reproduce_table(full_search: bool = False, threads: int = 1, primes=None) -> list[TableRow]:
    """Rows for the reference table.

    Small primes get a full search.  For the others the reference pair is
    verified directly, unless ``full_search`` asks for the canonical search
    (impractical beyond p = 13 on one core).
    """
    rows = []
    for p in primes or REFERENCE_TABLE:
        pair = REFERENCE_TABLE.get(p)
        if pair is None or full_search:
            rep = acyclic_property_search(p, threads=threads)
            w = rep.witness
            rows.append(TableRow(p, "Yes" if rep.holds else "No", str(w.A) if w else None,
                                 str(w.B) if w else None, "full-search",
                                 verified=rep.holds == (pair is None)))
        else:
            ok, count = verify_pair(p, *pair)
            rows.append(TableRow(p, "No", pair[0], pair[1], "witness-verification", verified=ok,
                                 matchings=count))
    return rows


@dataclass
class RunConfig:
    command: str = "acyclic-search"
    modulus: int | None = None
    range_lo: int | None = None
    range_hi: int | None = None
    max_size: int | None = None
    threads: int = field(default_factory=worker_count)
    format: str = "human"
    seed: int | None = None
    compare_bijections: bool = False
    symmetry_pruning: bool = False
    full_search: bool = False
    verify_table: bool = False
    timing: bool = True

    def moduli(self) -> list[int]:
        if self.modulus is not None:
            return [self.modulus]
        if self.range_lo is None or self.range_hi is None:
            raise ArgumentError("give --modulus or --range")
        if self.range_lo < 2 or self.range_hi < self.range_lo:
            raise ArgumentError("range must satisfy 2 <= lo <= hi")
        return list(range(self.range_lo, self.range_hi + 1))

    def validate(self) -> "RunConfig":
        if self.format not in FORMATS:
            raise ArgumentError(f"unknown format {self.format!r}")
        if self.threads < 1:
            raise ArgumentError("threads must be >= 1")
        if self.max_size is not None and self.max_size < 1:
            raise ArgumentError("max-size must be >= 1")
        return self

    @classmethod
    def from_file(cls, path: str | Path, **overrides) -> "RunConfig":
        """key=value lines; '#' starts a comment.  Explicit overrides win."""
        types = {f.name: f.type for f in fields(cls)}
        values: dict = {}
        for raw in Path(path).read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in types:
                raise ArgumentError(f"bad config line: {raw!r}")
            values[key] = _coerce(val.strip(), types[key])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def _coerce(text: str, typ) -> object:
    t = str(typ)
    if "bool" in t:
        return text.lower() in ("1", "true", "yes", "on")
    if "int" in t:
        return int(text)
    return text


def verification_report(p: int, compare_bijections: bool = False) -> SearchReport:
    """Report for a reference pair, checked directly (pairs_examined = 1)."""
    pair = REFERENCE_TABLE.get(p)
    if pair is None:
        raise ArgumentError(f"no reference pair for modulus {p}")
    spec = GroupSpec.cyclic(p)
    ok, _ = verify_pair(p, *pair, compare_bijections=compare_bijections)
    witness = Witness(Subset.parse(spec, pair[0]), Subset.parse(spec, pair[1]), WitnessKind.NO_ACYCLIC_MATCHING)
    return SearchReport(p, ACYCLIC, "counterexample" if ok else "witness-rejected", witness, 1, 0.0)


def run_search(config: RunConfig) -> list[SearchReport]:
    config.validate()
    reports = []
    for n in config.moduli():
        if config.command == "acyclic-search" and config.verify_table:
            reports.append(verification_report(n, config.compare_bijections))
            continue
        fn = {"acyclic-search": acyclic_property_search,
              "weak-acyclic-search": weak_acyclic_search}.get(config.command)
        if fn is None:
            raise ArgumentError(f"unknown search command {config.command!r}")
        rep = fn(n, config.max_size, threads=config.threads, compare_bijections=config.compare_bijections,
                 symmetry_pruning=config.symmetry_pruning)
        if not config.timing:
            rep.elapsed_seconds = 0.0
        reports.append(rep)
    return reports


def emit_report(reports: SearchReport | list[SearchReport], fmt: str = "human") -> str:
    if isinstance(reports, SearchReport):
        reports = [reports]
    if fmt == "json":
        dicts = [r.to_dict() for r in reports]
        return json.dumps(dicts[0] if len(dicts) == 1 else dicts)
    if fmt == "tsv":
        lines = [TSV_HEADER]
        for r in reports:
            d = r.to_dict()
            w = d.get("witness", {})
            lines.append("\t".join(str(x) for x in (d["modulus"], d["property"], d["outcome"], w.get("A", ""),
                                                    w.get("B", ""), d["pairs_examined"], d["elapsed_seconds"])))
        return "\n".join(lines)
    if fmt == "human":
        lines = []
        for r in reports:
            line = f"Z/{r.modulus}Z  {r.property}: {r.outcome}  ({r.pairs_examined} pairs, {r.elapsed_seconds:.3f}s)"
            if r.witness is not None:
                line += f"\n  witness A={r.witness.A} B={r.witness.B} [{r.witness.kind.value}]"
            lines.append(line)
        return "\n".join(lines)
    raise ArgumentError(f"unknown format {fmt!r}")


def exit_code(reports: list[SearchReport]) -> int:
    outcomes = {r.outcome for r in reports}
    if outcomes <= {"holds"}:
        return 0
    if outcomes <= {"holds", "counterexample"}:
        return 2
    return 1


__all__ = ["REFERENCE_TABLE", "TSV_HEADER", "TableRow", "RunConfig", "reproduce_table", "run_search",
           "emit_report", "exit_code", "verify_pair", "verification_report", "WEAK_ACYCLIC", "ACYCLIC"]

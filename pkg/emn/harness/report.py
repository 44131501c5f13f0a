"""Scan reports, stdout emitters and stderr diagnostics.

Results go to stdout only (one JSON object per line, or rich tables);
everything else goes through ``err_console``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from rich.console import Console
from rich.table import Table
from rich.text import Text

from emn.harness import schemas

err_console = Console(stderr=True, highlight=False)
out_console = Console(highlight=False, soft_wrap=True)

# 每个检查在一个图上的归类
NOT_APPLICABLE = "not_applicable"
HOLDS = "holds"
FAILS = "fails"


def error(message: str) -> None:
    err_console.print(f"[ERROR] {message}", style="red", markup=False)


def warn(message: str) -> None:
    err_console.print(f"[WARN] {message}", style="yellow", markup=False)


def emit_json(payload: Dict[str, Any], schema: str) -> None:
    schemas.check(schema, payload)
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def emit_table(title: str, rows: Iterable[Tuple[str, Any]]) -> None:
    table = Table(title=title, show_header=True, header_style="bold grey70")
    table.add_column("字段", style="cyan")
    table.add_column("值")
    for key, value in rows:
        table.add_row(key, str(value))
    out_console.print(table)


# ---- scan reports --------------------------------------------------------------


@dataclass
class CheckCounts:
    """Per-check tally over a corpus: vacuous, satisfied or violated on each graph."""

    tested: int = 0
    not_applicable: int = 0
    holds: int = 0
    fails: int = 0

    def add(self, category: str) -> None:
        self.tested += 1
        setattr(self, category, getattr(self, category) + 1)

    def to_json(self) -> Dict[str, int]:
        return {
            "tested": self.tested,
            "not_applicable": self.not_applicable,
            "holds": self.holds,
            "fails": self.fails,
        }


@dataclass(frozen=True)
class Violation:
    graph6: str
    check: str
    detail: str

    def to_json(self) -> Dict[str, str]:
        return {"graph6": self.graph6, "check": self.check, "detail": self.detail}


@dataclass
class GraphOutcome:
    """Everything one corpus graph contributes to a report; built inside a worker."""

    graph6: str
    categories: Dict[str, str] = field(default_factory=dict)
    verdicts: Dict[str, str] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    skipped: Optional[str] = None

    def passed(self, check: str) -> None:
        if self.categories.get(check) != FAILS:
            self.categories[check] = HOLDS

    def violated(self, check: str, detail: str) -> None:
        self.categories[check] = FAILS
        self.violations.append(Violation(self.graph6, check, detail))


@dataclass
class ScanReport:
    suite: str
    corpus: str
    slice: str
    checks: List[str]
    graphs: int = 0
    counts: Dict[str, CheckCounts] = field(default_factory=dict)
    verdicts: Dict[str, CheckCounts] = field(default_factory=dict)
    violations: List[Violation] = field(default_factory=list)
    skipped: List[Tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        for check in self.checks:
            self.counts.setdefault(check, CheckCounts())

    def merge(self, outcome: GraphOutcome) -> None:
        self.graphs += 1
        for check in self.checks:
            self.counts[check].add(outcome.categories.get(check, NOT_APPLICABLE))
        for label, outcome_name in outcome.verdicts.items():
            tally = self.verdicts.setdefault(label, CheckCounts())
            tally.add({"Holds": HOLDS, "Fails": FAILS}.get(outcome_name, NOT_APPLICABLE))
        self.violations.extend(outcome.violations)
        if outcome.skipped is not None:
            self.skipped.append((outcome.graph6, outcome.skipped))

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "corpus": self.corpus,
            "slice": self.slice,
            "graphs": self.graphs,
            "checks": list(self.checks),
            "counts": {k: self.counts[k].to_json() for k in self.checks},
            "verdicts": {k: v.to_json() for k, v in sorted(self.verdicts.items())},
            "violations": [v.to_json() for v in self.violations],
            "skipped": [{"graph6": g6, "reason": reason} for g6, reason in self.skipped],
        }


def scan_table(report: ScanReport) -> Table:
    table = Table(
        title=f"{report.suite}: {report.corpus} ({report.graphs} graphs)",
        caption=report.slice,
        show_header=True,
        header_style="bold grey70",
    )
    table.add_column("检查", style="cyan")
    table.add_column("tested", justify="right")
    table.add_column("n/a", justify="right")
    table.add_column("holds", justify="right")
    table.add_column("fails", justify="right")
    rows = [(k, report.counts[k]) for k in report.checks] + sorted(report.verdicts.items())
    for key, counts in rows:
        table.add_row(
            key,
            str(counts.tested),
            str(counts.not_applicable),
            str(counts.holds),
            Text(str(counts.fails), style="red" if counts.fails and key in report.counts else "white"),
        )
    return table


def print_scan_report(report: ScanReport, fmt: str) -> None:
    if fmt == "json":
        emit_json(report.to_json(), "scan")
        return
    out_console.print(scan_table(report))
    for v in report.violations:
        out_console.print(Text(f"✖ {v.check} on {v.graph6}: {v.detail}", style="red"))
    for g6, reason in report.skipped:
        out_console.print(Text(f"○ skipped {g6}: {reason}", style="grey50"))
    status = Text("✔ no violations", style="green") if report.ok else Text(
        f"✖ {len(report.violations)} violation(s)", style="bold red"
    )
    out_console.print(status)

"""
Table emission for CLI commands

CSV carries a header row of "name [unit]" labels and writes every float
with 17 significant digits; JSON is an array of objects keyed by the bare
column names. Both forms read back to the same floats, NaN and infinities
included.
"""

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

__all__ = ["Column", "Table", "format_number", "render", "write_table"]


@dataclass(frozen=True)
class Column:
    name: str
    unit: str = "1"

    @property
    def label(self) -> str:
        return f"{self.name} [{self.unit}]"


@dataclass
class Table:
    columns: Sequence[Column]
    rows: List[Sequence[float]] = field(default_factory=list)

    def add_row(self, values: Sequence[float]) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"Row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def column(self, name: str) -> List[float]:
        index = [c.name for c in self.columns].index(name)
        return [row[index] for row in self.rows]


def format_number(value: float) -> str:
    """%.17g, with nan/inf spelled the way Python's float() reads them back"""
    value = float(value)
    if math.isnan(value):
        return "NaN"
    if math.isinf(value):
        return "Infinity" if value > 0 else "-Infinity"
    return f"{value:.17g}"


def _render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([c.label for c in table.columns])
    writer.writerows([format_number(v) for v in row] for row in table.rows)
    return buffer.getvalue()


def _render_json(table: Table) -> str:
    names = [c.name for c in table.columns]
    records = [dict(zip(names, map(float, row))) for row in table.rows]
    return json.dumps(records, indent=2) + "\n"


def render(table: Table, fmt: str) -> str:
    if fmt == "csv":
        return _render_csv(table)
    if fmt == "json":
        return _render_json(table)
    raise ValueError(f"Unknown output format {fmt!r}")


def write_table(table: Table, fmt: str, out: Optional[str] = None, stream: TextIO = None) -> None:
    """
    Write a table to a file (single writer) or to stdout

    Args:
        table: Rows in grid order
        fmt: "csv" or "json"
        out: Output path; stdout when None
    """
    text = render(table, fmt)
    if out is None:
        (stream or sys.stdout).write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)

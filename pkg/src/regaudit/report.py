"""Deterministic report rendering: aligned text, CSV, or structured JSON.

Numbers render through one fixed rule so identical inputs always produce
identical bytes; nothing here touches the clock or any global state.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import InputError

FORMATS = ("table", "csv", "structured")


def fmt_value(value) -> str:
    """One canonical textual form per value for the table and csv renderers."""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format(value, ".8g")
    return str(value)


@dataclass(frozen=True)
class Table:
    name: str
    headers: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class Report:
    """A rendered audit result: scalar fields first, then zero or more tables."""

    title: str
    fields: tuple[tuple[str, object], ...] = ()
    tables: tuple[Table, ...] = ()

    def render(self, fmt: str) -> str:
        if fmt == "table":
            return self._render_text()
        if fmt == "csv":
            return self._render_csv()
        if fmt == "structured":
            return self._render_json()
        raise InputError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")

    def _render_text(self) -> str:
        lines = [self.title]
        if self.fields:
            width = max(len(k) for k, _ in self.fields)
            for key, value in self.fields:
                lines.append(f"  {key.ljust(width)}  {fmt_value(value)}")
        for table in self.tables:
            lines.append("")
            lines.append(f"{table.name}:")
            cells = [tuple(fmt_value(v) for v in row) for row in table.rows]
            widths = [len(h) for h in table.headers]
            for row in cells:
                for j, cell in enumerate(row):
                    widths[j] = max(widths[j], len(cell))
            lines.append("  " + "  ".join(h.ljust(widths[j]) for j, h in enumerate(table.headers)))
            lines.append("  " + "  ".join("-" * w for w in widths))
            for row in cells:
                lines.append("  " + "  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)))
        return "\n".join(line.rstrip() for line in lines) + "\n"

    def _render_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        for key, value in self.fields:
            writer.writerow([key, fmt_value(value)])
        for i, table in enumerate(self.tables):
            if self.fields or i > 0:
                buffer.write("\n")
            writer.writerow(table.headers)
            for row in table.rows:
                writer.writerow([fmt_value(v) for v in row])
        return buffer.getvalue()

    def _render_json(self) -> str:
        payload = {
            "title": self.title,
            "fields": {k: v for k, v in self.fields},
            "tables": [
                {"name": t.name, "headers": list(t.headers), "rows": [list(r) for r in t.rows]}
                for t in self.tables
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

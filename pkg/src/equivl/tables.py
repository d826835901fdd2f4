"""Plain tables with markdown, CSV and JSON emitters.

Cells are strings; rationals are rendered ``p/q`` before they reach a table,
so the JSON form is bit-exact and parses back to an equal table.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

FORMATS = ("md", "json", "csv")


@dataclass
class Table:
    title: str
    columns: list
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, *cells):
        if len(cells) != len(self.columns):
            raise ValueError(f"row has {len(cells)} cells for {len(self.columns)} columns")
        self.rows.append([str(c) for c in cells])

    def to_markdown(self) -> str:
        widths = [len(c) for c in self.columns]
        for row in self.rows:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]

        def line(cells):
            return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

        out = [f"### {self.title}", "", line(self.columns), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out += [line(r) for r in self.rows]
        if self.notes:
            out.append("")
            out += self.notes
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()

    def to_doc(self) -> dict:
        return {"title": self.title, "columns": list(self.columns), "rows": [list(r) for r in self.rows],
                "notes": list(self.notes)}

    def to_json(self) -> str:
        return json.dumps(self.to_doc(), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> Table:
        doc = json.loads(text)
        return cls(doc["title"], doc["columns"], doc["rows"], doc.get("notes", []))

    def render(self, fmt: str) -> str:
        if fmt == "md":
            return self.to_markdown()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json() + "\n"
        raise ValueError(f"unknown format {fmt!r}")


def render_all(tables, fmt: str) -> str:
    """Several tables: markdown/CSV are concatenated, JSON becomes a list."""
    if fmt == "json":
        return json.dumps([t.to_doc() for t in tables], sort_keys=True, indent=1) + "\n"
    return "\n".join(t.render(fmt) for t in tables)


def tables_from_json(text: str) -> list:
    doc = json.loads(text)
    if isinstance(doc, dict):
        doc = [doc]
    return [Table(d["title"], d["columns"], d["rows"], d.get("notes", [])) for d in doc]

"""Tabular check reports shared by the verification and reproduction commands."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

__all__ = ["Report"]


@dataclass
class Report:
    """Rows of ``(check, case, expected, actual, passed)``; ``passed`` may be None
    for entries that are cited but not machine-checked."""

    title: str
    rows: list[tuple[str, str, str, str, bool | None]] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, check: str, case: str, expected, actual, passed: bool | None) -> None:
        self.rows.append((check, case, str(expected), str(actual), passed))

    @property
    def ok(self) -> bool:
        return all(p is not False for *_, p in self.rows)

    def failures(self) -> list[tuple]:
        return [r for r in self.rows if r[-1] is False]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("check", "case", "expected", "actual", "pass"))
        for check, case, expected, actual, passed in self.rows:
            flag = "cited" if passed is None else ("true" if passed else "false")
            writer.writerow((check, case, expected, actual, flag))
        return buf.getvalue()

    def to_text(self) -> str:
        head = ("check", "case", "expected", "actual", "pass")
        body = [(c, k, e, a, "cited" if p is None else ("PASS" if p else "FAIL")) for c, k, e, a, p in self.rows]
        widths = [max(len(str(r[i])) for r in [head, *body]) for i in range(5)]
        lines = [self.title]
        for key, value in self.meta.items():
            lines.append(f"{key}: {value}")
        for r in [head, *body]:
            lines.append("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


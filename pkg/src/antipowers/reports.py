"""Structured verification reports and their JSON / CSV / text renderings."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from typing import Any, Optional

SCHEMA_VERSION = 1


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    if isinstance(value, (frozenset, set)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (bytes, bytearray)):
        return list(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)


@dataclass
class Report:
    """Outcome of one verification suite.

    ``passed`` reflects hard assertions only. Informational suites (the
    conjecture tester) always exit successfully whatever they find.
    """

    suite: str
    passed: bool
    parameters: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    prefix_length: Optional[int] = None
    informational: bool = False
    header: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed or self.informational else 1

    def to_dict(self, include_header: bool = True) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "pass": self.passed,
            "informational": self.informational,
            "parameters": self.parameters,
            "prefix_length": self.prefix_length,
            "summary": self.summary,
            "failures": self.failures,
            "rows": self.rows,
        }
        if include_header and self.header:
            out["header"] = self.header
        return _jsonable(out)

    def stamp(self, started: float | None = None, **extra) -> Report:
        """Fill the volatile header (timestamp, elapsed time)."""
        self.header["generated_at"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        if started is not None:
            self.header["elapsed_s"] = round(time.perf_counter() - started, 6)
        self.header.update(extra)
        return self


def canonical(report: dict) -> dict:
    """Report dict without the volatile header, for comparisons."""
    return {k: v for k, v in report.items() if k != "header"}


def to_json(report: Report, include_header: bool = True) -> str:
    return json.dumps(report.to_dict(include_header), indent=2, sort_keys=True) + "\n"


def to_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    """One CSV row per dict; ``columns`` fixes the header even when empty."""
    buf = io.StringIO()
    if columns is None and rows:
        columns = list(rows[0])
        for row in rows[1:]:
            columns.extend(c for c in row if c not in columns)
    if columns:
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(_jsonable(v)) if isinstance(v, (list, tuple, dict)) else v
                             for k, v in row.items()})
    return buf.getvalue()


def to_text(report: Report) -> str:
    status = "PASS" if report.passed else "FAIL"
    if report.informational:
        status += " (informational)"
    lines = [f"{report.suite}: {status}"]
    for key, value in report.summary.items():
        lines.append(f"  {key}: {_jsonable(value)}")
    for failure in report.failures[:20]:
        lines.append(f"  failure: {_jsonable(failure)}")
    if len(report.failures) > 20:
        lines.append(f"  ... {len(report.failures) - 20} more failures")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str, include_header: bool = True) -> str:
    if fmt == "json":
        return to_json(report, include_header)
    if fmt == "csv":
        return to_csv(report.rows)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")


def write_atomic(path: str | os.PathLike, data: str | bytes) -> None:
    """Write via a temp file in the target directory and rename over ``path``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": ""})) as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise

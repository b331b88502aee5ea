"""Report envelope and serializers.

JSON with sorted keys is canonical; TSV and text are flat projections of it.
Timing is kept out of the payload so reports compare byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator

from . import __version__

FORMATS = ("json", "tsv", "text")

EXIT_OK = 0
EXIT_AUDIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_INVALID_INPUT = 4

# provenance tags for printed numbers
PRINTED = "printed"  # copied from the published tables and chains
RECOMPUTED = "recomputed"  # rebuilt here from first principles
DERIVED = "derived"  # computed from printed inputs


@dataclass
class Report:
    command: str
    config: dict
    results: Any
    summary: dict
    timing: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.summary.get("hard_fails")

    def payload(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "summary": self.summary,
            "tool": {"name": "quadgal", "version": __version__},
        }


def to_json(report: Report) -> str:
    return json.dumps(report.payload(), indent=2, sort_keys=True, ensure_ascii=True) + "\n"


def _flatten(obj: Any, prefix: str = "") -> Iterator[tuple[str, str]]:
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list):
        if not obj:
            yield prefix, "[]"
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(obj) if not isinstance(obj, str) else obj


def to_tsv(report: Report) -> str:
    lines = ["path\tvalue"]
    for k, v in _flatten(report.payload()):
        lines.append(f"{k}\t{v}".replace("\n", " "))
    return "\n".join(lines) + "\n"


def to_text(report: Report) -> str:
    out = [f"quadgal {__version__}: {report.command}"]
    s = report.summary
    for k in sorted(s):
        out.append(f"  {k}: {json.dumps(s[k], sort_keys=True)}")
    out.append("")
    for k, v in _flatten(report.results):
        out.append(f"{k} = {v}")
    return "\n".join(out) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "tsv":
        return to_tsv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown format {fmt!r}")

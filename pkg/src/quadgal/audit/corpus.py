"""Reading, writing and searching small number-field corpora.

CSV form, with a header row::

    degree,coeffs,label
    6,1;0;-3;0;0;0;1,d=-46 ramification=unramified

``coeffs`` are integers low degree first, separated by ``;``. ``label`` is an
optional space-separated list of ``key=value`` tags. Recognised keys are
``d``, ``ramification``, ``disc`` and ``group``; unknown keys are kept.

JSON form: an array of objects ``{"degree": 6, "coeffs": [...], "label": "..."}``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..core.integers import squarefree_core
from ..core.polynomial import IntPolynomial, poly_discriminant
from .tables import DEFAULT_CENSUS_BOUND, FAIL, AuditReport, SexticRecord, audit_sextic

CSV_HEADER = ("degree", "coeffs", "label")


@dataclass(frozen=True)
class CorpusEntry:
    degree: int
    coeffs: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(f"expected {self.degree + 1} coefficients, got {len(self.coeffs)}")
        if self.coeffs[-1] == 0:
            raise ValueError("leading coefficient is zero")
        self.tags()  # validates the label

    @property
    def polynomial(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)

    def tags(self) -> dict[str, str]:
        out = {}
        for tok in self.label.split():
            key, sep, value = tok.partition("=")
            if not sep or not key:
                raise ValueError(f"label token {tok!r} is not key=value")
            out[key] = value
        return out

    @property
    def d(self) -> int | None:
        v = self.tags().get("d")
        return int(v) if v is not None else None

    @property
    def ramification(self) -> str | None:
        return self.tags().get("ramification")

    def as_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": list(self.coeffs), "label": self.label}


@dataclass(frozen=True)
class RowError:
    row: int
    message: str


@dataclass
class Corpus:
    entries: list[CorpusEntry] = field(default_factory=list)
    errors: list[RowError] = field(default_factory=list)


def _entry(degree, coeffs, label) -> CorpusEntry:
    if isinstance(coeffs, str):
        coeffs = [c.strip() for c in coeffs.split(";")]
    return CorpusEntry(int(degree), tuple(int(c) for c in coeffs), label or "")


def parse_csv(text: str) -> Corpus:
    out = Corpus()
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        return out
    if tuple(h.strip() for h in header) != CSV_HEADER:
        out.errors.append(RowError(1, f"header must be {','.join(CSV_HEADER)}"))
        return out
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            if len(row) not in (2, 3):
                raise ValueError(f"expected 2 or 3 fields, got {len(row)}")
            out.entries.append(_entry(row[0], row[1], row[2].strip() if len(row) == 3 else ""))
        except ValueError as exc:
            out.errors.append(RowError(lineno, str(exc)))
    return out


def parse_json(text: str) -> Corpus:
    out = Corpus()
    rows = json.loads(text)
    if not isinstance(rows, list):
        out.errors.append(RowError(0, "top level must be an array"))
        return out
    for i, row in enumerate(rows):
        try:
            if not isinstance(row, dict):
                raise ValueError("row is not an object")
            out.entries.append(_entry(row["degree"], row["coeffs"], row.get("label", "")))
        except (KeyError, TypeError, ValueError) as exc:
            out.errors.append(RowError(i, f"{type(exc).__name__}: {exc}"))
    return out


def load_corpus(path: str | Path) -> Corpus:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return parse_json(text)
    return parse_csv(text)


def dump_csv(entries: list[CorpusEntry]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for e in entries:
        w.writerow([e.degree, ";".join(map(str, e.coeffs)), e.label])
    return buf.getvalue()


def dump_json(entries: list[CorpusEntry]) -> str:
    return json.dumps([e.as_dict() for e in entries], indent=2) + "\n"


def write_corpus(entries: list[CorpusEntry], path: str | Path) -> None:
    path = Path(path)
    text = dump_json(entries) if path.suffix.lower() == ".json" else dump_csv(entries)
    path.write_text(text)


@dataclass
class SearchResult:
    candidates: list[SexticRecord]
    rejected: list[tuple[CorpusEntry, AuditReport]]

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)


def _entry_d(e: CorpusEntry) -> int:
    if e.d is not None:
        return e.d
    disc = poly_discriminant(e.polynomial)
    return squarefree_core(disc) if disc else 0


def search_s3_candidates(
    corpus: Corpus | list[CorpusEntry],
    d_filter: int | None = None,
    ramification_filter: str | None = None,
    census_bound: int = DEFAULT_CENSUS_BOUND,
) -> SearchResult:
    """Sextics matching the filters that survive the sextic audit with no hard fail.

    Rows without a ``d`` tag use the squarefree core of disc f. Rows without
    a ``ramification`` tag are audited against the requested class, or
    ``only_over_2`` when none is requested.
    """
    entries = corpus.entries if isinstance(corpus, Corpus) else list(corpus)
    picked = []
    for e in entries:
        if e.degree != 6 or e.coeffs[-1] != 1:
            continue
        d = _entry_d(e)
        if d_filter is not None and d != d_filter:
            continue
        ram = e.ramification or ramification_filter or "only_over_2"
        if ramification_filter is not None and ram != ramification_filter:
            continue
        picked.append((abs(d), e.coeffs, d, ram, e))
    picked.sort(key=lambda t: (t[0], t[1]))
    result = SearchResult([], [])
    for _, _, d, ram, e in picked:
        rec = SexticRecord(d, e.polynomial, ram)
        report = audit_sextic(rec, census_bound)
        if FAIL in (c.verdict for c in report.checks):
            result.rejected.append((e, report))
        else:
            result.candidates.append(rec)
    return result


def table2_corpus() -> list[CorpusEntry]:
    """The embedded sextic table as corpus entries."""
    from .tables import table2_records

    return [
        CorpusEntry(6, r.polynomial.coeffs, f"d={r.d} ramification={r.claimed_ramification}")
        for r in table2_records()
    ]

"""JSON-lines bibliographic record ingestion with per-line diagnostics.

Every non-blank line must be an object with exactly the fields ``id``,
``year``, ``title``, ``abstract`` and ``jel_codes``.  Bad lines become
:class:`LineDiagnostic` values and never stop the load; JEL codes that are
well formed but absent from the taxonomy are reported as
:class:`CodeWarning` values and kept on the record.
"""
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, List, Optional, Set, Tuple, Union

from sdgjel.errors import IoError
from sdgjel.taxonomy.jel_taxonomy import CODE_PATTERN, JelTaxonomy

logger = logging.getLogger(__name__)

RECORD_FIELDS = frozenset({"id", "year", "title", "abstract", "jel_codes"})
MIN_YEAR = 1900
MAX_YEAR = 2100


@dataclass(frozen=True)
class BiblioRecord:
    id: str
    year: int
    title: str
    abstract: str
    jel_codes: Tuple[str, ...]

    @property
    def text(self) -> str:
        return f"{self.title} {self.abstract}" if self.abstract else self.title


@dataclass(frozen=True)
class LineDiagnostic:
    line_number: int
    raw_text: str
    reason: str


@dataclass(frozen=True)
class CodeWarning:
    line_number: int
    record_id: str
    code: str


@dataclass(frozen=True)
class ParsedCorpus:
    records: Tuple[BiblioRecord, ...]
    diagnostics: Tuple[LineDiagnostic, ...]
    warnings: Tuple[CodeWarning, ...]


class _BadRecord(Exception):
    pass


def _record_from(data) -> BiblioRecord:
    if not isinstance(data, dict):
        raise _BadRecord(f"expected JSON object, got {type(data).__name__}")

    keys = set(data)
    if keys != RECORD_FIELDS:
        missing = sorted(RECORD_FIELDS - keys)
        extra = sorted(keys - RECORD_FIELDS)
        parts = []
        if missing:
            parts.append(f"missing {missing}")
        if extra:
            parts.append(f"unexpected {extra}")
        raise _BadRecord("fields " + ", ".join(parts))

    record_id, year = data["id"], data["year"]
    if not isinstance(record_id, str) or not record_id:
        raise _BadRecord("id must be a non-empty string")
    if isinstance(year, bool) or not isinstance(year, int):
        raise _BadRecord("year must be an integer")
    if not MIN_YEAR <= year <= MAX_YEAR:
        raise _BadRecord(f"year {year} outside {MIN_YEAR}..{MAX_YEAR}")
    if not isinstance(data["title"], str) or not isinstance(data["abstract"], str):
        raise _BadRecord("title and abstract must be strings")

    codes = data["jel_codes"]
    if not isinstance(codes, list) or not all(isinstance(c, str) for c in codes):
        raise _BadRecord("jel_codes must be a list of strings")
    malformed = [c for c in codes if not CODE_PATTERN.match(c)]
    if malformed:
        raise _BadRecord(f"malformed JEL codes {malformed}")

    return BiblioRecord(
        id=record_id,
        year=year,
        title=data["title"],
        abstract=data["abstract"],
        jel_codes=tuple(codes),
    )


def _lines(source: Union[bytes, str, IO, Iterable]) -> Iterable:
    if isinstance(source, (bytes, str)):
        return source.splitlines()
    return source


def parse_corpus(
    source: Union[bytes, str, IO, Iterable],
    taxonomy: Optional[JelTaxonomy] = None,
) -> ParsedCorpus:
    """Parse record lines; unknown codes are checked only when a taxonomy is given"""
    records: List[BiblioRecord] = []
    diagnostics: List[LineDiagnostic] = []
    warnings: List[CodeWarning] = []
    seen_ids: Set[str] = set()

    try:
        for line_number, raw in enumerate(_lines(source), start=1):
            if isinstance(raw, bytes):
                try:
                    raw = raw.decode("utf-8")
                except UnicodeDecodeError as e:
                    diagnostics.append(LineDiagnostic(line_number, repr(raw), f"invalid UTF-8: {e.reason}"))
                    continue
            text = raw.strip()
            if not text:
                continue

            try:
                record = _record_from(json.loads(text))
            except json.JSONDecodeError as e:
                diagnostics.append(LineDiagnostic(line_number, text, f"invalid JSON: {e.msg} (col {e.colno})"))
                continue
            except _BadRecord as e:
                diagnostics.append(LineDiagnostic(line_number, text, str(e)))
                continue

            if record.id in seen_ids:
                diagnostics.append(LineDiagnostic(line_number, text, f"duplicate id {record.id!r}"))
                continue
            seen_ids.add(record.id)
            records.append(record)

            if taxonomy is not None:
                warnings.extend(
                    CodeWarning(line_number, record.id, code)
                    for code in record.jel_codes if code not in taxonomy
                )
    except OSError as e:
        raise IoError(getattr(source, "name", "<stream>"), str(e)) from e

    for d in diagnostics:
        logger.warning(f"Corpus line {d.line_number}: {d.reason}")
    for w in warnings:
        logger.warning(f"Corpus line {w.line_number}: record {w.record_id} has unknown JEL code {w.code}")
    return ParsedCorpus(tuple(records), tuple(diagnostics), tuple(warnings))


def load_corpus(path: Union[str, Path], taxonomy: Optional[JelTaxonomy] = None) -> ParsedCorpus:
    """Read a corpus file from disk"""
    path = Path(path)
    try:
        with open(path, "rb") as f:
            return parse_corpus(f, taxonomy)
    except IoError:
        raise
    except OSError as e:
        raise IoError(path, e.strerror or str(e)) from e

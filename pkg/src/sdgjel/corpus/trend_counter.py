"""Per-year counts of records mentioning any phrase of a query group."""
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from sdgjel.corpus.record_loader import BiblioRecord
from sdgjel.errors import UsageError

logger = logging.getLogger(__name__)

_WHITESPACE = re.compile(r"\s+")

DEFAULT_TREND_GROUPS: Tuple[Tuple[str, Tuple[str, ...]], ...] = (
    ("SDGs", ("sustainable development goal", "sustainable development goals")),
    ("MDGs", ("millennium development goal", "millennium development goals")),
)

QueryGroup = Tuple[str, Tuple[str, ...]]


@dataclass(frozen=True)
class TrendSeries:
    query_group: str
    phrases: Tuple[str, ...]
    counts: Dict[int, int]


def _normalize(text: str) -> str:
    return _WHITESPACE.sub(" ", text).lower()


def phrase_match(text: str, phrase: str) -> bool:
    """Case-insensitive containment after collapsing whitespace; no stemming"""
    needle = _normalize(phrase).strip()
    if not needle:
        raise UsageError("phrase must not be empty")
    return needle in _normalize(text)


def parse_group_spec(spec: str) -> QueryGroup:
    """Parse NAME=PHRASE[;PHRASE...]"""
    name, sep, rest = spec.partition("=")
    name = name.strip()
    phrases = tuple(p.strip() for p in rest.split(";") if p.strip())
    if not sep or not name or not phrases:
        raise UsageError(f"Malformed group {spec!r}; expected NAME=PHRASE[;PHRASE...]")
    return name, phrases


def check_groups(groups: Sequence[QueryGroup]) -> None:
    if not groups:
        raise UsageError("At least one query group is required")
    names = [name for name, _ in groups]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise UsageError(f"Duplicate group names: {', '.join(duplicates)}")


def trend_count(
    records: Iterable[BiblioRecord],
    groups: Sequence[QueryGroup],
    years: Tuple[int, int],
) -> List[TrendSeries]:
    """One zero-filled series per group; a record counts once per group"""
    check_groups(groups)
    first, last = years
    if first > last:
        raise UsageError(f"Empty year range {first}..{last}")

    needles = [tuple(_normalize(p).strip() for p in phrases) for _, phrases in groups]
    if any(not n for group in needles for n in group):
        raise UsageError("phrase must not be empty")
    counts = [{year: 0 for year in range(first, last + 1)} for _ in groups]

    scanned = 0
    for record in records:
        if not first <= record.year <= last:
            continue
        scanned += 1
        text = _normalize(record.text)
        for i, group in enumerate(needles):
            if any(n in text for n in group):
                counts[i][record.year] += 1

    logger.info(f"Counted {len(groups)} query groups over {scanned} records in {first}..{last}")
    return [
        TrendSeries(query_group=name, phrases=tuple(phrases), counts=counts[i])
        for i, (name, phrases) in enumerate(groups)
    ]

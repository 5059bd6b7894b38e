"""Per-class code counts in the shape of the published JEL reference table."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from sdgjel.taxonomy.jel_taxonomy import JelCode, JelTaxonomy

logger = logging.getLogger(__name__)

# (level-2 count, level-3 count) per level-1 class, 2020 edition.
EXPECTED_TABLE1: Dict[str, Tuple[int, int]] = {
    "A": (3, 16),
    "B": (5, 32),
    "C": (9, 70),
    "D": (9, 65),
    "E": (7, 47),
    "F": (6, 53),
    "G": (5, 33),
    "H": (8, 56),
    "I": (3, 23),
    "J": (8, 62),
    "K": (4, 30),
    "L": (9, 72),
    "M": (5, 29),
    "N": (9, 74),
    "O": (5, 41),
    "P": (5, 43),
    "Q": (5, 49),
    "R": (5, 31),
    "Y": (9, 11),
    "Z": (3, 19),
}


@dataclass(frozen=True)
class ClassCount:
    code: str
    label: str
    level2: int
    level3: int


@dataclass(frozen=True)
class TaxonomyStats:
    level1_count: int
    level2_count: int
    level3_count: int
    per_class: Tuple[ClassCount, ...]

    def as_mapping(self) -> Dict[str, Tuple[int, int]]:
        return {c.code: (c.level2, c.level3) for c in self.per_class}


def is_general_bucket(jel: JelCode) -> bool:
    """Level-2 'X0 General' nodes only hold a bare General entry and are not subdivisions"""
    return jel.level == 2 and jel.code.endswith("0")


def validate_taxonomy(taxonomy: JelTaxonomy) -> TaxonomyStats:
    """Count codes per level-1 class, General buckets counted at level 3"""
    per_class = []
    for top in taxonomy.at_level(1):
        level2 = [
            c for c in taxonomy.at_level(2)
            if c.letter == top.code and not is_general_bucket(c)
        ]
        level3 = [c for c in taxonomy.at_level(3) if c.letter == top.code]
        per_class.append(ClassCount(top.code, top.label, len(level2), len(level3)))

    stats = TaxonomyStats(
        level1_count=len(per_class),
        level2_count=sum(c.level2 for c in per_class),
        level3_count=sum(c.level3 for c in per_class),
        per_class=tuple(per_class),
    )
    logger.debug(
        f"Taxonomy stats: {stats.level1_count} classes, "
        f"{stats.level2_count} level-2, {stats.level3_count} level-3"
    )
    return stats


def compare_with_reference(
    stats: TaxonomyStats,
    expected: Mapping[str, Tuple[int, int]] = EXPECTED_TABLE1,
) -> List[str]:
    """Diff lines between computed counts and the reference table; empty when they agree"""
    found = stats.as_mapping()
    diff = []
    for code in sorted(set(expected) | set(found)):
        if code not in found:
            diff.append(f"{code} missing, expected {code}{_pair(expected[code])}")
        elif code not in expected:
            diff.append(f"{code}{_pair(found[code])} not in reference")
        elif found[code] != expected[code]:
            diff.append(f"{code}{_pair(found[code])} vs expected {code}{_pair(expected[code])}")

    expected_totals = (
        sum(v[0] for v in expected.values()),
        sum(v[1] for v in expected.values()),
    )
    totals = (stats.level2_count, stats.level3_count)
    if totals != expected_totals:
        diff.append(f"total{_pair(totals)} vs expected total{_pair(expected_totals)}")
    return diff


def _pair(pair: Tuple[int, int]) -> str:
    return f"({pair[0]},{pair[1]})"

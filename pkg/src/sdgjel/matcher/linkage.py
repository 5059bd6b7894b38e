"""SDG to JEL linkage tables: construction, export form, the direct-match check and weighting agreement."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from sdgjel.errors import BadLinkage, UsageError
from sdgjel.matcher.keyword_matcher import (
    MatchResult,
    Method,
    direct_match,
    keywords_for,
    rank_codes,
)
from sdgjel.matcher.text_normalizer import FUNCTION_WORDS
from sdgjel.matcher.weighting import WeightingScheme, weight
from sdgjel.taxonomy.jel_taxonomy import JelTaxonomy
from sdgjel.taxonomy.sdg_catalog import SdgGoal

logger = logging.getLogger(__name__)

# Published match counts of the direct keyword search, keyed by keyword surface.
# "marine" and "maritime" share one published row.
REFERENCE_DIRECT_COUNTS: Dict[str, int] = {
    "poverty": 9, "hunger": 1, "food": 12, "nutrition": 4, "agriculture": 17,
    "health": 21, "well_being": 3, "education": 20, "learning": 5,
    "gender": 7, "women": 2, "girl": 0, "water": 6, "sanitation": 0,
    "energy": 12, "economic_growth": 5, "employment": 24, "work": 29,
    "infrastructure": 9, "industrialization": 3, "innovation": 7,
    "inequality": 12, "cities": 6, "housing": 11, "transport": 18,
    "consumption": 11, "production": 28, "climate": 3, "climate_change": 1,
    "ocean": 2, "marine": 2, "maritime": 2, "ecosystem": 2, "forest": 3,
    "desertification": 3, "land": 17, "biodiversity": 1, "peace": 2,
    "justice": 3, "institution": 22, "international": 63,
}


@dataclass(frozen=True)
class LinkageTable:
    method: Method
    weighting: WeightingScheme
    entries: Mapping[int, Tuple[MatchResult, ...]]

    def for_goal(self, sdg_id: int) -> Tuple[MatchResult, ...]:
        return self.entries.get(sdg_id, ())

    def code_scores(self, sdg_id: int) -> Dict[str, Fraction]:
        return {r.jel_code: r.score for r in self.for_goal(sdg_id)}

    def max_score(self, sdg_id: int) -> Fraction:
        return max((r.score for r in self.for_goal(sdg_id)), default=Fraction(0))

    def is_empty(self) -> bool:
        return not any(self.entries.values())

    def to_dict(self) -> Dict:
        return {
            "method": self.method.value,
            "weighting": self.weighting.value,
            "entries": {
                str(sdg_id): [
                    {
                        "jel": r.jel_code,
                        "score_num": r.score.numerator,
                        "score_den": r.score.denominator,
                        "matched": r.matched_surfaces,
                        "tie": r.tie,
                    }
                    for r in results
                ]
                for sdg_id, results in sorted(self.entries.items())
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping, goals: Sequence[SdgGoal]) -> "LinkageTable":
        """Rebuild a table from its export form, re-deriving weights from the catalog"""
        try:
            method = Method(data["method"])
            scheme = WeightingScheme(data["weighting"])
            raw_entries = data["entries"]
        except (KeyError, TypeError, ValueError) as e:
            raise BadLinkage(f"missing or unknown method/weighting/entries ({e})") from e
        if not isinstance(raw_entries, Mapping):
            raise BadLinkage("entries must be an object keyed by SDG id")

        by_id = {g.id: g for g in goals}
        entries = {}
        for key, rows in raw_entries.items():
            try:
                goal = by_id[int(key)]
            except (KeyError, ValueError):
                raise BadLinkage(f"unknown SDG id {key!r}") from None
            if not isinstance(rows, list):
                raise BadLinkage(f"SDG {goal.id}: entries must be a list, got {type(rows).__name__}")
            entries[goal.id] = tuple(_row_to_result(goal, method, scheme, row) for row in rows)
            _check_order(goal.id, entries[goal.id])
        return cls(method=method, weighting=scheme, entries=entries)


def _row_to_result(goal: SdgGoal, method: Method, scheme: WeightingScheme, row: Mapping) -> MatchResult:
    keywords = {kw.surface: kw for kw in keywords_for(goal, method)}
    if not isinstance(row, Mapping):
        raise BadLinkage(f"SDG {goal.id}: malformed entry {row!r}")
    try:
        code = str(row["jel"])
        score = Fraction(int(row["score_num"]), int(row["score_den"]))
        if not isinstance(row["matched"], list) or not all(isinstance(s, str) for s in row["matched"]):
            raise TypeError("matched must be a list of keywords")
        surfaces = list(row["matched"])
        tie = bool(row.get("tie", False))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise BadLinkage(f"SDG {goal.id}: malformed entry {row!r} ({e})") from e

    matched = []
    for surface in surfaces:
        if surface not in keywords:
            raise BadLinkage(f"SDG {goal.id} {code}: {surface!r} is not a {method.value} keyword")
        kw = keywords[surface]
        matched.append((kw, weight(scheme, kw.rank)))

    recomputed = sum((w for _, w in matched), Fraction(0))
    if recomputed != score:
        raise BadLinkage(f"SDG {goal.id} {code}: stored score {score} but keywords sum to {recomputed}")
    if score <= 0:
        raise BadLinkage(f"SDG {goal.id} {code}: zero score")
    return MatchResult(sdg_id=goal.id, jel_code=code, score=score, matched=tuple(matched), tie=tie)


def _check_order(sdg_id: int, results: Tuple[MatchResult, ...]) -> None:
    keys = [(-r.score, r.jel_code) for r in results]
    if keys != sorted(keys) or len(set(r.jel_code for r in results)) != len(results):
        raise BadLinkage(f"SDG {sdg_id}: entries are not ordered by score then code")


def build_linkage(
    goals: Sequence[SdgGoal],
    taxonomy: JelTaxonomy,
    method: Method,
    scheme: WeightingScheme,
    k: Optional[int] = None,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> LinkageTable:
    """Rank codes for every goal; k=None keeps every non-zero code"""
    if method is Method.DIRECT:
        scheme = WeightingScheme.UNIFORM
    entries = {goal.id: tuple(rank_codes(goal, taxonomy, method, scheme, k, function_words)) for goal in goals}
    logger.info(
        f"Built {method.value} linkage ({scheme.value}) with "
        f"{sum(len(v) for v in entries.values())} entries over {len(entries)} goals"
    )
    return LinkageTable(method=method, weighting=scheme, entries=entries)


@dataclass(frozen=True)
class DirectDeviation:
    sdg_id: int
    keyword: str
    expected: int
    found: int


def direct_match_deviations(
    goals: Sequence[SdgGoal],
    taxonomy: JelTaxonomy,
    reference: Mapping[str, int] = REFERENCE_DIRECT_COUNTS,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[DirectDeviation]:
    """Direct keywords whose computed count differs from the published count"""
    deviations = []
    for goal in goals:
        for hit in direct_match(goal, taxonomy, function_words):
            expected = reference.get(hit.keyword.surface)
            if expected is not None and expected != hit.count:
                deviations.append(DirectDeviation(goal.id, hit.keyword.surface, expected, hit.count))
    return deviations


@dataclass(frozen=True)
class SchemeAgreement:
    sdg_id: int
    first: WeightingScheme
    second: WeightingScheme
    first_codes: Tuple[str, ...]
    second_codes: Tuple[str, ...]

    @property
    def shared(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.first_codes) & set(self.second_codes)))

    @property
    def overlap(self) -> Fraction:
        """Shared codes over all codes of the two rankings; 1 when both are empty"""
        union = set(self.first_codes) | set(self.second_codes)
        return Fraction(len(self.shared), len(union)) if union else Fraction(1)


def compare_weightings(
    goals: Sequence[SdgGoal],
    taxonomy: JelTaxonomy,
    method: Method = Method.LAFLEUR,
    k: int = 3,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[SchemeAgreement]:
    """Top-k overlap per goal for every pair of weighting schemes"""
    if method is Method.DIRECT:
        raise UsageError("Direct matching has no weighting to compare")
    agreements = []
    for goal in goals:
        codes = {
            scheme: tuple(r.jel_code for r in rank_codes(goal, taxonomy, method, scheme, k, function_words))
            for scheme in WeightingScheme
        }
        for first, second in combinations(WeightingScheme, 2):
            agreements.append(SchemeAgreement(goal.id, first, second, codes[first], codes[second]))
    disjoint = sum(1 for a in agreements if a.first_codes and not a.shared)
    logger.info(f"Compared {len(agreements)} weighting pairs over {len(goals)} goals, {disjoint} without shared codes")
    return agreements

"""Keyword matching against JEL code text, overlap scoring and ranking."""
import logging
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple

from sdgjel.errors import UsageError
from sdgjel.matcher.text_normalizer import FUNCTION_WORDS, stemmed_stream
from sdgjel.matcher.weighting import WeightingScheme, weight
from sdgjel.taxonomy.jel_taxonomy import JelCode, JelTaxonomy
from sdgjel.taxonomy.sdg_catalog import Keyword, SdgGoal

logger = logging.getLogger(__name__)

Stream = Tuple[Tuple[int, str], ...]


class MatchLocus(str, Enum):
    LABEL = "label"
    GUIDELINE = "guideline"


class Method(str, Enum):
    DIRECT = "direct"
    LAFLEUR = "lafleur"
    SELECTED_THREE = "selected3"

    @classmethod
    def parse(cls, value: str) -> "Method":
        try:
            return cls(value.lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise UsageError(f"Unknown method {value!r}; choose one of {choices}") from None


@dataclass(frozen=True)
class MatchResult:
    sdg_id: int
    jel_code: str
    score: Fraction
    matched: Tuple[Tuple[Keyword, Fraction], ...]
    tie: bool = False

    @property
    def matched_surfaces(self) -> List[str]:
        return [kw.surface for kw, _ in self.matched]


@dataclass(frozen=True)
class DirectHit:
    """Codes hit by one direct keyword"""

    keyword: Keyword
    codes: Tuple[str, ...]
    example: Optional[str]

    @property
    def count(self) -> int:
        return len(self.codes)


# Room for a full level-3 taxonomy under a few function-word sets
CODE_STREAM_CACHE_SIZE = 4096


@lru_cache(maxsize=CODE_STREAM_CACHE_SIZE)
def _code_streams(jel: JelCode, function_words: FrozenSet[str]) -> Tuple[Stream, Stream]:
    return stemmed_stream(jel.label, function_words), stemmed_stream(jel.guideline, function_words)


def _stream_has(stream: Stream, stems: Tuple[str, ...]) -> bool:
    if len(stems) == 1:
        return any(s == stems[0] for _, s in stream)

    first, second = stems
    for (pos_a, a), (pos_b, b) in zip(stream, stream[1:]):
        if pos_b - pos_a != 1:
            continue
        if (a, b) == (first, second) or (a, b) == (second, first):
            return True
    return False


def keyword_matches(
    keyword: Keyword,
    jel: JelCode,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> Optional[MatchLocus]:
    """Where the keyword hits the code text: label first, then guideline; None if nowhere"""
    label, guideline = _code_streams(jel, frozenset(function_words))
    stems = keyword.stems
    if _stream_has(label, stems):
        return MatchLocus.LABEL
    if _stream_has(guideline, stems):
        return MatchLocus.GUIDELINE
    return None


def direct_match(
    goal: SdgGoal,
    taxonomy: JelTaxonomy,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[DirectHit]:
    """Level-3 codes matched by each direct keyword of a goal"""
    hits = []
    level3 = taxonomy.third_level()
    for kw in goal.direct_keywords:
        loci = [(jel.code, keyword_matches(kw, jel, function_words)) for jel in level3]
        matched = [(code, locus) for code, locus in loci if locus is not None]
        label_hits = [code for code, locus in matched if locus is MatchLocus.LABEL]
        example = label_hits[0] if label_hits else (matched[0][0] if matched else None)
        hits.append(DirectHit(kw, tuple(code for code, _ in matched), example))
    return hits


def overlap_score(
    keywords: Sequence[Keyword],
    jel: JelCode,
    scheme: WeightingScheme,
    sdg_id: int = 0,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> MatchResult:
    """Sum of keyword weights over the keywords matching this code"""
    matched = []
    for kw in keywords:
        if keyword_matches(kw, jel, function_words):
            matched.append((kw, weight(scheme, kw.rank)))
    score = sum((w for _, w in matched), Fraction(0))
    return MatchResult(sdg_id=sdg_id, jel_code=jel.code, score=score, matched=tuple(matched))


def keywords_for(goal: SdgGoal, method: Method) -> Tuple[Keyword, ...]:
    if method is Method.DIRECT:
        return goal.direct_keywords
    if method is Method.LAFLEUR:
        return goal.lafleur_keywords
    return goal.selected_three


def score_codes(
    keywords: Sequence[Keyword],
    taxonomy: JelTaxonomy,
    scheme: WeightingScheme,
    sdg_id: int = 0,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[MatchResult]:
    """Non-zero level-3 scores, ordered by score descending then code"""
    results = [overlap_score(keywords, jel, scheme, sdg_id, function_words) for jel in taxonomy.third_level()]
    results = [r for r in results if r.score > 0]
    results.sort(key=lambda r: (-r.score, r.jel_code))
    return results


def cut_ranking(results: List[MatchResult], k: Optional[int]) -> List[MatchResult]:
    """Keep the first k results plus any codes tied with the k-th; tied codes are flagged"""
    if k is not None and k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if k is None or len(results) <= k:
        return list(results)

    boundary = results[k - 1].score
    end = k
    while end < len(results) and results[end].score == boundary:
        end += 1
    if end == k:
        return results[:k]
    return [replace(r, tie=True) if r.score == boundary else r for r in results[:end]]


def rank_codes(
    goal: SdgGoal,
    taxonomy: JelTaxonomy,
    method: Method,
    scheme: WeightingScheme,
    k: Optional[int] = 3,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[MatchResult]:
    """Top-k level-3 codes for a goal, boundary ties included"""
    keywords = keywords_for(goal, method)
    ranking = cut_ranking(score_codes(keywords, taxonomy, scheme, goal.id, function_words), k)
    logger.debug(f"SDG {goal.id} {method.value}/{scheme.value}: {len(ranking)} codes ranked")
    return ranking

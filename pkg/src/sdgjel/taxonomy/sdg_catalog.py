"""SDG catalog: goal titles and the three keyword lists per goal."""
import json
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple, Union

from sdgjel.errors import BadCatalog
from sdgjel.matcher.text_normalizer import keyword_stems
from sdgjel.taxonomy.jel_taxonomy import strip_comment_header

logger = logging.getLogger(__name__)

GOAL_COUNT = 17
MAX_LAFLEUR_KEYWORDS = 20
SURFACE_PATTERN = re.compile(r"^[a-z0-9]+(_[a-z0-9]+)?$")
CATALOG_FIELDS = ("id", "title", "direct_keywords", "lafleur_keywords", "selected_three")


@dataclass(frozen=True)
class Keyword:
    surface: str
    rank: int

    @property
    def parts(self) -> Tuple[str, ...]:
        return tuple(self.surface.split("_"))

    @property
    def is_bigram(self) -> bool:
        return "_" in self.surface

    @property
    def stems(self) -> Tuple[str, ...]:
        return keyword_stems(self.surface)


@dataclass(frozen=True)
class SdgGoal:
    id: int
    title: str
    direct_keywords: Tuple[Keyword, ...]
    lafleur_keywords: Tuple[Keyword, ...]
    selected_three: Tuple[Keyword, ...]


def make_keywords(surfaces: Iterable[str]) -> Tuple[Keyword, ...]:
    """Rank surfaces by position, starting at 1"""
    return tuple(Keyword(surface=s, rank=i) for i, s in enumerate(surfaces, start=1))


def _keyword_list(goal_id: int, name: str, value) -> Tuple[Keyword, ...]:
    if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
        raise BadCatalog(goal_id, f"{name} must be a list of strings")

    seen = set()
    for surface in value:
        if not SURFACE_PATTERN.match(surface):
            raise BadCatalog(goal_id, f"{name} keyword {surface!r} is not a lowercase unigram or bigram")
        if surface in seen:
            raise BadCatalog(goal_id, f"{name} repeats keyword {surface!r}")
        seen.add(surface)
    return make_keywords(value)


def _entry_to_goal(entry) -> SdgGoal:
    if not isinstance(entry, dict):
        raise BadCatalog(None, "catalog entries must be objects")
    missing = [f for f in CATALOG_FIELDS if f not in entry]
    goal_id = entry.get("id")
    if missing:
        raise BadCatalog(goal_id, f"missing fields {missing}")
    if not isinstance(goal_id, int) or not 1 <= goal_id <= GOAL_COUNT:
        raise BadCatalog(goal_id, "goal id must be an integer in 1..17")

    direct = _keyword_list(goal_id, "direct_keywords", entry["direct_keywords"])
    lafleur = _keyword_list(goal_id, "lafleur_keywords", entry["lafleur_keywords"])
    selected = _keyword_list(goal_id, "selected_three", entry["selected_three"])

    if not direct:
        raise BadCatalog(goal_id, "direct_keywords is empty")
    if len(lafleur) > MAX_LAFLEUR_KEYWORDS:
        raise BadCatalog(goal_id, f"lafleur_keywords has {len(lafleur)} entries, at most {MAX_LAFLEUR_KEYWORDS}")
    if len(selected) != 3:
        raise BadCatalog(goal_id, f"selected_three has {len(selected)} entries")

    lafleur_stems = {kw.stems for kw in lafleur}
    for kw in selected:
        if kw.stems not in lafleur_stems:
            raise BadCatalog(goal_id, f"selected keyword {kw.surface!r} is not in the LaFleur list")

    return SdgGoal(
        id=goal_id,
        title=str(entry["title"]),
        direct_keywords=direct,
        lafleur_keywords=lafleur,
        selected_three=selected,
    )


def parse_sdg_catalog(raw: Union[bytes, str]) -> Tuple[SdgGoal, ...]:
    """Parse catalog bytes into exactly 17 goals ordered by id"""
    try:
        payload = json.loads(strip_comment_header(raw))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise BadCatalog(None, f"not valid JSON: {e}") from e
    if not isinstance(payload, list):
        raise BadCatalog(None, "payload must be a JSON array")

    goals: Dict[int, SdgGoal] = {}
    for entry in payload:
        goal = _entry_to_goal(entry)
        if goal.id in goals:
            raise BadCatalog(goal.id, "duplicate goal id")
        goals[goal.id] = goal

    missing: List[int] = [i for i in range(1, GOAL_COUNT + 1) if i not in goals]
    if missing:
        raise BadCatalog(missing[0], f"goal ids missing: {missing}")

    logger.debug(f"Parsed SDG catalog with {len(goals)} goals")
    return tuple(goals[i] for i in sorted(goals))

"""Mechanical reduction of ranked keyword lists.

Three elimination steps run in order: general words from the stoplist,
bigrams whose two words are also listed on their own, and plural forms
whose singular is listed.  Choosing the final three keywords is not done
here; those come from the catalog.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from sdgjel.errors import BadStoplist
from sdgjel.matcher.text_normalizer import FUNCTION_WORDS
from sdgjel.taxonomy.sdg_catalog import Keyword, SdgGoal, make_keywords

logger = logging.getLogger(__name__)

WORD_PATTERN = re.compile(r"^[a-z0-9]+$")

STEP_GENERAL_WORDS = "general words"
STEP_SEPARATE_PAIRS = "pairs listed separately"
STEP_PLURALS = "plural forms"


@dataclass(frozen=True)
class Stoplist:
    general_words: FrozenSet[str]
    function_words: FrozenSet[str] = field(default=FUNCTION_WORDS)

    def check_against(self, goals: Iterable[SdgGoal]) -> None:
        """Raise BadStoplist if a general word is one of a goal's selected keywords"""
        for goal in goals:
            for kw in goal.selected_three:
                if kw.surface in self.general_words:
                    raise BadStoplist(kw.surface, f"selected keyword of goal {goal.id}")


@dataclass(frozen=True)
class ReductionTrace:
    original: Tuple[Keyword, ...]
    removed: Tuple[Tuple[str, Tuple[Keyword, ...]], ...]
    survivors: Tuple[Keyword, ...]

    def removed_by(self, step: str) -> Tuple[Keyword, ...]:
        return dict(self.removed).get(step, ())


def parse_stoplist(raw: Union[bytes, str]) -> Stoplist:
    """One general word per line; '#' starts a comment"""
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip()
        if not word:
            continue
        if not WORD_PATTERN.match(word):
            raise BadStoplist(word, "general words are single lowercase words")
        if word in words:
            logger.warning(f"Stoplist lists {word!r} twice")
        words.add(word)
    return Stoplist(general_words=frozenset(words))


def _drop_general_words(keywords: Sequence[Keyword], stop: Stoplist) -> List[Keyword]:
    return [kw for kw in keywords if kw.surface not in stop.general_words]


def _drop_separate_pairs(keywords: Sequence[Keyword]) -> List[Keyword]:
    unigram_stems = {kw.stems[0] for kw in keywords if not kw.is_bigram}
    return [
        kw for kw in keywords
        if not (kw.is_bigram and all(s in unigram_stems for s in kw.stems))
    ]


def _drop_plurals(keywords: Sequence[Keyword]) -> List[Keyword]:
    # Keep the shortest surface per stem, earliest on equal length.
    keep: Dict[Tuple[str, ...], Keyword] = {}
    for kw in keywords:
        current = keep.get(kw.stems)
        if current is None or len(kw.surface) < len(current.surface):
            keep[kw.stems] = kw
    kept = set(keep.values())
    return [kw for kw in keywords if kw in kept]


def trace_reduction(keywords: Sequence[Keyword], stop: Stoplist) -> ReductionTrace:
    """Run the three elimination steps and record what each removed"""
    steps = (
        (STEP_GENERAL_WORDS, lambda kws: _drop_general_words(kws, stop)),
        (STEP_SEPARATE_PAIRS, _drop_separate_pairs),
        (STEP_PLURALS, _drop_plurals),
    )
    current = list(keywords)
    removed = []
    for name, step in steps:
        after = step(current)
        remaining = set(after)
        removed.append((name, tuple(kw for kw in current if kw not in remaining)))
        current = after

    survivors = make_keywords(kw.surface for kw in current)
    return ReductionTrace(original=tuple(keywords), removed=tuple(removed), survivors=survivors)


def reduce_keywords(keywords: Sequence[Keyword], stop: Stoplist) -> Tuple[Keyword, ...]:
    """Surviving keywords, re-ranked 1..m in their original order"""
    return trace_reduction(keywords, stop).survivors


def selected_three_survives(goal: SdgGoal, survivors: Sequence[Keyword]) -> bool:
    """Selected keywords match survivors by stem, so 'disease' is kept by 'diseases'"""
    surviving = {kw.stems for kw in survivors}
    return all(kw.stems in surviving for kw in goal.selected_three)

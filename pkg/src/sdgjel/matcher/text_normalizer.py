"""Tokenization and a small fixed-rule stemmer for JEL labels and keywords.

The stemmer is deliberately narrow: a spelling-variant table, an irregular
plural table, then one pass over an ordered suffix table (first match wins),
and finally a trailing "e" is dropped.  It only has to make keywords such as
"agriculture" collide with label words such as "Agricultural".
"""
import re
import unicodedata
from functools import lru_cache
from typing import FrozenSet, List, Optional, Tuple

# Letters and digits in any script; everything else separates words
TOKEN_PATTERN = re.compile(r"[^\W_]+")

FUNCTION_WORDS: FrozenSet[str] = frozenset({
    "a", "an", "the",
    "and", "or", "nor", "but", "if", "so",
    "of", "in", "on", "at", "to", "for", "with", "by", "from", "as",
    "into", "onto", "upon", "via", "than",
    "its", "their", "his", "her", "our", "your",
    "this", "that", "these", "those",
    "is", "are", "was", "were",
    "which", "who", "whom", "whose", "such", "both", "either",
})

# British spellings from UN sources mapped onto JEL's American spelling.
SPELLING_VARIANTS = {
    "labour": "labor",
}

IRREGULAR_PLURALS = {
    "women": "woman",
    "men": "man",
    "children": "child",
    "cities": "city",
}

# (suffix, replacement, minimum stem length left after stripping).
# A replacement of None stops the pass without changing the token.
SUFFIX_RULES: Tuple[Tuple[str, Optional[str], int], ...] = (
    ("izations", "ize", 0),
    ("ization", "ize", 0),
    ("ities", "ity", 0),
    ("ies", "y", 0),
    ("ment", None, 0),
    ("ural", "ur", 0),
    ("al", "", 5),
    ("es", "", 0),
    ("s", "", 0),
)


@lru_cache(maxsize=None)
def stem(token: str) -> str:
    """Stem one casefolded token"""
    word = SPELLING_VARIANTS.get(token, token)
    word = IRREGULAR_PLURALS.get(word, word)

    for suffix, replacement, min_stem in SUFFIX_RULES:
        if not word.endswith(suffix) or len(word) <= len(suffix):
            continue
        if replacement is None:
            break
        if suffix == "s" and word.endswith("ss"):
            break
        base = word[: -len(suffix)]
        if len(base) >= min_stem:
            word = base + replacement
        break

    if len(word) > 1 and word.endswith("e"):
        word = word[:-1]
    return word


def positioned_tokens(
    text: str,
    function_words: FrozenSet[str] = FUNCTION_WORDS,
) -> List[Tuple[int, str]]:
    """Content tokens with their position in the unfiltered word stream"""
    words = TOKEN_PATTERN.findall(unicodedata.normalize("NFC", text).casefold())
    return [(pos, w) for pos, w in enumerate(words) if w not in function_words]


def normalize(text: str, function_words: FrozenSet[str] = FUNCTION_WORDS) -> List[str]:
    """Casefold, split on anything that is not a letter or digit, drop function words"""
    return [w for _, w in positioned_tokens(text, function_words)]


def stemmed_stream(text: str, function_words: FrozenSet[str] = FUNCTION_WORDS) -> Tuple[Tuple[int, str], ...]:
    """Positioned stems of a text, gaps left where function words were removed"""
    return tuple((pos, stem(w)) for pos, w in positioned_tokens(text, function_words))


def keyword_stems(surface: str) -> Tuple[str, ...]:
    """Stems of a keyword's parts; bigrams are underscore-joined"""
    return tuple(stem(part) for part in surface.split("_"))

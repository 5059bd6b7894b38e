"""JEL classification hierarchy: snapshot parsing, lookup and serialization.

The snapshot is a JSON array of ``{"code", "level", "parent", "label",
"guideline"}`` objects, optionally preceded by ``#`` comment lines carrying
provenance notes.
"""
import json
import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Union

from sdgjel.errors import BadCode, DuplicateCode, OrphanCode, TaxonomyError

logger = logging.getLogger(__name__)

CODE_PATTERN = re.compile(r"^[A-Z][0-9]{0,2}$")
SNAPSHOT_FIELDS = ("code", "level", "parent", "label", "guideline")


@dataclass(frozen=True)
class JelCode:
    """One node of the JEL hierarchy"""

    code: str
    level: int
    parent: Optional[str]
    label: str
    guideline: str = ""

    @property
    def letter(self) -> str:
        return self.code[0]

    def to_dict(self) -> Dict:
        return {
            "code": self.code,
            "level": self.level,
            "parent": self.parent,
            "label": self.label,
            "guideline": self.guideline,
        }


class JelTaxonomy:
    """Immutable, code-ordered collection of JEL codes"""

    def __init__(self, codes: Iterable[JelCode]):
        index: Dict[str, JelCode] = {}
        for jel in codes:
            if jel.code in index:
                raise DuplicateCode(jel.code)
            index[jel.code] = jel

        for jel in index.values():
            if jel.parent is not None and jel.parent not in index:
                raise OrphanCode(jel.code, jel.parent)

        self._codes = tuple(sorted(index.values(), key=lambda c: c.code))
        self._index = {c.code: c for c in self._codes}

    def __iter__(self) -> Iterator[JelCode]:
        return iter(self._codes)

    def __len__(self) -> int:
        return len(self._codes)

    def __contains__(self, code: str) -> bool:
        return code in self._index

    def __getitem__(self, code: str) -> JelCode:
        return self._index[code]

    def __eq__(self, other) -> bool:
        return isinstance(other, JelTaxonomy) and self._codes == other._codes

    @property
    def codes(self) -> Sequence[JelCode]:
        return self._codes

    def get(self, code: str) -> Optional[JelCode]:
        return self._index.get(code)

    def at_level(self, level: int) -> List[JelCode]:
        """Codes of one level, in code order"""
        return [c for c in self._codes if c.level == level]

    def third_level(self) -> List[JelCode]:
        return self.at_level(3)

    def children(self, code: str) -> List[JelCode]:
        return [c for c in self._codes if c.parent == code]


def strip_comment_header(raw: Union[bytes, str]) -> str:
    """Decode a data file and drop the leading '#' provenance lines"""
    text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    lines = text.splitlines()
    start = 0
    while start < len(lines) and (lines[start].lstrip().startswith("#") or not lines[start].strip()):
        start += 1
    return "\n".join(lines[start:])


def _load_entries(raw: Union[bytes, str]) -> List:
    try:
        payload = json.loads(strip_comment_header(raw))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise TaxonomyError(f"Snapshot is not valid JSON: {e}") from e
    if not isinstance(payload, list):
        raise TaxonomyError("Snapshot payload must be a JSON array")
    return payload


def _entry_to_code(line: int, entry) -> JelCode:
    if not isinstance(entry, dict):
        raise BadCode(line, str(entry), "entry is not an object")

    missing = [f for f in SNAPSHOT_FIELDS if f not in entry]
    if missing:
        raise BadCode(line, str(entry.get("code", "")), f"missing fields {missing}")

    code = entry["code"]
    if not isinstance(code, str) or not CODE_PATTERN.match(code):
        raise BadCode(line, str(code))

    level = entry["level"]
    if level != len(code):
        raise BadCode(line, code, f"level {level} does not match code length")

    parent = entry["parent"]
    expected_parent = code[:-1] if level > 1 else None
    if parent != expected_parent:
        raise BadCode(line, str(parent), f"parent of {code} must be {expected_parent}")

    label = entry["label"]
    if not isinstance(label, str) or not label.strip():
        raise BadCode(line, code, "empty label")

    guideline = entry["guideline"] or ""
    return JelCode(code=code, level=level, parent=parent, label=label, guideline=guideline)


def parse_jel_snapshot(raw: Union[bytes, str]) -> JelTaxonomy:
    """Parse snapshot bytes into a validated taxonomy"""
    entries = _load_entries(raw)
    codes = [_entry_to_code(i, entry) for i, entry in enumerate(entries, start=1)]
    taxonomy = JelTaxonomy(codes)
    logger.debug(f"Parsed JEL snapshot with {len(taxonomy)} codes")
    return taxonomy


def serialize_jel_snapshot(taxonomy: JelTaxonomy, header: Sequence[str] = ()) -> bytes:
    """Write the snapshot file form, one code object per line"""
    lines = [f"# {h}" if not h.startswith("#") else h for h in header]
    body = ",\n".join(
        "  " + json.dumps(c.to_dict(), ensure_ascii=False, separators=(",", ":"))
        for c in taxonomy
    )
    lines.append("[\n" + body + "\n]" if body else "[]")
    return ("\n".join(lines) + "\n").encode("utf-8")

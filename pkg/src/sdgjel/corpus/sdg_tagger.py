"""Tag bibliographic records with SDG relevance from a linkage table."""
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional

from sdgjel.corpus.record_loader import BiblioRecord
from sdgjel.errors import BadLinkage
from sdgjel.matcher.linkage import LinkageTable

SCORE_DECIMALS = 6


@dataclass(frozen=True)
class SdgTagging:
    record_id: str
    scores: Dict[int, Fraction]
    argmax: Optional[int]

    def to_dict(self) -> Dict:
        return {
            "id": self.record_id,
            "scores": {str(sdg): round(float(s), SCORE_DECIMALS) for sdg, s in sorted(self.scores.items())},
            "argmax": self.argmax,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


class SdgTagger:
    def __init__(self, linkage: LinkageTable):
        self.logger = logging.getLogger(__name__)
        if linkage.is_empty():
            raise BadLinkage("linkage table has no entries")
        self.linkage = linkage
        self._code_scores = {sdg: linkage.code_scores(sdg) for sdg in sorted(linkage.entries)}
        self._max_scores = {sdg: linkage.max_score(sdg) for sdg in self._code_scores}

    def tag(self, record: BiblioRecord) -> SdgTagging:
        """Sum linkage scores of the record's codes, normalized per SDG"""
        codes = set(record.jel_codes)
        scores: Dict[int, Fraction] = {}
        for sdg, code_scores in self._code_scores.items():
            raw = sum((s for code, s in code_scores.items() if code in codes), Fraction(0))
            if raw > 0:
                scores[sdg] = min(raw / self._max_scores[sdg], Fraction(1))

        # Smallest id wins ties.
        argmax = min(scores, key=lambda sdg: (-scores[sdg], sdg)) if scores else None
        return SdgTagging(record_id=record.id, scores=scores, argmax=argmax)

    def tag_all(self, records: Iterable[BiblioRecord]) -> Iterator[SdgTagging]:
        count = 0
        for record in records:
            count += 1
            yield self.tag(record)
        self.logger.info(f"Tagged {count} records")


def tag_record(record: BiblioRecord, linkage: LinkageTable) -> SdgTagging:
    return SdgTagger(linkage).tag(record)

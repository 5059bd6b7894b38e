import json
import logging
from typing import Iterable, List, Mapping, Sequence, Tuple

from sdgjel.corpus.sdg_tagger import SdgTagging
from sdgjel.corpus.trend_counter import TrendSeries
from sdgjel.errors import UsageError
from sdgjel.matcher.keyword_matcher import DirectHit, MatchResult
from sdgjel.matcher.keyword_reducer import ReductionTrace
from sdgjel.matcher.linkage import LinkageTable, SchemeAgreement
from sdgjel.taxonomy.jel_taxonomy import JelTaxonomy
from sdgjel.taxonomy.sdg_catalog import SdgGoal
from sdgjel.taxonomy.taxonomy_stats import TaxonomyStats

FORMATS = ("tsv", "json")

STATS_HEADER = ("class", "label", "level2", "level3")
DIRECT_HEADER = ("sdg_id", "keyword", "jel_code", "label", "count", "matched_keywords")
RANKING_HEADER = ("sdg_id", "rank", "jel_code", "label", "score", "matched_keywords")
AGREEMENT_HEADER = ("sdg_id", "first", "second", "first_codes", "second_codes", "shared", "overlap")
EMPTY = "-"


def _tsv(rows: Iterable[Sequence]) -> str:
    return "".join("\t".join(str(cell) for cell in row) + "\n" for row in rows)


def _json(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


class ReportTool:
    """Renders tables, rankings and traces as TSV or JSON text"""

    def __init__(self, output_format: str = "tsv"):
        self.logger = logging.getLogger(__name__)
        if output_format not in FORMATS:
            raise UsageError(f"Unknown format {output_format!r}; choose one of {', '.join(FORMATS)}")
        self.output_format = output_format

    @property
    def as_json(self) -> bool:
        return self.output_format == "json"

    def render_taxonomy_stats(self, stats: TaxonomyStats, diff: Sequence[str] = ()) -> str:
        """Per-class counts plus the totals row"""
        if self.as_json:
            return _json({
                "classes": [
                    {"class": c.code, "label": c.label, "level2": c.level2, "level3": c.level3}
                    for c in stats.per_class
                ],
                "total": {"level2": stats.level2_count, "level3": stats.level3_count},
                "diff": list(diff),
            })

        rows: List[Tuple] = [STATS_HEADER]
        rows.extend((c.code, c.label, c.level2, c.level3) for c in stats.per_class)
        rows.append(("Total sum", "", stats.level2_count, stats.level3_count))
        return _tsv(rows)

    def render_direct(
        self,
        goals: Sequence[SdgGoal],
        hits: Mapping[int, Sequence[DirectHit]],
        taxonomy: JelTaxonomy,
    ) -> str:
        """One row per direct keyword with its count and example code"""
        if self.as_json:
            return _json({
                "method": "direct",
                "goals": [
                    {
                        "sdg_id": goal.id,
                        "title": goal.title,
                        "keywords": [
                            {
                                "keyword": hit.keyword.surface,
                                "count": hit.count,
                                "example": hit.example,
                                "codes": list(hit.codes),
                            }
                            for hit in hits.get(goal.id, ())
                        ],
                    }
                    for goal in goals
                ],
            })

        rows: List[Tuple] = [DIRECT_HEADER]
        for goal in goals:
            for hit in hits.get(goal.id, ()):
                if hit.example is None:
                    rows.append((goal.id, hit.keyword.surface, EMPTY, EMPTY, 0, EMPTY))
                else:
                    rows.append((
                        goal.id,
                        hit.keyword.surface,
                        hit.example,
                        taxonomy[hit.example].label,
                        hit.count,
                        hit.keyword.surface,
                    ))
        return _tsv(rows)

    def _ranked_rows(self, results: Sequence[MatchResult]) -> List[Tuple[str, MatchResult]]:
        # Codes tied at the cut are starred
        return [(f"{i}*" if r.tie else str(i), r) for i, r in enumerate(results, start=1)]

    def render_ranking(
        self,
        goals: Sequence[SdgGoal],
        table: LinkageTable,
        taxonomy: JelTaxonomy,
        top_k: int,
    ) -> str:
        """Top-k codes per goal with exact scores and matched keywords"""
        if self.as_json:
            return _json({
                "method": table.method.value,
                "weighting": table.weighting.value,
                "top_k": top_k,
                "goals": [
                    {
                        "sdg_id": goal.id,
                        "title": goal.title,
                        "codes": [
                            {
                                "rank": rank,
                                "jel": r.jel_code,
                                "label": taxonomy[r.jel_code].label,
                                "score": str(r.score),
                                "matched": r.matched_surfaces,
                                "tie": r.tie,
                            }
                            for rank, r in self._ranked_rows(table.for_goal(goal.id))
                        ],
                    }
                    for goal in goals
                ],
            })

        rows: List[Tuple] = [RANKING_HEADER]
        for goal in goals:
            for rank, r in self._ranked_rows(table.for_goal(goal.id)):
                rows.append((
                    goal.id,
                    rank,
                    r.jel_code,
                    taxonomy[r.jel_code].label,
                    str(r.score),
                    ";".join(r.matched_surfaces),
                ))
        return _tsv(rows)

    def render_scheme_agreement(self, agreements: Sequence[SchemeAgreement], method: str, top_k: int) -> str:
        if self.as_json:
            return _json({
                "method": method,
                "top_k": top_k,
                "pairs": [
                    {
                        "sdg_id": a.sdg_id,
                        "first": a.first.value,
                        "second": a.second.value,
                        "first_codes": list(a.first_codes),
                        "second_codes": list(a.second_codes),
                        "shared": list(a.shared),
                        "overlap": str(a.overlap),
                    }
                    for a in agreements
                ],
            })

        rows: List[Tuple] = [AGREEMENT_HEADER]
        for a in agreements:
            rows.append((
                a.sdg_id,
                a.first.value,
                a.second.value,
                ";".join(a.first_codes) or EMPTY,
                ";".join(a.second_codes) or EMPTY,
                ";".join(a.shared) or EMPTY,
                str(a.overlap),
            ))
        return _tsv(rows)

    def render_reduction(self, goal: SdgGoal, trace: ReductionTrace, survives: bool) -> str:
        """Original list, removals per step and the survivors"""
        selected = [kw.surface for kw in goal.selected_three]
        if self.as_json:
            return _json({
                "sdg_id": goal.id,
                "title": goal.title,
                "original": [kw.surface for kw in trace.original],
                "removed": {step: [kw.surface for kw in removed] for step, removed in trace.removed},
                "survivors": [kw.surface for kw in trace.survivors],
                "selected_three": selected,
                "selected_three_survive": survives,
            })

        def listing(keywords) -> str:
            return ", ".join(kw.surface for kw in keywords) or EMPTY

        lines = [
            f"SDG {goal.id}: {goal.title}",
            f"original ({len(trace.original)}): {listing(trace.original)}",
        ]
        for step, removed in trace.removed:
            lines.append(f"removed, {step} ({len(removed)}): {listing(removed)}")
        lines.append(f"survivors ({len(trace.survivors)}): {listing(trace.survivors)}")
        lines.append(f"selected three: {', '.join(selected)} ({'all survive' if survives else 'NOT all survive'})")
        return "\n".join(lines) + "\n"

    def render_taggings(self, taggings: Iterable[SdgTagging]) -> str:
        return "".join(t.to_json_line() + "\n" for t in taggings)

    def render_trend(self, series: Sequence[TrendSeries], years: Tuple[int, int]) -> str:
        """Zero-filled year rows, one column per query group"""
        first, last = years
        if self.as_json:
            return _json({
                "years": [first, last],
                "groups": [
                    {
                        "name": s.query_group,
                        "phrases": list(s.phrases),
                        "counts": {str(y): s.counts.get(y, 0) for y in range(first, last + 1)},
                    }
                    for s in series
                ],
            })

        rows: List[Tuple] = [("year",) + tuple(s.query_group for s in series)]
        for year in range(first, last + 1):
            rows.append((year,) + tuple(s.counts.get(year, 0) for s in series))
        return _tsv(rows)

    def render_linkage(self, table: LinkageTable) -> str:
        return _json(table.to_dict())


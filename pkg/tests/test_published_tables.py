"""Published crosswalk tables reproduced from the bundled data."""
from fractions import Fraction

import pytest

from sdgjel.matcher.keyword_matcher import Method, overlap_score, rank_codes, score_codes
from sdgjel.matcher.weighting import WeightingScheme

# First-listed code per goal in the published top-three tables
LAFLEUR_TOP5_FIRST = {
    1: "I32", 2: "O13", 3: "I12", 4: "I21", 5: "J16", 6: "Q53", 7: "Q42", 8: "E24", 9: "O14",
    10: "F63", 11: "Q53", 12: "Q11", 13: "Q54", 14: "Q25", 15: "Q57", 16: "O17", 17: "F63",
}
SELECTED_THREE_FIRST = {
    1: "I32", 2: "O13", 3: "I12", 4: "I21", 5: "J16", 6: "Q53", 7: "Q42", 8: "E24", 9: "H54",
    10: "D31", 11: "O18", 12: "D62", 13: "Q54", 14: "L92", 15: "O13", 16: "O17", 17: "F35",
}
MIN_REPRODUCED = 14


def reproduced(goals, taxonomy, method, scheme, expected):
    hits = {}
    for goal in goals:
        codes = [r.jel_code for r in rank_codes(goal, taxonomy, method, scheme, 3)]
        hits[goal.id] = expected[goal.id] in codes
    return hits


def test_lafleur_top_five_weighting(goals, taxonomy):
    hits = reproduced(goals, taxonomy, Method.LAFLEUR, WeightingScheme.TOP_FIVE_THEN_HARMONIC, LAFLEUR_TOP5_FIRST)
    assert sum(hits.values()) >= MIN_REPRODUCED, [g for g, ok in hits.items() if not ok]
    for goal_id in (1, 9, 10, 13, 15, 16, 17):
        assert hits[goal_id]


def test_selected_three(goals, taxonomy):
    hits = reproduced(goals, taxonomy, Method.SELECTED_THREE, WeightingScheme.UNIFORM, SELECTED_THREE_FIRST)
    assert sum(hits.values()) >= MIN_REPRODUCED, [g for g, ok in hits.items() if not ok]
    for goal_id in (3, 8, 13, 15, 17):
        assert hits[goal_id]


def test_climate_score(goal, taxonomy):
    result = overlap_score(goal(13).lafleur_keywords, taxonomy["Q54"], WeightingScheme.TOP_FIVE_THEN_HARMONIC)
    assert result.score == Fraction(7237, 1320)
    assert result.matched_surfaces == [
        "climate", "change", "climate_change", "agreement", "paris",
        "paris_agreement", "global", "emissions", "adaptation",
    ]


def test_structural_change_artifact(goal, taxonomy):
    """C22 only shares the word 'change' with the climate goal but still scores"""
    scored = score_codes(goal(13).lafleur_keywords, taxonomy, WeightingScheme.TOP_FIVE_THEN_HARMONIC, 13)
    c22 = next(r for r in scored if r.jel_code == "C22")
    assert c22.matched_surfaces == ["change"]
    ranked = rank_codes(goal(13), taxonomy, Method.LAFLEUR, WeightingScheme.TOP_FIVE_THEN_HARMONIC, 3)
    assert "C22" in [r.jel_code for r in ranked if r.tie]


@pytest.mark.parametrize("goal_id, codes", [
    (17, {"F35", "F63", "O19", "Q56"}),
    (13, {"Q54", "Q58"}),
])
def test_selected_three_rankings(goal, taxonomy, goal_id, codes):
    ranked = rank_codes(goal(goal_id), taxonomy, Method.SELECTED_THREE, WeightingScheme.UNIFORM, 3)
    assert {r.jel_code for r in ranked} == codes

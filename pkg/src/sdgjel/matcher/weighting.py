"""Weighting schemes and the rank-to-weight dispatch."""
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict

from sdgjel.errors import UsageError


class WeightingScheme(str, Enum):
    UNIFORM = "uniform"
    HARMONIC = "harmonic"
    TOP_FIVE_THEN_HARMONIC = "top5"

    @classmethod
    def parse(cls, value: str) -> "WeightingScheme":
        try:
            return cls(value.lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise UsageError(f"Unknown weighting {value!r}; choose one of {choices}") from None


@lru_cache(maxsize=None)
def _initialize_strategies() -> Dict[WeightingScheme, object]:
    """Initialize all weighting strategies"""
    from sdgjel.strategies.uniform_weighting_strategy import UniformStrategy
    from sdgjel.strategies.harmonic_weighting_strategy import HarmonicStrategy
    from sdgjel.strategies.top_five_weighting_strategy import TopFiveThenHarmonicStrategy

    logging.getLogger(__name__).debug("Initializing weighting strategies")
    return {
        WeightingScheme.UNIFORM: UniformStrategy(),
        WeightingScheme.HARMONIC: HarmonicStrategy(),
        WeightingScheme.TOP_FIVE_THEN_HARMONIC: TopFiveThenHarmonicStrategy(),
    }


def weight(scheme: WeightingScheme, rank: int) -> Fraction:
    """Exact weight of the keyword at a 1-based rank; BadRank below 1"""
    return _initialize_strategies()[WeightingScheme(scheme)].weight(rank)


def max_total(scheme: WeightingScheme, count: int) -> Fraction:
    """Score reached when all of count ranked keywords match"""
    return sum((weight(scheme, r) for r in range(1, count + 1)), Fraction(0))

from fractions import Fraction

from sdgjel.errors import BadRank


class HarmonicStrategy:
    """Weight 1/rank"""

    name = "harmonic"

    def weight(self, rank: int) -> Fraction:
        if rank < 1:
            raise BadRank(rank)
        return Fraction(1, rank)

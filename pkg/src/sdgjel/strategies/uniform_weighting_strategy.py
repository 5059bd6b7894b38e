from fractions import Fraction

from sdgjel.errors import BadRank


class UniformStrategy:
    """Every keyword counts once, whatever its rank"""

    name = "uniform"

    def weight(self, rank: int) -> Fraction:
        if rank < 1:
            raise BadRank(rank)
        return Fraction(1)

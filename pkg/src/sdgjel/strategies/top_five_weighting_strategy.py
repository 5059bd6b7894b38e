from fractions import Fraction

from sdgjel.errors import BadRank


class TopFiveThenHarmonicStrategy:
    """Weight 1 for the first five keywords, 1/rank after that"""

    name = "top5"

    def __init__(self, head: int = 5):
        self.head = head

    def weight(self, rank: int) -> Fraction:
        if rank < 1:
            raise BadRank(rank)
        if rank <= self.head:
            return Fraction(1)
        return Fraction(1, rank)

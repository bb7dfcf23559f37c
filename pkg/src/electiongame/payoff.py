"""Expected payoffs and social welfare of a profile."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .model import GameInstance
from .wp import WpFunction


@dataclass(frozen=True)
class Evaluation:
    probs: tuple[float, ...]
    payoffs: tuple[float, ...]
    social_welfare: float


def _payoffs(g: GameInstance, probs, s):
    t = g.table
    winners = [t[j][sj - 1] for j, sj in enumerate(s)]
    return tuple(
        math.fsum(p * w[i] for p, w in zip(probs, winners)) for i in range(g.m)
    )


def evaluate(g: GameInstance, wp: WpFunction, s: Sequence[int], *, checked: bool = False) -> Evaluation:
    """Winning probabilities, payoffs r_i(s) and SW(s) for one profile.

    ``checked=True`` skips index validation for callers iterating over
    ``g.profiles()``.
    """
    if not checked:
        s = g.check_profile(s)
    probs = wp.probabilities(g, s)
    payoffs = _payoffs(g, probs, s)
    social = g.social
    sw = math.fsum(p * social[j][sj - 1] for j, (p, sj) in enumerate(zip(probs, s)))
    return Evaluation(tuple(probs), payoffs, sw)


def payoff(g: GameInstance, wp: WpFunction, s: Sequence[int], i: int) -> float:
    """Expected utility of party ``i``'s supporters (1-based ``i``)."""
    s = g.check_profile(s)
    if not 1 <= i <= g.m:
        raise IndexError(f"party {i} out of range 1..{g.m}")
    probs = wp.probabilities(g, s)
    t = g.table
    return math.fsum(p * t[j][sj - 1][i - 1] for j, (p, sj) in enumerate(zip(probs, s)))


def payoff_vector(g: GameInstance, wp: WpFunction, s: Sequence[int]) -> tuple[float, ...]:
    return evaluate(g, wp, s).payoffs


def social_welfare(g: GameInstance, wp: WpFunction, s: Sequence[int]) -> float:
    return evaluate(g, wp, s).social_welfare


class PayoffCache:
    """Memoised payoff vectors for repeated scans of one game."""

    def __init__(self, g: GameInstance, wp: WpFunction):
        self.g = g
        self.wp = wp
        self._store: dict[tuple[int, ...], tuple[float, ...]] = {}
        self.evaluations = 0

    def __call__(self, s):
        try:
            return self._store[s]
        except KeyError:
            self.evaluations += 1
            r = _payoffs(self.g, self.wp.probabilities(self.g, s), s)
            self._store[s] = r
            return r

"""Fixed-parameter PSNE search over a surpass-reduced strategy space.

Each party keeps a prefix of candidates ending at its nominating depth
d_i, optionally thinned further to the chain of candidates that no earlier
candidate surpasses.  Parties with d_i = 1 are pinned to their first
candidate and the search runs over the remaining ("irresolute") parties.
The scan costs at most prod(|reduced set|) <= d~^k profile evaluations.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, replace

from .errors import NonMonotoneWp
from .model import GameInstance, Profile, require_egoistic
from .payoff import PayoffCache
from .wp import WpFunction, check_monotone


@dataclass(frozen=True)
class ReducedGame:
    d_per_party: tuple[int, ...]
    reduced_sets: tuple[tuple[int, ...], ...]
    refined: bool = False

    @property
    def resolute_set(self) -> frozenset[int]:
        return frozenset(i for i, d in enumerate(self.d_per_party, start=1) if d == 1)

    @property
    def k(self) -> int:
        return sum(1 for d in self.d_per_party if d > 1)

    @property
    def depth(self) -> int:
        return max(self.d_per_party)

    @property
    def refined_per_party(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.reduced_sets)

    @property
    def refined_depth(self) -> int:
        return max(self.refined_per_party)

    @property
    def space_size(self) -> int:
        return math.prod(len(r) for i, r in enumerate(self.reduced_sets, start=1)
                         if i not in self.resolute_set)


def nominating_index(g: GameInstance, i: int, limit: int | None = None) -> int:
    """Last own-utility maximiser among the social-utility maximisers of a prefix.

    Considers candidates 1..limit of party ``i`` (the whole party by default).
    """
    social = g.social[i - 1][: limit]
    own = [vec[i - 1] for vec in g.table[i - 1][: limit]]
    top = max(social)
    max_prob = [s for s, u in enumerate(social) if u == top]
    best_own = max(own[s] for s in max_prob)
    return max(s for s in max_prob if own[s] == best_own) + 1


def compute_depths(g: GameInstance) -> ReducedGame:
    require_egoistic(g)
    d = tuple(nominating_index(g, i) for i in range(1, g.m + 1))
    return ReducedGame(d, tuple(tuple(range(1, di + 1)) for di in d))


def refine_strategy_sets(g: GameInstance, reduced: ReducedGame) -> ReducedGame:
    """Thin each prefix [d_i] to the chain of candidates that are never surpassed.

    Starting from x_{i,d_i}, repeatedly pick the nominating index of the
    prefix strictly before the last pick; the chain ends at candidate 1.
    """
    chains = []
    for i, d_i in enumerate(reduced.d_per_party, start=1):
        chain = [d_i]
        while chain[-1] > 1:
            chain.append(nominating_index(g, i, chain[-1] - 1))
        chains.append(tuple(sorted(chain)))
    return replace(reduced, reduced_sets=tuple(chains), refined=True)


@dataclass(frozen=True)
class FptResult:
    profile: Profile | None
    reduced: ReducedGame
    profiles_evaluated: int
    deviation_checks: int
    payoff_evaluations: int
    seconds: float

    @property
    def found(self) -> bool:
        return self.profile is not None


def fpt_psne(g: GameInstance, wp: WpFunction, refine: bool = True,
             verify_monotone: bool = False) -> FptResult:
    """Find the lexicographically first PSNE in the reduced space, or report none.

    Deviations are only checked inside the reduced sets of irresolute
    parties; pruned candidates are surpassed and can never pay more than
    the candidate that surpasses them.
    """
    started = time.perf_counter()
    require_egoistic(g)
    if verify_monotone:
        check = check_monotone(g, wp, trials=200)
        if not check:
            raise NonMonotoneWp(f"monotonicity violated at {check.witness}")
    reduced = compute_depths(g)
    if refine:
        reduced = refine_strategy_sets(g, reduced)
    pinned = reduced.resolute_set
    free = [i for i in range(g.m) if i + 1 not in pinned]
    if not free:
        return FptResult((1,) * g.m, reduced, 0, 0, 0, time.perf_counter() - started)

    cache = PayoffCache(g, wp)
    evaluated = checks = 0
    axes = [reduced.reduced_sets[i] if i in free else (1,) for i in range(g.m)]
    for s in itertools.product(*axes):
        evaluated += 1
        base = cache(s)
        stable = True
        for i in free:
            for c in reduced.reduced_sets[i]:
                if c == s[i]:
                    continue
                checks += 1
                if cache(s[:i] + (c,) + s[i + 1:])[i] > base[i]:
                    stable = False
                    break
            if not stable:
                break
        if stable:
            return FptResult(s, reduced, evaluated, checks, cache.evaluations,
                             time.perf_counter() - started)
    return FptResult(None, reduced, evaluated, checks, cache.evaluations,
                     time.perf_counter() - started)

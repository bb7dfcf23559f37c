"""Winning-probability (WP) functions.

A WP function maps a profile to one winning probability per party.  The
hardmax and softmax rules only look at the social utilities of the
designated candidates; they derive from :class:`SocialUtilityWp` and can
also be evaluated on a bare utility vector (the coalition analysis relies
on that).  New rules are added with :func:`register`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .model import Check, GameInstance, Profile


class WpFunction:
    name = "abstract"

    def probabilities(self, g: GameInstance, s: Profile) -> tuple[float, ...]:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class SocialUtilityWp(WpFunction):
    """A WP rule that depends only on the social utilities and beta."""

    def from_utilities(self, utilities: Sequence[float], beta: float) -> tuple[float, ...]:
        raise NotImplementedError

    def probabilities(self, g, s):
        social = g.social
        return self.from_utilities([social[i][si - 1] for i, si in enumerate(s)], g.beta)


class Hardmax(SocialUtilityWp):
    name = "hardmax"

    def from_utilities(self, utilities, beta):
        utilities = list(utilities)
        # ties go to the smallest party index
        winner = utilities.index(max(utilities))
        return tuple(1.0 if k == winner else 0.0 for k in range(len(utilities)))


class Softmax(SocialUtilityWp):
    name = "softmax"

    def from_utilities(self, utilities, beta):
        scaled = [u / beta for u in utilities]
        top = max(scaled)
        weights = [math.exp(x - top) for x in scaled]
        total = math.fsum(weights)
        return tuple(w / total for w in weights)


@dataclass(frozen=True)
class CallableWp(SocialUtilityWp):
    """Wrap ``fn(utilities, beta) -> probabilities`` as a WP function."""

    fn: Callable[[Sequence[float], float], Sequence[float]]
    name: str = "custom"

    def from_utilities(self, utilities, beta):
        return tuple(float(p) for p in self.fn(list(utilities), beta))


HARDMAX = Hardmax()
SOFTMAX = Softmax()

_REGISTRY: dict[str, Callable[..., WpFunction]] = {
    "hardmax": lambda **_: HARDMAX,
    "softmax": lambda **_: SOFTMAX,
}


def register(name: str, factory: Callable[..., WpFunction]):
    _REGISTRY[name] = factory


def get_wp(name: str, **kwargs) -> WpFunction:
    """Look up a WP function by name (``gadget`` needs ``formula=``)."""
    if name == "gadget" and "gadget" not in _REGISTRY:
        from . import satgadget  # noqa: F401  registers itself

    try:
        factory = _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown WP function {name!r}; known: {sorted(_REGISTRY)}") from None
    return factory(**kwargs)


def available() -> list[str]:
    return sorted(set(_REGISTRY) | {"gadget"})


def win_probs(g: GameInstance, wp: WpFunction, s: Sequence[int]) -> tuple[float, ...]:
    return wp.probabilities(g, g.check_profile(s))


def check_monotone(g: GameInstance, wp: WpFunction, trials: int | None = None,
                   seed: int = 0, exhaustive_limit: int = 100_000) -> Check:
    """Verify that a better candidate never lowers its party's odds.

    For every profile s, party i and alternative s'_i with
    u(x_{i,s'_i}) >= u(x_{i,s_i}), require p_i(s'_i, s_{-i}) >= p_i(s).
    Small profile spaces are scanned exhaustively; otherwise ``trials``
    random profiles are probed.  The witness is ``(s, i, s'_i, p, p')``.
    """
    if g.num_profiles <= exhaustive_limit and trials is None:
        profiles = g.profiles()
    else:
        rng = random.Random(seed)
        n_trials = trials if trials is not None else 1000
        profiles = (
            tuple(rng.randint(1, n) for n in g.sizes) for _ in range(n_trials)
        )
    social = g.social
    for s in profiles:
        base = wp.probabilities(g, s)
        for i, n_i in enumerate(g.sizes):
            u_cur = social[i][s[i] - 1]
            for alt in range(1, n_i + 1):
                if alt == s[i] or social[i][alt - 1] < u_cur:
                    continue
                moved = s[:i] + (alt,) + s[i + 1:]
                p_alt = wp.probabilities(g, moved)[i]
                if p_alt < base[i]:
                    return Check(False, (s, i + 1, alt, base[i], p_alt))
    return Check(True)


__all__ = [
    "WpFunction", "SocialUtilityWp", "Hardmax", "Softmax", "CallableWp",
    "HARDMAX", "SOFTMAX", "register", "get_wp", "available", "win_probs",
    "check_monotone",
]

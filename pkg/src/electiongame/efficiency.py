"""Optimal profiles, price of anarchy / stability, and the efficiency bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .equilibria import DEFAULT_PROFILE_CAP, enumerate_psne, require_cap
from .model import Check, GameInstance, Profile, from_matrices, require_egoistic
from .payoff import evaluate
from .wp import WpFunction

POA_SLACK = 1e-9


def optimal_profile(g: GameInstance, wp: WpFunction,
                    cap: int = DEFAULT_PROFILE_CAP) -> tuple[Profile, float]:
    """The SW-maximising profile; the lexicographically first one wins ties."""
    require_cap(g, cap)
    best, best_sw = None, -math.inf
    for s in g.profiles():
        sw = evaluate(g, wp, s, checked=True).social_welfare
        if sw > best_sw:
            best, best_sw = s, sw
    return best, best_sw


@dataclass(frozen=True)
class EfficiencyReport:
    optimal_profile: Profile
    optimal_sw: float
    worst_psne: Profile | None = None
    worst_sw: float | None = None
    best_psne: Profile | None = None
    best_sw: float | None = None
    poa: float | None = None
    pos: float | None = None
    num_psne: int = 0

    def as_row(self) -> dict:
        def fmt(s):
            return None if s is None else "(" + ",".join(map(str, s)) + ")"

        return {
            "optimal_profile": fmt(self.optimal_profile),
            "optimal_sw": self.optimal_sw,
            "num_psne": self.num_psne,
            "worst_psne": fmt(self.worst_psne),
            "worst_sw": self.worst_sw,
            "best_psne": fmt(self.best_psne),
            "best_sw": self.best_sw,
            "poa": self.poa,
            "pos": self.pos,
        }


def _ratio(opt, sw):
    if sw == 0:
        return math.inf if opt > 0 else 1.0
    return opt / sw


def price_of_anarchy(g: GameInstance, wp: WpFunction, tau: float = 0.0,
                     cap: int = DEFAULT_PROFILE_CAP) -> EfficiencyReport:
    """PoA and PoS over the tau-PSNE set; both are None when no PSNE exists."""
    opt, opt_sw = optimal_profile(g, wp, cap)
    eqs = enumerate_psne(g, wp, tau, cap)
    if not eqs:
        return EfficiencyReport(opt, opt_sw)
    scored = [(evaluate(g, wp, s, checked=True).social_welfare, s) for s in eqs]
    # lexicographic order of eqs breaks ties
    worst_sw, worst = min(scored, key=lambda t: t[0])
    best_sw, best = max(scored, key=lambda t: t[0])
    return EfficiencyReport(
        opt, opt_sw, worst, worst_sw, best, best_sw,
        _ratio(opt_sw, worst_sw), _ratio(opt_sw, best_sw), len(eqs),
    )


def table3_family(m: int, beta: float, epsilon: float) -> GameInstance:
    """Egoistic m-party instance whose hardmax PoA tends to m as epsilon -> 0.

    Party 1 offers (beta/m + 3e on itself) or (beta/m for everyone); every
    other party j offers beta/m + 2e or beta/m + e, all on itself.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    if not beta > 0:
        raise ValueError("beta must be positive")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    share = beta / m
    if share + 3 * epsilon > beta:
        raise ValueError("beta/m + 3*epsilon exceeds beta")

    def own(i, value):
        v = [0.0] * m
        v[i] = value
        return v

    parties = [[own(0, share + 3 * epsilon), [share] * m]]
    for j in range(1, m):
        parties.append([own(j, share + 2 * epsilon), own(j, share + epsilon)])
    g = from_matrices(beta, parties)
    return GameInstance(g.beta, g.parties, {
        "source": "table3", "m": m, "beta": beta, "epsilon": epsilon,
    })


def check_psne_covers_optimum(g: GameInstance, wp: WpFunction, tau: float = 0.0,
                       cap: int = DEFAULT_PROFILE_CAP) -> Check:
    """Every PSNE's summed social utility covers the optimum's best candidate.

    Witness: ``(psne, sum_u, max_u_opt)`` for the first violating PSNE.
    """
    require_egoistic(g)
    opt, _ = optimal_profile(g, wp, cap)
    social = g.social
    target = max(social[i][si - 1] for i, si in enumerate(opt))
    for s in enumerate_psne(g, wp, tau, cap):
        total = math.fsum(social[i][si - 1] for i, si in enumerate(s))
        if total < target:
            return Check(False, (s, total, target))
    return Check(True)


def check_poa_bound(g: GameInstance, wp: WpFunction, tau: float = 0.0,
                    cap: int = DEFAULT_PROFILE_CAP) -> Check:
    """PoA <= m (up to 1e-9), vacuously true without a PSNE.  Witness: the PoA."""
    require_egoistic(g)
    report = price_of_anarchy(g, wp, tau, cap)
    if report.poa is None:
        return Check(True)
    return Check(report.poa <= g.m + POA_SLACK, report.poa)

"""Coalitions of parties in strongly egoistic games.

A coalition fields one candidate from each member party at once; its
utility for another coalition is the summed utility over the members of
both.  Under strong egoism the resulting game is again egoistic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CoalitionSpaceTooLarge,
    MemberIsSingleton,
    NotStronglyEgoistic,
    ValidationError,
)
from .model import GameInstance, is_strongly_egoistic, validate
from .wp import SocialUtilityWp, WpFunction

DEFAULT_COALITION_CAP = 100_000


@dataclass(frozen=True)
class CoalitionStructure:
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "CoalitionStructure":
        """Parse ``"1,2|3"``; parties left out become singleton blocks when ``m`` is given."""
        blocks = []
        for chunk in text.split("|"):
            members = tuple(int(x) for x in chunk.replace(" ", "").split(",") if x)
            if not members:
                raise ValidationError(f"empty coalition in {text!r}")
            blocks.append(members)
        return cls.build(blocks, m)

    @classmethod
    def build(cls, blocks: Sequence[Sequence[int]], m: int | None = None) -> "CoalitionStructure":
        blocks = [tuple(b) for b in blocks]
        seen = set()
        for b in blocks:
            if not b:
                raise ValidationError("coalitions must be non-empty")
            for p in b:
                if p in seen:
                    raise ValidationError(f"party {p} appears in two coalitions")
                if m is not None and not 1 <= p <= m:
                    raise ValidationError(f"party {p} out of range 1..{m}")
                seen.add(p)
        if m is not None:
            blocks.extend((p,) for p in range(1, m + 1) if p not in seen)
        return cls(tuple(blocks))

    @classmethod
    def singletons(cls, m: int) -> "CoalitionStructure":
        return cls(tuple((p,) for p in range(1, m + 1)))

    def block_of(self, party: int) -> int:
        for k, b in enumerate(self.blocks):
            if party in b:
                return k
        raise ValueError(f"party {party} is in no coalition")

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)


@dataclass(frozen=True)
class CoalitionGame:
    """The transformed game plus, per coalition candidate, its member candidates."""

    instance: GameInstance
    structure: CoalitionStructure
    members: tuple[tuple[tuple[int, ...], ...], ...]

    def candidate_of(self, block: int, choice: Sequence[int]) -> int:
        """1-based coalition candidate index of the member tuple ``choice``."""
        return self.members[block].index(tuple(choice)) + 1


def _require_strong(g):
    check = is_strongly_egoistic(g)
    if not check:
        i, s, rival = check.witness
        raise NotStronglyEgoistic(
            f"u_{i}(x_{i},{s}) does not exceed the summed best rival utility {rival}"
        )


def _full_structure(g, cs):
    return CoalitionStructure.build(cs.blocks, g.m)


def _block_utilities(g, block_members, member_choice, target_block):
    """Utility vector entry: coalition candidate -> supporters of target_block."""
    t = g.table
    return math.fsum(
        t[p - 1][c - 1][q - 1]
        for p, c in zip(block_members, member_choice)
        for q in target_block
    )


def _social(g, block_members, member_choice):
    social = g.social
    return math.fsum(social[p - 1][c - 1] for p, c in zip(block_members, member_choice))


def secce_transform(g: GameInstance, cs: CoalitionStructure,
                    cap: int = DEFAULT_COALITION_CAP) -> CoalitionGame:
    """Collapse each coalition into one party of a new election game.

    Coalition candidates are re-sorted by own-coalition utility (stable in
    member-candidate order).  The output beta is the larger of the input
    beta and the largest coalition social utility.
    """
    _require_strong(g)
    cs = _full_structure(g, cs)
    for b in cs.blocks:
        size = math.prod(g.sizes[p - 1] for p in b)
        if size > cap:
            raise CoalitionSpaceTooLarge(f"coalition {b} has {size} candidates (cap {cap})")

    raw_parties, members, top_social = [], [], 0.0
    for b in cs.blocks:
        tuples = list(itertools.product(*(range(1, g.sizes[p - 1] + 1) for p in b)))
        vectors = [
            [_block_utilities(g, b, z, target) for target in cs.blocks] for z in tuples
        ]
        k = len(raw_parties)
        order = sorted(range(len(tuples)), key=lambda t: -vectors[t][k])
        raw_parties.append({
            "name": "+".join(str(p) for p in b),
            "candidates": [{"utilities": vectors[t]} for t in order],
        })
        members.append(tuple(tuples[t] for t in order))
        top_social = max(top_social, max(_social(g, b, z) for z in tuples))

    beta = max(g.beta, top_social)
    inst = validate(
        {"beta": beta, "parties": raw_parties,
         "metadata": {"source": "coalition", "coalitions": str(cs),
                      "input_beta": g.beta, "beta_scaled": beta != g.beta}},
        min_parties=1,
    )
    return CoalitionGame(inst, cs, tuple(members))


def coalition_incentive_delta(g: GameInstance, cs: CoalitionStructure, wp: WpFunction,
                              member: int, choices: Sequence[Sequence[int]]) -> float:
    """Change in ``member``'s payoff when it leaves its coalition to stand alone.

    ``choices[k]`` lists the candidate of every member of block ``k`` (in
    block order); all choices stay fixed.  Winning probabilities come from
    ``wp`` applied to the coalitions' summed social utilities, before and
    after the split, with the transformed game's beta in both.  The member
    standing alone is placed last.  Returns r' - r.
    """
    if not isinstance(wp, SocialUtilityWp):
        raise TypeError("coalition analysis needs a WP function of social utilities")
    _require_strong(g)
    cs = _full_structure(g, cs)
    choices = [tuple(c) for c in choices]
    if len(choices) < len(cs.blocks):
        # blocks appended as singletons default to their first candidate
        choices += [(1,) * len(b) for b in cs.blocks[len(choices):]]
    for b, z in zip(cs.blocks, choices):
        if len(b) != len(z):
            raise ValidationError(f"coalition {b} needs {len(b)} candidate choices, got {z}")
        for p, c in zip(b, z):
            g._check_index(p, c)

    home = cs.block_of(member)
    if len(cs.blocks[home]) < 2:
        raise MemberIsSingleton(f"party {member} is not in a coalition of size >= 2")

    beta = secce_beta(g, cs)
    t = g.table

    def gain(groups):
        # groups: list of (parties, candidates)
        probs = wp.from_utilities([_social(g, b, z) for b, z in groups], beta)
        return math.fsum(
            p * math.fsum(t[q - 1][c - 1][member - 1] for q, c in zip(b, z))
            for p, (b, z) in zip(probs, groups)
        )

    before = list(zip(cs.blocks, choices))
    after = []
    for k, (b, z) in enumerate(before):
        if k == home:
            kept = [(q, c) for q, c in zip(b, z) if q != member]
            after.append((tuple(q for q, _ in kept), tuple(c for _, c in kept)))
        else:
            after.append((b, z))
    pos = cs.blocks[home].index(member)
    after.append(((member,), (choices[home][pos],)))
    return gain(after) - gain(before)


def secce_beta(g: GameInstance, cs: CoalitionStructure) -> float:
    """The beta ``secce_transform`` would assign, without building the game."""
    cs = _full_structure(g, cs)
    social = g.social
    top = max(math.fsum(max(social[p - 1]) for p in b) for b in cs.blocks)
    return max(g.beta, top)

"""Game instances, profiles and the structural predicates on them.

Party and candidate indices are 1-based everywhere in the public API, so
``g.utility(j, i, s)`` is the utility that supporters of party ``j`` get
when candidate ``s`` of party ``i`` is elected.  A profile is a plain tuple
of 1-based candidate indices, one per party.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Sequence

from .errors import (
    EmptyParty,
    NegativeUtility,
    NotEgoistic,
    SocialUtilityExceedsBeta,
    TooFewParties,
    UnsortedCandidates,
    ValidationError,
)

Profile = tuple[int, ...]

# Relative slack on the social-utility <= beta check.  Parametric instances
# such as m * (beta / m) land one ulp above beta.
BETA_RTOL = 1e-9


@dataclass(frozen=True)
class Check:
    """Outcome of a predicate together with a witness when it fails."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Candidate:
    utilities: tuple[float, ...]


@dataclass(frozen=True)
class Party:
    candidates: tuple[Candidate, ...]
    name: str | None = None

    def __len__(self):
        return len(self.candidates)


@dataclass(frozen=True)
class GameInstance:
    """An election game.  Build it through :func:`validate`."""

    beta: float
    parties: tuple[Party, ...]
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False)

    @property
    def m(self) -> int:
        return len(self.parties)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parties)

    @property
    def num_profiles(self) -> int:
        return math.prod(self.sizes)

    @cached_property
    def social(self) -> tuple[tuple[float, ...], ...]:
        """``social[i][s]`` is u(x_{i+1,s+1}) (0-based storage)."""
        return tuple(
            tuple(math.fsum(c.utilities) for c in p.candidates) for p in self.parties
        )

    @cached_property
    def table(self) -> tuple[tuple[tuple[float, ...], ...], ...]:
        """``table[i][s][j]`` is u_{j+1}(x_{i+1,s+1}) (0-based storage)."""
        return tuple(tuple(c.utilities for c in p.candidates) for p in self.parties)

    def utility(self, j: int, i: int, s: int) -> float:
        self._check_index(i, s)
        if not 1 <= j <= self.m:
            raise IndexError(f"party {j} out of range 1..{self.m}")
        return self.table[i - 1][s - 1][j - 1]

    def social_utility(self, i: int, s: int) -> float:
        self._check_index(i, s)
        return self.social[i - 1][s - 1]

    def profiles(self) -> Iterator[Profile]:
        """All profiles in lexicographic order."""
        return itertools.product(*(range(1, n + 1) for n in self.sizes))

    def check_profile(self, s: Sequence[int]) -> Profile:
        s = tuple(int(x) for x in s)
        if len(s) != self.m:
            raise IndexError(f"profile has {len(s)} entries, game has {self.m} parties")
        for i, si in enumerate(s, start=1):
            self._check_index(i, si)
        return s

    def _check_index(self, i, s):
        if not 1 <= i <= self.m:
            raise IndexError(f"party {i} out of range 1..{self.m}")
        if not 1 <= s <= len(self.parties[i - 1]):
            raise IndexError(
                f"candidate {s} out of range 1..{len(self.parties[i - 1])} for party {i}"
            )


def _raw_parties(raw):
    if isinstance(raw, GameInstance):
        return raw.beta, [
            (p.name, [list(c.utilities) for c in p.candidates]) for p in raw.parties
        ], dict(raw.metadata)
    beta = raw["beta"]
    parties = []
    for p in raw["parties"]:
        if isinstance(p, Mapping):
            cands = [
                list(c["utilities"]) if isinstance(c, Mapping) else list(c)
                for c in p.get("candidates", [])
            ]
            parties.append((p.get("name"), cands))
        else:
            parties.append((None, [list(c) for c in p]))
    return beta, parties, dict(raw.get("metadata") or {})


def validate(raw, normalize: bool = False, *, min_parties: int = 2) -> GameInstance:
    """Check a game and return it as an immutable :class:`GameInstance`.

    ``raw`` may be a GameInstance or a mapping with ``beta`` and ``parties``;
    each party is either a mapping (``name``, ``candidates`` holding
    ``utilities`` vectors) or a bare list of utility vectors.  With
    ``normalize`` the candidates of each party are stably sorted by
    own-party utility, descending; without it unsorted input is an error.
    """
    beta, parties, metadata = _raw_parties(raw)
    beta = float(beta)
    if not beta >= 1:
        raise ValidationError(f"beta must be >= 1, got {beta}")
    m = len(parties)
    if m < min_parties:
        raise TooFewParties(f"need at least {min_parties} parties, got {m}")

    built = []
    for i, (name, cands) in enumerate(parties):
        if not cands:
            raise EmptyParty(f"party {i + 1} has no candidates")
        vectors = []
        for s, vec in enumerate(cands):
            if len(vec) != m:
                raise ValidationError(
                    f"candidate {s + 1} of party {i + 1} has {len(vec)} utilities, expected {m}"
                )
            vec = tuple(float(x) for x in vec)
            for j, x in enumerate(vec):
                if not x >= 0 or math.isinf(x):
                    raise NegativeUtility(
                        f"u_{j + 1}(x_{i + 1},{s + 1}) = {x} is not a finite nonnegative number"
                    )
            total = math.fsum(vec)
            if total > beta * (1 + BETA_RTOL):
                raise SocialUtilityExceedsBeta(
                    f"u(x_{i + 1},{s + 1}) = {total} exceeds beta = {beta}"
                )
            vectors.append(vec)
        if normalize:
            vectors.sort(key=lambda v: -v[i])
        for s in range(1, len(vectors)):
            if vectors[s][i] > vectors[s - 1][i]:
                raise UnsortedCandidates(
                    f"party {i + 1}: candidate {s + 1} has own utility {vectors[s][i]} "
                    f"above candidate {s} ({vectors[s - 1][i]})"
                )
        built.append(Party(tuple(Candidate(v) for v in vectors), name))
    return GameInstance(beta, tuple(built), metadata)


def from_matrices(beta, parties, names=None, normalize=False) -> GameInstance:
    """Shorthand: ``parties[i][s]`` is the utility vector of x_{i+1,s+1}."""
    names = names or [None] * len(parties)
    return validate(
        {"beta": beta, "parties": [
            {"name": n, "candidates": [{"utilities": v} for v in p]}
            for n, p in zip(names, parties)
        ]},
        normalize=normalize,
    )


def social_utility(g: GameInstance, i: int, s: int) -> float:
    return g.social_utility(i, s)


def is_egoistic(g: GameInstance) -> Check:
    """Every own candidate beats every rival candidate for its supporters.

    The witness is ``(i, s_i, (j, s_j))`` with u_i(x_{i,s_i}) <= u_i(x_{j,s_j}).
    """
    t = g.table
    for i in range(g.m):
        # the weakest own candidate is the last one (sorted)
        s_i = len(t[i]) - 1
        own = t[i][s_i][i]
        for j in range(g.m):
            if j == i:
                continue
            for s_j, vec in enumerate(t[j]):
                if not own > vec[i]:
                    return Check(False, (i + 1, s_i + 1, (j + 1, s_j + 1)))
    return Check(True)


def is_strongly_egoistic(g: GameInstance) -> Check:
    """Own utility beats the summed best rival utilities of all other parties.

    The witness is ``(i, s_i, rival_sum)``.
    """
    t = g.table
    for i in range(g.m):
        rival = math.fsum(
            max(vec[i] for vec in t[j]) for j in range(g.m) if j != i
        )
        s_i = len(t[i]) - 1
        if not t[i][s_i][i] > rival:
            return Check(False, (i + 1, s_i + 1, rival))
    return Check(True)


class Surpass(enum.Enum):
    SURPASSES = "surpasses"
    WEAKLY_SURPASSES = "weakly-surpasses"
    NEITHER = "neither"


def weakly_surpasses(g: GameInstance, i: int, s: int, s_prime: int) -> bool:
    return s < s_prime and g.social_utility(i, s) >= g.social_utility(i, s_prime)


def surpasses_context_free(g: GameInstance, i: int, s: int, s_prime: int) -> bool:
    """Surpass test without consulting a WP function.

    Under a monotone WP the probability clause is implied by a strict gain
    in social utility, so the test reduces to index order plus a strict
    gain in own or social utility.
    """
    if not weakly_surpasses(g, i, s, s_prime):
        return False
    return (
        g.social_utility(i, s) > g.social_utility(i, s_prime)
        or g.utility(i, i, s) > g.utility(i, i, s_prime)
    )


def surpass(g: GameInstance, wp, i: int, s: int, s_prime: int, context: Sequence[int]) -> Surpass:
    """Classify how x_{i,s} relates to x_{i,s_prime} against ``context``.

    Only the direction s -> s_prime is examined; ``context[i-1]`` is ignored.
    """
    if s == s_prime:
        raise ValueError("s and s_prime must differ")
    context = g.check_profile(context)
    g._check_index(i, s)
    g._check_index(i, s_prime)
    if not weakly_surpasses(g, i, s, s_prime):
        return Surpass.NEITHER
    if g.utility(i, i, s) > g.utility(i, i, s_prime):
        return Surpass.SURPASSES
    with_s = context[: i - 1] + (s,) + context[i:]
    with_sp = context[: i - 1] + (s_prime,) + context[i:]
    if wp.probabilities(g, with_s)[i - 1] > wp.probabilities(g, with_sp)[i - 1]:
        return Surpass.SURPASSES
    return Surpass.WEAKLY_SURPASSES


def require_egoistic(g: GameInstance):
    check = is_egoistic(g)
    if not check:
        i, s_i, (j, s_j) = check.witness
        raise NotEgoistic(
            f"u_{i}(x_{i},{s_i}) does not exceed u_{i}(x_{j},{s_j})"
        )

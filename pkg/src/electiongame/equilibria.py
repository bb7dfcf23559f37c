"""Pure Nash equilibria: decision, enumeration, best responses, deviation graphs."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ProfileSpaceTooLarge
from .model import Check, GameInstance, Profile, require_egoistic, weakly_surpasses
from .payoff import PayoffCache
from .wp import WpFunction

DEFAULT_PROFILE_CAP = 10**7


@dataclass(frozen=True)
class Deviation:
    party: int
    candidate: int
    gain: float


def require_cap(g: GameInstance, cap: int = DEFAULT_PROFILE_CAP):
    if g.num_profiles > cap:
        raise ProfileSpaceTooLarge(
            f"{g.num_profiles} profiles exceed the brute-force cap of {cap}"
        )


def _replace(s, i, c):
    return s[:i] + (c,) + s[i + 1:]


def _first_improvement(g, cache, s, tau, parties=None, options=None):
    base = cache(s)
    for i in parties if parties is not None else range(g.m):
        cands = options[i] if options is not None else range(1, g.sizes[i] + 1)
        for c in cands:
            if c == s[i]:
                continue
            gain = cache(_replace(s, i, c))[i] - base[i]
            if gain > tau:
                return Deviation(i + 1, c, gain)
    return None


def is_psne(g: GameInstance, wp: WpFunction, s: Sequence[int], tau: float = 0.0,
            cache: PayoffCache | None = None) -> Check:
    """True iff no unilateral deviation gains more than ``tau``.

    On failure the witness is the first improving :class:`Deviation` in
    party/candidate order.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    s = g.check_profile(s)
    dev = _first_improvement(g, cache or PayoffCache(g, wp), s, tau)
    return Check(dev is None, dev)


def enumerate_psne(g: GameInstance, wp: WpFunction, tau: float = 0.0,
                   cap: int = DEFAULT_PROFILE_CAP) -> list[Profile]:
    """Every tau-PSNE, in lexicographic order (brute force)."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    require_cap(g, cap)
    cache = PayoffCache(g, wp)
    return [s for s in g.profiles() if _first_improvement(g, cache, s, tau) is None]


def best_response(g: GameInstance, wp: WpFunction, s: Sequence[int], i: int) -> int:
    """Payoff-maximising candidate of party ``i`` against s_{-i}; ties -> lowest index."""
    s = g.check_profile(s)
    if not 1 <= i <= g.m:
        raise IndexError(f"party {i} out of range 1..{g.m}")
    cache = PayoffCache(g, wp)
    best, best_r = 1, -math.inf
    for c in range(1, g.sizes[i - 1] + 1):
        r = cache(_replace(s, i - 1, c))[i - 1]
        if r > best_r:
            best, best_r = c, r
    return best


class DominanceCase(enum.Enum):
    CASE_A = "A"
    CASE_A_UNIQUE = "A-unique"
    CASE_B = "B"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class DominanceResult:
    case: DominanceCase
    profile: Profile | None = None
    resolute: tuple[int, ...] = ()


def _first_dominates(g, wp, i, strict):
    """Does x_{i,1} (weakly) surpass every other candidate of party i?

    The probability clause of the strict form is read in the all-first context.
    """
    all_first = (1,) * g.m
    for t in range(2, g.sizes[i - 1] + 1):
        if not weakly_surpasses(g, i, 1, t):
            return False
        if strict:
            if g.utility(i, i, 1) > g.utility(i, i, t):
                continue
            p1 = wp.probabilities(g, all_first)[i - 1]
            pt = wp.probabilities(g, _replace(all_first, i - 1, t))[i - 1]
            if not p1 > pt:
                return False
    return True


def dominant_first_psne(g: GameInstance, wp: WpFunction) -> DominanceResult:
    """Detect the dominant-first-candidate situations that guarantee a PSNE.

    If every party's first candidate weakly surpasses the rest, the
    all-first profile is a PSNE (unique when every first candidate
    surpasses the rest).  If all but one party qualify, the remaining party
    best-responds to the others' first candidates.
    """
    require_egoistic(g)
    resolute = tuple(i for i in range(1, g.m + 1) if _first_dominates(g, wp, i, False))
    all_first = (1,) * g.m
    if len(resolute) == g.m:
        if all(_first_dominates(g, wp, i, True) for i in range(1, g.m + 1)):
            return DominanceResult(DominanceCase.CASE_A_UNIQUE, all_first, resolute)
        return DominanceResult(DominanceCase.CASE_A, all_first, resolute)
    if len(resolute) == g.m - 1:
        (j,) = set(range(1, g.m + 1)) - set(resolute)
        s = _replace(all_first, j - 1, best_response(g, wp, all_first, j))
        return DominanceResult(DominanceCase.CASE_B, s, resolute)
    return DominanceResult(DominanceCase.NOT_APPLICABLE, None, resolute)


def deviation_ratio(r_new: float, r_old: float) -> float:
    """Multiplicative improvement r_new / r_old; 0/0 counts as 1, x/0 as inf."""
    if r_old == 0:
        return 1.0 if r_new == 0 else math.inf
    return r_new / r_old


@dataclass(frozen=True)
class ApproxReport:
    alpha: float
    witness: tuple[int, int] | None
    profile: Profile

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.alpha)


def approx_ratio(g: GameInstance, wp: WpFunction, s: Sequence[int]) -> ApproxReport:
    """Worst multiplicative payoff improvement over unilateral deviations from s."""
    s = g.check_profile(s)
    cache = PayoffCache(g, wp)
    base = cache(s)
    alpha, witness = 1.0, None
    for i in range(g.m):
        for c in range(1, g.sizes[i] + 1):
            if c == s[i]:
                continue
            ratio = deviation_ratio(cache(_replace(s, i, c))[i], base[i])
            if ratio > alpha:
                alpha, witness = ratio, (i + 1, c)
    return ApproxReport(alpha, witness, s)


def approx_ratio_all_first(g: GameInstance, wp: WpFunction) -> ApproxReport:
    """How far the all-first-candidates profile is from a PSNE (multiplicatively)."""
    require_egoistic(g)
    return approx_ratio(g, wp, (1,) * g.m)


@dataclass(frozen=True)
class Edge:
    src: Profile
    dst: Profile
    party: int
    gain: float


@dataclass
class DeviationGraph:
    nodes: list[Profile]
    edges: list[Edge]
    tau: float = 0.0
    _out: dict = field(default=None, repr=False)

    def out_degree(self, s: Profile) -> int:
        if self._out is None:
            self._out = {v: 0 for v in self.nodes}
            for e in self.edges:
                self._out[e.src] += 1
        return self._out[s]

    def sinks(self) -> list[Profile]:
        return [v for v in self.nodes if self.out_degree(v) == 0]

    def to_networkx(self):
        import networkx as nx

        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        for e in self.edges:
            graph.add_edge(e.src, e.dst, party=e.party, gain=e.gain)
        return graph

    def find_cycle(self) -> list[Profile] | None:
        """A directed cycle as a list of profiles, or None if acyclic."""
        import networkx as nx

        try:
            arcs = nx.find_cycle(self.to_networkx())
        except nx.NetworkXNoCycle:
            return None
        return [a for a, _ in arcs]

    def to_dot(self, name: str = "deviations") -> str:
        def node_id(s):
            return "s_" + "_".join(map(str, s))

        def label(s):
            return "(" + ",".join(map(str, s)) + ")"

        lines = [f"digraph {name} {{"]
        for v in self.nodes:
            shape = ' shape=doublecircle' if self.out_degree(v) == 0 else ""
            lines.append(f'  {node_id(v)} [label="{label(v)}"{shape}];')
        for e in self.edges:
            lines.append(
                f'  {node_id(e.src)} -> {node_id(e.dst)} [label="({e.party}, {e.gain:.4g})"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def deviation_graph(g: GameInstance, wp: WpFunction, tau: float = 0.0,
                    best_response_only: bool = False,
                    cap: int = DEFAULT_PROFILE_CAP) -> DeviationGraph:
    """All improving unilateral deviations (gain > tau) between profiles.

    With ``best_response_only`` each party keeps only the edges to its
    payoff-maximising alternatives.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    require_cap(g, cap)
    cache = PayoffCache(g, wp)
    nodes = list(g.profiles())
    edges = []
    for s in nodes:
        base = cache(s)
        for i in range(g.m):
            moves = []
            for c in range(1, g.sizes[i] + 1):
                if c == s[i]:
                    continue
                t = _replace(s, i, c)
                gain = cache(t)[i] - base[i]
                if gain > tau:
                    moves.append(Edge(s, t, i + 1, gain))
            if best_response_only and moves:
                top = max(e.gain for e in moves)
                moves = [e for e in moves if e.gain == top]
            edges.extend(moves)
    return DeviationGraph(nodes, edges, tau)

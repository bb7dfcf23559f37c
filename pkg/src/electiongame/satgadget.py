"""CNF formulas and the election game built from them for the hardness reduction.

Variable v_i is encoded by party i: candidate 1 means True, candidate 2
False.  Parties 1..m-2 are filler parties worth epsilon to themselves; the
last two parties carry a fixed utility block.  The WP function raises
social utility (over beta = 200) to the power 1 - f/10, where f is 1
exactly when the profile's assignment satisfies the formula.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .equilibria import DEFAULT_PROFILE_CAP, enumerate_psne, is_psne, require_cap
from .errors import ParseError, TooFewVariables, ValidationError
from .model import GameInstance, Profile, from_matrices
from .payoff import evaluate
from .wp import WpFunction, register

GADGET_BETA = 200.0

# (u_{m-1}, u_m) for x_{m-1,1}, x_{m-1,2}, x_{m,1}, x_{m,2}
SPECIAL_BLOCK = ((83.0, 1.0), (80.0, 19.0), (3.0, 24.0), (9.0, 22.0))


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for k, clause in enumerate(self.clauses):
            if not clause:
                raise ValidationError(f"clause {k + 1} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValidationError(
                        f"literal {lit} in clause {k + 1} is outside 1..{self.num_vars}"
                    )

    @classmethod
    def of(cls, num_vars: int, clauses: Iterable[Iterable[int]]) -> "CnfFormula":
        return cls(num_vars, tuple(tuple(c) for c in clauses))

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(
            any(assignment[abs(l) - 1] == (l > 0) for l in clause) for clause in self.clauses
        )

    def satisfying_assignments(self) -> Iterable[tuple[bool, ...]]:
        for bits in itertools.product((True, False), repeat=self.num_vars):
            if self.evaluate(bits):
                yield bits

    def brute_force_sat(self) -> tuple[bool, ...] | None:
        return next(iter(self.satisfying_assignments()), None)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> CnfFormula:
    """Read DIMACS CNF.  Clauses may span lines; ``c`` lines and ``%`` trailers are skipped."""
    num_vars = num_clauses = None
    clauses, current = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("malformed problem line", line=lineno)
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in problem line", line=lineno) from None
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", line=lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", line=lineno) from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ParseError(f"literal {lit} exceeds {num_vars} variables", line=lineno)
                current.append(lit)
    if current:
        clauses.append(tuple(current))
    if num_vars is None:
        raise ParseError("missing problem line")
    if num_clauses is not None and len(clauses) != num_clauses:
        raise ParseError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars, tuple(clauses))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def random_cnf(num_vars: int, num_clauses: int, width: int = 3,
               rng: random.Random | None = None) -> CnfFormula:
    """Uniform random k-CNF with distinct variables per clause."""
    rng = rng or random.Random()
    width = min(width, num_vars)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), width)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(num_vars, tuple(clauses))


def assignment_of(s: Sequence[int]) -> tuple[bool, ...]:
    return tuple(si == 1 for si in s)


@dataclass(frozen=True)
class GadgetWp(WpFunction):
    formula: CnfFormula
    name: str = field(default="gadget", init=False)

    def exponent(self, s) -> float:
        return 1.0 - (1.0 if self.formula.evaluate(assignment_of(s)) else 0.0) / 10.0

    def probabilities(self, g, s):
        if len(s) != self.formula.num_vars:
            raise ValidationError(
                f"profile has {len(s)} parties, formula has {self.formula.num_vars} variables"
            )
        social = g.social
        exp = self.exponent(s)
        weights = []
        for i, si in enumerate(s):
            u = social[i][si - 1]
            weights.append((u / g.beta) ** exp if u > 1 else 0.0)
        total = math.fsum(weights)
        if total == 0:
            raise ValidationError("gadget WP needs at least one candidate with social utility > 1")
        return tuple(w / total for w in weights)


register("gadget", lambda formula=None, **_: _gadget_factory(formula))


def _gadget_factory(formula):
    if formula is None:
        raise ValueError("the gadget WP function needs a CNF formula")
    return GadgetWp(formula)


@dataclass(frozen=True)
class GadgetGame:
    instance: GameInstance
    formula: CnfFormula
    epsilon: float

    @property
    def wp(self) -> GadgetWp:
        return GadgetWp(self.formula)


def build_gadget(f: CnfFormula, epsilon: float = 0.5) -> GadgetGame:
    m = f.num_vars
    if m < 2:
        raise TooFewVariables(f"the reduction needs at least 2 variables, got {m}")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")

    parties = []
    for i in range(m - 2):
        filler = [0.0] * m
        filler[i] = epsilon
        parties.append([list(filler), list(filler)])
    special = []
    for own_prev, own_last in SPECIAL_BLOCK:
        v = [0.0] * m
        v[m - 2], v[m - 1] = own_prev, own_last
        special.append(v)
    parties.append(special[:2])
    parties.append(special[2:])
    g = from_matrices(GADGET_BETA, parties)
    meta = {"source": "sat-gadget", "epsilon": epsilon,
            "formula": {"num_vars": m, "clauses": [list(c) for c in f.clauses]}}
    return GadgetGame(GameInstance(g.beta, g.parties, meta), f, epsilon)


def gadget_wp(gg: GadgetGame, s: Sequence[int]) -> tuple[float, ...]:
    return gg.wp.probabilities(gg.instance, gg.instance.check_profile(s))


def gadget_payoffs(gg: GadgetGame, s: Sequence[int]) -> tuple[float, ...]:
    return evaluate(gg.instance, gg.wp, s).payoffs


def gadget_psne(gg: GadgetGame, cap: int = DEFAULT_PROFILE_CAP) -> list[Profile]:
    return enumerate_psne(gg.instance, gg.wp, cap=cap)


def gadget_psne_exists(gg: GadgetGame, cap: int = DEFAULT_PROFILE_CAP) -> bool:
    require_cap(gg.instance, cap)
    return bool(gadget_psne(gg, cap))


def special_profile(m: int, s_prev: int, s_last: int, fillers: Sequence[int] | None = None) -> Profile:
    """Profile with the filler parties at ``fillers`` (default all 1) and the two special choices."""
    fillers = tuple(fillers) if fillers is not None else (1,) * (m - 2)
    return fillers + (s_prev, s_last)


@dataclass(frozen=True)
class SatComparisonRow:
    label: str
    formula: CnfFormula
    satisfiable: bool
    psne: tuple[Profile, ...]
    witness: str = ""

    @property
    def psne_exists(self) -> bool:
        return bool(self.psne)

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.psne_exists


@dataclass(frozen=True)
class SatComparison:
    rows: tuple[SatComparisonRow, ...]

    @property
    def agreements(self) -> int:
        return sum(r.agree for r in self.rows)

    @property
    def findings(self) -> list[dict]:
        """One structured record per formula where PSNE existence and SAT disagree."""
        return [
            {
                "label": r.label,
                "num_vars": r.formula.num_vars,
                "clauses": [list(c) for c in r.formula.clauses],
                "satisfiable": r.satisfiable,
                "psne_exists": r.psne_exists,
                "psne": [list(s) for s in r.psne],
                "witness": r.witness,
            }
            for r in self.rows if not r.agree
        ]

    def summary(self) -> str:
        n = len(self.rows)
        return (f"{self.agreements}/{n} formulas agree "
                f"(PSNE exists <=> satisfiable); {n - self.agreements} findings")


def _explain(gg: GadgetGame, satisfiable: bool, psne: list[Profile]) -> str:
    if satisfiable and not psne:
        bits = gg.formula.brute_force_sat()
        s = tuple(1 if b else 2 for b in bits)
        dev = is_psne(gg.instance, gg.wp, s).witness
        return (f"satisfying profile {s} is broken by party {dev.party} "
                f"moving to candidate {dev.candidate} (gain {dev.gain:.4f})")
    if not satisfiable and psne:
        return f"unsatisfiable formula yet profile {psne[0]} is a PSNE"
    return ""


def compare_with_sat(formulas: Iterable[tuple[str, CnfFormula]], epsilon: float = 0.5,
                     cap: int = DEFAULT_PROFILE_CAP) -> SatComparison:
    """Brute-force PSNE existence of each gadget game against brute-force SAT."""
    rows = []
    for label, f in formulas:
        gg = build_gadget(f, epsilon)
        psne = gadget_psne(gg, cap)
        sat = f.brute_force_sat() is not None
        rows.append(SatComparisonRow(label, f, sat, tuple(psne), _explain(gg, sat, psne)))
    return SatComparison(tuple(rows))

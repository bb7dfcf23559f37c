import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from electiongame.equilibria import enumerate_psne
from electiongame.errors import ParseError, TooFewVariables, ValidationError
from electiongame.model import is_egoistic
from electiongame.satgadget import (
    CnfFormula, build_gadget, compare_with_sat, gadget_payoffs, gadget_psne_exists, gadget_wp,
    parse_dimacs, random_cnf, special_profile,
)

TAUTOLOGY = CnfFormula.of(2, [[1, -1]])       # F(a) = True everywhere
CONTRADICTION = CnfFormula.of(2, [[1], [-1]])  # F(a) = False everywhere

# (p_{m-1}, p_m) and (r_{m-1}, r_m) per special subprofile, as printed
PROBS = {
    True: {(1, 1): (0.7353, 0.2647), (1, 2): (0.7104, 0.2896),
           (2, 1): (0.7630, 0.2370), (2, 2): (0.7398, 0.2602)},
    False: {(1, 1): (0.7568, 0.2432), (1, 2): (0.7304, 0.2696),
            (2, 1): (0.7857, 0.2143), (2, 2): (0.7615, 0.2385)},
}
PAYOFFS = {
    True: {(1, 1): (61.82, 7.09), (1, 2): (61.57, 7.08),
           (2, 1): (61.75, 20.18), (2, 2): (61.53, 19.78)},
    False: {(1, 1): (63.54, 6.59), (1, 2): (63.05, 6.66),
            (2, 1): (63.50, 20.07), (2, 2): (63.07, 19.72)},
}


def gadget(truth):
    return build_gadget(TAUTOLOGY if truth else CONTRADICTION)


@pytest.mark.parametrize("truth", [True, False])
def test_probabilities(truth):
    gg = gadget(truth)
    for s, want in PROBS[truth].items():
        got = gadget_wp(gg, s)
        assert max(abs(a - b) for a, b in zip(got, want)) <= 5e-4


@pytest.mark.parametrize("truth", [True, False])
def test_payoffs(truth):
    gg = gadget(truth)
    for s, want in PAYOFFS[truth].items():
        got = gadget_payoffs(gg, s)
        assert max(abs(a - b) for a, b in zip(got, want)) <= 0.01


def test_probability_closed_form():
    # (u/200)^(9/10) for u = 84 and 27
    a, b = (84 / 200) ** 0.9, (27 / 200) ** 0.9
    assert math.isclose(gadget_wp(gadget(True), (1, 1))[0], a / (a + b), rel_tol=1e-12)


def test_structure():
    gg = build_gadget(CnfFormula.of(4, [[1, 2, 3, 4]]))
    g = gg.instance
    assert g.m == 4 and g.beta == 200
    assert g.social[2] == (84, 99) and g.social[3] == (27, 31)
    assert g.table[0][0][0] == 0.5 and sum(g.table[1][1]) == 0.5
    assert is_egoistic(g)
    assert build_gadget(TAUTOLOGY).instance.m == 2


def test_fillers_earn_nothing():
    gg = build_gadget(CnfFormula.of(4, [[1, -3], [2, 4]]))
    for s in gg.instance.profiles():
        p = gadget_wp(gg, s)
        assert p[0] == p[1] == 0.0 and abs(sum(p) - 1) <= 1e-12
        assert gadget_payoffs(gg, s)[:2] == (0.0, 0.0)


@pytest.mark.parametrize("truth", [True, False])
def test_monotone_moves(truth):
    # switching party m-1 to its better candidate raises its odds in every truth transition
    for s_last in (1, 2):
        before = PROBS[truth][(1, s_last)][0]
        for after_truth in (True, False):
            assert PROBS[after_truth][(2, s_last)][0] >= before
            got = gadget_wp(gadget(after_truth), (2, s_last))[0]
            assert got >= gadget_wp(gadget(truth), (1, s_last))[0]


def test_true_subgame_has_all_first_psne():
    assert (1, 1) in enumerate_psne(gadget(True).instance, gadget(True).wp)


def test_small_formulas():
    sat = CnfFormula.of(2, [[1], [2]])
    unsat = CnfFormula.of(2, [[1], [-1], [2, -2]])
    assert gadget_psne_exists(build_gadget(sat))
    assert not gadget_psne_exists(build_gadget(unsat))


def test_comparison_reports_findings():
    rng = random.Random(5)
    formulas = [(f"r{k}", random_cnf(rng.randint(2, 5), rng.randint(1, 8), 3, rng))
                for k in range(20)]
    cmp = compare_with_sat(formulas)
    assert len(cmp.rows) == 20
    assert cmp.agreements + len(cmp.findings) == 20
    for f in cmp.findings:
        assert f["satisfiable"] != f["psne_exists"] and f["witness"]
    assert "formulas agree" in cmp.summary()


def test_too_few_vars():
    with pytest.raises(TooFewVariables):
        build_gadget(CnfFormula.of(1, [[1]]))
    with pytest.raises(ValueError):
        build_gadget(TAUTOLOGY, epsilon=1.0)


def test_special_profile():
    assert special_profile(4, 2, 1) == (1, 1, 2, 1)


def test_dimacs_roundtrip():
    f = CnfFormula.of(3, [[1, -2], [3], [-1, 2, -3]])
    assert parse_dimacs(f.to_dimacs()) == f
    text = "c comment\np cnf 3 2\n1 -2\n 0 3 0\n%\n0\n"
    assert parse_dimacs(text).clauses == ((1, -2), (3,))


@pytest.mark.parametrize("text,line", [
    ("1 2 0\n", 1),
    ("p cnf 2 1\n1 x 0\n", 2),
    ("p cnf 2 1\n1 5 0\n", 2),
    ("p dnf 2 1\n", 1),
])
def test_dimacs_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_dimacs(text)
    assert exc.value.line == line


def test_dimacs_clause_count():
    with pytest.raises(ParseError):
        parse_dimacs("p cnf 2 2\n1 0\n")


def test_bad_literal():
    with pytest.raises(ValidationError):
        CnfFormula.of(2, [[3]])


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 10), st.integers(0, 10**6))
def test_brute_force_sat(n, k, seed):
    f = random_cnf(n, k, 3, random.Random(seed))
    sols = list(f.satisfying_assignments())
    assert (f.brute_force_sat() is not None) == bool(sols)
    for a in sols:
        assert all(any(a[abs(l) - 1] == (l > 0) for l in c) for c in f.clauses)

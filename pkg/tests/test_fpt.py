import pytest
from hypothesis import given, settings, strategies as st

from electiongame.equilibria import enumerate_psne
from electiongame.errors import NotEgoistic
from electiongame.fpt import compute_depths, fpt_psne, nominating_index, refine_strategy_sets
from electiongame.generate import GeneratorConfig, generate
from electiongame.model import from_matrices, surpasses_context_free
from electiongame.wp import HARDMAX, SOFTMAX


def test_table1_depths(t1):
    r = compute_depths(t1)
    assert r.d_per_party == (2, 1, 1)
    assert r.resolute_set == {2, 3}
    assert r.k == 1 and r.depth == 2


def test_table1_chain(t1):
    r = refine_strategy_sets(t1, compute_depths(t1))
    assert r.reduced_sets[0] == (1, 2) and r.refined_per_party[0] == 2


def test_table2_depths(t2):
    r = compute_depths(t2)
    assert r.d_per_party == (2, 2, 1)
    assert r.resolute_set == {3} and r.k == 2


def test_first_is_social_max():
    g = from_matrices(100, [[[10, 5], [9, 1]], [[0, 6]]])
    assert nominating_index(g, 1) == 1
    assert fpt_psne(g, SOFTMAX).profile == (1, 1)


def test_pareto_chain_kept():
    # social utility rises while own utility falls: nothing is surpassed
    party = [[10, 0], [9, 2], [8, 4], [7, 6]]
    g = from_matrices(100, [party, [[0, 30]]])
    r = refine_strategy_sets(g, compute_depths(g))
    assert r.d_per_party[0] == 4 and r.reduced_sets[0] == (1, 2, 3, 4)


def test_three_candidate_chain():
    # (own, social) = (10,10), (9,14), (8,12): maxProb = {2}, chain {2, 1}
    g = from_matrices(100, [[[10, 0], [9, 5], [8, 4]], [[0, 6]]])
    r = refine_strategy_sets(g, compute_depths(g))
    assert r.d_per_party[0] == 2
    assert r.reduced_sets[0] == (1, 2)


def test_chain_prunes_surpassed_middle():
    # candidate 2 is surpassed by 1 (same social, lower own) and dropped
    g = from_matrices(100, [[[10, 0], [9, 1], [8, 5]], [[0, 6]]])
    r = refine_strategy_sets(g, compute_depths(g))
    assert r.d_per_party[0] == 3 and r.reduced_sets[0] == (1, 3)


def test_fpt_tables(t1, t2):
    res = fpt_psne(t1, HARDMAX)
    assert res.profile == (1, 1, 1)
    res = fpt_psne(t2, SOFTMAX)
    assert not res.found and res.profile is None


def test_k_zero_short_circuit():
    g = from_matrices(100, [[[10, 1], [5, 1]], [[1, 9], [0, 3]]])
    res = fpt_psne(g, SOFTMAX)
    assert res.profile == (1, 1) and res.payoff_evaluations == 0


def test_refuses_non_egoistic():
    g = from_matrices(100, [[[5, 0]], [[5, 6]]])
    with pytest.raises(NotEgoistic):
        fpt_psne(g, HARDMAX)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(2, 4), st.booleans())
def test_agrees_with_brute_force(seed, m, n, refine):
    g = generate(GeneratorConfig(m=m, n=n, seed=seed))
    for wp in (HARDMAX, SOFTMAX):
        eqs = enumerate_psne(g, wp)
        res = fpt_psne(g, wp, refine=refine)
        assert res.found == bool(eqs)
        if res.found:
            assert res.profile in eqs
        r = res.reduced
        width = r.refined_depth if refine else r.depth
        assert res.payoff_evaluations <= width ** r.k


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(2, 5))
def test_reduced_set_shape(seed, m, n):
    g = generate(GeneratorConfig(m=m, n=n, seed=seed))
    plain = compute_depths(g)
    r = refine_strategy_sets(g, plain)
    for i, (d, chain) in enumerate(zip(plain.d_per_party, r.reduced_sets), start=1):
        assert len(chain) <= d <= g.sizes[i - 1]
        assert chain[0] == 1 and chain[-1] == d
        # no chain member is surpassed by an earlier candidate
        for c in chain:
            assert not any(surpasses_context_free(g, i, a, c) for a in range(1, c))

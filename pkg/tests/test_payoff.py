import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from electiongame.fixtures import TABLE2_PAYOFFS
from electiongame.generate import GeneratorConfig, generate
from electiongame.model import from_matrices
from electiongame.payoff import PayoffCache, evaluate, payoff, payoff_vector, social_welfare
from electiongame.wp import HARDMAX, SOFTMAX, CallableWp

import oracles


def test_table2_r1(t2):
    assert abs(payoff(t2, SOFTMAX, (1, 1, 1), 1) - 18.81) <= 0.01


# the 24 printed payoffs, restated here so the fixture module is not its own oracle
PRINTED = {
    (1, 1, 1): (18.81, 34.64, 28.51), (1, 1, 2): (23.49, 27.82, 27.38),
    (1, 2, 1): (11.27, 34.67, 39.70), (1, 2, 2): (15.57, 28.09, 38.93),
    (2, 1, 1): (18.74, 44.53, 22.84), (2, 1, 2): (23.18, 38.35, 21.61),
    (2, 2, 1): (11.58, 44.25, 33.66), (2, 2, 2): (15.67, 38.27, 32.77),
}


@pytest.mark.parametrize("s", sorted(PRINTED))
def test_table2_payoffs(t2, s):
    got = payoff_vector(t2, SOFTMAX, s)
    assert max(abs(a - b) for a, b in zip(got, PRINTED[s])) <= 0.01
    assert PRINTED[s] == TABLE2_PAYOFFS[s]


def test_table1_hardmax(t1):
    assert payoff_vector(t1, HARDMAX, (2, 2, 2)) == (49, 29, 22)
    assert social_welfare(t1, HARDMAX, (1, 1, 1)) == 50
    assert social_welfare(t1, HARDMAX, (2, 2, 2)) == 100


def test_uniform_wp_gives_mean_social(t2):
    uniform = CallableWp(lambda us, beta: [1 / len(us)] * len(us), "uniform")
    sw = social_welfare(t2, uniform, (1, 2, 1))
    assert math.isclose(sw, (54 + 98 + 94) / 3)


def test_against_numpy_oracle(t2):
    mats = oracles.matrices(t2)
    for s in t2.profiles():
        for kind, wp in (("softmax", SOFTMAX), ("hardmax", HARDMAX)):
            assert np.allclose(payoff_vector(t2, wp, s), oracles.payoffs(mats, 100, s, kind),
                               atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 4))
def test_sw_identities(seed, m):
    g = generate(GeneratorConfig(m=m, n=2, seed=seed, mode="none"))
    for s in g.profiles():
        for wp in (HARDMAX, SOFTMAX):
            ev = evaluate(g, wp, s)
            chosen = [g.social[i][si - 1] for i, si in enumerate(s)]
            assert abs(ev.social_welfare - math.fsum(ev.payoffs)) <= 1e-9
            assert abs(ev.social_welfare
                       - math.fsum(p * u for p, u in zip(ev.probs, chosen))) <= 1e-9
            assert sum(chosen) / m - 1e-9 <= ev.social_welfare <= max(chosen) + 1e-9


def test_cache_counts(t2):
    cache = PayoffCache(t2, SOFTMAX)
    cache((1, 1, 1))
    cache((1, 1, 1))
    cache((2, 1, 1))
    assert cache.evaluations == 2


def test_bad_profile(t1):
    with pytest.raises(IndexError):
        payoff(t1, HARDMAX, (1, 1, 3), 1)
    with pytest.raises(IndexError):
        payoff(t1, HARDMAX, (1, 1, 1), 4)

import math

import pytest
from hypothesis import given, settings, strategies as st

from electiongame.efficiency import (
    check_poa_bound, check_psne_covers_optimum, optimal_profile, price_of_anarchy, table3_family,
)
from electiongame.equilibria import enumerate_psne
from electiongame.generate import GeneratorConfig, generate
from electiongame.model import from_matrices, is_egoistic
from electiongame.wp import HARDMAX, SOFTMAX


def test_table1_optimum(t1):
    s, sw = optimal_profile(t1, HARDMAX)
    assert sw == 100 and s[0] == 2


def test_single_profile():
    g = from_matrices(10, [[[1, 0]], [[0, 2]]])
    assert optimal_profile(g, SOFTMAX)[0] == (1, 1)


def test_table1_poa(t1):
    rep = price_of_anarchy(t1, HARDMAX)
    assert rep.poa == 2.0 and rep.pos == 2.0
    assert rep.num_psne == 4


def test_table2_undefined(t2):
    rep = price_of_anarchy(t2, SOFTMAX)
    assert rep.poa is None and rep.pos is None and rep.num_psne == 0


def test_table3_optimum():
    g = table3_family(3, 100, 0.001)
    s, sw = optimal_profile(g, HARDMAX)
    assert s[0] == 2 and math.isclose(sw, 100)


def test_table3_m5():
    rep = price_of_anarchy(table3_family(5, 100, 1e-6), HARDMAX)
    assert abs(rep.poa - 100 / (20 + 3e-6)) < 1e-9
    assert abs(rep.poa - 5) < 1e-4


def test_table3_m2():
    g = table3_family(2, 100, 0.01)
    assert (1, 1) in enumerate_psne(g, HARDMAX)
    rep = price_of_anarchy(g, HARDMAX)
    assert math.isclose(rep.worst_sw, 50.03)
    assert math.isclose(rep.poa, 100 / 50.03)


@pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-6])
def test_table3_tends_to_m(eps):
    g = table3_family(3, 100, eps)
    assert is_egoistic(g)
    assert abs(price_of_anarchy(g, HARDMAX).poa - 3) < 10 * eps


def test_table3_bad_args():
    for args in [(1, 100, 0.1), (3, 100, 0), (3, 100, 1.5)]:
        with pytest.raises(ValueError):
            table3_family(*args)


def test_psne_covers_optimum_table1(t1):
    assert check_psne_covers_optimum(t1, HARDMAX)
    # 50 + 46 + 44 at the all-first PSNE against the optimum's 100
    assert sum(t1.social[i][0] for i in range(3)) == 140


def test_poa_bound_table_cases(t1):
    assert check_poa_bound(t1, HARDMAX)
    assert check_poa_bound(table3_family(4, 100, 1e-6), HARDMAX)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 4), st.integers(2, 3))
def test_efficiency_properties(seed, m, n):
    g = generate(GeneratorConfig(m=m, n=n, seed=seed))
    for wp in (HARDMAX, SOFTMAX):
        rep = price_of_anarchy(g, wp)
        if rep.poa is not None:
            assert rep.poa >= rep.pos >= 1 - 1e-12
        assert check_poa_bound(g, wp)
        assert check_psne_covers_optimum(g, wp)

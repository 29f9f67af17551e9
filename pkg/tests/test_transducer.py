from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import discrepancy3
from tmgaps import catalog, matching, transducer as td
from tmgaps.errors import TransducerError
from tmgaps.transducer import Third

THREE_D_48 = [0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 3, 2, 1,
              0, 2, 1, 0, 2, 1, 0, 2, 1, 0, -1, 1, 0, 2, 1, 0, -1, 1, 0, -1, 1, 0, -1, 1]


def test_third_arithmetic():
    x = Third.of(Fraction(1, 3))
    assert x + x == Third(2)
    assert x * 3 == 1
    assert -x == Third(-1)
    assert 1 - x == Third(2)
    assert str(Third(4)) == "4/3" and str(Third(6)) == "2"
    assert Third(-2).as_fraction() == Fraction(-2, 3)
    assert Third(1) < Third(2)
    with pytest.raises(ValueError):
        Third.of(Fraction(1, 2))


def test_digits():
    assert td.digits(0, 4) == []
    assert td.digits(41, 4) == [2, 2, 1]
    with pytest.raises(ValueError):
        td.digits(-1, 2)


def test_D41():
    assert td.discrepancy_t2(41) == Third(1)
    assert discrepancy3(41) == 1


def test_first_48():
    assert [discrepancy3(n) for n in range(48)] == THREE_D_48
    _, vals = td.build_T2().run_all(48)
    assert vals.tolist() == THREE_D_48


def test_all_routes_agree():
    n = 1 << 12
    brute = td.discrepancy_brute_all(n)
    assert brute.tolist() == [discrepancy3(N) for N in range(n)]
    _, t2 = td.build_T2().run_all(n)
    assert (brute == t2).all()
    for N in range(0, n, 7):
        assert td.discrepancy_by_degree(N).num3 == brute[N]
        assert td.discrepancy_t2_base2(N).num3 == brute[N]
        assert td.discrepancy_brute(N).num3 == brute[N]


@given(st.integers(min_value=0, max_value=1 << 40))
def test_T2_and_degree_route_agree_far_out(N):
    assert td.discrepancy_t2(N) == td.discrepancy_by_degree(N) == td.discrepancy_t2_base2(N)


@pytest.mark.parametrize("k", range(1, 6))
def test_explicit_families(k):
    lo, hi = td.explicit_family(k)
    assert td.discrepancy_t2(lo) == Third(-k) == td.discrepancy_by_degree(lo)
    assert td.discrepancy_t2(hi) == Third(k) == td.discrepancy_by_degree(hi)


def test_family_small_members_by_brute_force():
    for k in (1, 2, 3):
        lo, hi = td.explicit_family(k)
        assert discrepancy3(lo) == -k
        assert discrepancy3(hi) == k
    assert td.explicit_family(3)[0] == 10920


@pytest.mark.parametrize("k", range(1, 6))
def test_shallit_index(k):
    assert td.shallit_index(k) == int("2" * (2 * k), 4)
    assert td.discrepancy_t2(td.shallit_index(k)) == Third(-k)
    # doubling the word length doubles the discrepancy
    assert td.discrepancy_t2(int("10" * (4 * k), 2)) == Third(-2 * k)


def test_T1_matches_matching_degrees():
    n = 4 ** 5
    states, vals = td.hexagon_T1().run_all(n)
    assert (vals // 3).tolist() == matching.degrees(n)
    assert bytes(states.astype(np.uint8)) == catalog.aplus().raw_prefix(n)


def test_T1_walk_final_state():
    state, w = td.hexagon_T1().walk(10)
    assert w == Third(-3)
    assert td.hexagon_T1().states[state] == matching.ASCII_NAMES[catalog.aplus().raw_prefix(11)[10]]


def test_T2_shape():
    t = td.build_T2()
    assert len(t.states) == 196
    assert t.start == td.t2_state(1, 0, 1) == 0
    assert len(t.reachable()) == 28
    assert t.zero_loop_ok()
    assert td.log_bound_constant() == 1


def test_T2_matrices_columns():
    m = td.t2_matrices()
    assert (m.A.sum(axis=1) == 1).all()


def test_base2_reduction_shape():
    b2 = td.base2_reduction(td.build_T2())
    assert b2.base == 2 and b2.pad_multiple == 2
    assert len(b2.states) == 3 * 196
    with pytest.raises(TransducerError):
        b2.run_all(4)
    with pytest.raises(TransducerError):
        td.base2_reduction(b2)


def test_text_round_trip():
    for t in (td.hexagon_T1(), td.build_T2(), td.base2_reduction(td.hexagon_T1())):
        back = td.WeightedTransducer.loads(t.dumps())
        assert back == t
        for n in range(200):
            assert back.walk(n) == t.walk(n)


def test_loads_errors():
    with pytest.raises(TransducerError):
        td.WeightedTransducer.loads("base 2\nstart s\ns 0 s 0\n")
    with pytest.raises(TransducerError):
        td.WeightedTransducer.loads("start s\ns 0 s 0\ns 1 s 0\n")
    with pytest.raises(TransducerError):
        td.WeightedTransducer.loads("base 2\nstart s\ns 0 t 0\ns 1 s 0\n")
    with pytest.raises(TransducerError):
        td.WeightedTransducer.loads("base 2\nstart s\ns 0 s zero\n")
    with pytest.raises(TransducerError):
        td.WeightedTransducer.loads("base 2\nstart s\ns 0 s 0\ns 0 s 1\ns 1 s 0\n")
    ok = td.WeightedTransducer.loads("# comment\nbase 2\nstart s\ns 0 s 0\ns 1 s 3\n")
    assert ok.run(0b1011) == Third(9)


def test_constructor_validation():
    with pytest.raises(TransducerError):
        td.WeightedTransducer(1, ("s",), 0, ((0,),), ((0,),))
    with pytest.raises(TransducerError):
        td.WeightedTransducer(2, ("s",), 0, ((0, 1),), ((0, 0),))
    with pytest.raises(TransducerError):
        td.WeightedTransducer(2, ("s", "s"), 0, ((0, 0), (0, 0)), ((0, 0), (0, 0)))


def test_log_bound():
    three_d = td.discrepancy_brute_all(1 << 16)
    ok = td.log_bound_holds(three_d, td.log_bound_constant())
    assert ok.all()
    assert int(np.abs(three_d).max()) >= 4


def test_brute_rejects_negative():
    with pytest.raises(ValueError):
        td.discrepancy_brute(-1)
    assert td.discrepancy_brute(0) == 0

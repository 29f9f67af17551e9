from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import iterate
from tmgaps import catalog, residue as rs

BBAR_RULES = {"a": ["a", "ā"], "ā": ["b", "c"], "b": ["a", "ā", "c"], "c": ["b"]}


def test_lengths_closed_form_vs_expansion():
    for k in range(5):
        a, abar, b, c = rs.psi4_literal_lengths(k)
        assert (a, b, c) == rs.psi4_lengths(k)
        assert abar == a
    with pytest.raises(ValueError):
        rs.psi4_lengths(-1)


def test_count_matrix():
    m = rs.count_matrix()
    assert m.tolist() == [[4, 4, 4, 4], [4, 4, 4, 4], [5, 5, 6, 5], [3, 3, 2, 3]]
    for k in range(1, 6):
        assert (rs.matrix_power(m, k) == rs.letter_counts_matrix_power(k)).all()
    with pytest.raises(ValueError):
        rs.letter_counts_matrix_power(0)


def test_steps_locate_blocks():
    # σ^ν(a) really sits at the four offsets inside σ^{ν+1}(a)
    sigma = catalog.PSI.power(4)
    for nu in range(3):
        inner = sigma.power(nu).images[0]
        outer = sigma.power(nu + 1).images[0]
        for eps in range(4):
            off = rs.step(nu, eps)
            assert outer[off:off + len(inner)] == inner
    with pytest.raises(ValueError):
        rs.step(0, 4)


def test_position_examples():
    assert rs.position_value(rs.PositionSpec(0, (3,))) == 13
    spec = rs.PositionSpec(1, (0, 2))
    assert rs.position_value(spec) == 2048
    assert rs.verify_occurrence(rs.PositionSpec(0, (3,)))
    assert rs.verify_occurrence(rs.PositionSpec(1, (1, 3)))


def test_position_spec_validation():
    with pytest.raises(ValueError):
        rs.PositionSpec(-1, (0,))
    with pytest.raises(ValueError):
        rs.PositionSpec(0, (5,))
    assert rs.PositionSpec(2, (0, 1, 2)).nu == 4


def test_occurrence_against_token_expansion():
    text = "".join(iterate(BBAR_RULES, "a", 1 << 14))
    block = text[:16]
    for digits in [(0,), (1,), (2,), (3,), (3, 1), (2, 2)]:
        pos = rs.position_value(rs.PositionSpec(1, digits))
        if pos + 16 <= len(text):
            assert text[pos:pos + 16] == block


@pytest.mark.parametrize("m", range(1, 13))
def test_every_class_hit(m):
    bb = catalog.bbar()
    for a in range(m):
        spec = rs.hit_residue_class(0, m, a)
        assert spec is not None
        assert rs.position_value(spec) % m == a
        assert rs.verify_occurrence(spec, bb)


def test_hit_with_positive_mu():
    spec = rs.hit_residue_class(1, 7, 3)
    assert spec.mu == 1 and rs.position_value(spec) % 7 == 3
    assert rs.verify_occurrence(spec)


def test_hit_rejects_bad_modulus():
    with pytest.raises(ValueError):
        rs.hit_residue_class(0, 0, 0)


@given(st.integers(min_value=1, max_value=200), st.data())
def test_hit_property(m, data):
    a = data.draw(st.integers(min_value=0, max_value=m - 1))
    spec = rs.hit_residue_class(0, m, a)
    assert spec is not None and rs.position_value(spec) % m == a


def test_all_three_sums():
    sums = rs.all_three_partial_sums(0, 3)
    assert sums[:2] == [0, 13]
    assert all(b > a for a, b in zip(sums, sums[1:]))


def test_W_membership_and_enumeration():
    assert rs.in_W(0, 3) and rs.in_W(4 * 16, 1) and not rs.in_W(4, 1)
    assert not rs.in_W(5, 0) and not rs.in_W(-16, 0)
    for lam in range(3):
        for eta in range(lam, 6):
            w = rs.enumerate_W(lam, eta)
            assert len(w) == 3 ** (eta - lam)
            ref = [n for n in range(16 ** eta) if rs.in_W(n, lam)] if eta <= 4 else None
            if ref is not None:
                assert w.tolist() == ref


def test_G_product_equals_enumeration():
    for d in (3, 5, 7, 9, 11, 13):
        for ell in range(1, d):
            for nu in range(1, 6):
                assert abs(rs.G_product(ell, d, 0, nu) - rs.G_by_enumeration(ell, d, 0, nu)) < 1e-9


def test_G_one_third_vanishes():
    assert abs(rs.G_product(1, 3, 0, 0) - 1) < 1e-12
    assert all(abs(rs.G_product(1, 3, 0, nu)) < 1e-12 for nu in range(1, 41))


def test_G_decays_for_other_moduli():
    g = [abs(rs.G_product(1, 7, 0, nu)) for nu in range(60)]
    assert all(y <= x + 1e-12 for x, y in zip(g, g[1:]))
    assert g[-1] < 1e-3


def test_residue_counts_equidistribute():
    assert rs.residue_count_deviation(1, 7, 0, 1) > rs.residue_count_deviation(1, 7, 0, 8)


def test_delange():
    rng = np.random.default_rng(7)
    for q in (2, 3, 5):
        z = np.sqrt(rng.random((5000, q - 1))) * np.exp(2j * np.pi * rng.random((5000, q - 1)))
        assert rs.delange_margins(z).min() >= -1e-12
        assert all(rs.delange_bound_check(row) for row in z[:50])
    assert rs.delange_bound_check([])
    assert rs.delange_bound_check([1, 1])

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from tmgaps import catalog, matching as mt
from tmgaps.errors import AlphabetMismatch, InvalidMatching
from tmgaps.words import Word

DEG48 = [0] * 48
for _j in (10, 34, 40, 41, 42, 43, 46):
    DEG48[_j] = -1
DEG48[20] = 1


def paren_links(letters):
    """Right connectors open, left connectors close."""
    stack, out = [], set()
    for j, x in enumerate(letters):
        if x in (2, 4, 6):
            stack.append(j)
        elif x in (1, 3, 5):
            out.add((stack.pop(), j))
    assert not stack
    return out


def test_decorated_symbol_round_trip():
    for i in range(7):
        assert mt.DecoratedSymbol.from_index(i).index == i
    assert str(mt.DecoratedSymbol("c", "right")) == "c→"
    with pytest.raises(ValueError):
        mt.DecoratedSymbol("a", "left")
    with pytest.raises(ValueError):
        mt.DecoratedSymbol("b", "none")


def test_closed_prefix_lengths():
    for k in range(5):
        assert len(mt.closed_prefix(k)) == 4 ** k


def test_first_links():
    links = [p for p in mt.find_matching(mt.closed_prefix(3)) if p[1] < 48]
    assert len(links) == 16
    assert (1, 2) in links and (9, 11) in links


@pytest.mark.parametrize("k", range(1, 7))
def test_matching_valid_and_unique(k):
    w = mt.closed_prefix(k)
    m = mt.find_matching(w)
    assert mt.validate_matching(w, m) is None
    assert m.as_set() == paren_links(w.letters)
    assert m == mt.stack_matching(w)
    covered = {x for p in m for x in p}
    assert covered == {i for i, x in enumerate(w.letters) if x != mt.A_}


@pytest.mark.parametrize("k", range(1, 5))
def test_naive_matcher_agrees(k):
    w = mt.closed_prefix(k)
    assert mt.find_matching_naive(w) == mt.find_matching(w)


def test_matching_sorted_by_span():
    m = mt.Matching(((0, 5), (1, 2), (3, 4)))
    assert m.links == ((1, 2), (3, 4), (0, 5))


def test_validate_reports_each_clause():
    w = Word.parse(catalog.K, "b→c←")
    assert mt.validate_matching(w, mt.Matching(((1, 3),))).clause == "order"
    bad_pair = Word.parse(catalog.K, "b→b←")
    assert mt.validate_matching(bad_pair, mt.Matching(((0, 1),))).clause == "pair"
    assert mt.validate_matching(w, mt.Matching(())).clause == "uncovered"
    cross = Word.parse(catalog.K, "b→c→c←b←")
    assert mt.validate_matching(cross, mt.Matching(((0, 2), (1, 3)))).clause == "crossing"
    dup = Word.parse(catalog.K, "b→c←c←")
    assert mt.validate_matching(dup, mt.Matching(((0, 1), (0, 2)))).clause == "disjoint"


def test_check_matching_raises():
    w = Word.parse(catalog.K, "b→c←")
    with pytest.raises(InvalidMatching):
        mt.check_matching(w, mt.Matching(()))


def test_wrong_alphabet():
    with pytest.raises(AlphabetMismatch):
        mt.find_matching(Word.parse(catalog.ABC, "abc"))


@pytest.mark.parametrize("k", range(1, 7))
@pytest.mark.parametrize("tie", ["left", "right"])
def test_rotation_gives_abc(k, tie):
    w = mt.closed_prefix(k)
    rot = mt.gamma(mt.rotate_along_links(w, mt.find_matching(w), tie_order=tie))
    assert mt.is_abc_periodic_prefix(rot)
    assert rot == mt.rotation_shortcut(w)


def test_rotation_tie_order_checked():
    w = mt.closed_prefix(1)
    with pytest.raises(ValueError):
        mt.rotate_along_links(w, mt.find_matching(w), tie_order="middle")


def test_gamma_erases_decorations():
    assert mt.gamma(mt.closed_prefix(3)).letters == catalog.ternary_A().raw_prefix(64)


def test_degrees_first_48():
    assert mt.degrees(48) == DEG48
    assert mt.degrees(0) == []


def test_degree_examples():
    assert mt.degree(10).value == -1
    assert mt.degree(170).value == -2
    assert mt.degree(20) == mt.Degree(1, 0)
    with pytest.raises(ValueError):
        mt.degree(-1)


@pytest.mark.parametrize("k", range(1, 5))
def test_degree_at_powers_of_four_in_base_four(k):
    # the base-4 word 22...2 of length 2k
    assert mt.degree(int("22" * k, 4)).value == -k


@given(st.integers(min_value=0, max_value=4 ** 6 - 1))
def test_degree_single_equals_bulk(j):
    assert mt.degree(j).value == mt.degrees(4 ** 6)[j]


@given(st.lists(st.sampled_from("()"), max_size=40))
def test_random_balanced_words(chars):
    # build a well-bracketed word over K from a Dyck-style walk
    opens, word = 0, []
    for ch in chars:
        if ch == "(":
            word.append(mt.C_R)
            opens += 1
        elif opens:
            word.append(mt.B_L)
            opens -= 1
        else:
            word.append(mt.A_)
    word.extend([mt.B_L] * opens)
    letters = bytes(word)
    m = mt.find_matching(letters)
    assert mt.validate_matching(letters, m) is None
    assert m.as_set() == paren_links(letters)


def test_render_ascii_and_direction():
    w = mt.closed_prefix(1)
    assert mt.render_ascii(w) == "a bh> c< a"
    assert mt.link_direction(w.letters, 1, 2) == "L"

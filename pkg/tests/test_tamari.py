import pytest

import oracles
from arithmetree.errors import DegreeError, NotComparable
from arithmetree.tamari import (
    interval,
    leq,
    maximum,
    minimum,
    mobius_closed,
    mobius_poset,
    names_in_box,
    path_bound,
    upper_covers,
)
from arithmetree.trees import Name, dagger, enumerate_names, is_name, name_of


def _tree(v):
    return oracles.from_pkg_tree(v.tree())


@pytest.mark.parametrize("n", range(1, 6))
def test_coordinatewise_order_is_rotation_order(n):
    names = enumerate_names(n)
    for v in names:
        for w in names:
            assert leq(v, w) == oracles.tamari_leq(_tree(v), _tree(w))


def test_minimum_and_maximum():
    for n in range(1, 7):
        assert minimum(n) == Name((1,) * n)
        assert maximum(n) == Name(range(1, n + 1))


@pytest.mark.parametrize("n", range(1, 6))
def test_mobius_closed_form_against_rotation_oracle(n):
    lo = _tree(minimum(n))
    for v in enumerate_names(n):
        expected = oracles.tamari_mobius(lo, _tree(v))
        assert mobius_closed(v) == expected
        assert mobius_poset(minimum(n), v) == expected


def test_mobius_examples():
    assert mobius_closed((1, 2)) == -1
    assert mobius_closed((1, 2, 3)) == 1
    assert mobius_closed((1, 1, 3)) == -1
    assert mobius_closed((1, 2, 2)) == 0
    assert mobius_poset((1, 1), (1, 1)) == 1


def test_mobius_anti_automorphism():
    for n in range(1, 6):
        names = enumerate_names(n)
        for v in names:
            for w in names:
                if leq(v, w):
                    assert mobius_poset(v, w) == mobius_poset(dagger(w), dagger(v))


def test_dagger_reverses_order():
    for n in range(1, 6):
        names = enumerate_names(n)
        for v in names:
            for w in names:
                assert leq(v, w) == leq(dagger(w), dagger(v))


def test_interval_against_filter():
    for n in range(1, 6):
        names = enumerate_names(n)
        for v in names:
            for w in names:
                if leq(v, w):
                    want = [u for u in names if leq(v, u) and leq(u, w)]
                    assert interval(v, w) == want


def test_box_walk_matches_full_filter():
    lo, hi = (1, 1, 2, 1, 1), (1, 2, 3, 4, 5)
    want = [v for v in enumerate_names(5) if all(a <= x <= b for a, x, b in zip(lo, v.coords, hi))]
    assert names_in_box(lo, hi) == want


def test_path_bound_dominates_rotation_paths():
    def paths(s, t, memo={}):
        if s == t:
            return 1
        key = (s, t)
        if key not in memo:
            memo[key] = sum(paths(u, t) for u in oracles.rotations(s) if oracles.tamari_leq(u, t))
        return memo[key]

    for n in range(1, 5):
        names = enumerate_names(n)
        for v in names:
            for w in names:
                if leq(v, w):
                    assert paths(_tree(v), _tree(w)) <= path_bound(v, w)


def test_path_bound_example():
    assert path_bound((1, 1), (1, 2)) == 2
    assert path_bound((1, 1, 1), (1, 2, 3)) == 6


def test_upper_covers_are_single_rotations():
    assert upper_covers((1, 1)) == [Name((1, 2))]
    assert upper_covers((1, 2)) == []
    for v in enumerate_names(5):
        for u in upper_covers(v):
            assert leq(v, u) and u != v


def test_errors():
    with pytest.raises(DegreeError):
        leq((1,), (1, 1))
    with pytest.raises(NotComparable):
        mobius_poset((1, 2), (1, 1))
    with pytest.raises(NotComparable):
        path_bound((1, 2), (1, 1))


def test_incomparable_pair():
    assert not leq((1, 1, 3), (1, 2, 2)) and not leq((1, 2, 2), (1, 1, 3))
    assert all(is_name(v.coords) for v in interval((1, 1, 1), (1, 2, 3)))

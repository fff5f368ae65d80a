"""Tamari order on names.

On names of equal degree the Tamari order is the coordinatewise order, so
comparisons, intervals and Möbius values are computed directly on vectors.
The rotation cover relation on trees is provided as an independent description
of the same order.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod
from typing import Iterator

from .errors import DegreeError, NotComparable
from .trees import Name, Tree, as_name, enumerate_names, is_name, name_of

__all__ = [
    "leq",
    "interval",
    "minimum",
    "maximum",
    "mobius_closed",
    "mobius_poset",
    "path_bound",
    "rotations",
    "upper_covers",
    "names_in_box",
]


def _same_degree(v: Name, w: Name) -> None:
    if v.degree != w.degree:
        raise DegreeError(f"{v} and {w} have different degrees")


def leq(v, w) -> bool:
    v, w = as_name(v), as_name(w)
    _same_degree(v, w)
    return all(a <= b for a, b in zip(v.coords, w.coords))


def names_in_box(lo: tuple[int, ...], hi: tuple[int, ...]) -> list[Name]:
    """Names ``t`` with ``lo <= t <= hi`` coordinatewise, in lexicographic order.

    Prefixes of names are names, so the depth-first walk prunes any prefix that
    fails the reconstruction criterion.
    """
    n = len(lo)
    out: list[Name] = []

    def walk(prefix: tuple[int, ...]):
        k = len(prefix)
        if k == n:
            out.append(Name._trusted(prefix))
            return
        for x in range(max(lo[k], 1), min(hi[k], k + 1) + 1):
            nxt = prefix + (x,)
            if is_name(nxt):
                walk(nxt)

    walk(())
    return out


def interval(v, w) -> list[Name]:
    v, w = as_name(v), as_name(w)
    _same_degree(v, w)
    return names_in_box(v.coords, w.coords)


def minimum(n: int) -> Name:
    """Unique minimal name of degree ``n``, found by enumeration."""
    names = enumerate_names(n)
    mins = [v for v in names if all(leq(v, w) for w in names)]
    if len(mins) != 1:
        raise AssertionError(f"degree {n} has {len(mins)} minima")
    return mins[0]


def maximum(n: int) -> Name:
    names = enumerate_names(n)
    maxs = [v for v in names if all(leq(w, v) for w in names)]
    if len(maxs) != 1:
        raise AssertionError(f"degree {n} has {len(maxs)} maxima")
    return maxs[0]


def mobius_closed(v) -> int:
    """Möbius value from the minimum: ``(-1)^t`` when every ``v_i`` is 1 or ``i``, else 0.

    ``t`` counts the coordinates with ``v_i = i != 1``.
    """
    v = as_name(v)
    t = 0
    for i, x in enumerate(v.coords, start=1):
        if x == i and i != 1:
            t += 1
        elif x != 1:
            return 0
    return (-1) ** t


@lru_cache(maxsize=4096)
def _mobius(lo: tuple[int, ...], hi: tuple[int, ...]) -> int:
    if lo == hi:
        return 1
    return -sum(_mobius(lo, t.coords) for t in names_in_box(lo, hi) if t.coords != hi)


def mobius_poset(v, w) -> int:
    """Generic Möbius recursion ``μ(v, w) = -Σ_{v <= t < w} μ(v, t)``."""
    v, w = as_name(v), as_name(w)
    if not leq(v, w):
        raise NotComparable(f"{v} is not below {w}")
    return _mobius(v.coords, w.coords)


def path_bound(v, w) -> int:
    """Product of ``|w_i - v_i| + 1``; bounds the number of rotation paths from v to w."""
    v, w = as_name(v), as_name(w)
    if not leq(v, w):
        raise NotComparable(f"{v} is not below {w}")
    return prod(abs(b - a) + 1 for a, b in zip(v.coords, w.coords))


def rotations(t: Tree) -> Iterator[Tree]:
    """Trees obtained from ``t`` by one rotation ``(A∨B)∨C -> A∨(B∨C)`` at some vertex."""
    if t.is_leaf:
        return
    l, r = t.left, t.right
    if not l.is_leaf:
        yield Tree(l.left, Tree(l.right, r))
    for l2 in rotations(l):
        yield Tree(l2, r)
    for r2 in rotations(r):
        yield Tree(l, r2)


def upper_covers(v) -> list[Name]:
    """Names reached from ``v`` by a single rotation, sorted."""
    v = as_name(v)
    return sorted({name_of(t) for t in rotations(v.tree())}, key=lambda u: u.coords)


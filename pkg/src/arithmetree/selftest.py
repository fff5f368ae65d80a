"""Invariant suites run by ``arithmetree selftest``.

Each check returns ``(label, ok, detail)``.  The degree bound caps every
exhaustive loop; the heavier lattice checks are clipped further so that the
default bound finishes in a few seconds.
"""

from __future__ import annotations

import random
from collections import deque
from itertools import product
from typing import Callable, Iterator

from .algebras import MomentTable, OperatorValuedSpace, WordSpace
from .arithmetic import dend_left, dend_right, ltimes, over, star, under
from .freeprob import cumulants_from_moments, moment_family, moments_from_cumulants, operad_laws_check
from .ncp import enumerate_nc, from_partition, partition_dagger, to_partition
from .tamari import leq, mobius_closed, mobius_poset, minimum, upper_covers
from .trees import catalan, dagger, enumerate_names, name_of, tree_of

Check = tuple[str, bool, str]


def _catalan(d: int) -> Check:
    bad = [n for n in range(d + 1) if len(enumerate_names(n)) != catalan(n)]
    bad += [n for n in range(1, d + 1) if len(enumerate_nc(n)) != catalan(n)]
    return "catalan census", not bad, f"n <= {d}" + (f", off at {bad}" if bad else "")


def _roundtrip(d: int) -> Check:
    bad = 0
    for n in range(d + 1):
        for v in enumerate_names(n):
            t = tree_of(v)
            bad += name_of(t) != v or tree_of(name_of(t)) != t
    return "name/tree round trip", not bad, f"{bad} failures"


def _rotation_order(d: int) -> Check:
    d = min(d, 5)
    bad = 0
    for n in range(1, d + 1):
        names = enumerate_names(n)
        for v in names:
            seen, queue = {v}, deque([v])
            while queue:
                for u in upper_covers(queue.popleft()):
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
            bad += sum((w in seen) != leq(v, w) for w in names)
    return "rotation closure = coordinatewise order", not bad, f"n <= {d}, {bad} mismatches"


def _mobius(d: int) -> Check:
    d = min(d, 5)
    bad = 0
    for n in range(1, d + 1):
        lo = minimum(n)
        bad += sum(mobius_closed(v) != mobius_poset(lo, v) for v in enumerate_names(n))
    return "Möbius closed form", not bad, f"n <= {d}, {bad} mismatches"


def _dagger(d: int) -> Check:
    bad = 0
    for n in range(d + 1):
        for v in enumerate_names(n):
            bad += dagger(dagger(v)) != v
    return "involution", not bad, f"{bad} failures"


def _ncp(d: int) -> Check:
    bad = 0
    for n in range(1, d + 1):
        for v in enumerate_names(n):
            bad += name_of(from_partition(to_partition(v.tree()))) != v
        for p in enumerate_nc(n):
            bad += partition_dagger(partition_dagger(p)) != p
    return "partition bijection", not bad, f"{bad} failures"


def _names_upto(k: int):
    for n in range(1, k + 1):
        yield from enumerate_names(n)


def _dendriform(d: int) -> Check:
    k = 2 if d >= 2 else 1
    bad = 0
    for x, y, z in product(list(_names_upto(k)), repeat=3):
        bad += dend_left(dend_left(x, y), z) != dend_left(x, star(y, z))
        bad += dend_left(dend_right(x, y), z) != dend_right(x, dend_left(y, z))
        bad += dend_right(star(x, y), z) != dend_right(x, dend_right(y, z))
    return "dendriform axioms", not bad, f"operand degrees <= {k}, {bad} failures"


def _splitting(d: int) -> Check:
    k = min(d, 3)
    bad = 0
    for v, w in product(list(_names_upto(k)), repeat=2):
        l, r = dend_left(v, w), dend_right(v, w)
        bad += bool(l.names & r.names) or (l | r) != star(v, w)
    return "∔ = ⊣ ⊔ ⊢", not bad, f"operand degrees <= {k}, {bad} failures"


def _l_monoid(d: int) -> Check:
    k = min(d, 6)
    bad = 0
    names = list(_names_upto(k - 2)) if k >= 3 else []
    for u, v, w in product(names, repeat=3):
        if u.degree + v.degree + w.degree > k:
            continue
        bad += over(over(u, v), w) != over(u, over(v, w))
        bad += under(under(u, v), w) != under(u, under(v, w))
        bad += over(u, under(v, w)) != under(over(u, v), w)
    return "L-monoid laws", not bad, f"degree sum <= {k}, {bad} failures"


def _ltimes(d: int) -> Check:
    k = min(d, 3) if d >= 2 else 1
    names = list(_names_upto(k))
    bad = sum(ltimes(v, (1,)) != ltimes((1,), v) or len(ltimes(v, (1,))) != 1 for v in names)
    for u, v, w in product(list(_names_upto(min(k, 2))), repeat=3):
        bad += ltimes(ltimes(u, v), w) != ltimes(u, ltimes(v, w))
    return "⋉ associativity and unit", not bad, f"{bad} failures"


def _operads(d: int) -> Check:
    rng = random.Random(0)
    total = bad = 0
    spaces = [WordSpace.random(rng, "ab", 4), OperatorValuedSpace(2, 2)]
    for space in spaces:
        fam = moment_family(space)
        for l, m, n in product(range(1, 3), repeat=3):
            if l + m + n <= 4:
                c, v = operad_laws_check(fam, l, m, n, samples=1, rng=rng)
                total += c
                bad += len(v)
    return "operad relations", not bad, f"{total} comparisons, {bad} violations"


def _cumulants(d: int) -> Check:
    k = max(2, min(d, 6))
    semi = [0, 1, 0, 2, 0, 5][:k]
    table = MomentTable({"s" * (i + 1): x for i, x in enumerate(semi)})
    kappa = cumulants_from_moments(table, k)
    want = {"s" * i: (1 if i == 2 else 0) for i in range(1, k + 1)}
    ok = all(kappa[w] == x for w, x in want.items())
    ok = ok and moments_from_cumulants(kappa, k) == table
    return "semicircle cumulants", ok, f"n <= {k}"


SUITES: list[Callable[[int], Check]] = [
    _catalan,
    _roundtrip,
    _rotation_order,
    _mobius,
    _dagger,
    _ncp,
    _dendriform,
    _splitting,
    _l_monoid,
    _ltimes,
    _operads,
    _cumulants,
]


def run(degree: int = 5) -> Iterator[Check]:
    for suite in SUITES:
        yield suite(degree)

"""Noncrossing partitions and their bijection with binary trees.

Label the internal vertices of a tree ``1..n`` in preorder.  Linking every
vertex to its right child and taking the classes of that relation gives a
noncrossing partition; the blocks are the maximal right-child chains.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ArithmetreeError, CrossingPartition, DegreeError, NotComparable, ParseError
from .trees import LEAF, Tree, as_name, dagger, name_of, tree_of

__all__ = [
    "NCPartition",
    "is_noncrossing",
    "to_partition",
    "from_partition",
    "refine_leq",
    "nc_mobius",
    "partition_dagger",
    "to_cycles",
    "enumerate_nc",
    "one_block",
    "singletons",
]


def _check_partition(blocks: Sequence[Sequence[int]], n: int) -> None:
    seen = [x for b in blocks for x in b]
    if any(not b for b in blocks):
        raise ArithmetreeError("blocks must be nonempty")
    if sorted(seen) != list(range(1, n + 1)):
        raise ArithmetreeError(f"blocks do not partition 1..{n}")


def is_noncrossing(blocks: Iterable[Iterable[int]], n: int) -> bool:
    """No ``p1 < q1 < p2 < q2`` with ``p1 ~ p2``, ``q1 ~ q2`` in different blocks."""
    blocks = [sorted(b) for b in blocks]
    _check_partition(blocks, n)
    owner = {x: k for k, b in enumerate(blocks) for x in b}
    for p1, q1, p2, q2 in combinations(range(1, n + 1), 4):
        if owner[p1] == owner[p2] and owner[q1] == owner[q2] and owner[p1] != owner[q1]:
            return False
    return True


_BLOCK_RE = re.compile(r"\{(\d+(?:,\d+)*)\}")


class NCPartition:
    """Noncrossing partition of ``1..n``; blocks ascending, ordered by minimum."""

    __slots__ = ("n", "blocks")

    def __init__(self, blocks: Iterable[Iterable[int]], n: int | None = None):
        bl = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0))
        if n is None:
            n = sum(len(b) for b in bl)
        if not is_noncrossing(bl, n):
            raise CrossingPartition(f"{_fmt_blocks(bl)} is crossing")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", bl)

    @classmethod
    def _trusted(cls, blocks: tuple, n: int) -> NCPartition:
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "blocks", blocks)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("NCPartition is immutable")

    def __eq__(self, other):
        if isinstance(other, NCPartition):
            return self.n == other.n and self.blocks == other.blocks
        return NotImplemented

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __str__(self):
        return _fmt_blocks(self.blocks)

    def __repr__(self):
        return f"NCPartition({self})"

    def __reduce__(self):
        return (NCPartition, (self.blocks, self.n))

    def __len__(self):
        return len(self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        for b in self.blocks:
            if x in b:
                return b
        raise KeyError(x)

    def to_json_obj(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def parse(cls, text: str) -> NCPartition:
        text = text.strip()
        pos, blocks = 0, []
        while pos < len(text):
            m = _BLOCK_RE.match(text, pos)
            if m is None:
                raise ParseError(f"not a partition: {text!r}")
            blocks.append([int(x) for x in m.group(1).split(",")])
            pos = m.end()
        if not blocks:
            raise ParseError("empty partition text")
        try:
            return cls(blocks)
        except CrossingPartition:
            raise
        except ArithmetreeError as exc:
            raise ParseError(str(exc)) from exc


def _fmt_blocks(blocks) -> str:
    return "".join("{" + ",".join(map(str, b)) + "}" for b in blocks)


def one_block(n: int) -> NCPartition:
    return NCPartition._trusted((tuple(range(1, n + 1)),), n)


def singletons(n: int) -> NCPartition:
    return NCPartition._trusted(tuple((k,) for k in range(1, n + 1)), n)


def to_partition(t) -> NCPartition:
    """Preorder-label the internal vertices and group right-child chains."""
    if not isinstance(t, Tree):
        t = tree_of(as_name(t))
    if t.is_leaf:
        raise DegreeError("the leaf has no vertices to label")
    chains: list[list[int]] = []
    label = 0

    def walk(node: Tree, chain: list[int] | None):
        nonlocal label
        label += 1
        me = label
        if chain is None:
            chain = []
            chains.append(chain)
        chain.append(me)
        if not node.left.is_leaf:
            walk(node.left, None)
        if not node.right.is_leaf:
            walk(node.right, chain)

    walk(t, None)
    return NCPartition._trusted(tuple(sorted(tuple(c) for c in chains)), t.degree)


def from_partition(p: NCPartition) -> Tree:
    """Inverse of :func:`to_partition`.

    The subtree rooted at label ``a`` spans ``a..b``.  Its right child is the
    successor of ``a`` in its block; the labels strictly between form the left
    subtree.
    """
    if not isinstance(p, NCPartition):
        raise TypeError("expected an NCPartition")
    succ = {}
    for b in p.blocks:
        for x, y in zip(b, b[1:]):
            succ[x] = y

    def build(a: int, b: int) -> Tree:
        if a > b:
            return LEAF
        nxt = succ.get(a)
        if nxt is not None and nxt > b:
            raise CrossingPartition(f"{p} is not noncrossing")
        mid = nxt if nxt is not None else b + 1
        return Tree(build(a + 1, mid - 1), build(mid, b))

    return build(1, p.n)


def refine_leq(p: NCPartition, q: NCPartition) -> bool:
    """Every block of ``p`` lies inside a block of ``q``."""
    if p.n != q.n:
        raise DegreeError("partitions of different sets")
    owner = {x: k for k, b in enumerate(q.blocks) for x in b}
    return all(len({owner[x] for x in b}) == 1 for b in p.blocks)


def _nc_rec(elems: tuple[int, ...]):
    """Noncrossing partitions of an ordered tuple of integers, as block tuples."""
    if not elems:
        yield ()
        return
    first, rest = elems[0], elems[1:]
    # choose the other members of first's block; the gaps between them and the
    # tail after the last member are partitioned independently
    for k in range(len(rest) + 1):
        for members in combinations(range(len(rest)), k):
            cuts = (-1,) + members
            segments = [rest[cuts[i] + 1 : cuts[i + 1]] for i in range(len(members))]
            segments.append(rest[(members[-1] + 1 if members else 0) :])
            block = (first,) + tuple(rest[m] for m in members)

            def combine(idx: int):
                if idx == len(segments):
                    yield ()
                    return
                for part in _nc_rec(segments[idx]):
                    for more in combine(idx + 1):
                        yield part + more

            for others in combine(0):
                yield (block,) + others


@lru_cache(maxsize=None)
def _nc(n: int) -> tuple[NCPartition, ...]:
    parts = [
        NCPartition._trusted(tuple(sorted(blocks)), n) for blocks in _nc_rec(tuple(range(1, n + 1)))
    ]
    parts.sort(key=lambda p: p.blocks)
    return tuple(parts)


def enumerate_nc(n: int) -> list[NCPartition]:
    """All noncrossing partitions of ``1..n``, sorted by their block tuples."""
    if n < 1:
        raise DegreeError("n must be at least 1")
    return list(_nc(n))


@lru_cache(maxsize=None)
def _nc_poset(n: int):
    parts = _nc(n)
    index = {p: k for k, p in enumerate(parts)}
    below = [[j for j, s in enumerate(parts) if refine_leq(s, p)] for p in parts]
    return parts, index, below


@lru_cache(maxsize=None)
def _nc_mu(n: int, i: int, j: int) -> int:
    parts, index, below = _nc_poset(n)
    if i == j:
        return 1
    above_i = set(k for k in range(len(parts)) if i in below[k])
    return -sum(_nc_mu(n, i, k) for k in below[j] if k != j and k in above_i)


def nc_mobius(p: NCPartition, q: NCPartition) -> int:
    """Möbius function of the refinement order, by the generic recursion."""
    if not refine_leq(p, q):
        raise NotComparable(f"{p} does not refine {q}")
    _, index, _ = _nc_poset(p.n)
    return _nc_mu(p.n, index[p], index[q])


def partition_dagger(p: NCPartition) -> NCPartition:
    """Partition of the mirror tree."""
    return to_partition(tree_of(dagger(name_of(from_partition(p)))))


def to_cycles(p: NCPartition) -> str:
    return "".join("(" + ",".join(map(str, b)) + ")" for b in p.blocks)

"""Planar binary trees and their vector names.

A tree of degree ``n`` (``n`` internal vertices, ``n + 1`` leaves) has a unique
complete bracketing of ``x1 ... x(n+1)``.  Reading which left parenthesis each
variable's closing run belongs to gives an integer vector ``v`` with
``1 <= v[i] <= i``, the *name* of the tree.  This module converts between the
three views (tree, bracketing, name), implements grafting and splitting on
names, the error-correcting decoder from arbitrary vectors of that box, and the
mirror involution.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence, Union

from .errors import DegreeError, NotAName, ParseError

__all__ = [
    "Tree",
    "LEAF",
    "ParenMonomial",
    "Name",
    "Grove",
    "EMPTY",
    "graft_trees",
    "exp_of",
    "name_of",
    "tree_of",
    "is_name",
    "check_candidate",
    "split_name",
    "vee",
    "enumerate_names",
    "dagger",
    "self_dual_count",
    "catalan",
    "as_name",
    "as_grove",
]


# -- trees -------------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    """A leaf (both children ``None``) or a node with two subtrees."""

    left: Tree | None = None
    right: Tree | None = None

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a node needs exactly two children")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @cached_property
    def degree(self) -> int:
        if self.is_leaf:
            return 0
        return self.left.degree + self.right.degree + 1

    def to_json_obj(self):
        if self.is_leaf:
            return 0
        return [self.left.to_json_obj(), self.right.to_json_obj()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj) -> Tree:
        if obj == 0 and not isinstance(obj, bool):
            return LEAF
        if isinstance(obj, list) and len(obj) == 2:
            return cls(cls.from_json_obj(obj[0]), cls.from_json_obj(obj[1]))
        raise ParseError(f"not a tree: {obj!r}")

    @classmethod
    def from_json(cls, text: str) -> Tree:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid tree JSON: {text!r}") from exc
        return cls.from_json_obj(obj)

    def __repr__(self):
        return f"Tree({self.to_json()})"


LEAF = Tree()


def graft_trees(left: Tree, right: Tree) -> Tree:
    """Join two trees under a new root."""
    return Tree(left, right)


# -- bracketings ---------------------------------------------------------------

OPEN, CLOSE = "(", ")"
_TOKEN_RE = re.compile(r"\(|\)|x(\d+)|\s+")


@dataclass(frozen=True)
class ParenMonomial:
    """Token sequence over ``(``, ``)`` and variables ``x1 .. x(n+1)``.

    Variables are stored as ints, parentheses as the strings ``"("``/``")"``.
    """

    tokens: tuple

    def __str__(self):
        return "".join(t if isinstance(t, str) else f"x{t}" for t in self.tokens)

    @property
    def variables(self) -> list[int]:
        return [t for t in self.tokens if isinstance(t, int)]

    @classmethod
    def parse(cls, text: str) -> ParenMonomial:
        tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
            if m.group(1) is not None:
                tokens.append(int(m.group(1)))
            elif not m.group(0).isspace():
                tokens.append(m.group(0))
            pos = m.end()
        return cls(tuple(tokens))

    def matching(self) -> dict[int, int]:
        """Map the index of every ``)`` to the index of the ``(`` it closes."""
        stack, match = [], {}
        for k, tok in enumerate(self.tokens):
            if tok == OPEN:
                stack.append(k)
            elif tok == CLOSE:
                if not stack:
                    raise ParseError(f"unbalanced parentheses in {self}")
                match[k] = stack.pop()
        if stack:
            raise ParseError(f"unbalanced parentheses in {self}")
        return match

    def to_tree(self) -> Tree:
        """Parse a complete binary bracketing back into a tree."""
        toks = self.tokens
        pos = 0

        def term() -> Tree:
            nonlocal pos
            if pos >= len(toks):
                raise ParseError(f"truncated monomial {self}")
            tok = toks[pos]
            if isinstance(tok, int):
                pos += 1
                return LEAF
            if tok != OPEN:
                raise ParseError(f"unexpected ')' in {self}")
            pos += 1
            left = term()
            right = term()
            if pos >= len(toks) or toks[pos] != CLOSE:
                raise ParseError(f"not a binary bracketing: {self}")
            pos += 1
            return Tree(left, right)

        tree = term()
        if pos != len(toks):
            raise ParseError(f"trailing tokens in {self}")
        if self.variables != list(range(1, tree.degree + 2)):
            raise ParseError(f"variables must read x1..x{tree.degree + 1}: {self}")
        return tree


def exp_of(t: Tree) -> ParenMonomial:
    """Complete bracketing of ``x1 ... x(n+1)`` encoded by ``t``."""
    if t.is_leaf:
        raise DegreeError("a bare leaf has no bracketing")
    tokens: list = []
    counter = 0

    def walk(node: Tree):
        nonlocal counter
        if node.is_leaf:
            counter += 1
            tokens.append(counter)
            return
        tokens.append(OPEN)
        walk(node.left)
        walk(node.right)
        tokens.append(CLOSE)

    walk(t)
    return ParenMonomial(tuple(tokens))


def _name_from_monomial(mono: ParenMonomial) -> tuple[int, ...]:
    toks = mono.tokens
    match = mono.matching()
    n = len(mono.variables) - 1
    first_var_after = {}
    nxt = None
    for k in range(len(toks) - 1, -1, -1):
        if isinstance(toks[k], int):
            nxt = toks[k]
        elif toks[k] == OPEN:
            first_var_after[k] = nxt
    coords = []
    for k, tok in enumerate(toks):
        if not isinstance(tok, int) or tok == n + 1:
            continue
        if k > 0 and toks[k - 1] == OPEN:
            coords.append(tok)
            continue
        end = k + 1
        while end < len(toks) and toks[end] == CLOSE:
            end += 1
        if end == k + 1:
            raise ParseError(f"x{tok} is neither opened nor closed in {mono}")
        coords.append(first_var_after[match[end - 1]])
    return tuple(coords)


# -- names ---------------------------------------------------------------------


def check_candidate(coords: Iterable[int]) -> tuple[int, ...]:
    """Validate membership of the box ``1 <= c[i] <= i`` and return a tuple."""
    c = tuple(coords)
    for i, x in enumerate(c, start=1):
        if isinstance(x, bool) or not isinstance(x, int):
            raise NotAName(f"coordinates must be integers, got {x!r}")
        if not 1 <= x <= i:
            raise NotAName(f"coordinate {i} of {_fmt(c)} is outside [1, {i}]")
    return c


def _fmt(coords: Sequence[int]) -> str:
    if not coords:
        return "(0)"
    return "(" + ",".join(map(str, coords)) + ")"


_NAME_RE = re.compile(r"\((\d+(?:,\d+)*)\)")


class Name:
    """Vector name of a planar binary tree; ``Name(())`` is the leaf ``(0)``."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[int] = ()):
        c = check_candidate(coords)
        if not is_name(c):
            raise NotAName(f"{_fmt(c)} does not name a tree")
        object.__setattr__(self, "coords", c)

    @classmethod
    def _trusted(cls, coords: tuple[int, ...]) -> Name:
        obj = object.__new__(cls)
        object.__setattr__(obj, "coords", coords)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("Name is immutable")

    @property
    def degree(self) -> int:
        return len(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    def __eq__(self, other):
        if isinstance(other, Name):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(("Name", self.coords))

    def __str__(self):
        return _fmt(self.coords)

    def __repr__(self):
        return f"Name{self}"

    def __reduce__(self):
        return (Name, (self.coords,))

    @classmethod
    def parse(cls, text: str) -> Name:
        text = text.strip()
        if text == "(0)":
            return ZERO
        m = _NAME_RE.fullmatch(text)
        if m is None:
            raise ParseError(f"not a vector: {text!r}")
        return cls(int(x) for x in m.group(1).split(","))

    def tree(self) -> Tree:
        return tree_of(self.coords)


ZERO = Name._trusted(())
ONE = Name._trusted((1,))


def as_name(value) -> Name:
    if isinstance(value, Name):
        return value
    if isinstance(value, str):
        return Name.parse(value)
    if isinstance(value, Tree):
        return name_of(value)
    return Name(value)


def name_of(t: Tree) -> Name:
    """Name of a tree, read from its bracketing."""
    if t.is_leaf:
        return ZERO
    return Name._trusted(_name_from_monomial(exp_of(t)))


def tree_of(c: Union[Name, Sequence[int]], strict: bool = False) -> Tree:
    """Decode any vector of the box into a tree.

    The decoder opens ``q_j`` parentheses before ``x_j`` (``q_j`` = number of
    coordinates equal to ``j``) and closes them in the only binary way, from the
    highest ``j`` down.  Vectors that are not names are corrected to the name of
    the decoded tree unless ``strict`` is set.
    """
    coords = c.coords if isinstance(c, Name) else check_candidate(c)
    if strict and not is_name(coords):
        raise NotAName(f"{_fmt(coords)} does not name a tree")
    n = len(coords)
    q = Counter(coords)
    units: list[tuple[int, Tree]] = [(j, LEAF) for j in range(1, n + 2)]
    for j in range(n, 0, -1):
        if not q[j]:
            continue
        pos = next(k for k, (start, _) in enumerate(units) if start == j)
        t = units[pos][1]
        for k in range(1, q[j] + 1):
            t = Tree(t, units[pos + k][1])
        units[pos : pos + q[j] + 1] = [(j, t)]
    (_, tree), = units
    return tree


@lru_cache(maxsize=None)
def _is_name(coords: tuple[int, ...]) -> bool:
    return _name_of_tree_coords(tree_of(coords)) == coords


def _name_of_tree_coords(t: Tree) -> tuple[int, ...]:
    return () if t.is_leaf else _name_from_monomial(exp_of(t))


def is_name(c: Union[Name, Sequence[int]]) -> bool:
    """Reconstruction criterion: ``c`` is a name iff decoding then naming is the identity."""
    if isinstance(c, Name):
        return True
    return _is_name(check_candidate(c))


def split_name(v: Name) -> tuple[Name, Name]:
    """Return ``(l, r)`` with ``v = l ∨ r``, cutting at the last coordinate equal to 1."""
    v = as_name(v)
    if v.degree == 0:
        raise DegreeError("(0) has no root to split")
    c = v.coords
    i = max(k for k, x in enumerate(c, start=1) if x == 1)
    return Name._trusted(c[: i - 1]), Name._trusted(tuple(x - i for x in c[i:]))


def vee(v: Name, w: Name) -> Name:
    """Grafting on names: ``(v, 1, |v| + 1 + w)``."""
    v, w = as_name(v), as_name(w)
    shift = v.degree + 1
    return Name._trusted(v.coords + (1,) + tuple(x + shift for x in w.coords))


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c


@lru_cache(maxsize=None)
def _names(n: int) -> tuple[Name, ...]:
    if n == 0:
        return (ZERO,)
    out = [vee(l, r) for k in range(n) for l in _names(k) for r in _names(n - 1 - k)]
    out.sort(key=lambda v: v.coords)
    return tuple(out)


def enumerate_names(n: int) -> list[Name]:
    """All names of degree ``n`` in lexicographic order."""
    if n < 0:
        raise DegreeError("degree must be nonnegative")
    return list(_names(n))


@lru_cache(maxsize=None)
def _dagger(coords: tuple[int, ...]) -> tuple[int, ...]:
    if len(coords) <= 1:
        return coords
    l, r = split_name(Name._trusted(coords))
    return vee(Name._trusted(_dagger(r.coords)), Name._trusted(_dagger(l.coords))).coords


def dagger(v: Name) -> Name:
    """Mirror involution, ``(l ∨ r)† = r† ∨ l†``."""
    return Name._trusted(_dagger(as_name(v).coords))


def self_dual_count(n: int) -> int:
    if n < 1:
        raise DegreeError("degree must be at least 1")
    return sum(1 for v in _names(n) if dagger(v) == v)


# -- groves --------------------------------------------------------------------


class Grove:
    """Set of distinct names of one degree.  ``Grove()`` is the absorbing ``0``."""

    __slots__ = ("names", "degree")

    def __init__(self, names: Iterable = ()):
        ns = frozenset(as_name(v) for v in names)
        degrees = {v.degree for v in ns}
        if len(degrees) > 1:
            raise DegreeError(f"grove mixes degrees {sorted(degrees)}")
        object.__setattr__(self, "names", ns)
        object.__setattr__(self, "degree", degrees.pop() if degrees else None)

    @classmethod
    def _trusted(cls, names: frozenset) -> Grove:
        obj = object.__new__(cls)
        object.__setattr__(obj, "names", names)
        object.__setattr__(obj, "degree", next(iter(names)).degree if names else None)
        return obj

    def __setattr__(self, key, value):
        raise AttributeError("Grove is immutable")

    @property
    def is_empty(self) -> bool:
        return not self.names

    def sorted(self) -> list[Name]:
        return sorted(self.names, key=lambda v: v.coords)

    def __iter__(self) -> Iterator[Name]:
        return iter(self.sorted())

    def __len__(self):
        return len(self.names)

    def __contains__(self, item):
        return item in self.names

    def __eq__(self, other):
        if isinstance(other, Grove):
            return self.names == other.names
        return NotImplemented

    def __hash__(self):
        return hash(("Grove", self.names))

    def __or__(self, other: Grove) -> Grove:
        return Grove(self.names | as_grove(other).names)

    def __str__(self):
        if self.is_empty:
            return "0"
        return "+".join(str(v) for v in self)

    def __repr__(self):
        return f"Grove({self})"

    def __reduce__(self):
        return (Grove, (tuple(self.sorted()),))

    def to_json_obj(self):
        return [list(v.coords) for v in self]

    @classmethod
    def parse(cls, text: str) -> Grove:
        text = text.strip()
        if text == "0":
            return EMPTY
        if not text:
            raise ParseError("empty grove text")
        return cls(Name.parse(part) for part in text.split("+"))


EMPTY = Grove._trusted(frozenset())


def as_grove(value) -> Grove:
    if isinstance(value, Grove):
        return value
    if isinstance(value, str):
        return Grove.parse(value)
    return Grove._trusted(frozenset([as_name(value)]))

"""Arithmetic on names and groves.

Over/under (``↗``/``↘``) graft one tree onto the leftmost/rightmost leaf of
another.  The dendriform addition ``∔`` of two names is the Tamari interval
between their over and under products; it splits into the left and right
products ``⊣``/``⊢``.  Substituting a name into the universal ``≺``/``≻``
expression of another gives the dendriform multiplication ``⋉``; doing the same
with ``↗``/``↘`` gives the L-multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Callable, Iterable

from .errors import ArithmetreeError, DegreeError, NoSolution, UndefinedOperation
from .tamari import leq, names_in_box
from .trees import (
    EMPTY,
    ONE,
    ZERO,
    Grove,
    Name,
    as_grove,
    as_name,
    enumerate_names,
    is_name,
    split_name,
    vee,
)

__all__ = [
    "shift_absorb",
    "over",
    "under",
    "star",
    "dend_left",
    "dend_right",
    "grove_vee",
    "Expr",
    "GEN",
    "PREC",
    "SUCC",
    "OVER",
    "UNDER",
    "omega_expr",
    "varpi_expr",
    "evaluate",
    "ltimes",
    "l_mult",
    "middle_term",
    "GroveDecomposition",
    "dendriform_sum",
    "decompose_grove",
    "solve_left",
    "is_prime",
    "nonprimes",
]

PREC, SUCC, OVER, UNDER = "≺", "≻", "↗", "↘"


# -- over / under -------------------------------------------------------------


def shift_absorb(k: int, w) -> tuple[int, ...]:
    """``k ▷ w``: add ``k`` to every coordinate except those equal to 1."""
    coords = w.coords if isinstance(w, Name) else tuple(w)
    if k < 0:
        raise ValueError("shift must be nonnegative")
    return tuple(1 if x == 1 else k + x for x in coords)


def over(v, w) -> Name:
    v, w = as_name(v), as_name(w)
    if v.degree == 0:
        return w
    if w.degree == 0:
        return v
    return Name._trusted(v.coords + shift_absorb(v.degree, w))


def under(v, w) -> Name:
    v, w = as_name(v), as_name(w)
    if v.degree == 0:
        return w
    if w.degree == 0:
        return v
    n = v.degree
    return Name._trusted(v.coords + tuple(n + x for x in w.coords))


# -- dendriform addition and its halves -----------------------------------------


@lru_cache(maxsize=65536)
def _star(v: Name, w: Name) -> frozenset:
    if v.degree == 0:
        return frozenset([w])
    if w.degree == 0:
        return frozenset([v])
    return frozenset(names_in_box(over(v, w).coords, under(v, w).coords))


@lru_cache(maxsize=65536)
def _left(v: Name, w: Name) -> frozenset:
    if v.degree == 0:
        if w.degree == 0:
            raise UndefinedOperation("(0) ⊣ (0) is not defined")
        return frozenset()
    if w.degree == 0:
        return frozenset([v])
    l, r = split_name(v)
    return frozenset(vee(l, t) for t in _star(r, w))


@lru_cache(maxsize=65536)
def _right(v: Name, w: Name) -> frozenset:
    if w.degree == 0:
        if v.degree == 0:
            raise UndefinedOperation("(0) ⊢ (0) is not defined")
        return frozenset()
    if v.degree == 0:
        return frozenset([w])
    l, r = split_name(w)
    return frozenset(vee(t, r) for t in _star(v, l))


def _distribute(op: Callable[[Name, Name], frozenset], a, b) -> Grove:
    a, b = as_grove(a), as_grove(b)
    if a.is_empty or b.is_empty:
        return EMPTY
    out: set = set()
    for v in a.names:
        for w in b.names:
            out |= op(v, w)
    return Grove._trusted(frozenset(out))


def star(a, b) -> Grove:
    """Dendriform addition ``a ∔ b`` of names or groves."""
    return _distribute(_star, a, b)


def dend_left(a, b) -> Grove:
    """``a ⊣ b``, with ``v ⊣ w = v_l ∨ (v_r ∔ w)``."""
    return _distribute(_left, a, b)


def dend_right(a, b) -> Grove:
    """``a ⊢ b``, with ``v ⊢ w = (v ∔ w_l) ∨ w_r``."""
    return _distribute(_right, a, b)


def grove_vee(a, b) -> Grove:
    return _distribute(lambda v, w: frozenset([vee(v, w)]), a, b)


# -- universal expressions -----------------------------------------------------


@dataclass(frozen=True)
class Expr:
    """Binary expression over the single generator ``(1)``; ``op is None`` marks the generator."""

    op: str | None = None
    left: Expr | None = None
    right: Expr | None = None

    @property
    def is_gen(self) -> bool:
        return self.op is None

    def __str__(self):
        if self.is_gen:
            return "(1)"

        def wrap(e: Expr) -> str:
            return str(e) if e.is_gen else f"({e})"

        return f"{wrap(self.left)}{self.op}{wrap(self.right)}"

    def relabel(self, mapping: dict[str, str]) -> Expr:
        if self.is_gen:
            return self
        return Expr(mapping[self.op], self.left.relabel(mapping), self.right.relabel(mapping))

    def size(self) -> int:
        return 1 if self.is_gen else self.left.size() + self.right.size()


GEN = Expr()


def _universal(v: Name, left_op: str, right_op: str) -> Expr:
    l, r = split_name(v)
    e = GEN
    if l.degree:
        e = Expr(left_op, _universal(l, left_op, right_op), e)
    if r.degree:
        e = Expr(right_op, e, _universal(r, left_op, right_op))
    return e


def omega_expr(v) -> Expr:
    """Universal dendriform expression ``ω_v = ω_{v_l} ≻ (1) ≺ ω_{v_r}``."""
    v = as_name(v)
    if v.degree == 0:
        raise DegreeError("(0) has no universal expression")
    return _universal(v, SUCC, PREC)


def varpi_expr(v) -> Expr:
    """Universal L-expression ``ϖ_v = ϖ_{v_l} ↗ (1) ↘ ϖ_{v_r}``."""
    v = as_name(v)
    if v.degree == 0:
        raise DegreeError("(0) has no universal expression")
    return _universal(v, OVER, UNDER)


def evaluate(expr: Expr, value, ops: dict[str, Callable]):
    if expr.is_gen:
        return value
    fn = ops[expr.op]
    return fn(evaluate(expr.left, value, ops), evaluate(expr.right, value, ops))


_DEND_OPS = {PREC: dend_left, SUCC: dend_right}
_L_OPS = {OVER: over, UNDER: under}


def ltimes(a, v) -> Grove:
    """Dendriform multiplication ``a ⋉ v``, left distributive over the grove ``a``.

    ``v`` may itself be a grove, in which case the universal expression is
    evaluated multilinearly.
    """
    a = as_grove(a)
    if a.is_empty:
        return EMPTY
    g = as_grove(v)
    if g.degree == 0:
        raise DegreeError("cannot substitute (0)")
    if a.degree == 0:
        return as_grove(ZERO)
    out: set = set()
    for u in a.names:
        out |= evaluate(omega_expr(u), g, _DEND_OPS).names
    return Grove._trusted(frozenset(out))


def l_mult(u, v) -> Name:
    """L-multiplication ``u ×̃ v = ϖ_u(v)``."""
    u, v = as_name(u), as_name(v)
    if u.degree == 0 or v.degree == 0:
        raise DegreeError("L-multiplication needs degrees >= 1")
    return evaluate(varpi_expr(u), v, _L_OPS)


def middle_term(u) -> Name:
    """Evaluate ``ω_u`` at ``(1)`` after reading ``≻`` as ``↗`` and ``≺`` as ``↘``."""
    expr = omega_expr(u).relabel({SUCC: OVER, PREC: UNDER})
    return evaluate(expr, ONE, _L_OPS)


# -- grove decomposition ---------------------------------------------------------


def dendriform_sum(factors: Iterable) -> Grove:
    return reduce(star, (as_grove(f) for f in factors))


@dataclass(frozen=True)
class GroveDecomposition:
    """``G = ∪_j (∔ sums[j]) ∪ residual``."""

    sums: tuple[tuple[Name, ...], ...]
    residual: Grove

    def recombine(self) -> Grove:
        out = set(self.residual.names)
        for factors in self.sums:
            out |= dendriform_sum(factors).names
        return Grove(out)

    def __str__(self):
        if self.sums:
            head = " ∪ ".join("∔".join(str(v) for v in f) for f in self.sums)
        else:
            head = "0"
        return f"{head} ; {self.residual}"

    def to_json_obj(self):
        return {
            "sums": [[list(v.coords) for v in f] for f in self.sums],
            "residual": self.residual.to_json_obj(),
        }


def _compositions(n: int, parts_min: int = 2):
    """Compositions of ``n`` into at least ``parts_min`` positive parts."""

    def rec(rest: int):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    for comp in rec(n):
        if len(comp) >= parts_min:
            yield comp


def _peel(coords: tuple[int, ...], degrees: tuple[int, ...]) -> tuple[Name, ...] | None:
    """Split ``coords`` into factors of the given degrees.

    Drop the leading factor, subtract its degree from the rest, and clamp
    nonpositive coordinates to 1; keep the split only if the vector lies
    between the over and under products of the two pieces.
    """
    factors = []
    cur = coords
    for d in degrees[:-1]:
        head = cur[:d]
        tail = tuple(max(x - d, 1) for x in cur[d:])
        if not (is_name(head) and is_name(tail)):
            return None
        h, t = Name._trusted(head), Name._trusted(tail)
        point = Name._trusted(cur)
        if not (leq(over(h, t), point) and leq(point, under(h, t))):
            return None
        factors.append(h)
        cur = tail
    factors.append(Name._trusted(cur))
    return tuple(factors)


def decompose_grove(g) -> GroveDecomposition:
    """Write a grove as disjoint dendriform sums of names plus a residual grove.

    Every name of the grove is peeled against every composition of its degree;
    the resulting candidate sums that fit inside the grove are accepted greedily,
    largest first and lexicographically among equals, as long as they stay
    disjoint from those already taken.
    """
    g = as_grove(g)
    if g.is_empty:
        raise ArithmetreeError("cannot decompose the empty grove")
    n = g.degree
    candidates: dict[tuple[Name, ...], frozenset] = {}
    for comp in _compositions(n):
        for w in g.names:
            factors = _peel(w.coords, comp)
            if factors is None or factors in candidates:
                continue
            members = dendriform_sum(factors).names
            if members <= g.names:
                candidates[factors] = members
    order = sorted(candidates, key=lambda f: (-len(candidates[f]), [v.coords for v in f]))
    remaining = set(g.names)
    taken = []
    for factors in order:
        members = candidates[factors]
        if members <= remaining:
            taken.append(factors)
            remaining -= members
    taken.sort(key=lambda f: [v.coords for v in f])
    return GroveDecomposition(tuple(taken), Grove._trusted(frozenset(remaining)))


def solve_left(v, g) -> Grove:
    """The unique grove ``X`` with ``v ∔ X = g``.

    Every element of ``v ∔ x`` starts with ``v`` and peels back to ``x``, so the
    only possible ``X`` is the set of peeled tails of ``g``.
    """
    v, g = as_name(v), as_grove(g)
    if g.is_empty:
        raise NoSolution("v ∔ X is never empty")
    k = v.degree
    if g.degree <= k:
        raise DegreeError("the grove must have larger degree than v")
    tails = set()
    for w in g.names:
        if w.coords[:k] != v.coords:
            raise NoSolution(f"{w} does not start with {v}")
        factors = _peel(w.coords, (k, g.degree - k)) if k else (ZERO, w)
        if factors is None:
            raise NoSolution(f"{w} is not in any {v} ∔ x")
        tails.add(factors[1])
    x = Grove._trusted(frozenset(tails))
    if star(v, x) != g:
        raise NoSolution(f"{v} ∔ {x} = {star(v, x)} differs from {g}")
    return x


# -- primality ------------------------------------------------------------------


@lru_cache(maxsize=None)
def _singleton_products(n: int) -> frozenset:
    out = set()
    for m in range(2, n // 2 + 1):
        if n % m:
            continue
        for u in enumerate_names(m):
            for w in enumerate_names(n // m):
                prod = ltimes(u, w)
                if len(prod) == 1:
                    out |= prod.names
    return frozenset(out)


def is_prime(v) -> bool:
    """False iff ``v`` is the single element of some ``u ⋉ u'`` with both degrees >= 2."""
    v = as_name(v)
    if v.degree == 0:
        raise DegreeError("primality needs degree >= 1")
    return v not in _singleton_products(v.degree)


def nonprimes(n: int) -> list[Name]:
    return sorted(_singleton_products(n), key=lambda v: v.coords)

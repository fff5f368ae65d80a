"""Partition-indexed evaluation of multilinear families, moments and cumulants.

A family ``f = (f^(n))`` of maps ``M^{⊗n} -> B`` acts on a noncrossing partition
by collapsing nested blocks first: the value of the blocks sitting in a gap of
a block is multiplied onto the module element just before the gap.  Cumulants
are the Möbius convolution of the resulting partition-indexed moments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Sequence

from .algebras import (
    FormalSpace,
    MomentTable,
    Poly,
    Space,
    WordSpace,
    apply_formal,
    words_upto,
)
from .errors import ArithmetreeError, DegreeError
from .ncp import NCPartition, enumerate_nc, nc_mobius, one_block, refine_leq, to_partition
from .trees import Name

__all__ = [
    "Family",
    "Operation",
    "moment_family",
    "formal_family",
    "unbalanced_family",
    "evaluate_partition",
    "compose",
    "composition_chain",
    "format_chain",
    "fold_chain",
    "augmented_unit",
    "operad_laws_check",
    "LawViolation",
    "cumulant",
    "cumulant_at",
    "cumulants_from_moments",
    "moments_from_cumulants",
    "identify",
    "freeness_check",
    "FreenessReport",
    "MAX_FREENESS_LENGTH",
]

MAX_FREENESS_LENGTH = 6


@dataclass(frozen=True)
class Family:
    """Multilinear family over a space; ``apply`` takes the list of tensor factors."""

    space: Space
    apply: Callable[[Sequence], object]
    name: str = "f"

    def __call__(self, word: Sequence):
        if not word:
            raise DegreeError("families start at arity 1")
        return self.apply(list(word))

    def op(self, n: int) -> Operation:
        return Operation(n, self.apply, self.space, f"{self.name}{n}")


@dataclass(frozen=True)
class Operation:
    """An ``arity``-ary map ``M^{⊗arity} -> B``."""

    arity: int
    fn: Callable[[Sequence], object]
    space: Space
    label: str = "op"

    def __call__(self, word: Sequence):
        if len(word) != self.arity:
            raise DegreeError(f"{self.label} takes {self.arity} factors, got {len(word)}")
        return self.fn(list(word))


def moment_family(space: Space) -> Family:
    """``φ^(n)(a1 ⊗ ... ⊗ an) = φ(a1 a2 ... an)``."""
    return Family(space, lambda word: space.phi(space.product(word)), "φ")


def formal_family(space: FormalSpace | None = None) -> Family:
    return Family(space or FormalSpace(), apply_formal, "f")


def unbalanced_family(space: Space) -> Family:
    """``φ(an ... a1)``: reverses the product, so it is not a bimodule map in general."""
    return Family(space, lambda word: space.phi(space.product(reversed(word))), "ψ")


def augmented_unit(b):
    """``f^(∅)(b) = b``."""
    return b


def _outer_blocks(p: NCPartition, lo: int, hi: int) -> list[tuple[int, ...]]:
    out = []
    k = lo
    while k <= hi:
        b = p.block_of(k)
        out.append(b)
        k = b[-1] + 1
    return out


def evaluate_partition(f: Family, p: NCPartition, word: Sequence):
    """Nested evaluation of ``f`` along ``p`` on ``word`` (1-indexed positions)."""
    if len(word) != p.n:
        raise DegreeError(f"word of length {len(word)} against a partition of {p.n}")
    space = f.space

    def gap_value(lo: int, hi: int):
        val = space.bone()
        for b in _outer_blocks(p, lo, hi):
            val = space.bmul(val, block_value(b))
        return val

    def block_value(b: tuple[int, ...]):
        comps = []
        for t, pos in enumerate(b):
            a = word[pos - 1]
            if t + 1 < len(b) and b[t + 1] > pos + 1:
                a = space.rmul(a, gap_value(pos + 1, b[t + 1] - 1))
            comps.append(a)
        return f(comps)

    return gap_value(1, p.n)


def compose(mu: Operation, i: int, nu: Operation) -> Operation:
    """``μ ∘_i ν``: ``ν`` eats positions ``i..i+n-1`` and its value is absorbed by a neighbour.

    For ``i >= 2`` the value multiplies ``a_{i-1}`` on the right; for ``i = 1`` it
    multiplies ``a_{n+1}`` on the left.  The arity is ``arity(μ) + arity(ν)``.
    """
    m, n = mu.arity, nu.arity
    if not 1 <= i <= m + 1:
        raise DegreeError(f"slot {i} out of range 1..{m + 1}")
    space = mu.space

    def fn(word):
        inner = nu(word[i - 1 : i - 1 + n])
        rest = list(word[: i - 1]) + list(word[i - 1 + n :])
        if i >= 2:
            rest[i - 2] = space.rmul(rest[i - 2], inner)
        else:
            rest[0] = space.lmul(inner, rest[0])
        return mu(rest)

    return Operation(m + n, fn, space, f"({mu.label} ∘{i} {nu.label})")


def composition_chain(p: NCPartition) -> list[tuple[int, int]]:
    """Blocks read left to right as ``(size, first element)``."""
    return [(len(b), b[0]) for b in p.blocks]


def format_chain(chain: Sequence[tuple[int, int]], name: str = "f") -> str:
    (size, _), rest = chain[0], chain[1:]
    return f"{name}{size}" + "".join(f" ∘{s} {name}{q}" for q, s in rest)


def fold_chain(f: Family, chain: Sequence[tuple[int, int]]) -> Operation:
    """Left fold ``((f^(p) ∘_s f^(q)) ∘_t ...)`` of a composition chain."""
    (size, start), rest = chain[0], chain[1:]
    if start != 1:
        raise ArithmetreeError("a chain starts at position 1")
    op = f.op(size)
    for q, s in rest:
        op = compose(op, s, f.op(q))
    return op


# operad relations


@dataclass(frozen=True)
class LawViolation:
    law: int
    i: int
    j: int
    word: tuple = field(repr=False, compare=False, default=())


def operad_laws_check(
    f: Family, l: int, m: int, n: int, samples: int = 3, rng: random.Random | None = None
) -> tuple[int, list[LawViolation]]:
    """Evaluate both exchange relations at every legal index pair on random words.

    1. ``(λ ∘_i μ) ∘_{j+m} ν = (λ ∘_j ν) ∘_i μ`` for ``1 <= i <= j <= l+1``;
    2. ``λ ∘_i (μ ∘_j ν) = (λ ∘_i μ) ∘_{i+j-1} ν`` for ``i <= l+1``, ``j <= m+1``.

    Returns the number of comparisons made and the violations found.
    """
    if min(l, m, n) < 1:
        raise DegreeError("arities start at 1")
    rng = rng or random.Random(0)
    space = f.space
    lam, mu, nu = f.op(l), f.op(m), f.op(n)
    pairs = []
    for i in range(1, l + 2):
        for j in range(i, l + 2):
            pairs.append((1, i, j, compose(compose(lam, i, mu), j + m, nu), compose(compose(lam, j, nu), i, mu)))
    for i in range(1, l + 2):
        for j in range(1, m + 2):
            pairs.append((2, i, j, compose(lam, i, compose(mu, j, nu)), compose(compose(lam, i, mu), i + j - 1, nu)))
    count = 0
    bad = []
    for _ in range(samples):
        word = [space.random_element(rng) for _ in range(l + m + n)]
        for law, i, j, lhs, rhs in pairs:
            count += 1
            if not space.beq(lhs(word), rhs(word)):
                bad.append(LawViolation(law, i, j, tuple(word)))
    return count, bad


# cumulants


@lru_cache(maxsize=None)
def _below(p: NCPartition) -> tuple[tuple[NCPartition, int], ...]:
    return tuple((s, nc_mobius(s, p)) for s in enumerate_nc(p.n) if refine_leq(s, p))


def cumulant_at(p: NCPartition, f: Family, word: Sequence):
    """``Ĉ_p(w) = Σ_{σ <= p} μ(σ, p) f̂_σ(w)``."""
    if len(word) != p.n:
        raise DegreeError(f"word of length {len(word)} against a partition of {p.n}")
    space = f.space
    total = space.bzero()
    for s, mu in _below(p):
        if mu:
            total = space.badd(total, space.bscale(mu, evaluate_partition(f, s, word)))
    return total


def cumulant(n: int, f: Family, word: Sequence):
    if len(word) != n:
        raise DegreeError(f"expected {n} factors, got {len(word)}")
    return cumulant_at(one_block(n), f, word)


def _letters(word: str) -> list[Poly]:
    return [Poly.gen(c) for c in word]


def cumulants_from_moments(table: MomentTable, n: int, alphabet: str | None = None) -> MomentTable:
    """Free cumulants of every word up to length ``n`` from a scalar moment table."""
    space = WordSpace(table, alphabet)
    fam = moment_family(space)
    out = {w: cumulant(len(w), fam, _letters(w)) for w in words_upto(space.alphabet, n)}
    return MomentTable(out, unit=False)


def moments_from_cumulants(kappa: MomentTable | Mapping, n: int, alphabet: str | None = None) -> MomentTable:
    """``φ(w) = Σ_{π ∈ NC(|w|)} Π_{V ∈ π} κ(w|_V)``; absent cumulants count as 0."""
    if not isinstance(kappa, MomentTable):
        kappa = MomentTable(kappa, unit=False)
    alphabet = alphabet or kappa.alphabet or "a"
    out = {"": Fraction(1)}
    for w in words_upto(alphabet, n):
        total = Fraction(0)
        for p in enumerate_nc(len(w)):
            term = Fraction(1)
            for b in p.blocks:
                term *= kappa.get("".join(w[k - 1] for k in b))
                if not term:
                    break
            total += term
        out[w] = total
    return MomentTable(out)


def identify(table: MomentTable, mapping: Mapping[str, str], alphabet: str, n: int) -> MomentTable:
    """Joint table on ``alphabet`` where each letter is replaced through ``mapping`` first."""
    out = {}
    for w in words_upto(alphabet, n):
        out[w] = table["".join(mapping.get(c, c) for c in w)]
    return MomentTable(out)


# freeness


@dataclass
class FreenessReport:
    mode: str
    n: int
    labels: dict[str, str]
    alternating_checked: int = 0
    alternating_nonzero: list[tuple[str, Fraction]] = field(default_factory=list)
    mixed_checked: int = 0
    mixed_nonzero: list[tuple[str, Fraction]] = field(default_factory=list)
    pure_mismatch: list[str] = field(default_factory=list)
    joint: MomentTable | None = field(default=None, repr=False)

    @property
    def free(self) -> bool:
        return not (self.alternating_nonzero or self.mixed_nonzero or self.pure_mismatch)

    def text(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"length bound: {self.n}",
            "subalgebras: " + " ".join(f"{g}:{lab}" for g, lab in sorted(self.labels.items())),
            f"alternating centered products: {self.alternating_checked} checked, "
            f"{len(self.alternating_nonzero)} nonzero",
            f"mixed cumulants: {self.mixed_checked} checked, {len(self.mixed_nonzero)} nonzero",
        ]
        for w, x in self.mixed_nonzero[:10]:
            lines.append(f"  κ({w}) = {x}")
        for w, x in self.alternating_nonzero[:10]:
            lines.append(f"  φ({w}) = {x}")
        if self.pure_mismatch:
            lines.append("pure moments not reproduced: " + " ".join(self.pure_mismatch))
        lines.append("free: " + ("yes" if self.free else "no"))
        return "\n".join(lines)

    def to_json_obj(self):
        return {
            "mode": self.mode,
            "n": self.n,
            "labels": dict(sorted(self.labels.items())),
            "alternating_checked": self.alternating_checked,
            "alternating_nonzero": {w: str(x) for w, x in self.alternating_nonzero},
            "mixed_checked": self.mixed_checked,
            "mixed_nonzero": {w: str(x) for w, x in self.mixed_nonzero},
            "pure_mismatch": self.pure_mismatch,
            "free": self.free,
        }


def _mixed(word: str, labels: Mapping[str, str]) -> bool:
    return len({labels[c] for c in word}) > 1


def _alternating_products(labels: Mapping[str, str], n: int):
    """Sequences of nonempty pure words, consecutive labels distinct, total length <= n."""
    by_label: dict[str, str] = {}
    for g, lab in sorted(labels.items()):
        by_label[lab] = by_label.get(lab, "") + g

    def extend(prefix, last, room):
        if len(prefix) >= 2:
            yield prefix
        for lab, letters in sorted(by_label.items()):
            if lab == last:
                continue
            for w in words_upto(letters, room):
                yield from extend(prefix + (w,), lab, room - len(w))

    yield from extend((), None, n)


def _check_alternating(report: FreenessReport, joint: MomentTable, labels, n: int) -> None:
    space = WordSpace(joint, "".join(sorted(labels)))
    for factors in _alternating_products(labels, n):
        prod_poly = Poly.const(1)
        for w in factors:
            x = Poly.gen(w[0])
            for c in w[1:]:
                x = x * Poly.gen(c)
            prod_poly = prod_poly * (x - Poly.const(joint[w]))
        val = space.phi(prod_poly)
        report.alternating_checked += 1
        if val != 0:
            report.alternating_nonzero.append(("·".join(f"({w}°)" for w in factors), val))


def _check_mixed(report: FreenessReport, joint: MomentTable, labels, n: int) -> None:
    space = WordSpace(joint, "".join(sorted(labels)))
    fam = moment_family(space)
    for w in words_upto(space.alphabet, n, start=2):
        if not _mixed(w, labels):
            continue
        # Ĉ on X^(1,...,k) ⊗ w: the right comb maps to the one-block partition
        p = to_partition(Name(range(1, len(w) + 1)))
        val = cumulant_at(p, fam, _letters(w))
        report.mixed_checked += 1
        if val != 0:
            report.mixed_nonzero.append((w, val))


def freeness_check(
    tables: Mapping[str, MomentTable],
    labels: Mapping[str, str] | None = None,
    n: int = 5,
    mixed: MomentTable | None = None,
) -> FreenessReport:
    """Desk-scale freeness verification.

    ``tables`` maps each subalgebra label to a moment table over that
    subalgebra's letters (one generator per label is the common case);
    ``labels`` maps letters to labels and is inferred from the tables when
    omitted.

    Without ``mixed`` the joint moments are built by declaring every mixed
    cumulant zero; the report then confirms that alternating centered products
    have zero state, that mixed cumulants vanish on recomputation and that the
    pure moments are reproduced.  With ``mixed`` the given joint table is
    examined instead and its nonzero mixed cumulants are listed.
    """
    if n > MAX_FREENESS_LENGTH:
        raise DegreeError(f"length bound {n} exceeds {MAX_FREENESS_LENGTH}")
    if n < 1:
        raise DegreeError("length bound must be positive")
    if labels is None:
        labels = {}
        for lab, t in tables.items():
            for c in t.alphabet:
                if c in labels and labels[c] != lab:
                    raise ArithmetreeError(f"letter {c} appears in two subalgebras")
                labels[c] = lab
    labels = dict(labels)
    alphabet = "".join(sorted(labels))
    if mixed is None:
        kappa: dict[str, Fraction] = {}
        for lab, t in tables.items():
            letters = "".join(c for c in alphabet if labels[c] == lab)
            if not letters:
                continue
            if not t.is_total(letters, n):
                raise DegreeError(f"table for {lab} is not total up to length {n}")
            kappa.update(cumulants_from_moments(t, n, letters).values)
        joint = moments_from_cumulants(kappa, n, alphabet)
        report = FreenessReport("construct", n, labels)
        for lab, t in tables.items():
            for w, x in t.items():
                if w and len(w) <= n and joint[w] != x:
                    report.pure_mismatch.append(w)
    else:
        if not mixed.is_total(alphabet, n):
            raise DegreeError(f"mixed table is not total up to length {n}")
        joint = mixed
        report = FreenessReport("examine", n, labels)
    _check_alternating(report, joint, labels, n)
    _check_mixed(report, joint, labels, n)
    report.joint = joint
    return report

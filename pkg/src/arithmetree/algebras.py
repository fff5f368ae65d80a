"""Desk-scale noncommutative probability spaces.

Each space bundles a coefficient algebra ``B``, a unital ``B``-``B``-bimodule
algebra ``M`` and a bimodule map ``phi: M -> B``.  Everything is exact:
rationals are :class:`fractions.Fraction` and matrices are numpy object arrays
of fractions.

* :class:`WordSpace`: ``M`` = noncommutative polynomials over one-letter
  generators, ``B`` = Q, ``phi`` read from a moment table.
* :class:`MatrixSpace`: ``M`` = ``B`` = d x d rational matrices, ``phi`` = identity.
* :class:`OperatorValuedSpace`: ``M`` = dk x dk matrices, ``B`` = d x d matrices
  acting as ``b ⊗ I_k``, ``phi`` = blockwise normalized trace.
* :class:`FormalSpace`: symbolic elements for reading nested evaluations.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import ArithmetreeError, DegreeError, ParseError

__all__ = [
    "MomentTable",
    "Poly",
    "Space",
    "WordSpace",
    "MatrixSpace",
    "OperatorValuedSpace",
    "FormalSpace",
    "Gen",
    "FApp",
    "parse_formal",
    "format_formal",
    "words_upto",
    "random_fraction",
]


def random_fraction(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def words_upto(alphabet: str, n: int, start: int = 1) -> Iterator[str]:
    """Words over ``alphabet`` of lengths ``start..n``, shortest first."""
    for k in range(start, n + 1):
        for letters in product(alphabet, repeat=k):
            yield "".join(letters)


# moment tables


class MomentTable:
    """Map from words over one-letter generators to rationals; ``"" -> 1``."""

    __slots__ = ("values",)

    def __init__(self, values: Mapping[str, object] | None = None, unit: bool = True):
        vals = {}
        for w, x in (values or {}).items():
            if not isinstance(w, str) or not all(c.isalpha() for c in w):
                raise ArithmetreeError(f"bad word {w!r}")
            vals[w] = Fraction(x)
        if unit:
            vals.setdefault("", Fraction(1))
        self.values = vals

    def __getitem__(self, word: str) -> Fraction:
        try:
            return self.values[word]
        except KeyError:
            raise DegreeError(f"word {word!r} is not in the table") from None

    def get(self, word: str, default=Fraction(0)) -> Fraction:
        return self.values.get(word, default)

    def __contains__(self, word: str) -> bool:
        return word in self.values

    def __eq__(self, other):
        if isinstance(other, MomentTable):
            return self.values == other.values
        return NotImplemented

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return f"MomentTable({len(self.values)} words)"

    @property
    def alphabet(self) -> str:
        return "".join(sorted({c for w in self.values for c in w}))

    @property
    def bound(self) -> int:
        return max((len(w) for w in self.values), default=0)

    def is_total(self, alphabet: str | None = None, n: int | None = None) -> bool:
        alphabet = self.alphabet if alphabet is None else alphabet
        n = self.bound if n is None else n
        return all(w in self.values for w in words_upto(alphabet, n))

    def restrict(self, n: int) -> MomentTable:
        return MomentTable({w: x for w, x in self.values.items() if len(w) <= n}, unit=False)

    def items(self):
        return sorted(self.values.items(), key=lambda kv: (len(kv[0]), kv[0]))

    @classmethod
    def parse(cls, text: str, unit: bool = True) -> MomentTable:
        """Read ``word value`` lines; ``#`` starts a comment, ``1`` names the empty word."""
        vals = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'word value'")
            word = "" if parts[0] == "1" else parts[0]
            if not all(c.isalpha() for c in word):
                raise ParseError(f"line {lineno}: bad word {parts[0]!r}")
            try:
                vals[word] = Fraction(parts[1])
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"line {lineno}: bad value {parts[1]!r}") from exc
        return cls(vals, unit=unit)

    def format(self, include_unit: bool = False) -> str:
        lines = [f"{w or '1'} {x}" for w, x in self.items() if w or include_unit]
        return "\n".join(lines)

    def to_json_obj(self):
        return {w: str(x) for w, x in self.items()}

    @classmethod
    def from_json_obj(cls, obj, unit: bool = True) -> MomentTable:
        if not isinstance(obj, dict):
            raise ParseError("a table must be a JSON object")
        try:
            return cls({w: Fraction(str(x)) for w, x in obj.items()}, unit=unit)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc)) from exc


# polynomials


class Poly:
    """Noncommutative polynomial: ``{word: coefficient}`` without zero terms."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[str, object] | None = None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c != 0}

    @classmethod
    def _raw(cls, terms: dict) -> Poly:
        obj = object.__new__(cls)
        obj.terms = {w: c for w, c in terms.items() if c}
        return obj

    @classmethod
    def gen(cls, letter: str) -> Poly:
        return cls({letter: 1})

    @classmethod
    def const(cls, c) -> Poly:
        return cls({"": c})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Poly._raw(out)

    def __sub__(self, other: Poly) -> Poly:
        return self + other.scale(-1)

    def scale(self, q) -> Poly:
        return Poly._raw({w: q * c for w, c in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        a, b = self.terms, other.terms
        if len(a) == 1 and len(b) == 1:
            (w1, c1), (w2, c2) = next(iter(a.items())), next(iter(b.items()))
            return Poly._raw({w1 + w2: c1 * c2 if c1 != 1 else c2})
        out: dict[str, Fraction] = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return Poly._raw(out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{w or '1'}" for w, c in sorted(self.terms.items()))


# spaces


class Space:
    """Interface shared by the desk spaces."""

    name = "space"

    # coefficient algebra B
    def bzero(self):
        raise NotImplementedError

    def bone(self):
        raise NotImplementedError

    def badd(self, x, y):
        raise NotImplementedError

    def bmul(self, x, y):
        raise NotImplementedError

    def bscale(self, q, x):
        raise NotImplementedError

    def beq(self, x, y) -> bool:
        return x == y

    def bsum(self, items: Iterable):
        total = self.bzero()
        for x in items:
            total = self.badd(total, x)
        return total

    # bimodule algebra M
    def mone(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def lmul(self, b, x):
        raise NotImplementedError

    def rmul(self, x, b):
        raise NotImplementedError

    def phi(self, x):
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def random_coefficient(self, rng: random.Random):
        raise NotImplementedError

    def product(self, xs):
        out = self.mone()
        for x in xs:
            out = self.mul(out, x)
        return out


class WordSpace(Space):
    """Polynomials over the letters of a moment table, with scalar coefficients."""

    name = "scalar"

    def __init__(self, table: MomentTable, alphabet: str | None = None):
        self.table = table
        self.alphabet = alphabet or table.alphabet or "a"

    def bzero(self):
        return Fraction(0)

    def bone(self):
        return Fraction(1)

    def badd(self, x, y):
        return x + y

    def bmul(self, x, y):
        return x * y

    def bscale(self, q, x):
        return q * x

    def mone(self):
        return Poly.const(1)

    def mul(self, x, y):
        return x * y

    def lmul(self, b, x):
        return x.scale(b)

    def rmul(self, x, b):
        return x.scale(b)

    def phi(self, x: Poly) -> Fraction:
        return sum((c * self.table[w] for w, c in x.terms.items()), Fraction(0))

    def random_element(self, rng: random.Random) -> Poly:
        """Random affine combination of the generators."""
        terms = {"": random_fraction(rng)}
        for letter in self.alphabet:
            terms[letter] = random_fraction(rng)
        return Poly(terms)

    def random_coefficient(self, rng: random.Random) -> Fraction:
        return random_fraction(rng)

    @classmethod
    def random(cls, rng: random.Random, alphabet: str = "ab", n: int = 7) -> WordSpace:
        """Space whose moment table holds random rationals on every word up to length ``n``."""
        vals = {w: random_fraction(rng) for w in words_upto(alphabet, n)}
        return cls(MomentTable(vals), alphabet)


def _frac_matrix(rows) -> np.ndarray:
    a = np.array([[Fraction(x) for x in row] for row in rows], dtype=object)
    return a


def _identity(d: int) -> np.ndarray:
    return _frac_matrix([[1 if i == j else 0 for j in range(d)] for i in range(d)])


def _random_matrix(rng: random.Random, d: int) -> np.ndarray:
    return _frac_matrix([[random_fraction(rng) for _ in range(d)] for _ in range(d)])


class MatrixSpace(Space):
    """``M = B = d x d`` rational matrices with ``phi`` the identity map."""

    def __init__(self, d: int = 2):
        self.d = d
        self.name = f"M{d}(Q)"

    def bzero(self):
        return _frac_matrix([[0] * self.d for _ in range(self.d)])

    def bone(self):
        return _identity(self.d)

    def badd(self, x, y):
        return x + y

    def bmul(self, x, y):
        return x.dot(y)

    def bscale(self, q, x):
        return x * Fraction(q)

    def beq(self, x, y) -> bool:
        return bool(np.array_equal(x, y))

    mone = bone
    mul = bmul

    def lmul(self, b, x):
        return b.dot(x)

    def rmul(self, x, b):
        return x.dot(b)

    def phi(self, x):
        return x

    def random_element(self, rng):
        return _random_matrix(rng, self.d)

    random_coefficient = random_element


class OperatorValuedSpace(MatrixSpace):
    """``M = M_d(M_k(Q))`` over ``B = M_d(Q)`` with the blockwise normalized trace.

    ``phi`` replaces every k x k block by its normalized trace; it is a
    conditional expectation onto ``B ⊗ I_k`` and hence a bimodule map.
    """

    def __init__(self, d: int = 2, k: int = 2):
        super().__init__(d)
        self.k = k
        self.name = f"M{d}(M{k}(Q))"
        self._ik = _identity(k)

    def embed(self, b):
        return np.kron(b, self._ik)

    def mone(self):
        return _identity(self.d * self.k)

    def mul(self, x, y):
        return x.dot(y)

    def lmul(self, b, x):
        return self.embed(b).dot(x)

    def rmul(self, x, b):
        return x.dot(self.embed(b))

    def phi(self, x):
        d, k = self.d, self.k
        out = self.bzero()
        for i in range(d):
            for j in range(d):
                block = x[i * k : (i + 1) * k, j * k : (j + 1) * k]
                out[i, j] = sum((block[t, t] for t in range(k)), Fraction(0)) / k
        return out

    def random_element(self, rng):
        return _random_matrix(rng, self.d * self.k)

    def random_coefficient(self, rng):
        return _random_matrix(rng, self.d)


# formal symbols


@dataclass(frozen=True)
class Gen:
    """Named module generator such as ``a3``."""

    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class FApp:
    """Symbolic value ``f<arity>(c1 ⊗ ... ⊗ cn)``; components are tuples of atoms."""

    arity: int
    components: tuple

    def __str__(self):
        return f"f{self.arity}(" + " ⊗ ".join(_fmt_mono(c) for c in self.components) + ")"


def _fmt_mono(atoms: tuple) -> str:
    return " ".join(map(str, atoms)) if atoms else "1"


def format_formal(x: tuple) -> str:
    return _fmt_mono(x)


def _is_b(atom) -> bool:
    return isinstance(atom, FApp)


def apply_formal(comps: list[tuple]) -> tuple:
    """Symbolic ``f^(n)`` with the balance rules applied.

    Coefficient factors never start a component: a leading factor of component
    ``k >= 2`` slides to the end of component ``k - 1``; leading factors of the
    first component and trailing factors of the last leave the application.
    """
    comps = [tuple(c) for c in comps]
    n = len(comps)
    if n == 0:
        raise DegreeError("f needs at least one argument")
    right: tuple = ()
    last = comps[-1]
    cut = len(last)
    while cut > 0 and _is_b(last[cut - 1]):
        cut -= 1
    right, comps[-1] = last[cut:], last[:cut]
    moved = True
    while moved:
        moved = False
        for k in range(1, n):
            c = comps[k]
            lead = 0
            while lead < len(c) and _is_b(c[lead]):
                lead += 1
            if lead:
                comps[k - 1] = comps[k - 1] + c[:lead]
                comps[k] = c[lead:]
                moved = True
    first = comps[0]
    lead = 0
    while lead < len(first) and _is_b(first[lead]):
        lead += 1
    left, comps[0] = first[:lead], first[lead:]
    return left + (FApp(n, tuple(comps)),) + right


class FormalSpace(Space):
    """Symbolic monomials; the family ``f`` is the free one given by :func:`apply_formal`.

    Only products are available; sums raise.
    """

    name = "formal"

    def bone(self):
        return ()

    def bmul(self, x, y):
        return tuple(x) + tuple(y)

    def bzero(self):
        raise ArithmetreeError("formal space has no addition")

    def badd(self, x, y):
        raise ArithmetreeError("formal space has no addition")

    def bscale(self, q, x):
        raise ArithmetreeError("formal space has no addition")

    mone = bone
    mul = bmul

    def lmul(self, b, x):
        return tuple(b) + tuple(x)

    def rmul(self, x, b):
        return tuple(x) + tuple(b)

    def word(self, n: int, prefix: str = "a") -> list[tuple]:
        return [(Gen(f"{prefix}{i}"),) for i in range(1, n + 1)]


_TOKEN = re.compile(r"\s*(?:(f(\d+)\()|(⊗|\(x\))|(\))|([A-Za-z]\w*)|(1(?![\d\w])))")


def parse_formal(text: str) -> tuple:
    """Read a symbolic monomial such as ``f2(a1 f1(a2) ⊗ a3) f1(a4)``.

    The result is put in balanced normal form so that equal values compare equal.
    """
    pos = 0
    text = text.strip()

    def next_token():
        nonlocal pos
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            return None, None
        pos = m.end()
        if m.group(1):
            return "f", int(m.group(2))
        if m.group(3):
            return "sep", None
        if m.group(4):
            return ")", None
        if m.group(5):
            return "gen", m.group(5)
        return "one", None

    def mono(stop: set) -> tuple[tuple, str | None]:
        atoms: list = []
        while True:
            save = pos
            kind, val = next_token()
            if kind is None:
                if pos < len(text.rstrip()) and text[pos:].strip():
                    raise ParseError(f"unexpected text at {text[pos:]!r}")
                return tuple(atoms), None
            if kind in stop:
                return tuple(atoms), kind
            if kind == "gen":
                atoms.append(Gen(val))
            elif kind == "one":
                pass
            elif kind == "f":
                comps = []
                while True:
                    c, end = mono({"sep", ")"})
                    comps.append(c)
                    if end == ")":
                        break
                    if end != "sep":
                        raise ParseError("unbalanced parentheses")
                if len(comps) != val:
                    raise ParseError(f"f{val} applied to {len(comps)} arguments")
                atoms.extend(apply_formal(comps))
            else:
                raise ParseError(f"unexpected {kind!r} at offset {save}")

    out, end = mono(set())
    if end is not None or text[pos:].strip():
        raise ParseError(f"trailing input {text[pos:]!r}")
    return out

"""Finite sets, total functions, words and monoids.

Everything here is immutable once built.  Iteration order of a :class:`FinSet`
is the order its elements were declared in, and every "first counterexample"
reported elsewhere in the package refers to that order.
"""

from itertools import product as _product
from typing import Hashable, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import MalformedInput, TypeMismatch
from .verdict import Verdict


class FinSet:
    """An ordered finite set of hashable atoms."""

    __slots__ = ("name", "elements", "_index")

    def __init__(self, elements: Iterable[Hashable] = (), name: str = ""):
        elems = tuple(elements)
        index = {}
        for i, x in enumerate(elems):
            if x in index:
                raise MalformedInput(f"duplicate element {x!r} in set {name or '<anon>'}")
            index[x] = i
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", index)

    def __setattr__(self, key, value):
        raise AttributeError("FinSet is immutable")

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def __getitem__(self, i):
        return self.elements[i]

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise MalformedInput(f"{x!r} is not an element of {self.name or 'the set'}") from None

    # Equality is extensional; order is presentation only.
    def __eq__(self, other):
        if not isinstance(other, FinSet):
            return NotImplemented
        return len(self.elements) == len(other.elements) and all(x in other._index for x in self.elements)

    def __hash__(self):
        return hash(frozenset(self.elements))

    def __repr__(self):
        label = f"{self.name}=" if self.name else ""
        return f"FinSet({label}{{{', '.join(map(repr, self.elements))}}})"

    def same_order(self, other: "FinSet") -> bool:
        return self.elements == other.elements

    def subsets(self):
        """All subsets as frozensets, ordered by bitmask over the declaration order."""
        n = len(self.elements)
        for mask in range(1 << n):
            yield frozenset(self.elements[i] for i in range(n) if mask >> i & 1)


def product_set(x: FinSet, y: FinSet, name: str = "") -> FinSet:
    """Cartesian product with lexicographic iteration order."""
    return FinSet(_product(x.elements, y.elements), name=name or _join(x.name, y.name))


def _join(a, b):
    return f"{a}x{b}" if a and b else ""


class FinFn:
    """A total function between finite sets, stored as a lookup table."""

    __slots__ = ("dom", "cod", "table")

    def __init__(self, dom: FinSet, cod: FinSet, table):
        if callable(table) and not isinstance(table, Mapping):
            table = {x: table(x) for x in dom}
        tab = dict(table)
        for x in dom:
            if x not in tab:
                raise MalformedInput(f"function undefined on {x!r}")
            if tab[x] not in cod:
                raise MalformedInput(f"image {tab[x]!r} of {x!r} lies outside the codomain")
        if len(tab) != len(dom):
            extra = next(k for k in tab if k not in dom)
            raise MalformedInput(f"function defined on {extra!r}, which is outside its domain")
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "table", tab)

    def __setattr__(self, key, value):
        raise AttributeError("FinFn is immutable")

    def __call__(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise MalformedInput(f"{x!r} is outside the domain") from None

    def __eq__(self, other):
        if not isinstance(other, FinFn):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        return f"FinFn({self.table!r})"

    @classmethod
    def identity(cls, x: FinSet) -> "FinFn":
        return cls(x, x, {a: a for a in x})

    def then(self, other: "FinFn") -> "FinFn":
        """Diagrammatic composite: first ``self`` then ``other``."""
        if self.cod != other.dom:
            raise TypeMismatch("codomain and domain differ")
        return FinFn(self.dom, other.cod, {x: other.table[y] for x, y in self.table.items()})

    def after(self, other: "FinFn") -> "FinFn":
        return other.then(self)

    def times(self, other: "FinFn") -> "FinFn":
        """``self x other`` acting componentwise on pairs."""
        dom = product_set(self.dom, other.dom)
        cod = product_set(self.cod, other.cod)
        return FinFn(dom, cod, {(a, b): (self.table[a], other.table[b]) for a, b in dom})

    def is_bijection(self):
        return len(self.dom) == len(self.cod) and len(set(self.table.values())) == len(self.cod)


class Word:
    """A finite sequence of letters drawn from ``alphabet``."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: FinSet, letters: Iterable[Hashable] = ()):
        letters = tuple(letters)
        for a in letters:
            if a not in alphabet:
                raise MalformedInput(f"letter {a!r} is not in the alphabet {alphabet.elements!r}")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, key, value):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.alphabet, self.letters[i])
        return self.letters[i]

    def __add__(self, other):
        return word_concat(self, other)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters and self.alphabet == other.alphabet

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "[" + ",".join(map(str, self.letters)) + "]"


def word_concat(u: Word, v: Word) -> Word:
    if u.alphabet != v.alphabet:
        raise TypeMismatch("cannot concatenate words over different alphabets")
    return Word(u.alphabet, u.letters + v.letters)


def words_up_to(alphabet: FinSet, max_len: int) -> Iterator[Tuple]:
    """Letter tuples of length <= max_len in shortlex order."""
    for n in range(max_len + 1):
        yield from _product(alphabet.elements, repeat=n)


class FinMonoid:
    """A monoid on a finite carrier, given by its full multiplication table.

    Construction only checks that the table is total and closed; the monoid
    laws are checked by :func:`check_monoid_laws` so that broken tables can
    still be represented and reported on.
    """

    is_free = False

    def __init__(self, carrier: FinSet, unit, mul, name: str = ""):
        if unit not in carrier:
            raise MalformedInput(f"unit {unit!r} is not in the carrier")
        if callable(mul) and not isinstance(mul, Mapping):
            mul = {(x, y): mul(x, y) for x in carrier for y in carrier}
        table = dict(mul)
        for x in carrier:
            for y in carrier:
                if (x, y) not in table:
                    raise MalformedInput(f"multiplication undefined on ({x!r}, {y!r})")
                if table[x, y] not in carrier:
                    raise MalformedInput(f"{x!r}*{y!r} = {table[x, y]!r} leaves the carrier")
        self.carrier = carrier
        self.unit = unit
        self.table = table
        self.name = name

    def mul(self, x, y):
        return self.table[x, y]

    def fold(self, xs: Iterable) -> Hashable:
        acc = self.unit
        for x in xs:
            acc = self.table[acc, x]
        return acc

    def __contains__(self, x):
        return x in self.carrier

    def elements(self):
        return iter(self.carrier)

    def __eq__(self, other):
        if not isinstance(other, FinMonoid):
            return NotImplemented
        return self.carrier == other.carrier and self.unit == other.unit and self.table == other.table

    def __hash__(self):
        return hash((self.carrier, self.unit))

    def __repr__(self):
        return f"FinMonoid({self.name or self.carrier.elements!r})"


class FreeMonoid:
    """The free monoid on ``generators``; elements are :class:`Word` values."""

    is_free = True

    def __init__(self, generators: FinSet, name: str = ""):
        self.generators = generators
        self.name = name
        self.unit = Word(generators, ())

    def mul(self, u: Word, v: Word) -> Word:
        return word_concat(u, v)

    def fold(self, ws: Iterable[Word]) -> Word:
        letters = []
        for w in ws:
            letters.extend(w.letters)
        return Word(self.generators, letters)

    def word(self, letters: Iterable = ()) -> Word:
        return Word(self.generators, letters)

    def letter(self, a) -> Word:
        return Word(self.generators, (a,))

    def __contains__(self, x):
        return isinstance(x, Word) and x.alphabet == self.generators

    def words(self, max_len: int) -> Iterator[Word]:
        for letters in words_up_to(self.generators, max_len):
            yield Word(self.generators, letters)

    def __eq__(self, other):
        if not isinstance(other, FreeMonoid):
            return NotImplemented
        return self.generators == other.generators

    def __hash__(self):
        return hash(("free", self.generators))

    def __repr__(self):
        return f"FreeMonoid({self.generators.elements!r})"


FreeMonoidHandle = FreeMonoid


def check_monoid_laws(m: FinMonoid) -> Verdict:
    """Exhaustive check of the unit and associativity laws.

    Unit laws are examined first, element by element; then all triples in
    lexicographic order.
    """
    if len(m.carrier) == 0:
        raise MalformedInput("monoid carrier is empty")
    t, u = m.table, m.unit
    for x in m.carrier:
        if t[u, x] != x:
            return Verdict.failed((u, x), "left unit", detail=f"{u}*{x} = {t[u, x]}")
        if t[x, u] != x:
            return Verdict.failed((x, u), "right unit", detail=f"{x}*{u} = {t[x, u]}")
    for x in m.carrier:
        for y in m.carrier:
            xy = t[x, y]
            for z in m.carrier:
                if t[xy, z] != t[x, t[y, z]]:
                    return Verdict.failed((x, y, z), "associativity")
    return Verdict.passed()


def cyclic_monoid(n: int, name: Optional[str] = None) -> FinMonoid:
    """Z/n under addition, elements labelled "0".."n-1"."""
    carrier = FinSet([str(i) for i in range(n)], name=name or f"Z{n}")
    return FinMonoid(carrier, "0", lambda x, y: str((int(x) + int(y)) % n), name=name or f"Z{n}")


def z2_multiplicative() -> FinMonoid:
    """Z/2 written multiplicatively as {1, g}."""
    carrier = FinSet(["1", "g"], name="Z2")
    table = {("1", "1"): "1", ("1", "g"): "g", ("g", "1"): "g", ("g", "g"): "1"}
    return FinMonoid(carrier, "1", table, name="Z2")


def idempotent_monoid() -> FinMonoid:
    """The two-element monoid {1, z} with z*z = z (z is absorbing)."""
    carrier = FinSet(["1", "z"], name="Idem")
    table = {("1", "1"): "1", ("1", "z"): "z", ("z", "1"): "z", ("z", "z"): "z"}
    return FinMonoid(carrier, "1", table, name="Idem")


def trivial_monoid() -> FinMonoid:
    return FinMonoid(FinSet(["1"], name="1"), "1", {("1", "1"): "1"}, name="1")

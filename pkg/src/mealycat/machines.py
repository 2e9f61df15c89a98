"""Mealy and Moore machines over finite sets, and their diamond composition.

A Mealy machine (E, d, s) with input I and output O has a transition
``d: E x I -> E`` and an output ``s: E x I -> O``.  Composition feeds the
output of the first machine into the second; the composite state set is
``F x E`` with the second machine's state first.
"""

from functools import cached_property
from typing import Iterable, Tuple

import numpy as np

from .errors import MalformedInput, TypeMismatch
from .finset import FinFn, FinSet, Word, product_set
from .verdict import Verdict


def _as_fn(table, dom, cod):
    if isinstance(table, FinFn):
        if table.dom != dom or table.cod != cod:
            raise TypeMismatch("table has the wrong domain or codomain")
        return table
    return FinFn(dom, cod, table)


class MealyMachine:
    def __init__(self, states: FinSet, input: FinSet, output: FinSet, d, s, name: str = "", initial=None):
        self.states = states
        self.input = input
        self.output = output
        dom = product_set(states, input)
        self.d = _as_fn(d, dom, states)
        self.s = _as_fn(s, dom, output)
        self.name = name
        if initial is not None and initial not in states:
            raise MalformedInput(f"initial state {initial!r} is not a state")
        self._initial = initial

    @property
    def initial(self):
        """Declared start state, else the first state."""
        if self._initial is not None:
            return self._initial
        return self.states[0] if len(self.states) else None

    def step(self, e, a):
        return self.d.table[e, a], self.s.table[e, a]

    def __eq__(self, other):
        if not isinstance(other, MealyMachine):
            return NotImplemented
        return (self.states == other.states and self.input == other.input and self.output == other.output
                and self.d == other.d and self.s == other.s)

    __hash__ = None

    def __repr__(self):
        return f"MealyMachine({self.name or '?'}: |E|={len(self.states)}, I={self.input.elements}, O={self.output.elements})"

    def relabel(self, f: FinFn, name: str = "") -> "MealyMachine":
        """Transport the machine along a bijection of state sets."""
        if not f.is_bijection() or f.dom != self.states:
            raise MalformedInput("relabelling must be a bijection out of the state set")
        d = {(f.table[e], a): f.table[self.d.table[e, a]] for e in self.states for a in self.input}
        s = {(f.table[e], a): self.s.table[e, a] for e in self.states for a in self.input}
        states = FinSet([f.table[e] for e in self.states])
        init = f.table[self._initial] if self._initial is not None else None
        return MealyMachine(states, self.input, self.output, d, s, name=name, initial=init)

    @cached_property
    def encoded(self) -> Tuple[np.ndarray, np.ndarray]:
        """Flat int64 transition and output tables, indexed ``e * |I| + a``."""
        si, ii, oi = self.states.index, self.input.index, self.output.index
        n_in = len(self.input)
        d = np.empty(len(self.states) * n_in, dtype=np.int64)
        s = np.empty_like(d)
        for (e, a), e2 in self.d.table.items():
            d[si(e) * n_in + ii(a)] = si(e2)
        for (e, a), o in self.s.table.items():
            s[si(e) * n_in + ii(a)] = oi(o)
        return d, s


class MooreMachine:
    def __init__(self, states: FinSet, input: FinSet, output: FinSet, d, s, name: str = "", initial=None):
        self.states = states
        self.input = input
        self.output = output
        self.d = _as_fn(d, product_set(states, input), states)
        self.s = _as_fn(s, states, output)
        self.name = name
        if initial is not None and initial not in states:
            raise MalformedInput(f"initial state {initial!r} is not a state")
        self._initial = initial

    @property
    def initial(self):
        if self._initial is not None:
            return self._initial
        return self.states[0] if len(self.states) else None

    def __eq__(self, other):
        if not isinstance(other, MooreMachine):
            return NotImplemented
        return (self.states == other.states and self.input == other.input and self.output == other.output
                and self.d == other.d and self.s == other.s)

    __hash__ = None

    def __repr__(self):
        return f"MooreMachine({self.name or '?'}: |E|={len(self.states)})"


def _letters(word, alphabet: FinSet):
    letters = word.letters if isinstance(word, Word) else tuple(word)
    for a in letters:
        if a not in alphabet:
            raise MalformedInput(f"letter {a!r} is not in the input alphabet {alphabet.elements!r}")
    return letters


def run_mealy(m: MealyMachine, e0, w: Iterable) -> Tuple[object, Word]:
    """Feed ``w`` to ``m`` from state ``e0``; returns (final state, output word)."""
    if e0 not in m.states:
        raise MalformedInput(f"{e0!r} is not a state")
    dt, st = m.d.table, m.s.table
    out = []
    e = e0
    for a in _letters(w, m.input):
        out.append(st[e, a])
        e = dt[e, a]
    return e, Word(m.output, out)


def run_moore(m: MooreMachine, e0, w: Iterable) -> Tuple[object, Word]:
    """Returns the final state and the outputs of every visited state, start included."""
    if e0 not in m.states:
        raise MalformedInput(f"{e0!r} is not a state")
    e = e0
    out = [m.s.table[e]]
    for a in _letters(w, m.input):
        e = m.d.table[e, a]
        out.append(m.s.table[e])
    return e, Word(m.output, out)


def compose_diamond(m2: MealyMachine, m1: MealyMachine, name: str = "") -> MealyMachine:
    """Series composite ``m2 <> m1``: m1 reads the input, m2 reads m1's output.

    States are pairs (f, e) with f a state of m2.
    """
    if m1.output != m2.input:
        raise TypeMismatch(
            f"output alphabet {m1.output.elements} of the first machine differs from the input "
            f"alphabet {m2.input.elements} of the second"
        )
    states = product_set(m2.states, m1.states)
    d1, s1, d2, s2 = m1.d.table, m1.s.table, m2.d.table, m2.s.table
    d, s = {}, {}
    for f, e in states:
        for a in m1.input:
            b = s1[e, a]
            d[(f, e), a] = (d2[f, b], d1[e, a])
            s[(f, e), a] = s2[f, b]
    init = None
    if m2._initial is not None or m1._initial is not None:
        init = (m2.initial, m1.initial)
    return MealyMachine(states, m1.input, m2.output, d, s, name=name, initial=init)


def identity_machine(alphabet: FinSet, state="*") -> MealyMachine:
    """One state, copies its input to its output."""
    states = FinSet([state])
    d = {(state, a): state for a in alphabet}
    s = {(state, a): a for a in alphabet}
    return MealyMachine(states, alphabet, alphabet, d, s, name="id")


def check_machine_morphism(f: FinFn, m, m2) -> Verdict:
    """Does ``f: states(m) -> states(m2)`` commute with transitions and outputs?

    Pairs (e, a) are scanned in lexicographic order; the transition equation
    is examined before the output equation at each pair.
    """
    if f.dom != m.states or f.cod != m2.states:
        raise TypeMismatch("map does not go between the two state sets")
    if m.input != m2.input or m.output != m2.output:
        raise TypeMismatch("machines have different input or output alphabets")
    ft = f.table
    moore = isinstance(m, MooreMachine)
    for e in m.states:
        if moore and m2.s.table[ft[e]] != m.s.table[e]:
            return Verdict.failed(e, "s-equation", detail=f"s'(f({e})) != s({e})")
        for a in m.input:
            if m2.d.table[ft[e], a] != ft[m.d.table[e, a]]:
                return Verdict.failed((e, a), "d-equation", detail=f"d'(f({e}),{a}) != f(d({e},{a}))")
            if not moore and m2.s.table[ft[e], a] != m.s.table[e, a]:
                return Verdict.failed((e, a), "s-equation", detail=f"s'(f({e}),{a}) != s({e},{a})")
    return Verdict.passed()


def tensor_morphisms(f2: FinFn, f1: FinFn) -> FinFn:
    """Horizontal composite of 2-cells: ``f2 x f1`` on F x E."""
    return f2.times(f1)


def associator(m3: MealyMachine, m2: MealyMachine, m1: MealyMachine) -> FinFn:
    """((g, f), e) |-> (g, (f, e)) from (m3<>m2)<>m1 to m3<>(m2<>m1)."""
    left = product_set(product_set(m3.states, m2.states), m1.states)
    right = product_set(m3.states, product_set(m2.states, m1.states))
    return FinFn(left, right, {((g, f), e): (g, (f, e)) for (g, f), e in left})


def left_unitor(m: MealyMachine, unit_state="*") -> FinFn:
    """(*, e) |-> e from id <> m to m."""
    dom = product_set(FinSet([unit_state]), m.states)
    return FinFn(dom, m.states, {(u, e): e for u, e in dom})


def right_unitor(m: MealyMachine, unit_state="*") -> FinFn:
    """(e, *) |-> e from m <> id to m."""
    dom = product_set(m.states, FinSet([unit_state]))
    return FinFn(dom, m.states, {(e, u): e for e, u in dom})


def all_maps(dom: FinSet, cod: FinSet):
    """Every function dom -> cod, in lexicographic order of image tuples."""
    from itertools import product

    for images in product(cod.elements, repeat=len(dom)):
        yield FinFn(dom, cod, dict(zip(dom.elements, images)))


def random_mealy(rng, states: FinSet, input: FinSet, output: FinSet, name: str = "") -> MealyMachine:
    d = {(e, a): rng.choice(states.elements) for e in states for a in input}
    s = {(e, a): rng.choice(output.elements) for e in states for a in input}
    return MealyMachine(states, input, output, d, s, name=name)


def xor_machine() -> MealyMachine:
    """States, input and output {0, 1}; d(p, x) = s(p, x) = p xor x."""
    bits = FinSet(["0", "1"])
    table = {(p, x): str(int(p) ^ int(x)) for p in bits for x in bits}
    return MealyMachine(bits, bits, bits, table, dict(table), name="xor")


def not_mapper() -> MealyMachine:
    """A single state negating each bit."""
    bits = FinSet(["0", "1"])
    st = FinSet(["f*"])
    d = {("f*", x): "f*" for x in bits}
    s = {("f*", x): "1" if x == "0" else "0" for x in bits}
    return MealyMachine(st, bits, bits, d, s, name="not")

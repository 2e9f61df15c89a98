"""Nondeterministic machines through the powerset monad.

A powerset machine has subset-valued transition and output.  ``lift_deterministic``
wraps a deterministic machine in singletons; ``expand`` turns a powerset
machine into a deterministic one whose states, inputs and outputs are subsets,
taking unions over S x T.
"""

from typing import Dict, FrozenSet, Iterable, List, Tuple

from .errors import MalformedInput, ResourceLimit, TypeMismatch
from .finset import FinFn, FinSet, Word
from .machines import MealyMachine
from .verdict import Verdict

DEFAULT_POWERSET_BITS = 16


class PowersetMealy:
    def __init__(self, states: FinSet, input: FinSet, output: FinSet, d: Dict, s: Dict, name: str = ""):
        self.states = states
        self.input = input
        self.output = output
        self.name = name
        self.d, self.s = {}, {}
        for e in states:
            for a in input:
                for table, target, dst in ((d, states, self.d), (s, output, self.s)):
                    if (e, a) not in table:
                        raise MalformedInput(f"table undefined on ({e!r}, {a!r})")
                    img = frozenset(table[e, a])
                    if not img <= set(target.elements):
                        raise MalformedInput(f"image of ({e!r}, {a!r}) is not a subset of the declared set")
                    dst[e, a] = img

    def __eq__(self, other):
        if not isinstance(other, PowersetMealy):
            return NotImplemented
        return (self.states == other.states and self.input == other.input and self.output == other.output
                and self.d == other.d and self.s == other.s)

    __hash__ = None

    def __repr__(self):
        return f"PowersetMealy({self.name or '?'}: |E|={len(self.states)})"


def lift_deterministic(m: MealyMachine) -> PowersetMealy:
    d = {k: frozenset([v]) for k, v in m.d.table.items()}
    s = {k: frozenset([v]) for k, v in m.s.table.items()}
    return PowersetMealy(m.states, m.input, m.output, d, s, name=m.name)


def _union(table, S, T):
    out = set()
    for e in S:
        for a in T:
            out |= table[e, a]
    return frozenset(out)


def expanded_transition(n: PowersetMealy, S, T) -> FrozenSet:
    """Union of d(e, a) over e in S and a in T."""
    return _union(n.d, S, T)


def expanded_output(n: PowersetMealy, S, T) -> FrozenSet:
    return _union(n.s, S, T)


def expanded_transition_swapped(n: PowersetMealy, S, T) -> FrozenSet:
    """Same union with the loops nested the other way round (the other strength)."""
    out = set()
    for a in T:
        for e in S:
            out |= n.d[e, a]
    return frozenset(out)


def expand(n: PowersetMealy, max_bits: int = DEFAULT_POWERSET_BITS) -> MealyMachine:
    """Deterministic machine on P(E) with input P(I) and output P(O)."""
    bits = len(n.states) + len(n.input)
    if bits > max_bits or len(n.output) > max_bits:
        raise ResourceLimit(f"powerset tables need 2^{bits} entries, above the limit 2^{max_bits}")
    PE = FinSet(n.states.subsets())
    PI = FinSet(n.input.subsets())
    PO = FinSet(n.output.subsets())
    d, s = {}, {}
    for S in PE:
        for T in PI:
            d[S, T] = _union(n.d, S, T)
            s[S, T] = _union(n.s, S, T)
    return MealyMachine(PE, PI, PO, d, s, name=f"{n.name}_e" if n.name else "")


def run_nondeterministic(n: PowersetMealy, start: Iterable, w) -> List[Tuple[FrozenSet, FrozenSet]]:
    """Trace of (reachable states, possible outputs) after each letter."""
    S = frozenset(start)
    if not S <= set(n.states.elements):
        raise MalformedInput("start set is not a subset of the states")
    letters = w.letters if isinstance(w, Word) else tuple(w)
    trace = []
    for a in letters:
        if a not in n.input:
            raise MalformedInput(f"letter {a!r} is not in the input alphabet")
        T = (a,)
        out = _union(n.s, S, T)
        S = _union(n.d, S, T)
        trace.append((S, out))
    return trace


def check_powerset_morphism(f: FinFn, n: PowersetMealy, n2: PowersetMealy) -> Verdict:
    """A deterministic state map as a morphism of powerset machines: d'(f e, a) = f[d(e, a)], s'(f e, a) = s(e, a)."""
    if f.dom != n.states or f.cod != n2.states:
        raise TypeMismatch("map does not go between the two state sets")
    ft = f.table
    for e in n.states:
        for a in n.input:
            if n2.d[ft[e], a] != frozenset(ft[x] for x in n.d[e, a]):
                return Verdict.failed((e, a), "d-equation")
            if n2.s[ft[e], a] != n.s[e, a]:
                return Verdict.failed((e, a), "s-equation")
    return Verdict.passed()


def singleton_restriction(n: PowersetMealy, max_bits: int = DEFAULT_POWERSET_BITS) -> Verdict:
    """The expansion restricted to singletons reproduces a lifted deterministic machine.

    Compares the expansion on ({e}, {a}) with the original images; ok for any
    powerset machine, and for lifts it means the original tables come back.
    """
    big = expand(n, max_bits)
    for e in n.states:
        for a in n.input:
            S, T = frozenset([e]), frozenset([a])
            if big.d.table[S, T] != n.d[e, a]:
                return Verdict.failed((e, a), "transition on singletons")
            if big.s.table[S, T] != n.s[e, a]:
                return Verdict.failed((e, a), "output on singletons")
    return Verdict.passed()


def unlift(n: PowersetMealy) -> MealyMachine:
    """Inverse of ``lift_deterministic`` on machines with singleton images."""
    d, s = {}, {}
    for k in n.d:
        if len(n.d[k]) != 1 or len(n.s[k]) != 1:
            raise MalformedInput(f"image at {k!r} is not a singleton")
        (d[k],) = n.d[k]
        (s[k],) = n.s[k]
    return MealyMachine(n.states, n.input, n.output, d, s, name=n.name)


def check_union_preservation(n: PowersetMealy) -> Verdict:
    """Exhaustive: the expanded transition and output preserve binary unions in each argument."""
    PE = list(n.states.subsets())
    PI = list(n.input.subsets())
    for fn, label in ((expanded_transition, "transition"), (expanded_output, "output")):
        for S1 in PE:
            for S2 in PE:
                for T in PI:
                    if fn(n, S1 | S2, T) != fn(n, S1, T) | fn(n, S2, T):
                        return Verdict.failed((S1, S2, T), f"{label} union in states")
        for S in PE:
            for T1 in PI:
                for T2 in PI:
                    if fn(n, S, T1 | T2) != fn(n, S, T1) | fn(n, S, T2):
                        return Verdict.failed((S, T1, T2), f"{label} union in inputs")
    return Verdict.passed()

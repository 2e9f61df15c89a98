"""Machines between monoids, fugality, the fugal extension and its right adjoint.

A machine ``E x M -> N x E`` is *fugal* when its output satisfies

    s(e, m * m') == s(e, m) * s(d(e, m), m')

Machines whose input monoid is free are held intensionally: generator tables
for the transition and the output, optionally overridden by evaluators that
act on whole words.  Laws quantified over words are checked up to a length
bound.
"""

from itertools import product
from typing import Callable, Optional, Union

import numpy as np

from . import kernels
from .errors import MalformedInput, PreconditionError, TypeMismatch, UsageError
from .finset import FinMonoid, FinSet, FreeMonoid, Word, product_set, words_up_to
from .machines import MealyMachine, compose_diamond
from .verdict import Verdict

Monoid = Union[FinMonoid, FreeMonoid]


class MonoidMealyMachine:
    """A Mealy machine whose input and output objects are monoids.

    With a finite input monoid ``d`` and ``s`` are full tables over
    ``E x M``.  With a free input monoid they are tables over the generators;
    the transition on a word iterates ``d`` and the output multiplies the
    letter outputs along the run, unless ``d_eval``/``s_eval`` supply the
    word-level maps directly.
    """

    def __init__(self, states: FinSet, in_monoid: Monoid, out_monoid: Monoid, d, s=None, name: str = "",
                 s_eval: Optional[Callable] = None, d_eval: Optional[Callable] = None, check: bool = True,
                 source=None):
        self.states = states
        self.in_monoid = in_monoid
        self.out_monoid = out_monoid
        self.name = name
        self.s_eval = s_eval
        self.d_eval = d_eval
        # ("flat", mealy) or ("fold", mealy, monoid): lets bounded checks use the kernels
        self.source = source
        letters = in_monoid.generators if in_monoid.is_free else in_monoid.carrier
        self.d = dict(d)
        for e in states:
            for a in letters:
                if (e, a) not in self.d:
                    raise MalformedInput(f"transition undefined on ({e!r}, {a!r})")
                if self.d[e, a] not in states:
                    raise MalformedInput(f"transition on ({e!r}, {a!r}) leaves the state set")
        if s is None:
            if s_eval is None:
                raise MalformedInput("output needs a table or an evaluator")
            self.s = None
        else:
            self.s = dict(s)
            for e in states:
                for a in letters:
                    if (e, a) not in self.s:
                        raise MalformedInput(f"output undefined on ({e!r}, {a!r})")
                    if self.s[e, a] not in out_monoid:
                        raise MalformedInput(f"output on ({e!r}, {a!r}) is not in the output monoid")
        if check and not in_monoid.is_free:
            v = check_action(self)
            if not v:
                raise PreconditionError(f"transition is not a monoid action: {v.describe()}")

    def act(self, e, m):
        """The state reached from ``e`` on monoid element ``m``."""
        if not self.in_monoid.is_free:
            return self.d[e, m]
        if self.d_eval is not None:
            return self.d_eval(e, m)
        d = self.d
        for a in m.letters:
            e = d[e, a]
        return e

    def out(self, e, m):
        """The output ``s(e, m)``."""
        if not self.in_monoid.is_free:
            return self.s[e, m]
        if self.s_eval is not None:
            return self.s_eval(e, m)
        acc = self.out_monoid.unit
        mul, d, s = self.out_monoid.mul, self.d, self.s
        for a in m.letters:
            acc = mul(acc, s[e, a])
            e = d[e, a]
        return acc

    def __repr__(self):
        return f"MonoidMealyMachine({self.name or '?'}: |E|={len(self.states)}, {self.in_monoid!r} -> {self.out_monoid!r})"


def check_action(m: MonoidMealyMachine) -> Verdict:
    """Exhaustive unit and composition check of the transition of a finite-input machine."""
    if m.in_monoid.is_free:
        return Verdict.passed(detail="actions of a free monoid are determined by the generators")
    mon, d = m.in_monoid, m.d
    for e in m.states:
        if d[e, mon.unit] != e:
            return Verdict.failed((e,), "action unit", detail=f"d({e}, 1) = {d[e, mon.unit]}")
    for e in m.states:
        for x in mon.carrier:
            ex = d[e, x]
            for y in mon.carrier:
                if d[e, mon.mul(x, y)] != d[ex, y]:
                    return Verdict.failed((e, x, y), "action composition")
    return Verdict.passed()


def _decode_word(alphabet: FinSet, n_letters: int, idx: int, offs) -> Word:
    n = 0
    while offs[n + 1] <= idx:
        n += 1
    r = idx - offs[n]
    letters = []
    for _ in range(n):
        letters.append(alphabet[r % n_letters])
        r //= n_letters
    return Word(alphabet, reversed(letters))


def is_fugal(m: MonoidMealyMachine, bound: Optional[int] = None) -> Verdict:
    """Check ``s(e, m m') = s(e, m) s(d(e, m), m')``.

    Finite input monoid: exhaustive over states and pairs of elements.
    Free input monoid: every state and every pair of words with total length
    at most ``bound``; the witness is (state, prefix word, suffix word).
    """
    if not m.in_monoid.is_free:
        return _fugal_exhaustive(m)
    if bound is None:
        raise UsageError("a word-length bound is required when the input monoid is free")
    fast = _fugal_kernel(m, bound)
    if fast is not None:
        return fast
    return _fugal_bounded(m, bound)


def _fugal_exhaustive(m):
    M, N = m.in_monoid, m.out_monoid
    for e in m.states:
        for x in M.carrier:
            sx, ex = m.out(e, x), m.act(e, x)
            for y in M.carrier:
                lhs = m.out(e, M.mul(x, y))
                rhs = N.mul(sx, m.out(ex, y))
                if lhs != rhs:
                    return Verdict.failed((e, x, y), "fugality", detail=f"s({e},{x}*{y}) = {lhs!r} but {rhs!r}")
    return Verdict.passed()


def _fugal_bounded(m, bound):
    A = m.in_monoid.generators
    N = m.out_monoid
    for e in m.states:
        out, act = {}, {}
        for letters in words_up_to(A, bound):
            w = Word(A, letters)
            out[letters] = m.out(e, w)
            act[letters] = m.act(e, w)
        cache = {e: out}

        def out_at(state, letters):
            table = cache.get(state)
            if table is None:
                table = cache[state] = {}
            if letters not in table:
                table[letters] = m.out(state, Word(A, letters))
            return table[letters]

        for letters in words_up_to(A, bound):
            whole = out[letters]
            for k in range(len(letters) + 1):
                u, v = letters[:k], letters[k:]
                rhs = N.mul(out[u], out_at(act[u], v))
                if whole != rhs:
                    return Verdict.failed((e, Word(A, u), Word(A, v)), "fugality", bound=bound,
                                          detail=f"{whole!r} != {rhs!r}")
    return Verdict.passed(bound=bound)


_RANK_LIMIT = 1 << 62


def _fugal_kernel(m, bound):
    """Kernel path for extensions and K-images of table machines; None if not applicable."""
    if m.source is None:
        return None
    kind, base = m.source[0], m.source[1]
    A = m.in_monoid.generators
    n_e, n_in = len(base.states), len(base.input)
    if n_in == 0:
        return None
    offs = kernels.word_offsets(n_in, bound)
    d, s = base.encoded
    if kind == "flat":
        n_out = max(len(base.output), 1)
        if n_out ** bound >= _RANK_LIMIT:
            return None
        fd, fs = kernels.extend_free(d, s, n_e, n_in, n_out, bound)
        lengths = np.repeat(np.array([n for n in range(bound + 1) for _ in range(offs[n + 1] - offs[n])],
                                     dtype=np.int64)[None, :], n_e, axis=0)
        hit = kernels.split_violation_free(fd, fs, np.ascontiguousarray(lengths), n_e, n_in, n_out, bound)
    elif kind == "fold":
        mon = m.source[2]
        mul = encode_monoid(mon)
        fd, fs = kernels.extend_fold(d, s, mul, mon.carrier.index(mon.unit), n_e, n_in, len(mon.carrier), bound)
        hit = kernels.split_violation_table(fd, fs, mul, n_e, n_in, len(mon.carrier), bound)
    else:
        return None
    if hit is None:
        return Verdict.passed(bound=bound)
    e_i, w_i, k = hit
    w = _decode_word(A, n_in, w_i, offs)
    return Verdict.failed((base.states[e_i], w[:k], w[k:]), "fugality", bound=bound)


def encode_monoid(mon: FinMonoid) -> np.ndarray:
    idx = mon.carrier.index
    n = len(mon.carrier)
    out = np.empty(n * n, dtype=np.int64)
    for (x, y), z in mon.table.items():
        out[idx(x) * n + idx(y)] = idx(z)
    return out


def flat_output(m: MealyMachine, e, letters) -> tuple:
    """s-flat of a Set machine: the output letters along the run from ``e``.

    s(e, []) = [] and s(e, a :: as) = s(e, a) :: s(d(e, a), as).
    """
    out = []
    d, s = m.d.table, m.s.table
    for a in letters:
        out.append(s[e, a])
        e = d[e, a]
    return tuple(out)


def flat_output_recursive(m: MealyMachine, e, letters) -> tuple:
    """Literal recursion on the head of the word; used as an oracle in tests."""
    if not letters:
        return ()
    a = letters[0]
    return (m.s.table[e, a],) + flat_output_recursive(m, m.d.table[e, a], letters[1:])


def transition_star(m: MealyMachine, e, letters):
    d = m.d.table
    for a in letters:
        e = d[e, a]
    return e


def fugal_extension(m: MealyMachine) -> MonoidMealyMachine:
    """The fugal machine ``E x A* -> B* x E`` generated by a Set machine."""
    A, B = FreeMonoid(m.input), FreeMonoid(m.output)

    def s_flat(e, w):
        return Word(m.output, flat_output(m, e, w.letters))

    gen_s = {(e, a): Word(m.output, (m.s.table[e, a],)) for e in m.states for a in m.input}
    return MonoidMealyMachine(m.states, A, B, m.d.table, gen_s, name=f"{m.name}_flat" if m.name else "",
                              s_eval=s_flat, source=("flat", m))


def extension_morphism_check(f, m: MealyMachine, m2: MealyMachine, bound: int) -> Verdict:
    """Is a state map a morphism between the fugal extensions, on all words up to ``bound``?"""
    ft = f.table
    for e in m.states:
        for letters in words_up_to(m.input, bound):
            if transition_star(m2, ft[e], letters) != ft[transition_star(m, e, letters)]:
                return Verdict.failed((e, Word(m.input, letters)), "d*-equation", bound=bound)
            if flat_output(m2, ft[e], letters) != flat_output(m, e, letters):
                return Verdict.failed((e, Word(m.input, letters)), "s-flat-equation", bound=bound)
    return Verdict.passed(bound=bound)


def compose_monoid_machines(m2: MonoidMealyMachine, m1: MonoidMealyMachine, name: str = "") -> MonoidMealyMachine:
    """Diamond composite of machines between monoids, states F x E.

    Over a free input the composite evaluates whole words through the two
    factors (d2 on s1's output, d1 on the input) instead of iterating a
    generator table.
    """
    if m1.out_monoid != m2.in_monoid:
        raise TypeMismatch("output monoid of the first machine differs from the input monoid of the second")
    states = product_set(m2.states, m1.states)
    M = m1.in_monoid
    if M.is_free:
        def d_eval(fe, w):
            f, e = fe
            return (m2.act(f, m1.out(e, w)), m1.act(e, w))

        def s_eval(fe, w):
            f, e = fe
            return m2.out(f, m1.out(e, w))

        d, s = {}, {}
        for f, e in states:
            for a in M.generators:
                w = M.letter(a)
                d[(f, e), a] = d_eval((f, e), w)
        return MonoidMealyMachine(states, M, m2.out_monoid, d, None, name=name, s_eval=s_eval, d_eval=d_eval)
    d, s = {}, {}
    for f, e in states:
        for x in M.carrier:
            y = m1.out(e, x)
            d[(f, e), x] = (m2.act(f, y), m1.act(e, x))
            s[(f, e), x] = m2.out(f, y)
    return MonoidMealyMachine(states, M, m2.out_monoid, d, s, name=name, check=False)


def check_flat_preserves_composition(m1: MealyMachine, m2: MealyMachine, bound: int, method: str = "kernel") -> Verdict:
    """Compare (m2<>m1)-flat with m2-flat <> m1-flat on every state pair and word.

    Both the output (s-flat) and the iterated transition (d*) are compared.
    ``method="eval"`` walks the evaluators instead of the word tables.
    """
    if m1.output != m2.input:
        raise TypeMismatch("machines are not composable")
    if bound < 0:
        raise UsageError("bound must be non-negative")
    comp = compose_diamond(m2, m1)
    if method == "kernel" and len(m1.input) > 0 and len(m2.input) > 0:
        n_e, n_f = len(m1.states), len(m2.states)
        n_in, n_mid, n_out = len(m1.input), len(m1.output), len(m2.output)
        if max(n_mid, n_out) ** bound < _RANK_LIMIT:
            fd1, fs1 = kernels.extend_free(*m1.encoded, n_e, n_in, n_mid, bound)
            fd2, fs2 = kernels.extend_free(*m2.encoded, n_f, n_mid, n_out, bound)
            fdc, fsc = kernels.extend_free(*comp.encoded, n_f * n_e, n_in, n_out, bound)
            hit = kernels.diamond_mismatch(fd1, fs1, fd2, fs2, fdc, fsc, n_e, n_f, n_in, n_mid, bound)
            if hit is None:
                return Verdict.passed(bound=bound)
            c, w_i, which = hit
            w = _decode_word(m1.input, n_in, w_i, kernels.word_offsets(n_in, bound))
            return Verdict.failed((comp.states[c], w), "d*-composition" if which else "s-flat-composition",
                                  bound=bound)
    lhs = fugal_extension(comp)
    rhs = compose_monoid_machines(fugal_extension(m2), fugal_extension(m1))
    A = lhs.in_monoid
    for fe in comp.states:
        for w in A.words(bound):
            if lhs.out(fe, w) != rhs.out(fe, w):
                return Verdict.failed((fe, w), "s-flat-composition", bound=bound)
            if lhs.act(fe, w) != rhs.act(fe, w):
                return Verdict.failed((fe, w), "d*-composition", bound=bound)
    return Verdict.passed(bound=bound)


def h_restrict(m: MonoidMealyMachine, name: str = "") -> MealyMachine:
    """Restrict a machine over a free input monoid to its generators.

    The output set is the carrier of a finite output monoid; for a free output
    monoid it is the set of single-letter outputs, in order of appearance.
    """
    if not m.in_monoid.is_free:
        raise UsageError("restriction to generators needs a free input monoid")
    A = m.in_monoid.generators
    d, s = {}, {}
    for e in m.states:
        for a in A:
            w = Word(A, (a,))
            d[e, a] = m.act(e, w)
            s[e, a] = m.out(e, w)
    if m.out_monoid.is_free:
        seen = []
        for v in s.values():
            if v not in seen:
                seen.append(v)
        output = FinSet(seen)
    else:
        output = m.out_monoid.carrier
    return MealyMachine(m.states, A, output, d, s, name=name)


def k_extend(m0: MealyMachine, target: Monoid, name: str = "") -> MonoidMealyMachine:
    """Fugal machine over A* into ``target``: flatten, then multiply the letters out.

    The product of the output letters is taken left to right, with the empty
    word sent to the unit.  For a free ``target`` the outputs of ``m0`` must
    be words over its generators and the product is concatenation.
    """
    if target.is_free:
        for o in m0.output:
            if o not in target:
                raise TypeMismatch(f"output {o!r} is not a word over the target generators")
    elif m0.output != target.carrier:
        raise TypeMismatch("output alphabet differs from the carrier of the target monoid")
    A = FreeMonoid(m0.input)

    def s_eval(e, w):
        return target.fold(flat_output(m0, e, w.letters))

    source = None if target.is_free else ("fold", m0, target)
    return MonoidMealyMachine(m0.states, A, target, m0.d.table, dict(m0.s.table), name=name, s_eval=s_eval,
                              source=source)


def verify_hk(m0: MealyMachine, target: Monoid) -> Verdict:
    """H(K(m0)) equals m0 table for table."""
    back = h_restrict(k_extend(m0, target))
    for e in m0.states:
        for a in m0.input:
            if back.d.table[e, a] != m0.d.table[e, a]:
                return Verdict.failed((e, a), "HK transition")
            if back.s.table[e, a] != m0.s.table[e, a]:
                return Verdict.failed((e, a), "HK output")
    return Verdict.passed()


def verify_kh(m: MonoidMealyMachine, bound: int) -> Verdict:
    """K(H(m)) agrees with ``m`` on every state and word up to ``bound``."""
    if not m.in_monoid.is_free:
        raise UsageError("KH round trip needs a free input monoid")
    back = k_extend(h_restrict(m), m.out_monoid)
    A = m.in_monoid
    for e in m.states:
        for w in A.words(bound):
            if back.out(e, w) != m.out(e, w):
                return Verdict.failed((e, w), "KH output", bound=bound)
            if back.act(e, w) != m.act(e, w):
                return Verdict.failed((e, w), "KH transition", bound=bound)
    return Verdict.passed(bound=bound)


def verify_roundtrips(machine, target: Optional[Monoid] = None, bound: int = 5) -> Verdict:
    """HK check for a Set machine with a target monoid, KH check for a machine over a free monoid.

    For a Set machine both directions are run: HK exactly, then KH on its
    K-image up to ``bound``.
    """
    if isinstance(machine, MealyMachine):
        if target is None:
            raise UsageError("a target monoid is needed for the HK round trip")
        v = verify_hk(machine, target)
        if not v:
            return v
        return verify_kh(k_extend(machine, target), bound)
    return verify_kh(machine, bound)


def unit_output_idempotent(m: MonoidMealyMachine) -> Verdict:
    """s(e, 1) * s(e, 1) == s(e, 1) for every state (a consequence of fugality)."""
    N = m.out_monoid
    unit = m.in_monoid.unit
    for e in m.states:
        x = m.out(e, unit)
        if N.mul(x, x) != x:
            return Verdict.failed((e,), "idempotent unit output")
    return Verdict.passed()


def enumerate_monoid_machines(states: FinSet, M: FinMonoid, N: FinMonoid):
    """Every machine E x M -> N x E whose transition is an action, in table order."""
    keys = list(product(states.elements, M.carrier.elements))
    for d_images in product(states.elements, repeat=len(keys)):
        d = dict(zip(keys, d_images))
        probe = MonoidMealyMachine(states, M, N, d, {k: N.unit for k in keys}, check=False)
        if not check_action(probe):
            continue
        for s_images in product(N.carrier.elements, repeat=len(keys)):
            yield MonoidMealyMachine(states, M, N, d, dict(zip(keys, s_images)), check=False)


def identity_monoid_machine(M: Monoid, state="*") -> MonoidMealyMachine:
    """One state, output equal to input."""
    states = FinSet([state])
    if M.is_free:
        d = {(state, a): state for a in M.generators}
        return MonoidMealyMachine(states, M, M, d, None, s_eval=lambda e, w: w, name="id")
    d = {(state, x): state for x in M.carrier}
    s = {(state, x): x for x in M.carrier}
    return MonoidMealyMachine(states, M, M, d, s, name="id")

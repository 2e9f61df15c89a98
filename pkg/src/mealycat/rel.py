"""Machines in the bicategory of relations.

A relation ``Rel(A, B, pairs)`` is a subset of A x B.  Composition is written
``rel_compose(snd, fst)`` and applies ``fst`` first:

    (snd o fst)(a, c)  iff  there is b with fst(a, b) and snd(b, c)

so ``E o I`` relates a to b when some I-successor of a is E-related to b.

With an input endorelation I on A and an output relation O from A to B:

* a Moore machine is E with E o I <= E and E <= O;
* a Mealy machine is E with E o I <= E and E o I <= O.

The terminal Moore machine is R(a, b) iff every a' reaching a along I (zero
or more steps) has O(a', b).  The Mealy version uses paths of one or more
steps.
"""

from typing import Iterable, List, Optional

import numpy as np

from . import kernels
from .errors import MalformedInput, ResourceLimit, TypeMismatch, UsageError
from .finset import FinSet
from .verdict import Verdict

DEFAULT_ENUMERATION_BITS = 14
MODES = ("moore", "mealy")


class Rel:
    def __init__(self, src: FinSet, dst: FinSet, pairs: Iterable = (), name: str = ""):
        self.src = src
        self.dst = dst
        self.name = name
        ps = frozenset(tuple(p) for p in pairs)
        for a, b in ps:
            if a not in src or b not in dst:
                raise MalformedInput(f"pair ({a!r}, {b!r}) is outside the declared carriers")
        self.pairs = ps

    @classmethod
    def identity(cls, A: FinSet) -> "Rel":
        return cls(A, A, [(a, a) for a in A])

    @classmethod
    def full(cls, A: FinSet, B: FinSet) -> "Rel":
        return cls(A, B, [(a, b) for a in A for b in B])

    @classmethod
    def from_mask(cls, A: FinSet, B: FinSet, mask: int) -> "Rel":
        nb = len(B)
        return cls(A, B, [(A[k // nb], B[k % nb]) for k in range(len(A) * nb) if mask >> k & 1])

    def mask(self) -> int:
        nb = len(self.dst)
        out = 0
        for a, b in self.pairs:
            out |= 1 << (self.src.index(a) * nb + self.dst.index(b))
        return out

    def rows(self) -> List[int]:
        """Row ``a`` as a bitmask over ``dst``."""
        out = [0] * len(self.src)
        for a, b in self.pairs:
            out[self.src.index(a)] |= 1 << self.dst.index(b)
        return out

    def sorted_pairs(self):
        si, di = self.src.index, self.dst.index
        return sorted(self.pairs, key=lambda p: (si(p[0]), di(p[1])))

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __le__(self, other: "Rel"):
        return self.pairs <= other.pairs

    def __or__(self, other: "Rel") -> "Rel":
        return Rel(self.src, self.dst, self.pairs | other.pairs)

    def __and__(self, other: "Rel") -> "Rel":
        return Rel(self.src, self.dst, self.pairs & other.pairs)

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, Rel):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.pairs == other.pairs

    def __hash__(self):
        return hash((self.src, self.dst, self.pairs))

    def __repr__(self):
        return f"Rel({self.sorted_pairs()!r})"


def rel_compose(snd: Rel, fst: Rel) -> Rel:
    """``snd o fst``: relate a to c through some b with fst(a, b) and snd(b, c)."""
    if fst.dst != snd.src:
        raise TypeMismatch("middle carriers of the composite differ")
    after = {}
    for b, c in snd.pairs:
        after.setdefault(b, []).append(c)
    return Rel(fst.src, snd.dst, [(a, c) for a, b in fst.pairs for c in after.get(b, ())])


def _check_endo(I: Rel):
    if I.src != I.dst:
        raise TypeMismatch("closure needs an endorelation")


def trans_closure(I: Rel) -> Rel:
    """Least transitive relation containing I (paths of length at least one)."""
    _check_endo(I)
    R = I
    while True:
        nxt = R | rel_compose(I, R)
        if nxt == R:
            return R
        R = nxt


def refl_trans_closure(I: Rel) -> Rel:
    _check_endo(I)
    return trans_closure(I) | Rel.identity(I.src)


def _check_carriers(I: Rel, O: Rel):
    _check_endo(I)
    if O.src != I.src:
        raise TypeMismatch("output relation must start at the carrier of the input relation")


def _mode(mode: str) -> bool:
    if mode not in MODES:
        raise UsageError(f"mode must be one of {MODES}, got {mode!r}")
    return mode == "mealy"


def ran_reachability(I: Rel, O: Rel, mode: str = "moore") -> Rel:
    """Largest machine: R(a, b) iff O(a', b) for every a' reaching a through I."""
    _check_carriers(I, O)
    closure = trans_closure(I) if _mode(mode) else refl_trans_closure(I)
    preds = {a: [] for a in I.src}
    for a2, a in closure.pairs:
        preds[a].append(a2)
    return Rel(I.src, O.dst, [(a, b) for a in I.src for b in O.dst if all((a2, b) in O.pairs for a2 in preds[a])])


def is_machine(E: Rel, I: Rel, O: Rel, mode: str = "moore") -> Verdict:
    mealy = _mode(mode)
    EI = rel_compose(E, I)
    extra = EI.pairs - E.pairs
    if extra:
        return Verdict.failed(min(extra, key=repr), "closure under the input (E o I <= E)")
    bound_by = EI if mealy else E
    extra = bound_by.pairs - O.pairs
    if extra:
        law = "E o I <= O" if mealy else "E <= O"
        return Verdict.failed(min(extra, key=repr), law)
    return Verdict.passed()


def greatest_fixpoint(I: Rel, O: Rel, mode: str = "moore") -> Rel:
    """Iterate the one-step predecessor condition down to stability.

    Moore starts at O and keeps (a, b) while every I-predecessor a' has
    (a', b) in the current set.  Mealy starts at the full relation and also
    requires (a', b) in O.
    """
    _check_carriers(I, O)
    mealy = _mode(mode)
    preds = {a: [] for a in I.src}
    for a2, a in I.pairs:
        preds[a].append(a2)
    E = Rel.full(I.src, O.dst) if mealy else O
    while True:
        keep = E.pairs & O.pairs if mealy else E.pairs
        nxt = Rel(E.src, E.dst, [(a, b) for a, b in E.pairs if all((a2, b) in keep for a2 in preds[a])])
        if nxt == E:
            return E
        E = nxt


def _size_check(I: Rel, O: Rel, limit_bits: int):
    bits = len(I.src) * len(O.dst)
    if bits > limit_bits:
        raise ResourceLimit(f"enumerating 2^{bits} relations exceeds the limit 2^{limit_bits}")


def enumerate_machines(I: Rel, O: Rel, mode: str = "moore", r: Optional[Rel] = None,
                       limit_bits: int = DEFAULT_ENUMERATION_BITS):
    """Scan every E <= A x B; returns (count, union of machines, first machine not inside r)."""
    _check_carriers(I, O)
    mealy = _mode(mode)
    _size_check(I, O, limit_bits)
    A, B = I.src, O.dst
    i_rows = [0] * len(A)
    for a, a2 in I.pairs:
        i_rows[A.index(a)] |= 1 << A.index(a2)
    r_mask = r.mask() if r is not None else (1 << (len(A) * len(B))) - 1
    count, union, bad = kernels.rel_enumerate(np.asarray(i_rows, dtype=np.int64), O.mask(), len(A), len(B),
                                              mealy, r_mask)
    return count, Rel.from_mask(A, B, union), (Rel.from_mask(A, B, bad) if bad >= 0 else None)


def count_machines(I: Rel, O: Rel, mode: str = "moore", limit_bits: int = DEFAULT_ENUMERATION_BITS) -> int:
    return enumerate_machines(I, O, mode, limit_bits=limit_bits)[0]


def verify_terminal(R: Rel, I: Rel, O: Rel, mode: str = "moore", method: str = "both",
                    limit_bits: int = DEFAULT_ENUMERATION_BITS) -> Verdict:
    """Is R a machine containing every machine?

    ``method`` is "enumeration" (scan all subsets of A x B), "fixpoint"
    (compare with the greatest fixpoint) or "both".
    """
    if method not in ("enumeration", "fixpoint", "both"):
        raise UsageError(f"unknown method {method!r}")
    _check_carriers(I, O)
    if R.src != O.src or R.dst != O.dst:
        raise TypeMismatch("candidate has different carriers from the output relation")
    v = is_machine(R, I, O, mode)
    if not v:
        return Verdict.failed(v.witness, "candidate is not a machine: " + v.law)
    if method in ("enumeration", "both"):
        _, _, bad = enumerate_machines(I, O, mode, R, limit_bits)
        if bad is not None:
            return Verdict.failed(bad.sorted_pairs(), "machine not contained in the candidate")
    if method in ("fixpoint", "both"):
        gfp = greatest_fixpoint(I, O, mode)
        if gfp != R:
            missing = sorted(gfp.pairs - R.pairs, key=repr)
            return Verdict.failed(missing, "greatest fixpoint differs from the candidate")
    return Verdict.passed()


def all_relations(A: FinSet, B: FinSet):
    for mask in range(1 << (len(A) * len(B))):
        yield Rel.from_mask(A, B, mask)

"""Finite categories, spans with a discrete-opfibration leg, and the span presentation of fugal machines.

A monoid is viewed as a one-object category whose composite ``g o f`` is the
product ``f * g`` (first f, then g); with this reading the projection of a
translation category, (e, m) |-> m, is a functor.
"""

from typing import Dict, Hashable, Optional, Tuple

from .errors import MalformedInput, PreconditionError, TypeMismatch
from .finset import FinMonoid, FinSet
from .fugal import MonoidMealyMachine, check_action, compose_monoid_machines, is_fugal
from .verdict import Verdict


class FinCat:
    """A finite category given by explicit tables.

    ``comp[g, f]`` is ``g o f`` and is required exactly on pairs with
    ``tgt(f) == src(g)``.
    """

    def __init__(self, objects: FinSet, morphisms: FinSet, src: Dict, tgt: Dict, ident: Dict, comp: Dict,
                 name: str = ""):
        for f in morphisms:
            if src.get(f) not in objects or tgt.get(f) not in objects:
                raise MalformedInput(f"morphism {f!r} lacks a source or target object")
        for x in objects:
            if ident.get(x) not in morphisms:
                raise MalformedInput(f"object {x!r} lacks an identity")
        self.objects = objects
        self.morphisms = morphisms
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.ident = dict(ident)
        self.name = name
        self._out = {x: [] for x in objects}
        self._hom = {}
        for f in morphisms:
            self._out[self.src[f]].append(f)
            self._hom.setdefault((self.src[f], self.tgt[f]), []).append(f)
        self.comp = dict(comp)
        for f in morphisms:
            for g in self._out[self.tgt[f]]:
                h = self.comp.get((g, f))
                if h is None or h not in morphisms:
                    raise MalformedInput(f"composite of {g!r} after {f!r} is missing")

    def outgoing(self, x):
        return self._out[x]

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def composable_pairs(self):
        """(f, g) with g after f, ordered by f then g."""
        for f in self.morphisms:
            for g in self._out[self.tgt[f]]:
                yield f, g

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return (self.objects == other.objects and self.morphisms == other.morphisms and self.src == other.src
                and self.tgt == other.tgt and self.ident == other.ident and self.comp == other.comp)

    __hash__ = None

    def __repr__(self):
        return f"FinCat({self.name or '?'}: {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def check_category_laws(C: FinCat) -> Verdict:
    for x in C.objects:
        i = C.ident[x]
        if C.src[i] != x or C.tgt[i] != x:
            return Verdict.failed((x,), "identity typing")
    for f, g in C.composable_pairs():
        h = C.comp[g, f]
        if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            return Verdict.failed((f, g), "composite typing")
    for f in C.morphisms:
        if C.comp[f, C.ident[C.src[f]]] != f or C.comp[C.ident[C.tgt[f]], f] != f:
            return Verdict.failed((f,), "unit law")
    for f, g in C.composable_pairs():
        gf = C.comp[g, f]
        for h in C.outgoing(C.tgt[g]):
            if C.comp[h, gf] != C.comp[C.comp[h, g], f]:
                return Verdict.failed((f, g, h), "associativity")
    return Verdict.passed()


def monoid_category(M: FinMonoid, obj: Hashable = "*") -> FinCat:
    objects = FinSet([obj])
    mors = M.carrier
    src = {m: obj for m in mors}
    comp = {(g, f): M.mul(f, g) for f in mors for g in mors}
    return FinCat(objects, mors, src, dict(src), {obj: M.unit}, comp, name=M.name)


def discrete_category(objects: FinSet) -> FinCat:
    mors = FinSet([("id", x) for x in objects])
    src = {("id", x): x for x in objects}
    return FinCat(objects, mors, src, dict(src), {x: ("id", x) for x in objects},
                  {(("id", x), ("id", x)): ("id", x) for x in objects})


class CatFunctor:
    def __init__(self, dom: FinCat, cod: FinCat, on_obj: Dict, on_mor: Dict, name: str = ""):
        for x in dom.objects:
            if on_obj.get(x) not in cod.objects:
                raise MalformedInput(f"functor undefined or out of range on object {x!r}")
        for f in dom.morphisms:
            if on_mor.get(f) not in cod.morphisms:
                raise MalformedInput(f"functor undefined or out of range on morphism {f!r}")
        self.dom = dom
        self.cod = cod
        self.on_obj = dict(on_obj)
        self.on_mor = dict(on_mor)
        self.name = name

    def obj(self, x):
        return self.on_obj[x]

    def mor(self, f):
        return self.on_mor[f]

    def then(self, other: "CatFunctor") -> "CatFunctor":
        if self.cod != other.dom:
            raise TypeMismatch("functors are not composable")
        return CatFunctor(self.dom, other.cod, {x: other.on_obj[y] for x, y in self.on_obj.items()},
                          {f: other.on_mor[g] for f, g in self.on_mor.items()})

    @classmethod
    def identity(cls, C: FinCat) -> "CatFunctor":
        return cls(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})

    def __repr__(self):
        return f"CatFunctor({self.name or '?'}: {self.dom!r} -> {self.cod!r})"


def check_functor_laws(F: CatFunctor) -> Verdict:
    D, C = F.dom, F.cod
    for f in D.morphisms:
        if C.src[F.on_mor[f]] != F.on_obj[D.src[f]] or C.tgt[F.on_mor[f]] != F.on_obj[D.tgt[f]]:
            return Verdict.failed((f,), "source/target preservation")
    for f, g in D.composable_pairs():
        if F.on_mor[D.comp[g, f]] != C.comp[F.on_mor[g], F.on_mor[f]]:
            return Verdict.failed((f, g), "composition preservation")
    for x in D.objects:
        if F.on_mor[D.ident[x]] != C.ident[F.on_obj[x]]:
            return Verdict.failed((x,), "identity preservation")
    return Verdict.passed()


def is_discrete_opfibration(p: CatFunctor) -> Verdict:
    """Every base morphism out of p(e) lifts to exactly one morphism out of e."""
    E, A = p.dom, p.cod
    for e in E.objects:
        counts = {}
        for g in E.outgoing(e):
            m = p.on_mor[g]
            counts[m] = counts.get(m, 0) + 1
        for m in A.outgoing(p.on_obj[e]):
            n = counts.get(m, 0)
            if n != 1:
                return Verdict.failed((e, m), "unique lifting", detail=f"{n} lifts")
    return Verdict.passed()


def unique_lift(p: CatFunctor, e, m):
    for g in p.dom.outgoing(e):
        if p.on_mor[g] == m:
            return g
    return None


class GuitartSpan:
    """A span ``base <-p- apex -S-> target`` whose left leg is a discrete opfibration."""

    def __init__(self, p: CatFunctor, S: CatFunctor, check: bool = True, name: str = ""):
        if p.dom is not S.dom and p.dom != S.dom:
            raise TypeMismatch("span legs have different apexes")
        if check:
            v = is_discrete_opfibration(p)
            if not v:
                raise PreconditionError(f"left leg is not a discrete opfibration: {v.describe()}")
        self.p = p
        self.S = S
        self.name = name

    @property
    def apex(self):
        return self.p.dom

    @property
    def base(self):
        return self.p.cod

    @property
    def target(self):
        return self.S.cod

    def __repr__(self):
        return f"GuitartSpan({self.base.name or '?'} <- {len(self.apex.objects)} objects -> {self.target.name or '?'})"


def translation_category(states: FinSet, M: FinMonoid, action: Dict) -> Tuple[FinCat, CatFunctor]:
    """Category of elements of an M-set, with its projection to M.

    Morphisms are pairs (e, m): e -> action(e, m); (e, m) then (e.m, m') is
    (e, m * m').
    """
    probe = MonoidMealyMachine(states, M, M, action, {(e, m): M.unit for e in states for m in M.carrier},
                               check=False)
    v = check_action(probe)
    if not v:
        raise PreconditionError(f"not a monoid action: {v.describe()}")
    mors = FinSet([(e, m) for e in states for m in M.carrier])
    src = {(e, m): e for e, m in mors}
    tgt = {(e, m): action[e, m] for e, m in mors}
    ident = {e: (e, M.unit) for e in states}
    comp = {}
    for e, m in mors:
        e2 = action[e, m]
        for m2 in M.carrier:
            comp[(e2, m2), (e, m)] = (e, M.mul(m, m2))
    E = FinCat(states, mors, src, tgt, ident, comp)
    base = monoid_category(M)
    proj = CatFunctor(E, base, {e: "*" for e in states}, {(e, m): m for e, m in mors}, name="proj")
    return E, proj


def translation_of(m: MonoidMealyMachine) -> Tuple[FinCat, CatFunctor]:
    if m.in_monoid.is_free:
        raise PreconditionError("translation categories are built for finite input monoids only")
    return translation_category(m.states, m.in_monoid, m.d)


def sigma_functor(m: MonoidMealyMachine) -> Tuple[Optional[CatFunctor], Verdict]:
    """The output functor of a machine between finite monoids, or the reason it is not one.

    Composition is examined before identities, pairs (f, g) with g after f in
    the order of ``composable_pairs``.
    """
    if m.out_monoid.is_free:
        raise PreconditionError("the output monoid must be finite")
    E, _ = translation_of(m)
    N = monoid_category(m.out_monoid)
    on_mor = {(e, x): m.out(e, x) for e, x in E.morphisms}
    F = CatFunctor(E, N, {e: "*" for e in E.objects}, on_mor, name="Sigma")
    for f, g in E.composable_pairs():
        if on_mor[E.comp[g, f]] != N.comp[on_mor[g], on_mor[f]]:
            return None, Verdict.failed((f, g), "functoriality (composition)")
    for e in E.objects:
        if on_mor[E.ident[e]] != m.out_monoid.unit:
            return None, Verdict.failed((E.ident[e],), "functoriality (identity)",
                                        detail=f"s({e}, 1) = {on_mor[E.ident[e]]} is not the unit")
    return F, Verdict.passed()


def pi_span(m: MonoidMealyMachine) -> GuitartSpan:
    """The span  M <- E[d] -> N  of a machine whose output is a functor."""
    E, proj = translation_of(m)
    sigma, v = sigma_functor(m)
    if sigma is None:
        raise PreconditionError(f"output is not a functor: {v.describe()}")
    return GuitartSpan(proj, sigma, name=m.name)


def compose_spans(sp1: GuitartSpan, sp2: GuitartSpan) -> GuitartSpan:
    """Strict pullback composite of ``A <- E -> B`` and ``B <- F -> C``."""
    if sp1.target != sp2.base:
        raise TypeMismatch("middle categories differ")
    E, F = sp1.apex, sp2.apex
    S1, q = sp1.S, sp2.p
    objects = FinSet([(e, f) for e in E.objects for f in F.objects if S1.on_obj[e] == q.on_obj[f]])
    mors = FinSet([(g1, g2) for g1 in E.morphisms for g2 in F.morphisms if S1.on_mor[g1] == q.on_mor[g2]])
    src = {(g1, g2): (E.src[g1], F.src[g2]) for g1, g2 in mors}
    tgt = {(g1, g2): (E.tgt[g1], F.tgt[g2]) for g1, g2 in mors}
    ident = {(e, f): (E.ident[e], F.ident[f]) for e, f in objects}
    comp = {}
    by_src = {}
    for g in mors:
        by_src.setdefault(src[g], []).append(g)
    for f1 in mors:
        for g1 in by_src.get(tgt[f1], ()):
            comp[g1, f1] = (E.comp[g1[0], f1[0]], F.comp[g1[1], f1[1]])
    Z = FinCat(objects, mors, src, tgt, ident, comp)
    left = CatFunctor(Z, sp1.base, {x: sp1.p.on_obj[x[0]] for x in objects},
                      {g: sp1.p.on_mor[g[0]] for g in mors})
    right = CatFunctor(Z, sp2.target, {x: sp2.S.on_obj[x[1]] for x in objects},
                       {g: sp2.S.on_mor[g[1]] for g in mors})
    return GuitartSpan(left, right, check=True)


def identity_span(B: FinCat) -> GuitartSpan:
    I = CatFunctor.identity(B)
    return GuitartSpan(I, I)


def check_span_iso(K: CatFunctor, sp1: GuitartSpan, sp2: GuitartSpan) -> Verdict:
    """Is K: apex(sp1) -> apex(sp2) an isomorphism of categories commuting with both legs?"""
    if len(set(K.on_obj.values())) != len(sp2.apex.objects) or len(K.on_obj) != len(sp2.apex.objects):
        return Verdict.failed(None, "bijective on objects")
    if len(set(K.on_mor.values())) != len(sp2.apex.morphisms) or len(K.on_mor) != len(sp2.apex.morphisms):
        return Verdict.failed(None, "bijective on morphisms")
    v = check_functor_laws(K)
    if not v:
        return v
    for x in sp1.apex.objects:
        y = K.on_obj[x]
        if sp2.p.on_obj[y] != sp1.p.on_obj[x]:
            return Verdict.failed((x,), "left leg on objects")
        if sp2.S.on_obj[y] != sp1.S.on_obj[x]:
            return Verdict.failed((x,), "right leg on objects")
    for g in sp1.apex.morphisms:
        h = K.on_mor[g]
        if sp2.p.on_mor[h] != sp1.p.on_mor[g]:
            return Verdict.failed((g,), "left leg on morphisms")
        if sp2.S.on_mor[h] != sp1.S.on_mor[g]:
            return Verdict.failed((g,), "right leg on morphisms")
    return Verdict.passed()


def canonical_comparison(Z: FinCat, target: FinCat) -> CatFunctor:
    """(e, f) |-> (f, e) and ((e, m), (f, n)) |-> ((f, e), m)."""
    on_obj = {(e, f): (f, e) for e, f in Z.objects}
    on_mor = {(g1, g2): ((g2[0], g1[0]), g1[1]) for g1, g2 in Z.morphisms}
    return CatFunctor(Z, target, on_obj, on_mor, name="comparison")


def mac_admissible(m: MonoidMealyMachine) -> Verdict:
    """Fugal, with an action for transition and a functor for output."""
    v = check_action(m)
    if not v:
        return v
    v = is_fugal(m)
    if not v:
        return v
    _, v = sigma_functor(m)
    return v


def verify_pi_functoriality(m1: MonoidMealyMachine, m2: MonoidMealyMachine) -> Verdict:
    """The pullback of the two spans is the span of the diamond composite, via the canonical comparison."""
    for label, m in (("first", m1), ("second", m2)):
        v = mac_admissible(m)
        if not v:
            return Verdict.failed(v.witness, f"{label} machine: {v.law}", detail=v.detail)
    if m1.out_monoid != m2.in_monoid:
        raise TypeMismatch("machines are not composable")
    composed = compose_spans(pi_span(m1), pi_span(m2))
    direct = pi_span(compose_monoid_machines(m2, m1))
    try:
        K = canonical_comparison(composed.apex, direct.apex)
    except MalformedInput as exc:
        return Verdict.failed(None, "canonical comparison defined", detail=str(exc))
    return check_span_iso(K, composed, direct)


def check_mac_2cell(H: CatFunctor, sp1: GuitartSpan, sp2: GuitartSpan) -> Verdict:
    """Both triangles commute and H carries unique lifts to unique lifts."""
    if H.dom != sp1.apex or H.cod != sp2.apex:
        raise TypeMismatch("H does not go between the two apexes")
    v = check_functor_laws(H)
    if not v:
        return v
    E = sp1.apex
    for x in E.objects:
        if sp2.p.on_obj[H.on_obj[x]] != sp1.p.on_obj[x]:
            return Verdict.failed((x,), "left triangle")
        if sp2.S.on_obj[H.on_obj[x]] != sp1.S.on_obj[x]:
            return Verdict.failed((x,), "right triangle")
    for g in E.morphisms:
        if sp2.p.on_mor[H.on_mor[g]] != sp1.p.on_mor[g]:
            return Verdict.failed((g,), "left triangle")
        if sp2.S.on_mor[H.on_mor[g]] != sp1.S.on_mor[g]:
            return Verdict.failed((g,), "right triangle")
    for x in E.objects:
        for m in sp1.base.outgoing(sp1.p.on_obj[x]):
            g = unique_lift(sp1.p, x, m)
            if unique_lift(sp2.p, H.on_obj[x], m) != H.on_mor[g]:
                return Verdict.failed((x, m), "opcartesian preservation")
    return Verdict.passed()


def induced_2cell(f: Dict, sp1: GuitartSpan, sp2: GuitartSpan) -> CatFunctor:
    """State map f lifted to translation categories: e |-> f(e), (e, m) |-> (f(e), m)."""
    return CatFunctor(sp1.apex, sp2.apex, {e: f[e] for e in sp1.apex.objects},
                      {(e, m): (f[e], m) for e, m in sp1.apex.morphisms})

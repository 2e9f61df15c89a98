"""The property suite run by ``mealycat laws``.

Each law returns a Verdict.  Random instances come from a single
``random.Random(seed)`` consumed in a fixed order, so a given seed always
produces the same report.
"""

import os
import random
from typing import Callable, List, Optional, Tuple

from . import catmachines as cm
from . import fugal, guitart, intertwiner, kleisli, rel
from .finset import (FinFn, FinSet, check_monoid_laws, cyclic_monoid, idempotent_monoid,
                     words_up_to, z2_multiplicative)
from .machines import (MealyMachine, all_maps, associator, check_machine_morphism, compose_diamond, identity_machine,
                       left_unitor, random_mealy, right_unitor, run_mealy, tensor_morphisms)
from .verdict import Verdict

CORPUS_DIR = os.path.join(os.path.dirname(__file__), "corpus")
TRIALS = 25


def corpus_files() -> List[str]:
    return sorted(f for f in os.listdir(CORPUS_DIR) if f.endswith(".doc"))


def _alphabet(n, prefix=""):
    return FinSet([f"{prefix}{k}" for k in range(n)])


def _rand_machine(rng, max_states=3, max_in=3, max_out=3, out=None, inp=None) -> MealyMachine:
    E = _alphabet(rng.randint(1, max_states), "e")
    I = inp if inp is not None else _alphabet(rng.randint(1, max_in), "a")
    O = out if out is not None else _alphabet(rng.randint(1, max_out), "b")
    return random_mealy(rng, E, I, O)


# -- individual laws ---------------------------------------------------------

def law_corpus(rng, length, limit):
    from .document import load_document, parse_document, serialize

    for name in corpus_files():
        doc = load_document(os.path.join(CORPUS_DIR, name))
        again = parse_document(serialize(doc), CORPUS_DIR)
        if again != doc:
            return Verdict.failed(name, "serialize/parse round trip")
        if doc.kind == "monoid" and not doc.value.is_free:
            v = check_monoid_laws(doc.value)
            if not v:
                return Verdict.failed((name, v.witness), v.law)
    return Verdict.passed(detail=f"{len(corpus_files())} documents")


def law_pipeline(rng, length, limit):
    """Running a composite is feeding one machine's output to the other."""
    for _ in range(TRIALS):
        m1 = _rand_machine(rng)
        m2 = _rand_machine(rng, inp=m1.output)
        comp = compose_diamond(m2, m1)
        for f, e in comp.states:
            for letters in words_up_to(m1.input, min(length, 4)):
                _, mid = run_mealy(m1, e, letters)
                _, expect = run_mealy(m2, f, mid)
                _, got = run_mealy(comp, (f, e), letters)
                if got.letters != expect.letters:
                    return Verdict.failed(((f, e), letters), "run of composite is the pipeline", bound=length)
    return Verdict.passed(bound=min(length, 4))


def law_associativity(rng, length, limit):
    for _ in range(TRIALS):
        m1 = _rand_machine(rng, 2)
        m2 = _rand_machine(rng, 2, inp=m1.output)
        m3 = _rand_machine(rng, 2, inp=m2.output)
        a = associator(m3, m2, m1)
        v = check_machine_morphism(a, compose_diamond(compose_diamond(m3, m2), m1),
                                   compose_diamond(m3, compose_diamond(m2, m1)))
        if not v or not a.is_bijection():
            return Verdict.failed(v.witness, "associator is an isomorphism of machines")
    return Verdict.passed()


def law_unitors(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng)
        left = compose_diamond(identity_machine(m.output), m)
        right = compose_diamond(m, identity_machine(m.input))
        v = check_machine_morphism(left_unitor(m), left, m)
        if not v:
            return Verdict.failed(v.witness, "left unitor")
        v = check_machine_morphism(right_unitor(m), right, m)
        if not v:
            return Verdict.failed(v.witness, "right unitor")
    return Verdict.passed()


def _relabel_pair(rng, m: MealyMachine):
    """A machine isomorphic to m and the bijection onto it."""
    new = [f"r{e}" for e in m.states]
    rng.shuffle(new)
    f = FinFn(m.states, FinSet(new), dict(zip(m.states.elements, new)))
    return m.relabel(f), f


def law_tensor(rng, length, limit):
    for _ in range(TRIALS):
        m1 = _rand_machine(rng, 2)
        m2 = _rand_machine(rng, 2, inp=m1.output)
        n1, f1 = _relabel_pair(rng, m1)
        n2, f2 = _relabel_pair(rng, m2)
        v = check_machine_morphism(tensor_morphisms(f2, f1), compose_diamond(m2, m1), compose_diamond(n2, n1))
        if not v:
            return Verdict.failed(v.witness, "tensor of morphisms is a morphism")
    return Verdict.passed()


def law_fugal_extension(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng, 4, 4, 4)
        v = fugal.is_fugal(fugal.fugal_extension(m), length)
        if not v:
            return v
    return Verdict.passed(bound=length)


def law_flat_composition(rng, length, limit):
    for _ in range(TRIALS):
        m1 = _rand_machine(rng)
        m2 = _rand_machine(rng, inp=m1.output)
        v = fugal.check_flat_preserves_composition(m1, m2, length)
        if not v:
            return v
    return Verdict.passed(bound=length)


def law_flat_two_cells(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng)
        n, f = _relabel_pair(rng, m)
        v = fugal.extension_morphism_check(f, m, n, length)
        if not v:
            return v
    return Verdict.passed(bound=length)


def law_roundtrips(rng, length, limit):
    targets = [cyclic_monoid(2), cyclic_monoid(3)]
    for k in range(TRIALS):
        N = targets[k % 2]
        m = _rand_machine(rng, out=N.carrier)
        v = fugal.verify_roundtrips(m, N, length)
        if not v:
            return v
    return Verdict.passed(bound=length)


def law_free_roundtrip(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng)
        v = fugal.verify_kh(fugal.fugal_extension(m), min(length, 4))
        if not v:
            return v
    return Verdict.passed(bound=min(length, 4))


def _small_machines():
    one = FinSet(["*"])
    for M in (z2_multiplicative(), idempotent_monoid()):
        yield from fugal.enumerate_monoid_machines(one, M, M)


def law_unit_idempotent(rng, length, limit):
    n = 0
    for m in _small_machines():
        if fugal.is_fugal(m):
            n += 1
            v = fugal.unit_output_idempotent(m)
            if not v:
                return v
    return Verdict.passed(detail=f"{n} fugal machines")


def law_sigma_iff_fugal(rng, length, limit):
    M = z2_multiplicative()
    two = FinSet(["p", "q"])
    for m in fugal.enumerate_monoid_machines(two, M, M):
        fug = bool(fugal.is_fugal(m))
        _, v = guitart.sigma_functor(m)
        if fug != bool(v):
            return Verdict.failed((m.d, m.s), "sigma is a functor iff the machine is fugal")
    return Verdict.passed()


def law_translation_opfibration(rng, length, limit):
    for M in (z2_multiplicative(), idempotent_monoid(), cyclic_monoid(3)):
        states = FinSet(["p", "q"])
        seen = set()
        for m in fugal.enumerate_monoid_machines(states, M, M):
            key = tuple(sorted(m.d.items()))
            if key in seen:
                continue
            seen.add(key)
            E, proj = guitart.translation_of(m)
            v = guitart.check_category_laws(E)
            if not v:
                return v
            v = guitart.is_discrete_opfibration(proj)
            if not v:
                return v
    return Verdict.passed()


def law_pi_functoriality(rng, length, limit):
    M = z2_multiplicative()
    states = FinSet(["p", "q"])
    admissible = [m for m in fugal.enumerate_monoid_machines(states, M, M) if guitart.mac_admissible(m)]
    for _ in range(TRIALS):
        m1, m2 = rng.choice(admissible), rng.choice(admissible)
        v = guitart.verify_pi_functoriality(m1, m2)
        if not v:
            return v
    return Verdict.passed(detail=f"{len(admissible)} admissible machines")


def law_mac_two_cells(rng, length, limit):
    M = z2_multiplicative()
    states = FinSet(["p", "q"])
    admissible = [m for m in fugal.enumerate_monoid_machines(states, M, M) if guitart.mac_admissible(m)]
    n = 0
    for m in admissible[:TRIALS]:
        for f in all_maps(states, states):
            ok = all(m.d[f.table[e], x] == f.table[m.d[e, x]] and m.s[f.table[e], x] == m.s[e, x]
                     for e in states for x in M.carrier)
            if ok:
                sp = guitart.pi_span(m)
                v = guitart.check_mac_2cell(guitart.induced_2cell(f.table, sp, sp), sp, sp)
                n += 1
                if not v:
                    return v
    return Verdict.passed(detail=f"{n} induced 2-cells")


def law_kleisli(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng)
        n = kleisli.lift_deterministic(m)
        v = kleisli.singleton_restriction(n)
        if not v:
            return v
        if kleisli.unlift(n) != m:
            return Verdict.failed(m.name, "lift is injective")
        start = m.states[0]
        for letters in words_up_to(m.input, min(length, 3)):
            final, out = run_mealy(m, start, letters)
            trace = kleisli.run_nondeterministic(n, [start], letters)
            if letters and (trace[-1][0] != frozenset([final]) or
                            [next(iter(o)) for _, o in trace] != list(out.letters)):
                return Verdict.failed(letters, "nondeterministic run of a lift")
    return Verdict.passed()


def law_kleisli_morphisms(rng, length, limit):
    for _ in range(TRIALS):
        m = _rand_machine(rng)
        n, f = _relabel_pair(rng, m)
        v = kleisli.check_powerset_morphism(f, kleisli.lift_deterministic(m), kleisli.lift_deterministic(n))
        if not v:
            return v
    return Verdict.passed()


def _rand_powerset(rng, nE, nI, nO):
    E, I, O = _alphabet(nE, "e"), _alphabet(nI, "a"), _alphabet(nO, "b")
    d = {(e, a): [x for x in E if rng.random() < 0.5] for e in E for a in I}
    s = {(e, a): [x for x in O if rng.random() < 0.5] for e in E for a in I}
    return kleisli.PowersetMealy(E, I, O, d, s)


def law_union_preservation(rng, length, limit):
    for _ in range(TRIALS):
        n = _rand_powerset(rng, rng.randint(1, 3), rng.randint(1, 2), 2)
        v = kleisli.check_union_preservation(n)
        if not v:
            return v
    return Verdict.passed()


def _rand_rel(rng, A, B):
    return rel.Rel(A, B, [(a, b) for a in A for b in B if rng.random() < 0.5])


def law_rel_terminal(rng, length, limit):
    bits = rel.DEFAULT_ENUMERATION_BITS if limit is None else limit
    for _ in range(TRIALS):
        A = _alphabet(rng.randint(1, 3), "x")
        B = _alphabet(rng.randint(1, 2), "y")
        I, O = _rand_rel(rng, A, A), _rand_rel(rng, A, B)
        for mode in rel.MODES:
            R = rel.ran_reachability(I, O, mode)
            v = rel.verify_terminal(R, I, O, mode, limit_bits=bits)
            if not v:
                return Verdict.failed((I.sorted_pairs(), O.sorted_pairs(), mode), v.law)
    return Verdict.passed()


def law_rel_closure(rng, length, limit):
    for _ in range(TRIALS):
        A = _alphabet(rng.randint(1, 4), "x")
        I, J = _rand_rel(rng, A, A), _rand_rel(rng, A, A)
        c = rel.refl_trans_closure(I)
        if not I <= c or rel.refl_trans_closure(c) != c:
            return Verdict.failed(I.sorted_pairs(), "closure is extensive and idempotent")
        if not rel.refl_trans_closure(I & J) <= c:
            return Verdict.failed(I.sorted_pairs(), "closure is monotone")
    return Verdict.passed()


def _z2_category():
    return guitart.monoid_category(z2_multiplicative())


def _rand_z2_set_functor(rng, C, size):
    S = _alphabet(size, "o")
    perm = list(S.elements)
    if size >= 2 and rng.random() < 0.5:
        i, j = rng.sample(range(size), 2)
        perm[i], perm[j] = perm[j], perm[i]
    return cm.SetFunctor(C, {"*": S}, {"1": {x: x for x in S}, "g": dict(zip(S.elements, perm))})


def law_cat_yoneda(rng, length, limit):
    C = _z2_category()
    T = guitart.CatFunctor.identity(C)
    for size in range(4):
        O = _rand_z2_set_functor(rng, C, size)
        R = cm.ran_along(T, O)
        if len(R("*")) != size:
            return Verdict.failed(size, "Ran along the identity has the size of O")
        v = cm.check_set_functor_laws(R)
        if not v:
            return v
    return Verdict.passed()


def law_cat_universal(rng, length, limit):
    C = _z2_category()
    T = guitart.CatFunctor.identity(C)
    n = 0
    for _ in range(min(TRIALS, 10)):
        O = _rand_z2_set_functor(rng, C, rng.randint(1, 3))
        E = _rand_z2_set_functor(rng, C, rng.randint(0, 2))
        gammas = list(cm.enumerate_nat_trans(cm.precompose(E, T), O))
        if not gammas:
            continue
        v = cm.check_ran_universal_property(T, O, E, rng.choice(gammas))
        n += 1
        if not v:
            return v
    return Verdict.passed(detail=f"{n} instances")


def law_cat_machine(rng, length, limit):
    C = _z2_category()
    M = cm.CatMonadCell.identity(C)
    for size in range(4):
        O = _rand_z2_set_functor(rng, C, size)
        moore, _ = cm.build_machine_from_monad(M, O)
        if not moore.sigma["*"].is_bijection():
            return Verdict.failed(size, "output of the identity-monad machine is a bijection")
    return Verdict.passed()


def law_intertwiner_morphisms(rng, length, limit):
    bits = FinSet(["0", "1"])
    for _ in range(TRIALS):
        m = _rand_machine(rng, 2, inp=bits, out=bits)
        m2 = _rand_machine(rng, 2, inp=bits, out=bits)
        for f in all_maps(m2.states, m.states):
            a = bool(check_machine_morphism(f, m2, m))
            b = bool(intertwiner.check_intertwiner(intertwiner.morphism_intertwiner(f, m, m2)))
            if a != b:
                return Verdict.failed(f.table, "induced intertwiner is valid iff the map is a morphism")
    return Verdict.passed()


def law_intertwiner_pasting(rng, length, limit):
    bits = FinSet(["0", "1"])
    n = 0
    for _ in range(TRIALS):
        m = _rand_machine(rng, 2, inp=bits, out=bits)
        n1, f1 = _relabel_pair(rng, m)
        n2, f2 = _relabel_pair(rng, n1)
        it1 = intertwiner.morphism_intertwiner(_inverse(f1), m, n1)
        it2 = intertwiner.morphism_intertwiner(_inverse(f2), n1, n2)
        for it in (it1, it2):
            v = intertwiner.check_intertwiner(it)
            if not v:
                return v
        v = intertwiner.check_intertwiner(intertwiner.compose_intertwiners(it2, it1))
        n += 1
        if not v:
            return v
    return Verdict.passed(detail=f"{n} pastings")


def _inverse(f: FinFn) -> FinFn:
    return FinFn(f.cod, f.dom, {y: x for x, y in f.table.items()})


LAWS: List[Tuple[str, Callable]] = [
    ("corpus documents", law_corpus),
    ("composite run is the pipeline", law_pipeline),
    ("diamond associativity", law_associativity),
    ("diamond unitors", law_unitors),
    ("tensor of morphisms", law_tensor),
    ("fugal extension is fugal", law_fugal_extension),
    ("flat preserves composition", law_flat_composition),
    ("flat preserves morphisms", law_flat_two_cells),
    ("HK and KH round trips", law_roundtrips),
    ("KH on free outputs", law_free_roundtrip),
    ("unit output is idempotent", law_unit_idempotent),
    ("sigma functor iff fugal", law_sigma_iff_fugal),
    ("translation projection is a discrete opfibration", law_translation_opfibration),
    ("pi functoriality", law_pi_functoriality),
    ("mac 2-cells from morphisms", law_mac_two_cells),
    ("lift then expand on singletons", law_kleisli),
    ("lift preserves morphisms", law_kleisli_morphisms),
    ("expansion preserves unions", law_union_preservation),
    ("rel terminal machines", law_rel_terminal),
    ("reflexive-transitive closure", law_rel_closure),
    ("Ran along the identity", law_cat_yoneda),
    ("Ran universal property", law_cat_universal),
    ("identity-monad machine", law_cat_machine),
    ("morphism-induced intertwiners", law_intertwiner_morphisms),
    ("intertwiner pasting", law_intertwiner_pasting),
]


def run_all(seed: int = 0, length: int = 5, limit: Optional[int] = None) -> List[Tuple[str, Verdict]]:
    rng = random.Random(seed)
    return [(name, fn(rng, length, limit)) for name, fn in LAWS]

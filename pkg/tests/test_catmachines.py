import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mealycat import catmachines as cm
from mealycat import guitart
from mealycat.errors import MalformedInput, PreconditionError, ResourceLimit, TypeMismatch
from mealycat.finset import FinSet, trivial_monoid, z2_multiplicative
from mealycat.guitart import CatFunctor, FinCat

Z2C = guitart.monoid_category(z2_multiplicative())
TID = CatFunctor.identity(Z2C)


def z2_set(elements, swap=()):
    S = FinSet(elements)
    g = {x: x for x in S}
    for a, b in swap:
        g[a], g[b] = b, a
    return cm.SetFunctor(Z2C, {"*": S}, {"1": {x: x for x in S}, "g": g})


def arrow():
    objs = FinSet(["0", "1"])
    mors = FinSet(["id0", "id1", "u"])
    src = {"id0": "0", "id1": "1", "u": "0"}
    tgt = {"id0": "0", "id1": "1", "u": "1"}
    comp = {("id0", "id0"): "id0", ("id1", "id1"): "id1", ("id1", "u"): "u", ("u", "id0"): "u"}
    return FinCat(objs, mors, src, tgt, {"0": "id0", "1": "id1"}, comp, name="arrow")


def point_monad(C):
    T = CatFunctor(C, C, {"0": "1", "1": "1"}, {"id0": "id1", "id1": "id1", "u": "id1"})
    return cm.CatMonadCell(T, {"0": "u", "1": "id1"}, {"0": "id1", "1": "id1"})


def arrow_output(C):
    return cm.SetFunctor(C, {"0": ["a", "b"], "1": ["c", "d"]},
                         {"id0": {"a": "a", "b": "b"}, "id1": {"c": "c", "d": "d"}, "u": {"a": "c", "b": "c"}})


def test_set_functor_rejects_broken_composition():
    with pytest.raises(MalformedInput):
        cm.SetFunctor(Z2C, {"*": ["p", "q"]}, {"1": {"p": "p", "q": "q"}, "g": {"p": "p", "q": "p"}})


def test_nat_trans_rejects_non_natural_components():
    F = z2_set(["p", "q"], [("p", "q")])
    G = z2_set(["p", "q"])
    with pytest.raises(MalformedInput):
        cm.NatTrans(F, G, {"*": {"p": "p", "q": "q"}})


@pytest.mark.parametrize("size", range(5))
def test_yoneda_sizes(size):
    for O in cm.enumerate_set_functors(Z2C, size):
        if len(O("*")) != size:
            continue
        R = cm.ran_along(TID, O)
        assert len(R("*")) == size
        assert cm.check_set_functor_laws(R)


def test_yoneda_evaluation_is_a_bijection():
    O = z2_set(["x", "y", "z"], [("x", "y")])
    R = cm.ran_along(TID, O)
    ev = {alpha: R.value(alpha, "*", "1") for alpha in R("*")}
    assert sorted(ev.values()) == ["x", "y", "z"]
    # the action on families matches the action on O
    for alpha in R("*"):
        assert ev[R.fmap("g", alpha)] == O.fmap("g", ev[alpha])


def test_swap_on_discrete_category():
    D = guitart.discrete_category(FinSet(["0", "1"]))
    T = CatFunctor(D, D, {"0": "1", "1": "0"}, {("id", "0"): ("id", "1"), ("id", "1"): ("id", "0")})
    O = cm.SetFunctor(D, {"0": ["a"], "1": ["b", "c", "d"]},
                      {("id", "0"): {"a": "a"}, ("id", "1"): {x: x for x in "bcd"}})
    R = cm.ran_along(T, O)
    assert len(R("0")) == 3 and len(R("1")) == 1
    assert sorted(R.value(alpha, "1", ("id", "0")) for alpha in R("0")) == ["b", "c", "d"]


def test_constant_singleton_output():
    C = arrow()
    M = point_monad(C)
    O = cm.constant_functor(C, ["*"])
    R = cm.ran_along(M.T, O)
    assert all(len(R(c)) == 1 for c in C.objects)


def test_ran_needs_an_endofunctor_on_the_output_category():
    D = guitart.discrete_category(FinSet(["0"]))
    with pytest.raises(TypeMismatch):
        cm.ran_along(TID, cm.constant_functor(D, ["x"]))


def test_ran_candidate_limit():
    O = z2_set([str(k) for k in range(6)])
    with pytest.raises(ResourceLimit):
        cm.ran_along(TID, O, limit=5)


def test_counit_of_identity_is_evaluation():
    O = z2_set(["x", "y"], [("x", "y")])
    R = cm.ran_along(TID, O)
    eps = cm.counit(R)
    assert cm.check_naturality(eps)
    assert eps["*"].is_bijection()


def test_point_monad_laws():
    assert cm.check_monad_laws(point_monad(arrow()))
    assert cm.check_monad_laws(cm.CatMonadCell.identity(Z2C))


def test_broken_unit_is_reported():
    C = arrow()
    M = point_monad(C)
    bad = cm.CatMonadCell(M.T, {"0": "u", "1": "id1"}, {"0": "id1", "1": "id1"})
    bad.eta["0"] = "id0"
    v = cm.check_monad_laws(bad)
    assert not v and v.law == "unit typing"
    with pytest.raises(PreconditionError):
        cm.build_machine_from_monad(bad, arrow_output(C))


def test_identity_monad_machine():
    O = z2_set(["x", "y", "z"], [("y", "z")])
    moore, mealy = cm.build_machine_from_monad(cm.CatMonadCell.identity(Z2C), O)
    assert moore.sigma["*"].is_bijection()
    assert mealy.sigma["*"].is_bijection()
    assert all(moore.delta["*"].table[a] == a for a in moore.E("*"))
    assert cm.is_module(cm.CatMonadCell.identity(Z2C), moore.E, moore.delta)


def test_constant_singleton_machine_is_constant():
    C = arrow()
    moore, _ = cm.build_machine_from_monad(point_monad(C), cm.constant_functor(C, ["*"]))
    for c in C.objects:
        assert set(moore.sigma[c].table.values()) == {"*"}


def test_trivial_base_degenerates_to_the_output():
    C = guitart.monoid_category(trivial_monoid())
    O = cm.SetFunctor(C, {"*": ["p", "q"]}, {"1": {"p": "p", "q": "q"}})
    moore, _ = cm.build_machine_from_monad(cm.CatMonadCell.identity(C), O)
    assert len(moore.E("*")) == 2
    assert moore.sigma["*"].is_bijection()


def test_point_monad_machine_is_a_module():
    C = arrow()
    M = point_monad(C)
    moore, mealy = cm.build_machine_from_monad(M, arrow_output(C))
    assert cm.is_module(M, moore.E, moore.delta)
    assert len(moore.E("0")) == len(moore.E("1")) == 2


def test_input_other_than_t_needs_a_comparison():
    C = arrow()
    with pytest.raises(PreconditionError):
        cm.build_machine_from_monad(point_monad(C), arrow_output(C), i=CatFunctor.identity(C))


def test_identity_input_with_unit_comparison():
    C = arrow()
    M = point_monad(C)
    i = CatFunctor.identity(C)
    assert cm.check_comparison(M, i, M.eta)
    _, mealy = cm.build_machine_from_monad(M, arrow_output(C), i=i, kappa=M.eta)
    assert cm.check_naturality(mealy.sigma) and cm.check_naturality(mealy.delta)


@pytest.mark.parametrize("size", [1, 2])
def test_identity_monad_machine_is_terminal(size):
    for O in cm.enumerate_set_functors(Z2C, size):
        if len(O("*")) == size:
            assert cm.verify_monad_machine_terminal(cm.CatMonadCell.identity(Z2C), O, max_size=2)


def test_point_monad_machine_is_terminal():
    C = arrow()
    assert cm.verify_monad_machine_terminal(point_monad(C), arrow_output(C), max_size=2)


def test_universal_property_at_itself():
    O = z2_set(["x", "y"], [("x", "y")])
    R = cm.ran_along(TID, O)
    v = cm.check_ran_universal_property(TID, O, R, cm.counit(R))
    assert v
    assert all(v.witness["*"].table[a] == a for a in R("*"))


def test_universal_property_for_empty_functor():
    O = z2_set(["x", "y"])
    E = z2_set([])
    gamma = cm.NatTrans(E, O, {"*": {}})
    v = cm.check_ran_universal_property(TID, O, E, gamma)
    assert v and v.witness["*"].table == {}


def test_universal_property_on_the_arrow():
    C = arrow()
    M = point_monad(C)
    O = arrow_output(C)
    n = 0
    for E in cm.enumerate_set_functors(C, 2):
        for gamma in cm.enumerate_nat_trans(cm.precompose(E, M.T), O):
            v = cm.check_ran_universal_property(M.T, O, E, gamma)
            assert v
            assert v.witness == cm.mediator(cm.ran_along(M.T, O), E, gamma)
            n += 1
    assert n > 10


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_random_z2_instances_have_one_mediator(seed):
    rng = random.Random(seed)
    Os = [O for O in cm.enumerate_set_functors(Z2C, 3) if len(O("*")) > 0]
    Es = list(cm.enumerate_set_functors(Z2C, 2))
    O, E = rng.choice(Os), rng.choice(Es)
    gammas = list(cm.enumerate_nat_trans(E, O))
    if gammas:
        assert cm.check_ran_universal_property(TID, O, E, rng.choice(gammas))


def test_gamma_typing():
    O = z2_set(["x"])
    E = z2_set(["p"])
    gamma = cm.NatTrans(E, z2_set(["y"]), {"*": {"p": "y"}})
    with pytest.raises(TypeMismatch):
        cm.check_ran_universal_property(TID, O, E, gamma)

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from mealycat import rel
from mealycat.errors import ResourceLimit, TypeMismatch, UsageError
from mealycat.finset import FinSet
from mealycat.rel import Rel, rel_compose, refl_trans_closure, trans_closure
from strategies import carriers, relations

A12 = FinSet(["1", "2"])
A123 = FinSet(["1", "2", "3"])
B = FinSet(["b"])
MODES = ("moore", "mealy")


def test_compose_with_identity():
    R = Rel(A12, B, [("2", "b")])
    assert rel_compose(R, Rel.identity(A12)) == R
    assert rel_compose(Rel.identity(B), R) == R


def test_compose_one_chain():
    I = Rel(A12, A12, [("1", "2")])
    E = Rel(A12, B, [("2", "b")])
    assert rel_compose(E, I).pairs == {("1", "b")}


def test_compose_with_empty():
    R = Rel(A12, B, [("1", "b"), ("2", "b")])
    assert len(rel_compose(Rel(B, A12), R)) == 0


def test_compose_typing():
    with pytest.raises(TypeMismatch):
        rel_compose(Rel(A12, B), Rel(A12, B))


@given(carriers(), st.data())
def test_compose_matches_oracle(AB, data):
    A, Bs = AB
    R = data.draw(relations(A, Bs))
    S = data.draw(relations(Bs, A))
    assert rel_compose(S, R).pairs == oracles.compose_rel(set(S.pairs), set(R.pairs))


def test_refl_trans_closure_examples():
    assert refl_trans_closure(Rel(A12, A12)) == Rel.identity(A12)
    assert refl_trans_closure(Rel(A12, A12, [("1", "2")])).pairs == {("1", "1"), ("2", "2"), ("1", "2")}
    pre = Rel(A12, A12, [("1", "1"), ("2", "2"), ("1", "2")])
    assert refl_trans_closure(pre) == pre


def test_trans_closure_examples():
    assert len(trans_closure(Rel(A12, A12))) == 0
    assert trans_closure(Rel(A12, A12, [("1", "2")])).pairs == {("1", "2")}
    I = Rel(A123, A123, [("1", "2"), ("2", "3")])
    assert trans_closure(I).pairs == {("1", "2"), ("2", "3"), ("1", "3")}


def test_closure_needs_endorelation():
    with pytest.raises(TypeMismatch):
        trans_closure(Rel(A12, B))


@given(st.data())
def test_closure_operator(data):
    I = data.draw(relations(A123, A123))
    J = data.draw(relations(A123, A123))
    c = refl_trans_closure(I)
    assert I <= c
    assert refl_trans_closure(c) == c
    assert refl_trans_closure(I & J) <= c


def test_ran_with_empty_input_is_the_output():
    O = Rel(A12, B, [("2", "b")])
    assert rel.ran_reachability(Rel(A12, A12), O) == O


def test_ran_predecessor_missing_output():
    I = Rel(A12, A12, [("1", "2")])
    assert len(rel.ran_reachability(I, Rel(A12, B, [("2", "b")]))) == 0


def test_ran_full_output():
    I = Rel(A12, A12, [("1", "2")])
    O = Rel.full(A12, B)
    assert rel.ran_reachability(I, O) == O


def test_mealy_empty_everything_is_full():
    I, O = Rel(A12, A12), Rel(A12, B)
    R = rel.ran_reachability(I, O, "mealy")
    assert R == Rel.full(A12, B)
    assert rel.verify_terminal(R, I, O, "mealy")
    # the reflexive closure would give the empty relation here
    assert len(rel.ran_reachability(I, O, "moore")) == 0


def test_mode_is_checked():
    with pytest.raises(UsageError):
        rel.ran_reachability(Rel(A12, A12), Rel(A12, B), "both")


@pytest.mark.parametrize("mode", MODES)
def test_exhaustive_small_grid_matches_oracles(mode):
    for I in rel.all_relations(A12, A12):
        for O in rel.all_relations(A12, B):
            R = rel.ran_reachability(I, O, mode)
            assert R.pairs == oracles.max_machine(A12, B, set(I.pairs), set(O.pairs), mode == "mealy")
            assert rel.greatest_fixpoint(I, O, mode) == R
            assert rel.verify_terminal(R, I, O, mode)


@pytest.mark.parametrize("mode", MODES)
def test_counts_match_oracle(mode):
    for I in rel.all_relations(A12, A12):
        for O in rel.all_relations(A12, B):
            expect = oracles.count_machines(A12, B, set(I.pairs), set(O.pairs), mode == "mealy")
            assert rel.count_machines(I, O, mode) == expect


@pytest.mark.parametrize("nb", [1, 2, 3])
def test_singleton_base_count(nb):
    star = FinSet(["*"])
    Bs = FinSet([f"y{k}" for k in range(nb)])
    for I in (Rel(star, star), Rel.identity(star)):
        for O in rel.all_relations(star, Bs):
            assert rel.count_machines(I, O, "moore") == 2 ** len(O)


@given(carriers(3, 2), st.data())
def test_ran_is_a_machine_and_terminal(AB, data):
    A, Bs = AB
    I = data.draw(relations(A, A))
    O = data.draw(relations(A, Bs))
    for mode in MODES:
        R = rel.ran_reachability(I, O, mode)
        assert rel.is_machine(R, I, O, mode)
        assert rel.verify_terminal(R, I, O, mode)


def test_is_machine_reports_missing_closure():
    I = Rel(A12, A12, [("1", "2")])
    E = Rel(A12, B, [("2", "b")])
    v = rel.is_machine(E, I, Rel.full(A12, B))
    assert not v and v.witness == ("1", "b")


def test_verify_terminal_rejects_a_smaller_machine():
    I, O = Rel(A12, A12), Rel.full(A12, B)
    v = rel.verify_terminal(Rel(A12, B, [("1", "b")]), I, O)
    assert not v and v.law == "machine not contained in the candidate"
    v = rel.verify_terminal(Rel(A12, B, [("1", "b")]), I, O, method="fixpoint")
    assert not v and v.witness == [("2", "b")]


def test_enumeration_limit():
    A = FinSet([str(k) for k in range(4)])
    Bs = FinSet([f"y{k}" for k in range(4)])
    with pytest.raises(ResourceLimit):
        rel.count_machines(Rel(A, A), Rel(A, Bs))
    assert rel.verify_terminal(rel.ran_reachability(Rel(A, A), Rel(A, Bs)), Rel(A, A), Rel(A, Bs),
                               method="fixpoint")

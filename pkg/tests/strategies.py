"""Hypothesis strategies for small machines and relations."""

from hypothesis import strategies as st

from mealycat.finset import FinSet
from mealycat.machines import MealyMachine
from mealycat.rel import Rel


def alphabet(n, prefix):
    return FinSet([f"{prefix}{k}" for k in range(n)])


@st.composite
def mealy_machines(draw, max_states=3, max_in=3, max_out=3, input=None, output=None, min_in=1):
    E = alphabet(draw(st.integers(1, max_states)), "e")
    I = input if input is not None else alphabet(draw(st.integers(min_in, max_in)), "a")
    O = output if output is not None else alphabet(draw(st.integers(1, max_out)), "b")
    keys = [(e, a) for e in E for a in I]
    d = {k: draw(st.sampled_from(E.elements)) for k in keys}
    s = {k: draw(st.sampled_from(O.elements)) for k in keys}
    return MealyMachine(E, I, O, d, s)


@st.composite
def composable_pairs(draw, max_states=3, max_alpha=3):
    m1 = draw(mealy_machines(max_states, max_alpha, max_alpha))
    m2 = draw(mealy_machines(max_states, input=m1.output, max_out=max_alpha))
    return m1, m2


@st.composite
def words(draw, alphabet_, max_len=5):
    return tuple(draw(st.lists(st.sampled_from(alphabet_.elements), max_size=max_len)))


@st.composite
def relations(draw, A, B):
    return Rel(A, B, [(a, b) for a in A for b in B if draw(st.booleans())])


@st.composite
def carriers(draw, max_a=3, max_b=2):
    A = alphabet(draw(st.integers(1, max_a)), "x")
    B = alphabet(draw(st.integers(1, max_b)), "y")
    return A, B

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from mealycat import _pykernels, fugal, kernels
from mealycat.finset import FinSet
from mealycat.machines import compose_diamond
from mealycat.rel import Rel, rel_compose
from strategies import composable_pairs, mealy_machines

BACKENDS = kernels.available()


@pytest.fixture(params=BACKENDS)
def backend(request):
    previous = kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


def tables(m):
    E, I, O = m.states, m.input, m.output
    d = np.array([E.index(m.d.table[e, a]) for e in E for a in I], dtype=np.int64)
    s = np.array([O.index(m.s.table[e, a]) for e in E for a in I], dtype=np.int64)
    return d, s


def test_pure_backend_is_always_available():
    assert "python" in BACKENDS


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.use_backend("fortran")


def test_word_offsets(backend):
    assert list(kernels.word_offsets(2, 3)) == [0, 1, 3, 7, 15]
    assert list(kernels.word_offsets(1, 2)) == [0, 1, 2, 3]


def test_env_var_forces_the_fallback():
    env = dict(os.environ, MEALYCAT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from mealycat import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@settings(max_examples=40)
@given(mealy_machines(3, 3, 3), st.integers(0, 4))
def test_extend_free_matches_oracle(m, L):
    d, s = tables(m)
    nE, nI, nO = len(m.states), len(m.input), len(m.output)
    words = list(oracles.all_words(m.input.elements, L))
    for name in BACKENDS:
        kernels.use_backend(name)
        fd, fs = kernels.extend_free(d, s, nE, nI, nO, L)
        for ei, e in enumerate(m.states):
            for w_idx, w in enumerate(words):
                final, out = oracles.run(m.d.table, m.s.table, e, w)
                rank = 0
                for b in out:
                    rank = rank * nO + m.output.index(b)
                assert m.states[fd[ei, w_idx]] == final and fs[ei, w_idx] == rank
    kernels.use_backend(BACKENDS[0])


@settings(max_examples=40)
@given(mealy_machines(3, 3, 3), st.integers(0, 4))
def test_backends_agree_on_word_tables(m, L):
    d, s = tables(m)
    n = (len(m.states), len(m.input), len(m.output))
    mul = np.array([(x + y) % n[2] for x in range(n[2]) for y in range(n[2])], dtype=np.int64)
    results = []
    for name in BACKENDS:
        kernels.use_backend(name)
        fd, fs = kernels.extend_free(d, s, *n, L)
        gd, gs = kernels.extend_fold(d, s, mul, 0, n[0], n[1], n[2], L)
        fl = np.tile(np.repeat(np.arange(L + 1), [n[1] ** k for k in range(L + 1)]), (n[0], 1)).astype(np.int64)
        results.append((fd.tolist(), fs.tolist(), gd.tolist(), gs.tolist(),
                        kernels.split_violation_free(fd, fs, fl, *n, L),
                        kernels.split_violation_table(gd, gs, mul, n[0], n[1], n[2], L)))
    kernels.use_backend(BACKENDS[0])
    assert all(r == results[0] for r in results)
    assert results[0][4] is None and results[0][5] is None


def test_split_violation_found_by_both(backend):
    # one state, one letter, fold in Z/2 with the entry for "aa" corrupted; the split at k=0
    # compares the entry with itself, so the first failure is at k=1
    d = np.array([0], dtype=np.int64)
    s = np.array([1], dtype=np.int64)
    mul = np.array([0, 1, 1, 0], dtype=np.int64)
    fd, fs = kernels.extend_fold(d, s, mul, 0, 1, 1, 2, 3)
    fs = fs.copy()
    fs[0, 2] = 1
    assert kernels.split_violation_table(fd, fs, mul, 1, 1, 2, 3) == (0, 2, 1)


@settings(max_examples=30)
@given(composable_pairs(2, 2), st.integers(0, 4))
def test_diamond_mismatch_agrees(pair, L):
    m1, m2 = pair
    comp = compose_diamond(m2, m1)
    d1, s1 = tables(m1)
    d2, s2 = tables(m2)
    dc, sc = tables(comp)
    nE, nF, nI, nM = len(m1.states), len(m2.states), len(m1.input), len(m1.output)
    for name in BACKENDS:
        kernels.use_backend(name)
        t1 = kernels.extend_free(d1, s1, nE, nI, nM, L)
        t2 = kernels.extend_free(d2, s2, nF, nM, len(m2.output), L)
        tc = kernels.extend_free(dc, sc, nE * nF, nI, len(m2.output), L)
        assert kernels.diamond_mismatch(*t1, *t2, *tc, nE, nF, nI, nM, L) is None
        broken = tc[1].copy()
        if broken.shape[1] > 1:
            broken[0, 1] = (broken[0, 1] + 1) % len(m2.output) if len(m2.output) > 1 else broken[0, 1]
            hit = kernels.diamond_mismatch(*t1, *t2, tc[0], broken, nE, nF, nI, nM, L)
            assert (hit is None) == (len(m2.output) == 1)
    kernels.use_backend(BACKENDS[0])


@settings(max_examples=60)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_rel_kernels_agree(na, nb, data):
    A = FinSet([f"x{k}" for k in range(na)])
    B = FinSet([f"y{k}" for k in range(nb)])
    e = data.draw(st.integers(0, (1 << (na * nb)) - 1))
    i = data.draw(st.integers(0, (1 << (na * na)) - 1))
    o = data.draw(st.integers(0, (1 << (na * nb)) - 1))
    I = Rel.from_mask(A, A, i)
    rows = np.asarray(I.rows(), dtype=np.int64)
    expect = rel_compose(Rel.from_mask(A, B, e), I).mask()
    outs = []
    for name in BACKENDS:
        kernels.use_backend(name)
        assert kernels.rel_compose_rows(e, rows, na, nb) == expect
        outs.append([kernels.rel_enumerate(rows, o, na, nb, mealy, e) for mealy in (False, True)])
    kernels.use_backend(BACKENDS[0])
    assert all(x == outs[0] for x in outs)


@pytest.mark.parametrize("L", [3, 5])
def test_library_verdicts_do_not_depend_on_backend(L):
    ms = [fugal.fugal_extension(m) for m in _few_machines()]
    verdicts = []
    for name in BACKENDS:
        kernels.use_backend(name)
        verdicts.append([bool(fugal.is_fugal(m, L)) for m in ms])
    kernels.use_backend(BACKENDS[0])
    assert all(v == verdicts[0] for v in verdicts)


def _few_machines():
    from mealycat.machines import not_mapper, xor_machine

    return [xor_machine(), not_mapper()]


def test_pure_module_is_the_python_backend():
    previous = kernels.use_backend("python")
    try:
        assert kernels.extend_free is _pykernels.extend_free
    finally:
        kernels.use_backend(previous)

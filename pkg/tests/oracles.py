"""Independent brute-force reference implementations.

These work on plain dicts and tuples and share no code with the package, so
agreement with them is evidence rather than tautology.
"""

from itertools import product


def run(d, s, e, word):
    out = []
    for a in word:
        out.append(s[e, a])
        e = d[e, a]
    return e, tuple(out)


def flat(d, s, e, word):
    """s-flat by the defining recursion on the first letter."""
    if not word:
        return ()
    a = word[0]
    return (s[e, a],) + flat(d, s, d[e, a], word[1:])


def pipeline(m1, m2, f, e, word):
    e2, mid = run(m1.d.table, m1.s.table, e, word)
    f2, out = run(m2.d.table, m2.s.table, f, mid)
    return (f2, e2), out


def fold(mul, unit, xs):
    acc = unit
    for x in xs:
        acc = mul[acc, x]
    return acc


def all_words(letters, max_len):
    for n in range(max_len + 1):
        yield from product(letters, repeat=n)


def compose_rel(snd, fst):
    """Pairs (a, c) with a b such that fst(a, b) and snd(b, c)."""
    return {(a, c) for a, b in fst for b2, c in snd if b == b2}


def max_machine(A, B, I, O, mealy):
    """Largest E <= A x B with E o I <= E and E <= O (Moore) or E o I <= O (Mealy), by full scan."""
    cells = [(a, b) for a in A for b in B]
    best = set()
    for bits in product((0, 1), repeat=len(cells)):
        E = {c for c, keep in zip(cells, bits) if keep}
        EI = compose_rel(E, I)
        if not EI <= E:
            continue
        if (EI if mealy else E) <= O:
            best |= E
    return best


def count_machines(A, B, I, O, mealy):
    cells = [(a, b) for a in A for b in B]
    n = 0
    for bits in product((0, 1), repeat=len(cells)):
        E = {c for c, keep in zip(cells, bits) if keep}
        EI = compose_rel(E, I)
        if EI <= E and (EI if mealy else E) <= O:
            n += 1
    return n


def intertwiner_sides(it):
    """Both sides of both equations, evaluated separately, keyed by (e', i', u)."""
    m, m2 = it.src, it.dst
    iota, eps, omega = it.iota.table, it.eps.table, it.omega.table
    lhs, rhs = {}, {}
    for e2 in m2.states:
        for i2 in m2.input:
            for u in it.U:
                lhs[e2, i2, u] = (eps[m2.d.table[e2, i2], u], omega[m2.s.table[e2, i2], u])
                u_mid, i = iota[i2, u]
                v, e = eps[e2, u_mid]
                rhs[e2, i2, u] = ((v, m.d.table[e, i]), (v, m.s.table[e, i]))
    return lhs, rhs


def valid_intertwiners(m, m2, U, V):
    """Every valid intertwiner from m to m2, by enumeration with omega forced where it is constrained.

    Validity is decided here by evaluating both equations directly; only the
    container class comes from the package.
    """
    from mealycat.finset import product_set
    from mealycat.intertwiner import Intertwiner

    IU, UI = product_set(m2.input, U), product_set(U, m.input)
    EU, VE = product_set(m2.states, U), product_set(V, m.states)
    OU, VO = product_set(m2.output, U), product_set(V, m.output)
    for io in product(UI.elements, repeat=len(IU)):
        iota = dict(zip(IU.elements, io))
        for ep in product(VE.elements, repeat=len(EU)):
            eps = dict(zip(EU.elements, ep))
            forced, ok = {}, True
            for e2 in m2.states:
                for i2 in m2.input:
                    for u in U:
                        u_mid, i = iota[i2, u]
                        v, e = eps[e2, u_mid]
                        if eps[m2.d.table[e2, i2], u] != (v, m.d.table[e, i]):
                            ok = False
                        key, val = (m2.s.table[e2, i2], u), (v, m.s.table[e, i])
                        if forced.setdefault(key, val) != val:
                            ok = False
            if not ok:
                continue
            free = [k for k in OU.elements if k not in forced]
            for vals in product(VO.elements, repeat=len(free)):
                omega = dict(forced)
                omega.update(zip(free, vals))
                yield Intertwiner(m, m2, U, V, iota, eps, omega)

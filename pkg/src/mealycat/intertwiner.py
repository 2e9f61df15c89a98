"""Intertwiners between Mealy machines over possibly different alphabets.

An intertwiner from m = (E, d, s) over (I, O) to m' = (E', d', s') over
(I', O') carries two finite sets U, V and three maps

    iota:  I' x U -> U x I
    eps:   E' x U -> V x E
    omega: O' x U -> V x O

subject to, for every (e', i', u), writing (u2, i) = iota(i', u) and
(v, e) = eps(e', u2):

    eps(d'(e', i'), u)   == (v, d(e, i))
    omega(s'(e', i'), u) == (v, s(e, i))

A 2-cell between intertwiners with the same endpoints is a pair of maps
f: U -> U~ and g: V -> V~ making the three structure maps commute.
"""

from .errors import MalformedInput, TypeMismatch
from .finset import FinFn, FinSet, product_set
from .machines import MealyMachine
from .verdict import Verdict

UNIT = "*"


def _fn(table, dom, cod, label):
    if isinstance(table, FinFn):
        if table.dom != dom or table.cod != cod:
            raise MalformedInput(f"{label} has the wrong domain or codomain")
        return table
    try:
        return FinFn(dom, cod, table)
    except MalformedInput as exc:
        raise MalformedInput(f"{label}: {exc}") from exc


class Intertwiner:
    def __init__(self, src: MealyMachine, dst: MealyMachine, U: FinSet, V: FinSet, iota, eps, omega,
                 name: str = ""):
        self.src = src
        self.dst = dst
        self.U = U
        self.V = V
        self.iota = _fn(iota, product_set(dst.input, U), product_set(U, src.input), "iota")
        self.eps = _fn(eps, product_set(dst.states, U), product_set(V, src.states), "eps")
        self.omega = _fn(omega, product_set(dst.output, U), product_set(V, src.output), "omega")
        self.name = name

    def __eq__(self, other):
        if not isinstance(other, Intertwiner):
            return NotImplemented
        return (self.src == other.src and self.dst == other.dst and self.U == other.U and self.V == other.V
                and self.iota == other.iota and self.eps == other.eps and self.omega == other.omega)

    __hash__ = None

    def __repr__(self):
        return f"Intertwiner({self.name or '?'}: |U|={len(self.U)}, |V|={len(self.V)})"


def check_intertwiner(it: Intertwiner) -> Verdict:
    """Both equations over E' x I' x U; the witness is (e', i', u)."""
    m, m2 = it.src, it.dst
    iota, eps, omega = it.iota.table, it.eps.table, it.omega.table
    d, s, d2, s2 = m.d.table, m.s.table, m2.d.table, m2.s.table
    for e2 in m2.states:
        for i2 in m2.input:
            for u in it.U:
                u_mid, i = iota[i2, u]
                v, e = eps[e2, u_mid]
                if eps[d2[e2, i2], u] != (v, d[e, i]):
                    return Verdict.failed((e2, i2, u), "transition equation")
                if omega[s2[e2, i2], u] != (v, s[e, i]):
                    return Verdict.failed((e2, i2, u), "output equation")
    return Verdict.passed()


def identity_intertwiner(m: MealyMachine) -> Intertwiner:
    return morphism_intertwiner(FinFn.identity(m.states), m, m)


def morphism_intertwiner(f: FinFn, m: MealyMachine, m2: MealyMachine) -> Intertwiner:
    """Intertwiner from m to m2 induced by f: states(m2) -> states(m), with U = V = {*}.

    It validates exactly when f is a machine morphism from m2 to m.
    """
    if m.input != m2.input or m.output != m2.output:
        raise TypeMismatch("induced intertwiners need shared alphabets")
    if f.dom != m2.states or f.cod != m.states:
        raise TypeMismatch("map must go from the states of the target machine to those of the source")
    one = FinSet([UNIT])
    iota = {(a, UNIT): (UNIT, a) for a in m.input}
    eps = {(e, UNIT): (UNIT, f.table[e]) for e in m2.states}
    omega = {(o, UNIT): (UNIT, o) for o in m.output}
    return Intertwiner(m, m2, one, one, iota, eps, omega)


def compose_intertwiners(it2: Intertwiner, it1: Intertwiner, name: str = "") -> Intertwiner:
    """Paste it1: m -> m' with it2: m' -> m''.

    U = U2 x U1 and V = V2 x V1.  A letter of m'' meets u2 first, and the
    resulting letter of m' then meets u1.
    """
    if it1.dst != it2.src:
        raise TypeMismatch("the middle machines of the two intertwiners differ")
    m, m3 = it1.src, it2.dst
    U = product_set(it2.U, it1.U)
    V = product_set(it2.V, it1.V)
    io1, ep1, om1 = it1.iota.table, it1.eps.table, it1.omega.table
    io2, ep2, om2 = it2.iota.table, it2.eps.table, it2.omega.table
    iota, eps, omega = {}, {}, {}
    for i3 in m3.input:
        for u2, u1 in U:
            u2b, i2 = io2[i3, u2]
            u1b, i1 = io1[i2, u1]
            iota[i3, (u2, u1)] = ((u2b, u1b), i1)
    for e3 in m3.states:
        for u2, u1 in U:
            v2, e2 = ep2[e3, u2]
            v1, e1 = ep1[e2, u1]
            eps[e3, (u2, u1)] = ((v2, v1), e1)
    for o3 in m3.output:
        for u2, u1 in U:
            v2, o2 = om2[o3, u2]
            v1, o1 = om1[o2, u1]
            omega[o3, (u2, u1)] = ((v2, v1), o1)
    return Intertwiner(m, m3, U, V, iota, eps, omega, name=name)


class IntertwinerTwoCell:
    def __init__(self, src: Intertwiner, dst: Intertwiner, f, g):
        if src.src != dst.src or src.dst != dst.dst:
            raise TypeMismatch("2-cells need intertwiners with the same endpoints")
        self.src = src
        self.dst = dst
        self.f = _fn(f, src.U, dst.U, "f")
        self.g = _fn(g, src.V, dst.V, "g")


def check_two_cell(tc: IntertwinerTwoCell) -> Verdict:
    """The three squares; the witness is the argument and the law names the square."""
    a, b = tc.src, tc.dst
    f, g = tc.f.table, tc.g.table
    m2 = a.dst
    for i2 in m2.input:
        for u in a.U:
            u2, i = a.iota.table[i2, u]
            if (f[u2], i) != b.iota.table[i2, f[u]]:
                return Verdict.failed((i2, u), "iota square")
    for e2 in m2.states:
        for u in a.U:
            v, e = a.eps.table[e2, u]
            if (g[v], e) != b.eps.table[e2, f[u]]:
                return Verdict.failed((e2, u), "eps square")
    for o2 in m2.output:
        for u in a.U:
            v, o = a.omega.table[o2, u]
            if (g[v], o) != b.omega.table[o2, f[u]]:
                return Verdict.failed((o2, u), "omega square")
    return Verdict.passed()


def unitor_cell(composite: Intertwiner, original: Intertwiner, side: str) -> IntertwinerTwoCell:
    """Projection 2-cell from a pasting with an identity intertwiner back to ``original``.

    ``side`` is "left" when the identity was pasted after (U = {*} x U) and
    "right" when it was pasted before (U = U x {*}).
    """
    k = 1 if side == "left" else 0
    f = {u: u[k] for u in composite.U}
    g = {v: v[k] for v in composite.V}
    return IntertwinerTwoCell(composite, original, f, g)


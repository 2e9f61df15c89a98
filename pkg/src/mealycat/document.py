"""JSON documents describing machines, monoids, categories, relations and friends.

Every document is a JSON object with a ``kind`` key.  Sets are arrays in
declaration order and that order is the iteration order everywhere
downstream.  Wherever a sub-document is expected one may write

* the sub-document inline,
* a string naming an entry of the top-level ``defs`` object or of the
  ``imports`` object (alias -> path relative to the importing file),
* ``{"$ref": "other.json"}``.

Composite atoms produced by constructions are written as strings: pairs
become ``"f|e"`` (nested pairs are parenthesised) and subsets ``"{a,b}"``.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from .catmachines import CatMonadCell, NatTrans, SetFunctor, check_naturality, check_set_functor_laws
from .errors import (DocumentError, DocumentSyntaxError, InvariantViolation, MalformedInput, PreconditionError,
                     TypeMismatch, UnresolvedReference)
from .finset import FinMonoid, FinSet, FreeMonoid, Word, check_monoid_laws
from .fugal import MonoidMealyMachine
from .guitart import CatFunctor, FinCat, GuitartSpan, check_category_laws, check_functor_laws, monoid_category
from .intertwiner import Intertwiner, IntertwinerTwoCell
from .kleisli import PowersetMealy
from .machines import MealyMachine, MooreMachine
from .rel import Rel


class DocumentSchemaError(DocumentError, MalformedInput):
    """Well-formed JSON that does not have the shape its kind requires."""


KINDS = {
    "mealy": ({"states", "input", "output", "d", "s"}, {"initial"}),
    "moore": ({"states", "input", "output", "d", "s"}, {"initial"}),
    "monoid": (set(), {"carrier", "unit", "mul", "free"}),
    "monoid-machine": ({"states", "in", "out", "d", "s"}, set()),
    "category": (set(), {"objects", "morphisms", "identities", "compose", "monoid"}),
    "functor": (set(), {"dom", "cod", "objects", "morphisms", "identity"}),
    "relation": ({"src", "pairs"}, {"dst"}),
    "set-functor": ({"category", "objects", "morphisms"}, set()),
    "nat-trans": ({"components"}, {"src", "dst"}),
    "monad": ({"functor", "unit", "mult"}, {"input", "comparison"}),
    "intertwiner": ({"src", "dst", "U", "V", "iota", "eps", "omega"}, set()),
    "two-cell": ({"src", "dst", "f", "g"}, set()),
    "powerset-mealy": ({"states", "input", "output", "d", "s"}, set()),
    "span": ({"left", "right"}, set()),
    "counterexample": ({"command", "law", "inputs"}, {"witness", "options"}),
}
COMMON_KEYS = {"kind", "name", "defs", "imports"}


@dataclass
class Document:
    kind: str
    value: Any
    name: str = ""
    source: Optional[str] = field(default=None, compare=False)

    def __eq__(self, other):
        if not isinstance(other, Document):
            return NotImplemented
        return self.kind == other.kind and to_data(self) == to_data(other)


@dataclass
class MonadSpec:
    """A monad document: the monad, plus an optional input functor and comparison."""

    monad: CatMonadCell
    input: Optional[CatFunctor] = None
    kappa: Optional[Dict] = None


# -- atoms -------------------------------------------------------------------

def render_atom(x, top: bool = True) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        inner = "|".join(render_atom(y, False) for y in x)
        return inner if top else f"({inner})"
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted(render_atom(y) for y in x)) + "}"
    if isinstance(x, Word):
        return render_word(x)
    return str(x)


def render_word(w) -> str:
    letters = [render_atom(a) for a in (w.letters if isinstance(w, Word) else w)]
    if all(len(a) == 1 for a in letters):
        return "".join(letters)
    return ",".join(letters)


def parse_word_arg(text: str, alphabet: FinSet) -> Word:
    """"101" or "a,bb,c"; the empty string is the empty word."""
    if text == "":
        return Word(alphabet, ())
    letters = text.split(",") if "," in text else list(text)
    return Word(alphabet, letters)


def _jsonable(x):
    if isinstance(x, Word):
        return [render_atom(a) for a in x.letters]
    return render_atom(x)


# -- parsing -----------------------------------------------------------------

def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise DocumentSchemaError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _loads(text: str, source: Optional[str]):
    try:
        return json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno, source) from None


class _Parser:
    def __init__(self, base_dir: str, source: Optional[str], stack=()):
        self.base_dir = base_dir
        self.source = source
        self.stack = stack
        self.defs: Dict[str, Any] = {}
        self.imports: Dict[str, str] = {}
        self.cache: Dict[str, Document] = {}

    def fail(self, path, msg):
        raise DocumentSchemaError(f"{path}: {msg}")

    # generic helpers

    def obj(self, x, path):
        if not isinstance(x, dict):
            self.fail(path, "expected an object")
        return x

    def strings(self, x, path) -> FinSet:
        if not isinstance(x, list) or not all(isinstance(a, str) for a in x):
            self.fail(path, "expected an array of strings")
        if len(set(x)) != len(x):
            self.fail(path, "elements are not distinct")
        return FinSet(x)

    def atom(self, x, allowed: FinSet, path):
        if not isinstance(x, str) or x not in allowed:
            self.fail(path, f"{x!r} is not one of {list(allowed.elements)!r}")
        return x

    def table2(self, x, rows: FinSet, cols: FinSet, path, cell):
        """{row: {col: value}} -> {(row, col): cell(value, path)}, required total."""
        self.obj(x, path)
        out = {}
        for r in rows:
            if r not in x:
                self.fail(path, f"missing row {r!r}")
            row = self.obj(x[r], f"{path}.{r}")
            for c in cols:
                if c not in row:
                    self.fail(f"{path}.{r}", f"missing entry {c!r}")
                out[r, c] = cell(row[c], f"{path}.{r}.{c}")
            extra = set(row) - set(cols.elements)
            if extra:
                self.fail(f"{path}.{r}", f"unexpected entries {sorted(extra)!r}")
        extra = set(x) - set(rows.elements)
        if extra:
            self.fail(path, f"unexpected rows {sorted(extra)!r}")
        return out

    def table1(self, x, keys: FinSet, path, cell, total=True):
        self.obj(x, path)
        out = {}
        for k in keys:
            if k not in x:
                if total:
                    self.fail(path, f"missing entry {k!r}")
                continue
            out[k] = cell(x[k], f"{path}.{k}")
        extra = set(x) - set(keys.elements)
        if extra:
            self.fail(path, f"unexpected entries {sorted(extra)!r}")
        return out

    # references

    def sub(self, x, kinds, path) -> Document:
        if isinstance(x, str):
            doc = self.resolve(x, path)
        elif isinstance(x, dict) and set(x) == {"$ref"}:
            doc = self.load_file(x["$ref"], path)
        elif isinstance(x, dict):
            doc = self.document(x, path)
        else:
            self.fail(path, "expected a sub-document or a reference")
        if doc.kind not in kinds:
            self.fail(path, f"expected a {' or '.join(kinds)} document, got {doc.kind!r}")
        return doc

    def resolve(self, name, path) -> Document:
        if name in self.cache:
            return self.cache[name]
        if name in self.defs:
            if ("def", name) in self.stack:
                raise UnresolvedReference(f"{path}: circular definition of {name!r}")
            saved = self.stack
            self.stack = self.stack + (("def", name),)
            try:
                doc = self.sub(self.defs[name], list(KINDS), f"defs.{name}")
            finally:
                self.stack = saved
        elif name in self.imports:
            doc = self.load_file(self.imports[name], path)
        else:
            raise UnresolvedReference(f"{path}: unresolved reference {name!r}")
        self.cache[name] = doc
        return doc

    def load_file(self, rel, path) -> Document:
        if not isinstance(rel, str):
            self.fail(path, "import paths are strings")
        full = os.path.normpath(os.path.join(self.base_dir, rel))
        if ("file", full) in self.stack:
            raise UnresolvedReference(f"{path}: import cycle through {rel!r}")
        try:
            with open(full, encoding="utf-8") as fh:
                text = fh.read()
        except OSError:
            raise UnresolvedReference(f"{path}: cannot read imported file {rel!r}") from None
        child = _Parser(os.path.dirname(full), full, self.stack + (("file", full),))
        return child.top(text)

    # documents

    def top(self, text) -> Document:
        data = _loads(text, self.source)
        if not isinstance(data, dict):
            raise DocumentSchemaError("a document must be a JSON object")
        return self.document(data, "$", top=True)

    def document(self, data, path, top=False) -> Document:
        kind = data.get("kind")
        if kind not in KINDS:
            self.fail(path, f"unknown kind {kind!r}")
        required, optional = KINDS[kind]
        allowed = required | optional | COMMON_KEYS
        extra = set(data) - allowed
        if extra:
            self.fail(path, f"unexpected keys {sorted(extra)!r} for kind {kind!r}")
        missing = required - set(data)
        if missing:
            self.fail(path, f"missing keys {sorted(missing)!r} for kind {kind!r}")
        if "imports" in data:
            imps = self.obj(data["imports"], f"{path}.imports")
            for k, v in imps.items():
                if not isinstance(v, str):
                    self.fail(f"{path}.imports.{k}", "expected a path")
                self.imports[k] = v
        if "defs" in data:
            self.defs.update(self.obj(data["defs"], f"{path}.defs"))
        name = data.get("name", "")
        if not isinstance(name, str):
            self.fail(f"{path}.name", "expected a string")
        builder = getattr(self, "k_" + kind.replace("-", "_"))
        try:
            value = builder(data, path, name)
        except (MalformedInput, TypeMismatch) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentSchemaError(f"{path}: {exc}") from None
        return Document(kind, value, name, self.source)

    def k_mealy(self, data, path, name):
        E = self.strings(data["states"], f"{path}.states")
        I = self.strings(data["input"], f"{path}.input")
        O = self.strings(data["output"], f"{path}.output")
        d = self.table2(data["d"], E, I, f"{path}.d", lambda v, p: self.atom(v, E, p))
        s = self.table2(data["s"], E, I, f"{path}.s", lambda v, p: self.atom(v, O, p))
        init = self.atom(data["initial"], E, f"{path}.initial") if "initial" in data else None
        return MealyMachine(E, I, O, d, s, name=name, initial=init)

    def k_moore(self, data, path, name):
        E = self.strings(data["states"], f"{path}.states")
        I = self.strings(data["input"], f"{path}.input")
        O = self.strings(data["output"], f"{path}.output")
        d = self.table2(data["d"], E, I, f"{path}.d", lambda v, p: self.atom(v, E, p))
        s = self.table1(data["s"], E, f"{path}.s", lambda v, p: self.atom(v, O, p))
        init = self.atom(data["initial"], E, f"{path}.initial") if "initial" in data else None
        return MooreMachine(E, I, O, d, s, name=name, initial=init)

    def k_monoid(self, data, path, name):
        if "free" in data:
            if set(data) & {"carrier", "unit", "mul"}:
                self.fail(path, "a free monoid takes only its generators")
            return FreeMonoid(self.strings(data["free"], f"{path}.free"), name=name)
        for k in ("carrier", "unit", "mul"):
            if k not in data:
                self.fail(path, f"missing key {k!r}")
        C = self.strings(data["carrier"], f"{path}.carrier")
        if not len(C):
            self.fail(f"{path}.carrier", "the carrier is empty")
        unit = self.atom(data["unit"], C, f"{path}.unit")
        mul = self.table2(data["mul"], C, C, f"{path}.mul", lambda v, p: self.atom(v, C, p))
        M = FinMonoid(C, unit, mul, name=name)
        v = check_monoid_laws(M)
        if not v:
            raise InvariantViolation(f"{path}: monoid {v.law} fails at {v.witness!r}", witness=v.witness)
        return M

    def monoid_value(self, M, x, path):
        if M.is_free:
            if not isinstance(x, list) or not all(isinstance(a, str) for a in x):
                self.fail(path, "expected a word (array of letters)")
            for a in x:
                if a not in M.generators:
                    self.fail(path, f"letter {a!r} is not a generator")
            return Word(M.generators, x)
        return self.atom(x, M.carrier, path)

    def k_monoid_machine(self, data, path, name):
        E = self.strings(data["states"], f"{path}.states")
        M = self.sub(data["in"], ["monoid"], f"{path}.in").value
        N = self.sub(data["out"], ["monoid"], f"{path}.out").value
        keys = M.generators if M.is_free else M.carrier
        d = self.table2(data["d"], E, keys, f"{path}.d", lambda v, p: self.atom(v, E, p))
        s = self.table2(data["s"], E, keys, f"{path}.s", lambda v, p: self.monoid_value(N, v, p))
        try:
            return MonoidMealyMachine(E, M, N, d, s, name=name)
        except PreconditionError as exc:
            raise InvariantViolation(f"{path}: {exc}") from None

    def k_category(self, data, path, name):
        if "monoid" in data:
            if set(data) & {"objects", "morphisms", "identities", "compose"}:
                self.fail(path, "a one-object category takes only its monoid")
            M = self.sub(data["monoid"], ["monoid"], f"{path}.monoid").value
            if M.is_free:
                self.fail(f"{path}.monoid", "the monoid must be finite")
            C = monoid_category(M)
            C.name = name or C.name
            return C
        for k in ("objects", "morphisms", "identities", "compose"):
            if k not in data:
                self.fail(path, f"missing key {k!r}")
        objs = self.strings(data["objects"], f"{path}.objects")
        mors_raw = self.obj(data["morphisms"], f"{path}.morphisms")
        mors = FinSet(list(mors_raw))
        src, tgt = {}, {}
        for f, st in mors_raw.items():
            if not isinstance(st, list) or len(st) != 2:
                self.fail(f"{path}.morphisms.{f}", "expected [source, target]")
            src[f] = self.atom(st[0], objs, f"{path}.morphisms.{f}")
            tgt[f] = self.atom(st[1], objs, f"{path}.morphisms.{f}")
        ident = self.table1(data["identities"], objs, f"{path}.identities", lambda v, p: self.atom(v, mors, p))
        comp_raw = self.obj(data["compose"], f"{path}.compose")
        comp = {}
        for g, row in comp_raw.items():
            self.atom(g, mors, f"{path}.compose")
            for f, h in self.obj(row, f"{path}.compose.{g}").items():
                self.atom(f, mors, f"{path}.compose.{g}")
                comp[g, f] = self.atom(h, mors, f"{path}.compose.{g}.{f}")
        C = FinCat(objs, mors, src, tgt, ident, comp, name=name)
        v = check_category_laws(C)
        if not v:
            raise InvariantViolation(f"{path}: category {v.law} fails at {v.witness!r}", witness=v.witness)
        return C

    def k_functor(self, data, path, name):
        if "identity" in data:
            if set(data) & {"dom", "cod", "objects", "morphisms"}:
                self.fail(path, "an identity functor takes only its category")
            C = self.sub(data["identity"], ["category"], f"{path}.identity").value
            F = CatFunctor.identity(C)
            F.name = name
            return F
        for k in ("dom", "cod", "objects", "morphisms"):
            if k not in data:
                self.fail(path, f"missing key {k!r}")
        D = self.sub(data["dom"], ["category"], f"{path}.dom").value
        C = self.sub(data["cod"], ["category"], f"{path}.cod").value
        on_obj = self.table1(data["objects"], D.objects, f"{path}.objects", lambda v, p: self.atom(v, C.objects, p))
        on_mor = self.table1(data["morphisms"], D.morphisms, f"{path}.morphisms",
                             lambda v, p: self.atom(v, C.morphisms, p))
        F = CatFunctor(D, C, on_obj, on_mor, name=name)
        v = check_functor_laws(F)
        if not v:
            raise InvariantViolation(f"{path}: functor {v.law} fails at {v.witness!r}", witness=v.witness)
        return F

    def k_relation(self, data, path, name):
        A = self.strings(data["src"], f"{path}.src")
        B = self.strings(data["dst"], f"{path}.dst") if "dst" in data else A
        pairs = data["pairs"]
        if not isinstance(pairs, list):
            self.fail(f"{path}.pairs", "expected an array of pairs")
        out = []
        for k, p in enumerate(pairs):
            if not isinstance(p, list) or len(p) != 2:
                self.fail(f"{path}.pairs[{k}]", "expected [a, b]")
            out.append((self.atom(p[0], A, f"{path}.pairs[{k}]"), self.atom(p[1], B, f"{path}.pairs[{k}]")))
        return Rel(A, B, out, name=name)

    def k_set_functor(self, data, path, name):
        C = self.sub(data["category"], ["category"], f"{path}.category").value
        sets = self.table1(data["objects"], C.objects, f"{path}.objects", lambda v, p: self.strings(v, p))
        ids = {C.ident[x] for x in C.objects}
        raw = self.obj(data["morphisms"], f"{path}.morphisms")
        on_mor = {}
        for f in C.morphisms:
            a, b = sets[C.src[f]], sets[C.tgt[f]]
            if f not in raw:
                if f in ids:
                    on_mor[f] = {x: x for x in a}
                    continue
                self.fail(f"{path}.morphisms", f"missing entry {f!r}")
            on_mor[f] = self.table1(raw[f], a, f"{path}.morphisms.{f}", lambda v, p, b=b: self.atom(v, b, p))
        extra = set(raw) - set(C.morphisms.elements)
        if extra:
            self.fail(f"{path}.morphisms", f"unexpected entries {sorted(extra)!r}")
        F = SetFunctor(C, sets, on_mor, name=name, check=False)
        v = check_set_functor_laws(F)
        if not v:
            raise InvariantViolation(f"{path}: set functor {v.law} fails at {v.witness!r}", witness=v.witness)
        return F

    def k_nat_trans(self, data, path, name):
        if ("src" in data) != ("dst" in data):
            self.fail(path, "give both src and dst, or neither")
        raw = self.obj(data["components"], f"{path}.components")
        if "src" not in data:
            comps = {}
            for x, tab in raw.items():
                tab = self.obj(tab, f"{path}.components.{x}")
                for a, b in tab.items():
                    if not isinstance(b, str):
                        self.fail(f"{path}.components.{x}.{a}", "expected a string")
                comps[x] = dict(tab)
            return comps
        F = self.sub(data["src"], ["set-functor"], f"{path}.src").value
        G = self.sub(data["dst"], ["set-functor"], f"{path}.dst").value
        comps = self.table1(raw, F.dom.objects, f"{path}.components",
                            lambda v, p: v)
        for x in F.dom.objects:
            comps[x] = self.table1(comps[x], F(x), f"{path}.components.{x}",
                                   lambda v, p, x=x: self.atom(v, G(x), p))
        phi = NatTrans(F, G, comps, name=name, check=False)
        v = check_naturality(phi)
        if not v:
            raise InvariantViolation(f"{path}: naturality fails at {v.witness!r}", witness=v.witness)
        return phi

    def k_monad(self, data, path, name):
        T = self.sub(data["functor"], ["functor"], f"{path}.functor").value
        C = T.dom
        eta = self.table1(data["unit"], C.objects, f"{path}.unit", lambda v, p: self.atom(v, C.morphisms, p))
        mu = self.table1(data["mult"], C.objects, f"{path}.mult", lambda v, p: self.atom(v, C.morphisms, p))
        M = CatMonadCell(T, eta, mu, name=name)
        i = kappa = None
        if "input" in data:
            i = self.sub(data["input"], ["functor"], f"{path}.input").value
        if "comparison" in data:
            kappa = self.table1(data["comparison"], C.objects, f"{path}.comparison",
                                lambda v, p: self.atom(v, C.morphisms, p))
        return MonadSpec(M, i, kappa)

    def pair(self, v, A: FinSet, B: FinSet, path):
        if not isinstance(v, list) or len(v) != 2:
            self.fail(path, "expected a pair [x, y]")
        return (self.atom(v[0], A, path), self.atom(v[1], B, path))

    def k_intertwiner(self, data, path, name):
        m = self.sub(data["src"], ["mealy"], f"{path}.src").value
        m2 = self.sub(data["dst"], ["mealy"], f"{path}.dst").value
        U = self.strings(data["U"], f"{path}.U")
        V = self.strings(data["V"], f"{path}.V")
        iota = self.table2(data["iota"], m2.input, U, f"{path}.iota", lambda v, p: self.pair(v, U, m.input, p))
        eps = self.table2(data["eps"], m2.states, U, f"{path}.eps", lambda v, p: self.pair(v, V, m.states, p))
        omega = self.table2(data["omega"], m2.output, U, f"{path}.omega",
                            lambda v, p: self.pair(v, V, m.output, p))
        return Intertwiner(m, m2, U, V, iota, eps, omega, name=name)

    def k_two_cell(self, data, path, name):
        a = self.sub(data["src"], ["intertwiner"], f"{path}.src").value
        b = self.sub(data["dst"], ["intertwiner"], f"{path}.dst").value
        f = self.table1(data["f"], a.U, f"{path}.f", lambda v, p: self.atom(v, b.U, p))
        g = self.table1(data["g"], a.V, f"{path}.g", lambda v, p: self.atom(v, b.V, p))
        return IntertwinerTwoCell(a, b, f, g)

    def subset(self, v, A: FinSet, path):
        if not isinstance(v, list):
            self.fail(path, "expected an array")
        return frozenset(self.atom(x, A, path) for x in v)

    def k_powerset_mealy(self, data, path, name):
        E = self.strings(data["states"], f"{path}.states")
        I = self.strings(data["input"], f"{path}.input")
        O = self.strings(data["output"], f"{path}.output")
        d = self.table2(data["d"], E, I, f"{path}.d", lambda v, p: self.subset(v, E, p))
        s = self.table2(data["s"], E, I, f"{path}.s", lambda v, p: self.subset(v, O, p))
        return PowersetMealy(E, I, O, d, s, name=name)

    def k_span(self, data, path, name):
        p = self.sub(data["left"], ["functor"], f"{path}.left").value
        S = self.sub(data["right"], ["functor"], f"{path}.right").value
        try:
            return GuitartSpan(p, S, name=name)
        except PreconditionError as exc:
            raise InvariantViolation(f"{path}: {exc}") from None

    def k_counterexample(self, data, path, name):
        if not isinstance(data["command"], str):
            self.fail(f"{path}.command", "expected a string")
        if not isinstance(data["inputs"], list):
            self.fail(f"{path}.inputs", "expected an array of documents")
        inputs = [self.sub(x, [k for k in KINDS if k != "counterexample"], f"{path}.inputs[{i}]")
                  for i, x in enumerate(data["inputs"])]
        options = data.get("options", {})
        self.obj(options, f"{path}.options")
        return {"command": data["command"], "law": data["law"], "witness": data.get("witness"),
                "inputs": inputs, "options": options}


def parse_document(text: str, base_dir: str = ".", source: Optional[str] = None) -> Document:
    """Parse a document; references are resolved relative to ``base_dir``."""
    return _Parser(base_dir, source).top(text)


def load_document(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UnresolvedReference(f"cannot read {path}: {exc.strerror}") from None
    full = os.path.abspath(path)
    return _Parser(os.path.dirname(full), path, (("file", full),)).top(text)


# -- serialization -----------------------------------------------------------

def _names(S: FinSet):
    return [render_atom(x) for x in S]


def _table2(table, rows, cols, cell=_jsonable):
    return {render_atom(r): {render_atom(c): cell(table[r, c]) for c in cols} for r in rows}


def _head(kind, name):
    out = {"kind": kind}
    if name:
        out["name"] = name
    return out


def _monoid_data(M, name=""):
    out = _head("monoid", name or getattr(M, "name", ""))
    if M.is_free:
        out["free"] = _names(M.generators)
        return out
    out["carrier"] = _names(M.carrier)
    out["unit"] = render_atom(M.unit)
    out["mul"] = _table2(M.table, M.carrier, M.carrier)
    return out


def _category_data(C: FinCat, name=""):
    out = _head("category", name or C.name)
    out["objects"] = _names(C.objects)
    out["morphisms"] = {render_atom(f): [render_atom(C.src[f]), render_atom(C.tgt[f])] for f in C.morphisms}
    out["identities"] = {render_atom(x): render_atom(C.ident[x]) for x in C.objects}
    comp = {}
    for g in C.morphisms:
        row = {render_atom(f): render_atom(C.comp[g, f]) for f in C.morphisms if (g, f) in C.comp}
        if row:
            comp[render_atom(g)] = row
    out["compose"] = comp
    return out


def _functor_data(F: CatFunctor, name=""):
    out = _head("functor", name or F.name)
    out["dom"] = _category_data(F.dom)
    out["cod"] = _category_data(F.cod)
    out["objects"] = {render_atom(x): render_atom(F.on_obj[x]) for x in F.dom.objects}
    out["morphisms"] = {render_atom(f): render_atom(F.on_mor[f]) for f in F.dom.morphisms}
    return out


def _set_functor_data(F: SetFunctor, name=""):
    out = _head("set-functor", name or F.name)
    out["category"] = _category_data(F.dom)
    out["objects"] = {render_atom(x): _names(F(x)) for x in F.dom.objects}
    out["morphisms"] = {render_atom(f): {render_atom(a): render_atom(b) for a, b in
                                         ((a, F.on_mor[f].table[a]) for a in F(F.dom.src[f]))}
                        for f in F.dom.morphisms}
    return out


def _mealy_data(m: MealyMachine, name=""):
    out = _head("mealy", name or m.name)
    out["states"] = _names(m.states)
    out["input"] = _names(m.input)
    out["output"] = _names(m.output)
    if m._initial is not None:
        out["initial"] = render_atom(m._initial)
    out["d"] = _table2(m.d.table, m.states, m.input)
    out["s"] = _table2(m.s.table, m.states, m.input)
    return out


def _moore_data(m: MooreMachine, name=""):
    out = _head("moore", name or m.name)
    out["states"] = _names(m.states)
    out["input"] = _names(m.input)
    out["output"] = _names(m.output)
    if m._initial is not None:
        out["initial"] = render_atom(m._initial)
    out["d"] = _table2(m.d.table, m.states, m.input)
    out["s"] = {render_atom(e): render_atom(m.s.table[e]) for e in m.states}
    return out


def _monoid_machine_data(m: MonoidMealyMachine, name=""):
    out = _head("monoid-machine", name or m.name)
    M, N = m.in_monoid, m.out_monoid
    out["states"] = _names(m.states)
    out["in"] = _monoid_data(M)
    out["out"] = _monoid_data(N)
    if M.is_free:
        keys = M.generators
        s = {(e, a): m.out(e, M.letter(a)) for e in m.states for a in keys}
    else:
        keys = M.carrier
        s = {(e, x): m.out(e, x) for e in m.states for x in keys}
    out["d"] = _table2(m.d, m.states, keys)
    out["s"] = _table2(s, m.states, keys)
    return out


def _relation_data(R: Rel, name=""):
    out = _head("relation", name or R.name)
    out["src"] = _names(R.src)
    out["dst"] = _names(R.dst)
    out["pairs"] = [[render_atom(a), render_atom(b)] for a, b in R.sorted_pairs()]
    return out


def _pair(p):
    return [render_atom(p[0]), render_atom(p[1])]


def _intertwiner_data(it: Intertwiner, name=""):
    out = _head("intertwiner", name or it.name)
    out["src"] = _mealy_data(it.src)
    out["dst"] = _mealy_data(it.dst)
    out["U"] = _names(it.U)
    out["V"] = _names(it.V)
    out["iota"] = _table2(it.iota.table, it.dst.input, it.U, _pair)
    out["eps"] = _table2(it.eps.table, it.dst.states, it.U, _pair)
    out["omega"] = _table2(it.omega.table, it.dst.output, it.U, _pair)
    return out


def _subset(S):
    return sorted(render_atom(x) for x in S)


def _powerset_data(n: PowersetMealy, name=""):
    out = _head("powerset-mealy", name or n.name)
    out["states"] = _names(n.states)
    out["input"] = _names(n.input)
    out["output"] = _names(n.output)
    out["d"] = _table2(n.d, n.states, n.input, _subset)
    out["s"] = _table2(n.s, n.states, n.input, _subset)
    return out


def _nat_trans_data(phi, name=""):
    out = _head("nat-trans", name)
    if isinstance(phi, dict):
        out["components"] = {x: dict(t) for x, t in phi.items()}
        return out
    out["src"] = _set_functor_data(phi.src)
    out["dst"] = _set_functor_data(phi.dst)
    out["components"] = {render_atom(x): {render_atom(a): render_atom(b) for a, b in
                                          ((a, phi[x].table[a]) for a in phi.src(x))}
                         for x in phi.src.dom.objects}
    return out


def _monad_data(spec: MonadSpec, name=""):
    M = spec.monad
    out = _head("monad", name or M.name)
    out["functor"] = _functor_data(M.T)
    out["unit"] = {render_atom(c): render_atom(M.eta[c]) for c in M.T.dom.objects}
    out["mult"] = {render_atom(c): render_atom(M.mu[c]) for c in M.T.dom.objects}
    if spec.input is not None:
        out["input"] = _functor_data(spec.input)
    if spec.kappa is not None:
        out["comparison"] = {render_atom(c): render_atom(k) for c, k in spec.kappa.items()}
    return out


def _two_cell_data(tc: IntertwinerTwoCell, name=""):
    out = _head("two-cell", name)
    out["src"] = _intertwiner_data(tc.src)
    out["dst"] = _intertwiner_data(tc.dst)
    out["f"] = {render_atom(u): render_atom(tc.f.table[u]) for u in tc.src.U}
    out["g"] = {render_atom(v): render_atom(tc.g.table[v]) for v in tc.src.V}
    return out


def _span_data(sp: GuitartSpan, name=""):
    out = _head("span", name or sp.name)
    out["left"] = _functor_data(sp.p)
    out["right"] = _functor_data(sp.S)
    return out


def _counterexample_data(c, name=""):
    out = _head("counterexample", name)
    out["command"] = c["command"]
    out["law"] = c["law"]
    if c.get("witness") is not None:
        out["witness"] = c["witness"]
    if c.get("options"):
        out["options"] = c["options"]
    out["inputs"] = [to_data(d) for d in c["inputs"]]
    return out


_WRITERS = {
    "mealy": _mealy_data,
    "moore": _moore_data,
    "monoid": _monoid_data,
    "monoid-machine": _monoid_machine_data,
    "category": _category_data,
    "functor": _functor_data,
    "relation": _relation_data,
    "set-functor": _set_functor_data,
    "nat-trans": _nat_trans_data,
    "monad": _monad_data,
    "intertwiner": _intertwiner_data,
    "two-cell": _two_cell_data,
    "powerset-mealy": _powerset_data,
    "span": _span_data,
    "counterexample": _counterexample_data,
}


def to_data(doc: Document) -> dict:
    return _WRITERS[doc.kind](doc.value, doc.name)


def serialize(doc: Document) -> str:
    return json.dumps(to_data(doc), indent=2, ensure_ascii=False) + "\n"


def document_of(value, name: str = "") -> Document:
    """Wrap a core object in a Document of the matching kind."""
    for cls, kind in ((MealyMachine, "mealy"), (MooreMachine, "moore"), (MonoidMealyMachine, "monoid-machine"),
                      (FinMonoid, "monoid"), (FreeMonoid, "monoid"), (FinCat, "category"),
                      (CatFunctor, "functor"), (Rel, "relation"), (SetFunctor, "set-functor"),
                      (NatTrans, "nat-trans"), (MonadSpec, "monad"), (Intertwiner, "intertwiner"),
                      (IntertwinerTwoCell, "two-cell"), (PowersetMealy, "powerset-mealy"),
                      (GuitartSpan, "span")):
        if isinstance(value, cls):
            return Document(kind, value, name)
    raise TypeMismatch(f"no document kind for {type(value).__name__}")


def witness_data(w):
    """A JSON rendering of a counterexample witness."""
    if isinstance(w, Word):
        return [render_atom(a) for a in w.letters]
    if isinstance(w, (tuple, list)):
        return [witness_data(x) for x in w]
    if isinstance(w, frozenset):
        return render_atom(w)
    if isinstance(w, Rel):
        return [[render_atom(a), render_atom(b)] for a, b in w.sorted_pairs()]
    if w is None or isinstance(w, (int, str)):
        return w
    return render_atom(w)


"""Command line front-end.

Exit status: 0 when the command succeeds or the law holds, 1 when a law
fails (the counterexample is printed as a document), 2 on malformed input
or bad usage.  Reports go to standard output, errors to standard error.
"""

import argparse
import json
import sys
from typing import List, Optional

from . import catmachines as cm
from . import fugal, guitart, kleisli, laws, rel
from .document import (Document, document_of, load_document, parse_word_arg, render_atom, render_word,
                       serialize, to_data, witness_data)
from .errors import MealycatError, UsageError
from .finset import FinSet
from .intertwiner import check_intertwiner, check_two_cell, compose_intertwiners
from .machines import MooreMachine, compose_diamond, run_mealy, run_moore
from .verdict import Verdict

DEFAULT_LEN = 5


class _Exit(Exception):
    def __init__(self, code):
        self.code = code


def _out(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_doc(value, name=""):
    doc = value if isinstance(value, Document) else document_of(value, name)
    _out(serialize(doc))


def _expect(doc: Document, kinds, what="input"):
    if doc.kind not in kinds:
        raise UsageError(f"{what} must be a {' or '.join(kinds)} document, got {doc.kind!r}")
    return doc.value


def _load_inputs(args, command: str, count: int) -> List[Document]:
    """Load the positional documents; a single counterexample of this command stands for its inputs."""
    docs = [load_document(p) for p in args.inputs]
    if len(docs) == 1 and docs[0].kind == "counterexample":
        cex = docs[0].value
        if cex["command"] != command:
            raise UsageError(f"counterexample was produced by {cex['command']!r}, not {command!r}")
        for key, val in cex["options"].items():
            if getattr(args, key, None) is None:
                setattr(args, key, val)
        docs = cex["inputs"]
    if len(docs) != count:
        raise UsageError(f"{command} takes {count} document(s), got {len(docs)}")
    return docs


def _report(command: str, v: Verdict, docs: List[Document], label: str, options=None) -> int:
    if v:
        _out(f"{label}: {v.describe()}")
        return 0
    data = {"kind": "counterexample", "command": command, "law": v.law, "witness": witness_data(v.witness)}
    if options:
        data["options"] = options
    data["inputs"] = [to_data(d) for d in docs]
    _out(json.dumps(data, indent=2, ensure_ascii=False))
    return 1


def _length(args) -> int:
    n = DEFAULT_LEN if args.len is None else args.len
    if n < 0:
        raise UsageError("--len must be non-negative")
    return n


def _state_arg(text: str, states: FinSet):
    for e in states:
        if render_atom(e) == text:
            return e
    raise UsageError(f"{text!r} is not a state")


def _print_run(final, word):
    _out(f"final: {render_atom(final)}")
    _out(f"output: {render_word(word)}")


def _run_machine(m, word_text: str, start: Optional[str]):
    w = parse_word_arg(word_text, m.input)
    e0 = m.initial if start is None else _state_arg(start, m.states)
    if isinstance(m, MooreMachine):
        final, out = run_moore(m, e0, w)
    else:
        final, out = run_mealy(m, e0, w)
    _print_run(final, out)


# -- commands ----------------------------------------------------------------

def cmd_run(args):
    (doc,) = _load_inputs(args, "run", 1)
    m = _expect(doc, ["mealy", "moore"], "machine")
    _run_machine(m, args.word, args.start)
    return 0


def cmd_compose(args):
    d2, d1 = _load_inputs(args, "compose", 2)
    m2 = _expect(d2, ["mealy"], "second machine")
    m1 = _expect(d1, ["mealy"], "first machine")
    comp = compose_diamond(m2, m1, name=f"{m2.name}<>{m1.name}" if m2.name and m1.name else "")
    if args.run is not None:
        _run_machine(comp, args.run, args.start)
    else:
        _emit_doc(comp)
    return 0


def _as_monoid_machine(doc):
    if doc.kind == "mealy":
        return fugal.fugal_extension(doc.value)
    return _expect(doc, ["monoid-machine", "mealy"], "machine")


def cmd_fugal_check(args):
    docs = _load_inputs(args, "fugal check", 1)
    m = _as_monoid_machine(docs[0])
    bound = _length(args) if m.in_monoid.is_free else None
    v = fugal.is_fugal(m, bound)
    opts = {"len": bound} if bound is not None else None
    return _report("fugal check", v, docs, "fugal", opts)


def cmd_fugal_extend(args):
    (doc,) = _load_inputs(args, "fugal extend", 1)
    m = _expect(doc, ["mealy"], "machine")
    ext = fugal.fugal_extension(m)
    if args.eval is not None:
        e0 = m.initial if args.start is None else _state_arg(args.start, m.states)
        w = parse_word_arg(args.eval, m.input)
        _print_run(ext.act(e0, w), ext.out(e0, w))
    else:
        _emit_doc(ext)
    return 0


def cmd_adjunction(args):
    if args.monoid is not None:
        args.inputs = list(args.inputs) + [args.monoid]
    docs = [load_document(p) for p in args.inputs]
    if len(docs) == 1 and docs[0].kind == "counterexample":
        docs = _load_inputs(args, "adjunction roundtrip", len(docs[0].value["inputs"]))
    bound = _length(args)
    if docs[0].kind == "mealy":
        if len(docs) != 2:
            raise UsageError("a Set machine needs a target monoid (--monoid FILE)")
        target = _expect(docs[1], ["monoid"], "target")
        v = fugal.verify_roundtrips(docs[0].value, target, bound)
    else:
        if len(docs) != 1:
            raise UsageError("a machine over a free monoid takes no target")
        m = _expect(docs[0], ["monoid-machine"], "machine")
        v = fugal.verify_kh(m, bound)
    return _report("adjunction roundtrip", v, docs, "roundtrip", {"len": bound})


def cmd_guitart_translate(args):
    (doc,) = _load_inputs(args, "guitart translate", 1)
    m = _expect(doc, ["monoid-machine"], "machine")
    _, proj = guitart.translation_of(m)
    proj.name = "projection"
    _emit_doc(proj)
    return 0


def cmd_guitart_sigma(args):
    docs = _load_inputs(args, "guitart sigma", 1)
    m = _expect(docs[0], ["monoid-machine"], "machine")
    F, v = guitart.sigma_functor(m)
    if F is None:
        return _report("guitart sigma", v, docs, "sigma")
    _emit_doc(F)
    return 0


def cmd_guitart_compose(args):
    d1, d2 = _load_inputs(args, "guitart compose", 2)
    m1 = _expect(d1, ["monoid-machine"], "first machine")
    m2 = _expect(d2, ["monoid-machine"], "second machine")
    _emit_doc(guitart.compose_spans(guitart.pi_span(m1), guitart.pi_span(m2)))
    return 0


def cmd_guitart_verify(args):
    docs = _load_inputs(args, "guitart verify", 2)
    m1 = _expect(docs[0], ["monoid-machine"], "first machine")
    m2 = _expect(docs[1], ["monoid-machine"], "second machine")
    return _report("guitart verify", guitart.verify_pi_functoriality(m1, m2), docs, "pi functoriality")


def cmd_kleisli_lift(args):
    (doc,) = _load_inputs(args, "kleisli lift", 1)
    _emit_doc(kleisli.lift_deterministic(_expect(doc, ["mealy"], "machine")))
    return 0


def _powerset(doc):
    if doc.kind == "mealy":
        return kleisli.lift_deterministic(doc.value)
    return _expect(doc, ["powerset-mealy", "mealy"], "machine")


def cmd_kleisli_expand(args):
    (doc,) = _load_inputs(args, "kleisli expand", 1)
    n = _powerset(doc)
    bits = kleisli.DEFAULT_POWERSET_BITS if args.limit is None else args.limit
    _emit_doc(kleisli.expand(n, bits))
    return 0


def cmd_kleisli_run(args):
    (doc,) = _load_inputs(args, "kleisli run", 1)
    n = _powerset(doc)
    if args.start is None:
        start = [n.states[0]] if len(n.states) else []
    elif args.start == "":
        start = []
    else:
        start = [_state_arg(t, n.states) for t in args.start.split(",")]
    w = parse_word_arg(args.word, n.input)
    for k, (S, O) in enumerate(kleisli.run_nondeterministic(n, start, w), 1):
        _out(f"{k}: states {render_atom(S)} outputs {render_atom(O)}")
    return 0


def _mode(args) -> str:
    if args.mode is None:
        return "moore"
    return args.mode


def cmd_rel_ran(args):
    dI, dO = _load_inputs(args, "rel ran", 2)
    I = _expect(dI, ["relation"], "input relation")
    O = _expect(dO, ["relation"], "output relation")
    _emit_doc(rel.ran_reachability(I, O, _mode(args)))
    return 0


def cmd_rel_verify(args):
    docs = _load_inputs(args, "rel verify-terminal", 3)
    R, I, O = (_expect(d, ["relation"], "relation") for d in docs)
    bits = rel.DEFAULT_ENUMERATION_BITS if args.limit is None else args.limit
    mode = _mode(args)
    v = rel.verify_terminal(R, I, O, mode, limit_bits=bits)
    return _report("rel verify-terminal", v, docs, f"terminal {mode} machine", {"mode": mode})


def _endofunctor(doc):
    if doc.kind == "monad":
        return doc.value.monad.T
    return _expect(doc, ["functor", "monad"], "endofunctor")


def _family_label(alpha) -> str:
    return "{" + ", ".join(f"{render_atom(x)}.{render_atom(f)}={render_atom(v)}" for (x, f), v in alpha) + "}"


def _labelled(F: cm.SetFunctor, label) -> cm.SetFunctor:
    """Rename elements through ``label`` (injective on each set)."""
    C = F.dom
    sets = {x: FinSet([label(a) for a in F(x)]) for x in C.objects}
    on_mor = {f: {label(a): label(b) for a, b in F.on_mor[f].table.items()} for f in C.morphisms}
    return cm.SetFunctor(C, sets, on_mor, name=F.name, check=False)


def cmd_cat_ran(args):
    dT, dO = _load_inputs(args, "cat ran", 2)
    T = _endofunctor(dT)
    O = _expect(dO, ["set-functor"], "output functor")
    limit = cm.DEFAULT_CANDIDATE_LIMIT if args.limit is None else args.limit
    R = cm.ran_along(T, O, limit)
    _emit_doc(_labelled(R, _family_label), name="Ran")
    return 0


def _component_tables(phi, key=render_atom, value=render_atom):
    return {render_atom(x): {key(a): value(b) for a, b in phi[x].table.items()}
            for x in phi.src.dom.objects}


def cmd_cat_machine(args):
    dM, dO = _load_inputs(args, "cat machine", 2)
    spec = _expect(dM, ["monad"], "monad")
    O = _expect(dO, ["set-functor"], "output functor")
    limit = cm.DEFAULT_CANDIDATE_LIMIT if args.limit is None else args.limit
    moore, mealy = cm.build_machine_from_monad(spec.monad, O, spec.input, spec.kappa, limit)
    fam = _family_label
    report = {
        "carrier": to_data(document_of(_labelled(moore.E, fam), "E")),
        "delta": {render_atom(x): {fam(a): fam(b) for a, b in moore.delta[x].table.items()}
                  for x in O.dom.objects},
        "sigma_moore": _component_tables(moore.sigma, fam),
        "sigma_mealy": _component_tables(mealy.sigma, fam),
    }
    _out(json.dumps(report, indent=2, ensure_ascii=False))
    return 0


def cmd_cat_verify_up(args):
    docs = _load_inputs(args, "cat verify-up", 4)
    T = _endofunctor(docs[0])
    O = _expect(docs[1], ["set-functor"], "output functor")
    E = _expect(docs[2], ["set-functor"], "source functor")
    g = _expect(docs[3], ["nat-trans"], "gamma")
    ET = cm.precompose(E, T)
    if isinstance(g, cm.NatTrans):
        if g.src != ET or g.dst != O:
            raise UsageError("gamma must go from E o T to O")
        gamma = g
    else:
        comps = {}
        for x in T.dom.objects:
            key = render_atom(x)
            if key not in g:
                raise UsageError(f"gamma has no component at {key!r}")
            comps[x] = g[key]
        gamma = cm.NatTrans(ET, O, comps, check=False)
    limit = cm.DEFAULT_CANDIDATE_LIMIT if args.limit is None else args.limit
    v = cm.check_ran_universal_property(T, O, E, gamma, limit)
    if v:
        _out("universal property: ok (unique mediator)")
        _out(json.dumps({"mediator": _component_tables(v.witness, value=_family_label)}, indent=2, ensure_ascii=False))
        return 0
    return _report("cat verify-up", v, docs, "universal property")


def cmd_intertwiner_check(args):
    docs = _load_inputs(args, "intertwiner check", 1)
    doc = docs[0]
    if doc.kind == "two-cell":
        return _report("intertwiner check", check_two_cell(doc.value), docs, "two-cell")
    it = _expect(doc, ["intertwiner", "two-cell"], "intertwiner")
    return _report("intertwiner check", check_intertwiner(it), docs, "intertwiner")


def cmd_intertwiner_compose(args):
    d2, d1 = _load_inputs(args, "intertwiner compose", 2)
    it2 = _expect(d2, ["intertwiner"], "second intertwiner")
    it1 = _expect(d1, ["intertwiner"], "first intertwiner")
    _emit_doc(compose_intertwiners(it2, it1))
    return 0


def cmd_laws(args):
    length = _length(args)
    results = laws.run_all(seed=args.seed, length=length, limit=args.limit)
    failed = 0
    for name, v in results:
        status = "PASS" if v else "FAIL"
        if not v:
            failed += 1
        _out(f"{status} {name}: {v.describe()}")
    _out(f"{len(results) - failed}/{len(results)} laws hold (seed {args.seed}, len {length})")
    return 1 if failed else 0


# -- parser ------------------------------------------------------------------

def _add_len(p):
    p.add_argument("--len", type=int, default=None, help=f"word length bound (default {DEFAULT_LEN})")


def _add_limit(p, help_text):
    p.add_argument("--limit", type=int, default=None, help=help_text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise _Exit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mealycat", description="Finite Mealy machine constructions and law checkers.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    r = sub.add_parser("run", help="run a machine on a word")
    r.add_argument("inputs", nargs=1, metavar="MACHINE")
    r.add_argument("word")
    r.add_argument("--from", dest="start", default=None, help="start state (default: the initial state)")
    r.set_defaults(func=cmd_run)

    c = sub.add_parser("compose", help="diamond composite SECOND <> FIRST")
    c.add_argument("inputs", nargs=2, metavar="MACHINE")
    c.add_argument("--run", default=None, metavar="WORD", help="run the composite instead of printing it")
    c.add_argument("--from", dest="start", default=None)
    c.set_defaults(func=cmd_compose)

    f = sub.add_parser("fugal", help="fugality and fugal extension")
    fs = f.add_subparsers(dest="action", parser_class=_Parser)
    x = fs.add_parser("check")
    x.add_argument("inputs", nargs=1, metavar="MACHINE")
    _add_len(x)
    x.set_defaults(func=cmd_fugal_check)
    x = fs.add_parser("extend")
    x.add_argument("inputs", nargs=1, metavar="MACHINE")
    x.add_argument("--eval", default=None, metavar="WORD")
    x.add_argument("--from", dest="start", default=None)
    x.set_defaults(func=cmd_fugal_extend)

    a = sub.add_parser("adjunction", help="restriction/extension round trips")
    as_ = a.add_subparsers(dest="action", parser_class=_Parser)
    x = as_.add_parser("roundtrip")
    x.add_argument("inputs", nargs="+", metavar="DOC")
    x.add_argument("--monoid", default=None, metavar="MONOID")
    _add_len(x)
    x.set_defaults(func=cmd_adjunction)

    g = sub.add_parser("guitart", help="translation categories and spans")
    gs = g.add_subparsers(dest="action", parser_class=_Parser)
    for name, func, n in (("translate", cmd_guitart_translate, 1), ("sigma", cmd_guitart_sigma, 1),
                          ("compose", cmd_guitart_compose, 2), ("verify", cmd_guitart_verify, 2)):
        x = gs.add_parser(name)
        x.add_argument("inputs", nargs=n, metavar="MACHINE")
        x.set_defaults(func=func)

    k = sub.add_parser("kleisli", help="powerset machines")
    ks = k.add_subparsers(dest="action", parser_class=_Parser)
    x = ks.add_parser("lift")
    x.add_argument("inputs", nargs=1, metavar="MACHINE")
    x.set_defaults(func=cmd_kleisli_lift)
    x = ks.add_parser("expand")
    x.add_argument("inputs", nargs=1, metavar="MACHINE")
    _add_limit(x, "maximum |E| + |I| for materialising subsets")
    x.set_defaults(func=cmd_kleisli_expand)
    x = ks.add_parser("run")
    x.add_argument("inputs", nargs=1, metavar="MACHINE")
    x.add_argument("word")
    x.add_argument("--from", dest="start", default=None, help="comma-separated start states")
    x.set_defaults(func=cmd_kleisli_run)

    rl = sub.add_parser("rel", help="machines in relations")
    rs = rl.add_subparsers(dest="action", parser_class=_Parser)
    for name, func, n in (("ran", cmd_rel_ran, 2), ("verify-terminal", cmd_rel_verify, 3)):
        x = rs.add_parser(name)
        x.add_argument("inputs", nargs=n, metavar="RELATION")
        mode = x.add_mutually_exclusive_group()
        mode.add_argument("--moore", dest="mode", action="store_const", const="moore", default=None)
        mode.add_argument("--mealy", dest="mode", action="store_const", const="mealy")
        if name == "verify-terminal":
            _add_limit(x, "maximum |A|*|B| for enumeration")
        x.set_defaults(func=func)

    ct = sub.add_parser("cat", help="machines in finite functor categories")
    cs = ct.add_subparsers(dest="action", parser_class=_Parser)
    for name, func, n in (("ran", cmd_cat_ran, 2), ("machine", cmd_cat_machine, 2),
                          ("verify-up", cmd_cat_verify_up, 4)):
        x = cs.add_parser(name)
        x.add_argument("inputs", nargs=n, metavar="DOC")
        _add_limit(x, "maximum number of enumerated candidates")
        x.set_defaults(func=func)

    it = sub.add_parser("intertwiner", help="intertwiners and their 2-cells")
    its = it.add_subparsers(dest="action", parser_class=_Parser)
    x = its.add_parser("check")
    x.add_argument("inputs", nargs=1, metavar="DOC")
    x.set_defaults(func=cmd_intertwiner_check)
    x = its.add_parser("compose")
    x.add_argument("inputs", nargs=2, metavar="INTERTWINER")
    x.set_defaults(func=cmd_intertwiner_compose)

    lw = sub.add_parser("laws", help="run the whole property suite")
    lw.add_argument("--seed", type=int, default=0)
    _add_len(lw)
    _add_limit(lw, "maximum enumeration size for exhaustive laws")
    lw.set_defaults(func=cmd_laws)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not hasattr(args, "func"):
            parser.print_usage(sys.stderr)
            sys.stderr.write("mealycat: error: a command is required\n")
            return 2
        return args.func(args)
    except _Exit as exc:
        return exc.code
    except MealycatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

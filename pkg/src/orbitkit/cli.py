"""Command line interface: ``orbitkit <subcommand> ...``.

Exit codes: 0 definite verdict, 2 unknown / budget exhausted,
1 usage or parse error, 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time

from . import algebra, classifier, gadgets, orbits, tilings
from .action import (UPWord, Undefined, UndefinedPrefix, act_finite,
                     act_up, parse_upword, render_seq, render_word, tokenize)
from .automaton import (classify, compose, disjoint_union, dual, inverse, parse, power,
                        serialize)
from .corpus import ORACLE_FAMILIES, corpus_dump, corpus_get, corpus_names, oracle_get
from .dot import automaton_dot, cayley_dot, orbital_dot
from .errors import InvariantViolation, OrbitkitError, ParseError

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# --------------------------------------------------------------------------
# input helpers

class Inputs:
    """Collects everything read so the report can carry a digest."""

    def __init__(self):
        self.h = hashlib.sha256()

    def add(self, label, text):
        self.h.update(label.encode() + b"\0" + text.encode() + b"\0")

    def digest(self):
        return self.h.hexdigest()


def load_automaton(source: str, inputs: Inputs):
    """A file path, a corpus name, or ``oracle:<family>``."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        inputs.add("file", text)
        return parse(text)
    if source.startswith("oracle:"):
        fam = source.split(":", 1)[1]
        if fam not in ORACLE_FAMILIES:
            raise ParseError(f"unknown oracle family {fam!r}")
        inputs.add("oracle", fam)
        return oracle_get(fam)
    if source in corpus_names():
        inputs.add("corpus", source)
        return corpus_get(source)
    raise ParseError(f"no such file or corpus automaton: {source!r}")


def parse_seq(a, text: str) -> tuple:
    """Comma separated states; without commas, greedy split over state names."""
    text = (text or "").strip()
    if text in ("", "ε", "eps"):
        return ()
    if "," in text or not a.is_finite:
        return tuple(a.parse_state(t) for t in text.split(",") if t.strip())
    if text in a.state_index:
        return (text,)
    try:
        return tokenize(a.states, text)
    except OrbitkitError:
        raise ParseError(f"cannot split {text!r} into states of {a.name}") from None


def parse_gens(a, text):
    if text is None:
        if not a.is_finite:
            raise ParseError("oracle automata need explicit --gens")
        return [(q,) for q in a.states]
    return [parse_seq(a, part) for part in text.split(";")]


def parse_lang(a, args):
    kind = getattr(args, "lang", "full")
    if kind == "full" and getattr(args, "gens", None) is None:
        return orbits.GenLang.full()
    if kind == "ideal":
        if not args.ideal:
            raise ParseError("--lang ideal needs --ideal SEQ")
        return orbits.GenLang.left_ideal(parse_seq(a, args.ideal))
    return orbits.GenLang.blocks_star(parse_gens(a, args.gens))


# --------------------------------------------------------------------------
# output helpers

def jsonable(x, rs=str):
    if isinstance(x, UPWord):
        return x.render(" ") if any(len(c) > 1 for c in x.preperiod + x.period) else x.render()
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        d = {"type": type(x).__name__}
        for f in dataclasses.fields(x):
            d[f.name] = jsonable(getattr(x, f.name), rs)
        return d
    if isinstance(x, dict):
        return {str(k): jsonable(v, rs) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = list(x)
        if isinstance(x, (frozenset, set)):
            items = sorted(items, key=repr)
        return [jsonable(v, rs) for v in items]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return rs(x)


class Out:
    def __init__(self, args, inputs):
        self.args = args
        self.inputs = inputs
        self.t0 = time.perf_counter()

    def emit(self, verdict: dict, text: str, definite: bool, budget=None) -> int:
        if getattr(self.args, "json", False):
            report = {
                "subcommand": self.args.cmd,
                "inputs_digest": self.inputs.digest(),
                "verdict": verdict,
                "definite": definite,
                "budget": budget or {},
                "wall_time": round(time.perf_counter() - self.t0, 6),
            }
            print(json.dumps(report, sort_keys=True, ensure_ascii=False))
        else:
            print(text)
        return EXIT_OK if definite else EXIT_UNKNOWN


def write_dot(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def rseq(a, s):
    return render_seq(s, a.render_state)


def rw(w):
    return render_word(w)


# --------------------------------------------------------------------------
# subcommands

def cmd_act(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    s = parse_seq(a, args.seq)
    inputs.add("args", f"{args.seq}|{args.word}|{args.upword}")
    if args.upword is not None:
        x = parse_upword(a.alphabet, args.upword)
        r = act_up(a, s, x)
        if isinstance(r, UndefinedPrefix):
            return out.emit(jsonable(r), f"undefined on the prefix of length {r.length}", True)
        return out.emit({"type": "Defined", "output": jsonable(r)}, jsonable(r), True)
    if args.word is None:
        raise UsageError("act needs --word or --upword")
    w = tokenize(a.alphabet, args.word)
    r = act_finite(a, s, w)
    if isinstance(r, Undefined):
        v = {"type": "Undefined", "position": r.position, "row": r.row,
             "state": a.render_state(r.state), "letter": r.letter}
        return out.emit(v, f"undefined: state {a.render_state(r.state)} has no transition on "
                           f"{r.letter} (row {r.row}, position {r.position})", True)
    v = {"type": "Defined", "output": list(r.output),
         "residual": [a.render_state(q) for q in r.residual]}
    return out.emit(v, f"{rw(r.output)}\nresidual: {rseq(a, r.residual)}", True)


def cmd_orbit(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    lang = parse_lang(a, args)
    u = tokenize(a.alphabet, args.word)
    inputs.add("args", f"{args.word}|{lang}")
    o = orbits.orbital_transducer(a, lang, u, node_limit=args.node_budget)
    if args.dot:
        write_dot(args.dot, orbital_dot(o, a.render_state))
    words = [rw(w) for w in o.nodes]
    v = {"type": "Orbit" if o.complete else "ExceededBudget", "size": len(o), "words": words}
    text = f"orbit size {len(o)}" + ("" if o.complete else " (cut by node budget)")
    text += "\n" + "\n".join(words)
    return out.emit(v, text, o.complete, {"nodes": args.node_budget})


def cmd_orbit_up(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    lang = parse_lang(a, args)
    x = parse_upword(a.alphabet, args.upword)
    inputs.add("args", f"{args.upword}|{lang}|{args.node_budget}")
    r = orbits.orbit_up(a, lang, x, args.node_budget)
    if isinstance(r, orbits.Finite):
        words = [jsonable(w) for w in r.words]
        return out.emit({"type": "Finite", "size": len(r), "words": words},
                        f"finite orbit of size {len(r)}\n" + "\n".join(words), True,
                        {"nodes": args.node_budget})
    return out.emit(jsonable(r), f"orbit exceeds the node budget ({r.visited} words seen)",
                    False, {"nodes": args.node_budget})


def cmd_witness(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    lang = parse_lang(a, args)
    inputs.add("args", f"{args.target}|{args.depth}|{lang}")
    r = orbits.witness_search(a, lang, args.target, args.depth)
    chain = [{"prefix": rw(p), "size": n} for p, n in r.chain]
    lines = [f"{c['prefix']}: {c['size']}" for c in chain]
    if isinstance(r, orbits.GrowthCertificate):
        return out.emit({"type": "GrowthCertificate", "chain": chain},
                        "growth certificate\n" + "\n".join(lines), True, {"depth": args.depth})
    return out.emit({"type": "Stalled", "prefix": rw(r.prefix), "chain": chain},
                    f"stalled at {rw(r.prefix)}\n" + "\n".join(lines), False, {"depth": args.depth})


def cmd_path(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    lang = parse_lang(a, args)
    u = tokenize(a.alphabet, args.word)
    inputs.add("args", f"{args.word}|{args.length}|{lang}")
    r = orbits.orbit_path_search(a, lang, u, args.length, args.node_budget)
    if isinstance(r, orbits.OrbitPath):
        F = lang.blocks(a)
        labels = [render_seq(F[f], a.render_state, tag=False) for f in r.labels]
        nodes = [rw(w) for w in r.nodes]
        text = nodes[0] + "".join(f" -{l}-> {n}" for l, n in zip(labels, nodes[1:]))
        return out.emit({"type": "OrbitPath", "nodes": nodes, "labels": labels}, text, True)
    return out.emit(jsonable(r), "no simple path of that length" +
                    ("" if r.exhausted else " within the node budget"), r.exhausted,
                    {"nodes": args.node_budget})


def _elements(a, reps):
    return [render_seq(s, a.render_state, tag=False) for s in reps]


def cmd_ball(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    gens = parse_gens(a, args.gens)
    inputs.add("args", f"{args.gens}|{args.max_len}|{args.max_elems}")
    r = algebra.enumerate_ball(a, gens, args.max_len, args.max_elems)
    v = jsonable(r.verdict)
    v["elements"] = _elements(a, r.elements)
    v["canon_sizes"] = [c.size for c in r.canons]
    v["sphere_sizes"] = list(r.sphere_sizes)
    v["ball_sizes"] = list(r.ball_sizes)
    if isinstance(r.verdict, algebra.FiniteWithOrder):
        text = f"finite with {r.verdict.n} elements (written order): " + ", ".join(v["elements"])
        return out.emit(v, text, True)
    text = f"not closed within budget; ball sizes {list(r.ball_sizes)}"
    return out.emit(v, text, False, {"max_len": args.max_len, "max_elems": args.max_elems})


def cmd_torsion(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    s = parse_seq(a, args.seq)
    inputs.add("args", f"{args.seq}|{args.budget}|{args.route}")
    results = {}
    if args.route in ("canon", "both"):
        results["canon"] = algebra.torsion_check(a, s, args.budget)
    if args.route in ("dual", "both"):
        results["dual"] = algebra.torsion_check_dual(a, s, args.node_budget, args.size_target)
    kinds = {type(r) for r in results.values()}
    if algebra.Torsion in kinds and algebra.TorsionFreeCertified in kinds:
        raise InvariantViolation("canon and dual routes disagree")
    definite = any(not isinstance(r, algebra.Unknown) for r in results.values())
    lines = []
    for route, r in results.items():
        if isinstance(r, algebra.Torsion):
            lines.append(f"{route}: torsion, s^{r.i} = s^{r.j}")
        elif isinstance(r, algebra.TorsionFreeCertified):
            lines.append(f"{route}: torsion-free (dual prefix orbit of length {r.prefix_length} "
                         f"reached {r.size}; any torsion exponent >= {r.min_exponent})")
        else:
            lines.append(f"{route}: unknown ({r.reason})")
    v = {route: jsonable(r) for route, r in results.items()}
    return out.emit(v, "\n".join(lines), definite,
                    {"max_exponent": args.budget, "nodes": args.node_budget})


def cmd_order(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    s = parse_seq(a, args.seq)
    inputs.add("args", f"{args.seq}|{args.budget}")
    r = algebra.order_check(a, s, args.budget)
    if isinstance(r, algebra.FiniteOrder):
        return out.emit(jsonable(r), f"order {r.k}", True)
    return out.emit(jsonable(r), f"no identity power up to {args.budget}", False,
                    {"max_exponent": args.budget})


def cmd_cayley(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    gens = parse_gens(a, args.gens)
    inputs.add("args", f"{args.gens}|{args.budget}")
    g = algebra.cayley_graph(a, gens, args.budget)
    if args.dot:
        write_dot(args.dot, cayley_dot(g, a.render_state, f"{a.name}-cayley"))
    names = _elements(a, g.nodes)
    gn = _elements(a, g.gens)
    edges = [[names[i], gn[k], names[j]] for i, k, j in g.edges]
    v = {"type": "CayleyGraph", "nodes": names, "edges": edges, "closed": g.closed}
    text = "\n".join(f"{x} -{l}-> {y}" for x, l, y in edges) or names[0]
    return out.emit(v, text, g.closed, {"nodes": args.budget})


def _report_dict(rep):
    d = rep.flags()
    d["components"] = [{"states": list(c.states), "strongly_connected": c.strongly_connected,
                        "bi_reversible": c.bi_reversible} for c in rep.components]
    return d


def cmd_classify(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    rep = classify(a)
    d = _report_dict(rep)
    lines = [f"{k}: {v}" for k, v in rep.flags().items()]
    for c in rep.components:
        lines.append(f"component {{{', '.join(c.states)}}} strongly connected: "
                     f"{c.strongly_connected}, bi-reversible: {c.bi_reversible}")
    return out.emit(d, "\n".join(lines), True)


def cmd_classify_letters(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    c = classifier.classify_letters(a)
    v = {"classification": jsonable(c)}
    if isinstance(c, classifier.Inapplicable):
        text = f"inapplicable: the dual is not {c.failing}"
    else:
        text = "gamma: {" + ", ".join(c.gamma) + "}"
    if args.upword:
        x = parse_upword(a.alphabet, args.upword)
        p = classifier.predict_periodic_orbit(a, x, c)
        v["prediction"] = jsonable(p)
        if isinstance(p, classifier.PredictInfinite):
            text += f"\n{jsonable(x)}: infinite orbit predicted (letter {p.letter})"
        else:
            text += f"\n{jsonable(x)}: no prediction ({p.reason})"
    return out.emit(v, text, True)


def cmd_extract(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    x = parse_upword(a.alphabet, args.upword)
    inputs.add("args", f"{args.upword}|{args.pair_budget}|{args.node_budget}")
    r = classifier.extract_periodic_finite_orbit(a, x, args.pair_budget, args.node_budget)
    if isinstance(r, classifier.Extracted):
        text = f"u = {rw(r.u)}, v = {rw(r.v)}, verified: {r.verified}"
        if r.periodic is not None:
            text += f"\nperiodic refinement {jsonable(r.periodic)} verified: {r.periodic_verified}"
        return out.emit(jsonable(r), text, r.verified)
    return out.emit(jsonable(r), "no pair within budget", False, {"pairs": args.pair_budget})


def _load_tiles(path, inputs):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    inputs.add("tiles", text)
    return tilings.parse_tiles(text)


def cmd_wang(args, out, inputs):
    if args.action == "from-automaton":
        a = load_automaton(args.input, inputs)
        w = tilings.automaton_to_tileset(a)
        return out.emit({"type": "TileSet", "text": tilings.serialize_tiles(w)},
                        tilings.serialize_tiles(w).rstrip("\n"), True)
    w = _load_tiles(args.input, inputs)
    if args.action == "check":
        wit = w.sw_witness()
        v = {"type": "SWCheck", "sw_deterministic": wit is None,
             "witness": None if wit is None else [list(t) for t in wit]}
        text = "SW-deterministic" if wit is None else f"not SW-deterministic: {wit[0]} and {wit[1]}"
        return out.emit(v, text, True)
    if args.action == "to-automaton":
        a = tilings.tileset_to_automaton(w)
        return out.emit({"type": "Automaton", "text": serialize(a)}, serialize(a).rstrip("\n"), True)
    inputs.add("args", f"{args.height}|{args.width_budget}|{args.node_budget}")
    r = tilings.find_non_y_recurrent(w, args.height, args.width_budget, args.node_budget)
    if isinstance(r, tilings.RectTiling):
        v = {"type": "RectTiling", "width": r.width, "height": r.height,
             "grid": [[list(t) for t in row] for row in r.grid],
             "rows": [list(h) for h in r.rows]}
        return out.emit(v, r.render(), True)
    return out.emit(jsonable(r), f"nothing found up to width {args.width_budget}", False,
                    {"width": args.width_budget, "nodes": args.node_budget})


def cmd_gadget(args, out, inputs):
    a = load_automaton(args.automaton, inputs)
    b = gadgets.build_gadget(a, args.dollar)
    if args.action == "build":
        text = serialize(b.automaton)
        return out.emit({"type": "Automaton", "text": text}, text.rstrip("\n"), True)
    s = parse_seq(a, args.seq)
    inputs.add("args", f"{args.dollar}|{args.seq}|{args.k}|{args.max_len}")
    r = gadgets.verify_dagger(b, s, args.k, args.max_len)
    if isinstance(r, gadgets.Verified):
        lam = gadgets.expected_residual(b, s, 1)
        text = (f"verified over {r.rows} rows; residual block (top to bottom) "
                f"{' '.join(lam)}")
        return out.emit(jsonable(r), text, True)
    return out.emit(jsonable(r), f"failed at {r.position}: {r.detail}", True)


def cmd_corpus(args, out, inputs):
    if args.action == "list":
        names = corpus_names()
        text = "\n".join(names + [f"oracle:{f}" for f in ORACLE_FAMILIES])
        return out.emit({"type": "Corpus", "finite": names,
                         "oracles": list(ORACLE_FAMILIES)}, text, True)
    if not args.name:
        raise UsageError("corpus dump needs a name")
    text = corpus_dump(args.name)
    return out.emit({"type": "Automaton", "text": text}, text.rstrip("\n"), True)


def _emit_automaton(out, a, args):
    if getattr(args, "dot", None):
        write_dot(args.dot, automaton_dot(a))
    text = serialize(a)
    return out.emit({"type": "Automaton", "text": text}, text.rstrip("\n"), True)


def cmd_dual(args, out, inputs):
    return _emit_automaton(out, dual(load_automaton(args.automaton, inputs)), args)


def cmd_inverse(args, out, inputs):
    return _emit_automaton(out, inverse(load_automaton(args.automaton, inputs)), args)


def cmd_compose(args, out, inputs):
    a2 = load_automaton(args.second, inputs)
    a1 = load_automaton(args.first, inputs)
    return _emit_automaton(out, compose(a2, a1), args)


def cmd_power(args, out, inputs):
    return _emit_automaton(out, power(load_automaton(args.automaton, inputs), args.k), args)


def cmd_union(args, out, inputs):
    a = load_automaton(args.left, inputs)
    b = load_automaton(args.right, inputs)
    return _emit_automaton(out, disjoint_union(a, b), args)


# --------------------------------------------------------------------------
# parser

def _lang_opts(p):
    p.add_argument("--lang", choices=["full", "blocks", "ideal"], default="full",
                   help="generator language: Q*, F* (with --gens) or Q*p (with --ideal)")
    p.add_argument("--gens", help="blocks separated by ';', states in a block by ','")
    p.add_argument("--ideal", help="block p of the left ideal Q*p")


def build_parser():
    ap = _Parser(prog="orbitkit", description="Orbits, torsion and finiteness for automaton semigroups.")
    ap.add_argument("--json", action="store_true", help="print a JSON run report")
    sub = ap.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, helptext, automaton=True):
        p = sub.add_parser(name, help=helptext)
        p.set_defaults(fn=fn)
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
        if automaton:
            p.add_argument("automaton", help="file, corpus name or oracle:<family>")
        return p

    p = add("act", cmd_act, "apply a state sequence to a word")
    p.add_argument("--seq", default="", help="states in application order, comma separated")
    p.add_argument("--word")
    p.add_argument("--upword", help="ultimately periodic word 'preperiod|period'")

    p = add("orbit", cmd_orbit, "orbit and orbital graph of a finite word")
    p.add_argument("--word", required=True)
    p.add_argument("--node-budget", type=int, default=10**6)
    p.add_argument("--dot")
    _lang_opts(p)

    p = add("orbit-up", cmd_orbit_up, "orbit of an ultimately periodic word")
    p.add_argument("--upword", required=True)
    p.add_argument("--node-budget", type=int, default=10**6)
    _lang_opts(p)

    p = add("witness", cmd_witness, "chain of prefixes with growing orbits")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--depth", type=int, default=12, help="max extension length per step")
    _lang_opts(p)

    p = add("path", cmd_path, "simple path in the orbital graph")
    p.add_argument("--word", required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=10**6)
    _lang_opts(p)

    p = add("ball", cmd_ball, "enumerate the generated semigroup")
    p.add_argument("--gens")
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--max-elems", type=int, default=10**6)

    p = add("torsion", cmd_torsion, "torsion of an element")
    p.add_argument("--seq", required=True)
    p.add_argument("--budget", type=int, default=32, help="max exponent (canon route)")
    p.add_argument("--route", choices=["canon", "dual", "both"], default="both")
    p.add_argument("--node-budget", type=int, default=1000, help="dual orbit node budget")
    p.add_argument("--size-target", type=int, default=64)

    p = add("order", cmd_order, "least power equal to the identity")
    p.add_argument("--seq", required=True)
    p.add_argument("--budget", type=int, default=64)

    p = add("cayley", cmd_cayley, "left Cayley graph")
    p.add_argument("--gens")
    p.add_argument("--budget", type=int, default=1000, help="max number of elements")
    p.add_argument("--dot")

    add("classify", cmd_classify, "completeness, reversibility, components")

    p = add("classify-letters", cmd_classify_letters, "letters forcing infinite orbits")
    p.add_argument("--upword")

    p = add("extract-finite", cmd_extract, "ultimately periodic word with finite orbit")
    p.add_argument("--upword", required=True)
    p.add_argument("--pair-budget", type=int)
    p.add_argument("--node-budget", type=int, default=10**5)

    p = add("wang", cmd_wang, "Wang tile sets", automaton=False)
    p.add_argument("action", choices=["check", "to-automaton", "from-automaton", "find"])
    p.add_argument("input", help="tile file (automaton for from-automaton)")
    p.add_argument("--height", type=int, default=2)
    p.add_argument("--width-budget", type=int, default=8)
    p.add_argument("--node-budget", type=int, default=10**6)

    p = add("gadget", cmd_gadget, "R-automaton construction", automaton=False)
    p.add_argument("action", choices=["build", "verify"])
    p.add_argument("automaton")
    p.add_argument("--dollar", required=True)
    p.add_argument("--seq", default="")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--max-len", type=int, default=10**5)

    p = add("corpus", cmd_corpus, "bundled automata", automaton=False)
    p.add_argument("action", choices=["list", "dump"])
    p.add_argument("name", nargs="?")

    for name, fn in (("dual", cmd_dual), ("inverse", cmd_inverse)):
        p = add(name, fn, f"{name} automaton")
        p.add_argument("--dot")
    p = add("compose", cmd_compose, "composition: SECOND after FIRST", automaton=False)
    p.add_argument("second")
    p.add_argument("first")
    p.add_argument("--dot")
    p = add("power", cmd_power, "k-fold composition")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dot")
    p = add("union", cmd_union, "disjoint union", automaton=False)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--dot")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:       # --help
        return EXIT_OK if not e.code else EXIT_USAGE
    inputs = Inputs()
    inputs.add("cmd", args.cmd)
    out = Out(args, inputs)
    try:
        return args.fn(args, out, inputs)
    except InvariantViolation as e:
        print(f"internal invariant failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (OrbitkitError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

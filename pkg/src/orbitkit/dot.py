"""Graphviz DOT text for automata, orbital transducers and Cayley graphs."""
from __future__ import annotations

from .action import render_seq, render_word


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def automaton_dot(a) -> str:
    lines = [f"digraph {_q(a.name)} {{", "  rankdir=LR;"]
    for q in a.states:
        lines.append(f"  {_q(q)};")
    edges = {}
    for q, x, y, p in a.triples():
        edges.setdefault((q, p), []).append(f"{x}/{y}")
    for (q, p), labels in edges.items():
        lines.append(f"  {_q(q)} -> {_q(p)} [label={_q(', '.join(labels))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def orbital_dot(o, render_state=str, name="orbit") -> str:
    """Nodes are words; edge label "f / output"."""
    def blk(b):
        return render_seq(b, render_state, tag=False)
    lines = [f"digraph {_q(name)} {{"]
    for v in o.nodes:
        attrs = " [shape=doublecircle]" if v == o.root else ""
        lines.append(f"  {_q(render_word(v))}{attrs};")
    for (v, f), (out, t) in o.edges.items():
        label = f"{blk(o.blocks[f])} / {blk(out)}"
        lines.append(f"  {_q(render_word(v))} -> {_q(render_word(t))} [label={_q(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cayley_dot(g, render_state=str, name="cayley") -> str:
    def nm(seq):
        return render_seq(seq, render_state, tag=False)
    lines = [f"digraph {_q(name)} {{"]
    for seq in g.nodes:
        lines.append(f"  {_q(nm(seq))};")
    for i, k, j in g.edges:
        lines.append(f"  {_q(nm(g.nodes[i]))} -> {_q(nm(g.nodes[j]))} [label={_q(nm(g.gens[k]))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"

"""Orbits, orbital transducers and the infinite-orbit witness search.

A generator language L is finitely suffix-closed over a finite set F of
blocks (state sequences).  Paths in an orbital graph are read in
application order: the first edge is the first block applied.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .action import UPWord, UndefinedPrefix, act_finite, act_up, Undefined
from .automaton import classify, require_finite
from .errors import BudgetExceeded, PreconditionError, UnsupportedOperation


# --------------------------------------------------------------------------
# generator languages

@dataclass(frozen=True)
class GenLang:
    """kind is "full" (Q*), "blocks" (F*) or "left-ideal" (Q*p ∪ {ε})."""
    kind: str
    blocks_: tuple = ()
    ideal: tuple = ()

    @staticmethod
    def full():
        return GenLang("full")

    @staticmethod
    def blocks_star(blocks):
        blocks = tuple(tuple(b) for b in blocks)
        if not blocks:
            raise ValueError("F must be nonempty")
        return GenLang("blocks", blocks)

    @staticmethod
    def left_ideal(p):
        return GenLang("left-ideal", (), tuple(p))

    def blocks(self, a) -> tuple:
        """The finite block alphabet F, in index order."""
        if self.kind == "blocks":
            return self.blocks_
        if not a.is_finite:
            raise UnsupportedOperation("Q* over an oracle automaton: give explicit blocks")
        singles = tuple((q,) for q in a.states)
        if self.kind == "full":
            return singles
        return (self.ideal,) + singles

    # membership is tracked by a flag: 0 = nothing applied yet (only the
    # ideal block may come first), 1 = unrestricted
    def start_flag(self) -> int:
        return 0 if self.kind == "left-ideal" else 1

    def allowed(self, flag: int, n_blocks: int):
        return range(1) if flag == 0 else range(n_blocks)

    def contains(self, labels) -> bool:
        """Is a sequence of block indices (application order) in L?"""
        labels = list(labels)
        if self.kind != "left-ideal" or not labels:
            return True
        return labels[0] == 0

    def describe(self, a=None) -> str:
        if self.kind == "full":
            return "Q*"
        if self.kind == "blocks":
            return "F* with F = {" + ", ".join(",".join(map(str, b)) for b in self.blocks_) + "}"
        return "Q*p ∪ {ε} with p = " + ",".join(map(str, self.ideal))


# --------------------------------------------------------------------------
# orbital transducers

@dataclass
class OrbitalTransducer:
    root: tuple
    blocks: tuple
    nodes: list                                     # BFS order
    edges: dict = field(default_factory=dict)       # (node, f) -> (output seq, target)
    complete: bool = True                           # False if cut by a node limit

    def __len__(self):
        return len(self.nodes)

    def canonical_form(self):
        """BFS renumbering from the root; edges are deterministic per label,
        so this is a canonical labelling of the rooted structure."""
        num = {self.root: 0}
        order = [self.root]
        rows = []
        i = 0
        nb = len(self.blocks)
        while i < len(order):
            v = order[i]
            i += 1
            row = []
            for f in range(nb):
                e = self.edges.get((v, f))
                if e is None:
                    row.append(None)
                    continue
                out, t = e
                if t not in num:
                    num[t] = len(order)
                    order.append(t)
                row.append((out, num[t]))
            rows.append(tuple(row))
        return tuple(rows)


def _step_word(a, block, w):
    r = act_finite(a, block, w)
    if isinstance(r, Undefined):
        return None
    return r.residual, r.output


def orbital_transducer(a, lang: GenLang, u, node_limit: int | None = None) -> OrbitalTransducer:
    u = tuple(u)
    for x in u:
        a.check_letter(x)
    F = lang.blocks(a)
    nb = len(F)
    start = (u, lang.start_flag())
    seen = {start}
    nodes = [u]
    node_set = {u}
    edges = {}
    queue = deque([start])
    complete = True
    while queue:
        w, flag = queue.popleft()
        for f in lang.allowed(flag, nb):
            if (w, f) in edges:
                res = edges[(w, f)]
            else:
                r = _step_word(a, F[f], w)
                if r is None:
                    continue
                edges[(w, f)] = res = r
            t = res[1]
            if t not in node_set:
                if node_limit is not None and len(nodes) >= node_limit:
                    complete = False
                    continue
                node_set.add(t)
                nodes.append(t)
            key = (t, 1)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return OrbitalTransducer(u, F, nodes, edges, complete)


def orbit_word(a, lang: GenLang, u):
    """(orbit set, orbital transducer) of a finite word."""
    o = orbital_transducer(a, lang, u)
    return frozenset(o.nodes), o


@dataclass(frozen=True)
class Iso:
    mapping: dict


@dataclass(frozen=True)
class NotIso:
    path: tuple          # block indices from the root (application order)


def orbital_transducer_iso(o1: OrbitalTransducer, o2: OrbitalTransducer):
    """Synchronized BFS from both roots; the first mismatch yields a
    shortest distinguishing label path."""
    if len(o1.blocks) != len(o2.blocks):
        raise ValueError("transducers over different block alphabets")
    fwd = {o1.root: o2.root}
    bwd = {o2.root: o1.root}
    queue = deque([(o1.root, o2.root, ())])
    while queue:
        v1, v2, path = queue.popleft()
        for f in range(len(o1.blocks)):
            e1 = o1.edges.get((v1, f))
            e2 = o2.edges.get((v2, f))
            p = path + (f,)
            if (e1 is None) != (e2 is None):
                return NotIso(p)
            if e1 is None:
                continue
            if e1[0] != e2[0]:
                return NotIso(p)
            t1, t2 = e1[1], e2[1]
            if t1 in fwd or t2 in bwd:
                if fwd.get(t1) != t2 or bwd.get(t2) != t1:
                    return NotIso(p)
                continue
            fwd[t1] = t2
            bwd[t2] = t1
            queue.append((t1, t2, p))
    return Iso(fwd)


# --------------------------------------------------------------------------
# witness search

@dataclass(frozen=True)
class Found:
    x: tuple
    size: int


@dataclass(frozen=True)
class NotFoundWithinBudget:
    explored: int = 0


def extend_orbit(a, lang: GenLang, u, budget: int):
    """Shortest, then lexicographically least, x with |L∘ux| > |L∘u|.

    Breadth-first over x.  A candidate whose orbital transducer is
    isomorphic to one already seen is not extended: isomorphic transducers
    stay isomorphic under any common extension, and the earlier word's
    extensions come first in length-lex order.
    """
    require_finite(a, "extend_orbit")
    u = tuple(u)
    base = orbital_transducer(a, lang, u)
    size = len(base)
    seen = {base.canonical_form()}
    frontier = [()]
    explored = 0
    for _ in range(budget):
        nxt = []
        for x in frontier:
            for c in a.alphabet:
                y = x + (c,)
                o = orbital_transducer(a, lang, u + y)
                explored += 1
                if len(o) > size:
                    return Found(y, len(o))
                key = o.canonical_form()
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(y)
        frontier = nxt
        if not frontier:
            break
    return NotFoundWithinBudget(explored)


@dataclass(frozen=True)
class GrowthCertificate:
    chain: tuple            # ((prefix, orbit size), ...)
    language: GenLang


@dataclass(frozen=True)
class Stalled:
    prefix: tuple
    chain: tuple


def witness_search(a, lang: GenLang, target_size: int, budget: int = 12):
    """Chain ε = ξ0 < ξ1 < ... of prefixes with strictly growing orbits,
    each step the least extension found by ``extend_orbit``."""
    require_finite(a, "witness_search")
    cur = ()
    chain = [(cur, len(orbital_transducer(a, lang, cur)))]
    while chain[-1][1] < target_size:
        r = extend_orbit(a, lang, cur, budget)
        if not isinstance(r, Found):
            return Stalled(cur, tuple(chain))
        cur = cur + r.x
        chain.append((cur, r.size))
    return GrowthCertificate(tuple(chain), lang)


# --------------------------------------------------------------------------
# ultimately periodic words

@dataclass(frozen=True)
class Finite:
    words: tuple            # BFS order, root first

    def __len__(self):
        return len(self.words)


@dataclass(frozen=True)
class ExceededBudget:
    frontier: int
    visited: int


def orbit_up(a, lang: GenLang, x: UPWord, node_budget: int = 10**6):
    F = lang.blocks(a)
    nb = len(F)
    start = (x, lang.start_flag())
    seen = {start}
    words = [x]
    word_set = {x}
    queue = deque([start])
    while queue:
        w, flag = queue.popleft()
        for f in lang.allowed(flag, nb):
            try:
                r = act_up(a, F[f], w)
            except BudgetExceeded:
                return ExceededBudget(len(queue) + 1, len(words))
            if isinstance(r, UndefinedPrefix):
                continue
            if r not in word_set:
                if len(words) >= node_budget:
                    return ExceededBudget(len(queue) + 1, len(words))
                word_set.add(r)
                words.append(r)
            key = (r, 1)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return Finite(tuple(words))


@dataclass(frozen=True)
class Certified:
    prefix_length: int
    size: int


def certify_infinite_up(a, x: UPWord, size_target: int, prefix_budget: int = 64):
    """For complete automata: |Q*∘ξ| >= |Q*∘ξ[:k]| for every k, since
    images of prefixes are prefixes of images."""
    if not classify(a).complete:
        raise PreconditionError("certify_infinite_up needs a complete automaton")
    lang = GenLang.full()
    for k in range(prefix_budget + 1):
        o = orbital_transducer(a, lang, x.prefix(k), node_limit=size_target)
        if len(o) >= size_target:
            return Certified(k, len(o))
    return Unknown(prefix_budget)


@dataclass(frozen=True)
class Unknown:
    spent: int


# --------------------------------------------------------------------------
# paths

@dataclass(frozen=True)
class OrbitPath:
    nodes: tuple
    labels: tuple           # block indices, application order


@dataclass(frozen=True)
class PathNotFound:
    exhausted: bool         # False if the node budget cut the search


def orbit_path_search(a, lang: GenLang, u, length_target: int, node_budget: int = 10**6):
    """DFS for a simple path of ``length_target`` edges starting at u."""
    require_finite(a, "orbit_path_search")
    u = tuple(u)
    F = lang.blocks(a)
    nb = len(F)
    cache = {}

    def succ(w, f):
        k = (w, f)
        if k not in cache:
            r = _step_word(a, F[f], w)
            cache[k] = None if r is None else r[1]
        return cache[k]

    path = [u]
    labels = []
    on_path = {u}
    expanded = 0
    # explicit stack of iterators over labels
    stack = [iter(lang.allowed(lang.start_flag(), nb))]
    if length_target == 0:
        return OrbitPath((u,), ())
    while stack:
        try:
            f = next(stack[-1])
        except StopIteration:
            stack.pop()
            if labels:
                labels.pop()
                on_path.discard(path.pop())
            continue
        t = succ(path[-1], f)
        expanded += 1
        if expanded > node_budget:
            return PathNotFound(False)
        if t is None or t in on_path:
            continue
        path.append(t)
        labels.append(f)
        on_path.add(t)
        if len(labels) == length_target:
            return OrbitPath(tuple(path), tuple(labels))
        stack.append(iter(lang.allowed(1, nb)))
    return PathNotFound(True)

"""Semigroup elements as canonical minimized transducers.

An element is the partial function s∘ of a state sequence s (application
order).  ``ElementCanon`` is a reachable, minimized, BFS-numbered Mealy
machine over the letter indices of the automaton; two sequences induce the
same function iff their canons are equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .action import up_canonicalize
from .automaton import Automaton, classify, dual, require_finite
from .errors import InvariantViolation, PreconditionError


@dataclass(frozen=True)
class ElementCanon:
    """``table[state][letter]`` is (out letter index, next state) or None;
    state 0 is the start."""
    table: tuple

    @property
    def size(self) -> int:
        return len(self.table)

    def apply(self, w_idx):
        st = 0
        out = []
        for x in w_idx:
            t = self.table[st][x]
            if t is None:
                return None
            out.append(t[0])
            st = t[1]
        return tuple(out)


def identity_canon(n_letters: int) -> ElementCanon:
    return ElementCanon((tuple((x, 0) for x in range(n_letters)),))


def _hopcroft(table, order, n_letters) -> dict:
    """Coarsest partition of ``order`` compatible with outputs and
    successors (undefined transitions go to a virtual sink)."""
    n = len(order)
    pos = {s: i for i, s in enumerate(order)}
    sink = n
    succ = [[sink if t is None else pos[t[1]] for t in table[s]] for s in order]
    succ.append([sink] * n_letters)
    pred = [[[] for _ in range(n + 1)] for _ in range(n_letters)]
    for i, row in enumerate(succ):
        for x, j in enumerate(row):
            pred[x][j].append(i)
    groups = {}
    for i, s in enumerate(order):
        key = tuple(None if t is None else t[0] for t in table[s])
        groups.setdefault(key, []).append(i)
    groups.setdefault(("sink",), []).append(sink)
    blocks = [set(g) for g in groups.values()]
    blk = [0] * (n + 1)
    for b, members in enumerate(blocks):
        for i in members:
            blk[i] = b
    work = {(b, x) for b in range(len(blocks)) for x in range(n_letters)}
    while work:
        b, x = work.pop()
        touched = {}
        for j in blocks[b]:
            for i in pred[x][j]:
                touched.setdefault(blk[i], set()).add(i)
        for y, hit in touched.items():
            if len(hit) == len(blocks[y]):
                continue
            rest = blocks[y] - hit
            small, big = (hit, rest) if len(hit) <= len(rest) else (rest, hit)
            blocks[y] = big
            nb = len(blocks)
            blocks.append(small)
            for i in small:
                blk[i] = nb
            # the smaller half suffices whether or not (y, z) is pending
            for z in range(n_letters):
                work.add((nb, z))
    return {s: blk[i] for i, s in enumerate(order)}


def minimize(table, start=0) -> ElementCanon:
    """Reachable part from ``start``, partition refinement, BFS renumbering.

    Undefined transitions are a behaviour of their own: the initial
    partition splits on the per-letter (defined?, output) signature.
    """
    # reachable
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for t in table[order[i]]:
            if t is not None and t[1] not in seen:
                seen.add(t[1])
                order.append(t[1])
        i += 1
    n_letters = len(table[start])
    block = _hopcroft(table, order, n_letters)
    # BFS renumbering of the quotient from the start block
    rep = {}
    for s in order:
        rep.setdefault(block[s], s)
    num = {block[start]: 0}
    queue = [block[start]]
    rows = []
    k = 0
    while k < len(queue):
        b = queue[k]
        k += 1
        row = []
        for x in range(n_letters):
            t = table[rep[b]][x]
            if t is None:
                row.append(None)
                continue
            tb = block[t[1]]
            if tb not in num:
                num[tb] = len(queue)
                queue.append(tb)
            row.append((t[0], num[tb]))
        rows.append(tuple(row))
    return ElementCanon(tuple(rows))


def compose_canon(after: ElementCanon, first: ElementCanon) -> ElementCanon:
    """Canon of (after ∘ first): ``first`` acts first."""
    index = {(0, 0): 0}
    pairs = [(0, 0)]
    table = []
    i = 0
    while i < len(pairs):
        s1, s2 = pairs[i]
        i += 1
        row = []
        for t1 in first.table[s1]:
            if t1 is None:
                row.append(None)
                continue
            t2 = after.table[s2][t1[0]]
            if t2 is None:
                row.append(None)
                continue
            key = (t1[1], t2[1])
            if key not in index:
                index[key] = len(pairs)
                pairs.append(key)
            row.append((t2[0], index[key]))
        table.append(tuple(row))
    return minimize(table)


class Elements:
    """Per-automaton cache of single-state canons."""

    def __init__(self, a: Automaton):
        require_finite(a, "element algebra")
        self.a = a
        self.n = len(a.alphabet)
        self._single = {}
        self.identity = identity_canon(self.n)

    def single(self, q) -> ElementCanon:
        c = self._single.get(q)
        if c is None:
            a = self.a
            a.check_state(q)
            idx = {q: 0}
            order = [q]
            table = []
            i = 0
            while i < len(order):
                st = order[i]
                i += 1
                row = []
                for x in a.alphabet:
                    t = a.step(st, x)
                    if t is None:
                        row.append(None)
                        continue
                    if t[1] not in idx:
                        idx[t[1]] = len(order)
                        order.append(t[1])
                    row.append((a.letter_index[t[0]], idx[t[1]]))
                table.append(tuple(row))
            c = self._single[q] = minimize(table)
        return c

    def canon(self, s) -> ElementCanon:
        c = self.identity
        for q in s:
            c = compose_canon(self.single(q), c)
        return c


def element_canon(a: Automaton, s) -> ElementCanon:
    return Elements(a).canon(s)


def elements_equal(a: Automaton, s1, s2) -> bool:
    e = Elements(a)
    return e.canon(s1) == e.canon(s2)


# --------------------------------------------------------------------------
# balls

@dataclass(frozen=True)
class FiniteWithOrder:
    n: int


@dataclass(frozen=True)
class NotClosedAtBudget:
    sphere_sizes: tuple
    ball_sizes: tuple


@dataclass
class FinitenessReport:
    verdict: object
    sphere_sizes: tuple
    ball_sizes: tuple
    elements: list = field(default_factory=list)        # representatives (StateSeq)
    canons: list = field(default_factory=list)


def enumerate_ball(a: Automaton, gens, max_len: int = 12, max_elems: int = 10**6) -> FinitenessReport:
    """Breadth-first closure of the semigroup generated by ``gens``.

    Level n holds the elements first reached as products of n generators;
    new elements are g·x (g applied after x).  Identity is only counted if
    it is a product of generators.
    """
    alg = Elements(a)
    gens = [tuple(g) for g in gens]
    gcanon = [alg.canon(g) for g in gens]
    seen = {}
    reps, canons = [], []
    spheres = []
    level = []
    for g, c in zip(gens, gcanon):
        if c not in seen:
            seen[c] = len(reps)
            reps.append(g)
            canons.append(c)
            level.append(len(reps) - 1)
    if level:
        spheres.append(len(level))
    closed = not level
    depth = 1
    while level and not closed:
        if depth >= max_len or len(reps) >= max_elems:
            break
        nxt = []
        for i in level:
            for g, gc in zip(gens, gcanon):
                c = compose_canon(gc, canons[i])
                if c not in seen:
                    seen[c] = len(reps)
                    reps.append(reps[i] + g)
                    canons.append(c)
                    nxt.append(len(reps) - 1)
                    if len(reps) >= max_elems:
                        break
            if len(reps) >= max_elems:
                break
        depth += 1
        if not nxt:
            closed = True
        else:
            spheres.append(len(nxt))
        level = nxt
    balls = tuple(sum(spheres[:k + 1]) for k in range(len(spheres)))
    if closed:
        verdict = FiniteWithOrder(len(reps))
    else:
        verdict = NotClosedAtBudget(tuple(spheres), balls)
    return FinitenessReport(verdict, tuple(spheres), balls, reps, canons)


# --------------------------------------------------------------------------
# torsion and order

@dataclass(frozen=True)
class Torsion:
    i: int
    j: int
    via: str = "canon"
    detail: tuple = ()


@dataclass(frozen=True)
class TorsionFreeCertified:
    """Prefix orbits of s^ω under the dual reached ``size``.

    A torsion pair (i, j) would bound the dual orbit by |Q|^(|s|·j), so any
    torsion exponent is at least ``min_exponent``.  Unbounded growth is the
    torsion-free side of the dual-orbit criterion; at desk scale this is a
    bounded certificate.
    """
    prefix_length: int
    size: int
    min_exponent: int


@dataclass(frozen=True)
class Unknown:
    spent: int
    reason: str = ""


def torsion_check(a: Automaton, s, max_exponent: int = 32, max_canon_size: int = 4096):
    """Smallest j with s^j∘ = s^i∘ for some 1 <= i < j <= max_exponent.

    Powers whose canon outgrows ``max_canon_size`` end the search (Unknown).
    """
    s = tuple(s)
    alg = Elements(a)
    base = alg.canon(s)
    seen = {}
    cur = base
    for j in range(1, max_exponent + 1):
        if j > 1:
            cur = compose_canon(base, cur)
            if cur.size > max_canon_size:
                return Unknown(j, "canon size over budget")
        if cur in seen:
            return Torsion(seen[cur], j)
        seen[cur] = j
    return Unknown(max_exponent, "no repeated power")


def _dual_torsion_pair(a: Automaton, s, orbit, start: int, stop: int):
    """Scan ℓ in [start, stop] (multiples of |s|) for ℓ < ℓ' such that every
    orbit element ψ and letter x give the same output letter (or both
    undefined) after the first ℓ and ℓ' states of ψ.  Such a pair gives
    s^(ℓ/|s|)∘ = s^(ℓ'/|s|)∘ once every run is in its periodic regime,
    which ``start`` guarantees."""
    letters = a.alphabet
    rows = [list(letters) for _ in orbit]     # current letter per (ψ, x)
    n = len(s)
    seen = {}
    for ell in range(0, stop + 1):
        if ell >= start and ell and ell % n == 0:
            key = tuple(tuple(r) for r in rows)
            k = ell // n
            if key in seen:
                return seen[key], k
            seen[key] = k
        for idx, psi in enumerate(orbit):
            q = psi.letter(ell)
            row = rows[idx]
            for m, x in enumerate(row):
                if x is None:
                    continue
                t = a.step(q, x)
                row[m] = None if t is None else t[0]
    return None


def torsion_check_dual(a: Automaton, s, node_budget: int = 1000, size_target: int = 64,
                       prefix_budget: int = 128, exponent_cap: int = 4096):
    """Torsion through the dual: s∘ has torsion iff the orbit of s^ω (the
    sequence s repeated, read in application order) under the dual is finite.

    Finite orbit: the pair search above derives a candidate (i, j) from the
    orbit alone; it is then confirmed (and minimized) by canon equality.
    Otherwise, for complete automata, growth of prefix orbits is reported as
    TorsionFreeCertified; partial automata give Unknown.
    """
    from .orbits import GenLang, Finite, orbit_up, certify_infinite_up, Certified
    s = tuple(s)
    if not s:
        return Torsion(1, 2, via="empty")
    d = dual(a)
    x = up_canonicalize((), s)
    res = orbit_up(d, GenLang.full(), x, node_budget)
    if isinstance(res, Finite):
        orbit = res.words
        # along ψ = u v^ω the letter seen by a fixed input letter is
        # periodic in the block count after at most |Σ|+1 blocks, with a
        # cycle of at most |Σ|+1 blocks
        pre = max(len(p.preperiod) for p in orbit)
        per = 1
        for p in orbit:
            per = math.lcm(per, len(p.period))
        cyc = math.lcm(*range(1, len(a.alphabet) + 2))
        start = pre + per * (len(a.alphabet) + 1)
        stop = start + len(s) + math.lcm(per * cyc, len(s))
        if stop > exponent_cap * len(s):
            return Unknown(exponent_cap, "dual orbit finite but exponent bound over cap")
        pair = _dual_torsion_pair(a, s, orbit, start, stop)
        if pair is None:
            raise InvariantViolation(
                f"finite dual orbit of size {len(orbit)} but no torsion pair up to {stop}")
        i, j = pair
        check = torsion_check(a, s, j)
        if not isinstance(check, Torsion) or check.j > j:
            raise InvariantViolation(
                f"dual route proposed torsion ({i},{j}) that canon equality rejects")
        return Torsion(check.i, check.j, via="dual-orbit", detail=(len(orbit), i, j))
    if not classify(a).complete:
        return Unknown(node_budget, "dual orbit over budget; automaton not complete")
    cert = certify_infinite_up(d, x, size_target, prefix_budget)
    if isinstance(cert, Certified):
        base = max(len(a.states), 2)
        minexp = max(1, math.ceil(math.log(cert.size) / (len(s) * math.log(base))))
        return TorsionFreeCertified(cert.prefix_length, cert.size, minexp)
    return Unknown(node_budget, "no certificate within prefix budget")


@dataclass(frozen=True)
class FiniteOrder:
    k: int


@dataclass(frozen=True)
class NoIdentityWithinBudget:
    max_exponent: int


def order_check(a: Automaton, s, max_exponent: int = 64, max_canon_size: int = 4096):
    """Least k >= 1 with s^k∘ equal to the identity on Σ* (monoid reading)."""
    alg = Elements(a)
    base = alg.canon(tuple(s))
    cur = base
    for k in range(1, max_exponent + 1):
        if k > 1:
            cur = compose_canon(base, cur)
            if cur.size > max_canon_size:
                return NoIdentityWithinBudget(k)
        if cur == alg.identity:
            return FiniteOrder(k)
    return NoIdentityWithinBudget(max_exponent)


@dataclass(frozen=True)
class NoInverseUpTo:
    max_len: int


@dataclass(frozen=True)
class InverseFound:
    seq: tuple


def no_inverse_in_ball(a: Automaton, p, max_len: int = 4, check_preconditions=True):
    """Search Q^+ elements of length <= max_len for s with s∘p∘ = id."""
    if check_preconditions:
        rep = classify(a)
        if not (rep.reversible and rep.invertible):
            raise PreconditionError("needs a reversible and invertible automaton")
        comp = next(c for c in rep.components if p in c.states)
        if comp.bi_reversible:
            raise PreconditionError(f"state {p} lies in a bi-reversible component")
    alg = Elements(a)
    pc = alg.single(p)
    ball = enumerate_ball(a, [(q,) for q in a.states], max_len=max_len)
    for rep_seq, c in zip(ball.elements, ball.canons):
        if compose_canon(c, pc) == alg.identity:
            return InverseFound(rep_seq)
    return NoInverseUpTo(max_len)


# --------------------------------------------------------------------------
# Cayley graph

@dataclass
class CayleyGraph:
    gens: list
    nodes: list                 # representatives (application order)
    edges: list                 # (source index, generator index, target index)
    closed: bool


def cayley_graph(a: Automaton, gens, budget: int = 1000) -> CayleyGraph:
    """Left Cayley graph: x --g--> g·x.  Empty gens gives the identity alone."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return CayleyGraph([], [()], [], True)
    alg = Elements(a)
    rep = enumerate_ball(a, gens, max_len=budget + 1, max_elems=budget)
    index = {c: i for i, c in enumerate(rep.canons)}
    gc = [alg.canon(g) for g in gens]
    edges = []
    for i, c in enumerate(rep.canons):
        for k, g in enumerate(gc):
            t = index.get(compose_canon(g, c))
            if t is not None:
                edges.append((i, k, t))
    return CayleyGraph(gens, rep.elements, edges, isinstance(rep.verdict, FiniteWithOrder))


# --------------------------------------------------------------------------
# oracle-backed growth

def truncated_growth(a, gens, max_len: int, words):
    """Ball growth lower bound for any backend: elements are compared by
    their action on ``words``, so distinct keys are distinct elements.
    Returns cumulative ball sizes per length."""
    from .action import act_word
    gens = [tuple(g) for g in gens]
    words = [tuple(w) for w in words]
    def key(seq):
        return tuple(act_word(a, seq, w) for w in words)
    seen = set()
    level = []
    sizes = []
    for g in gens:
        k = key(g)
        if k not in seen:
            seen.add(k)
            level.append(g)
    sizes.append(len(seen))
    for _ in range(max_len - 1):
        nxt = []
        for x in level:
            for g in gens:
                y = x + g
                k = key(y)
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
        level = nxt
        sizes.append(len(seen))
    return sizes

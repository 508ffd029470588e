"""Partial deterministic letter-to-letter transducers and their construction algebra.

Letters and states are strings.  Their position in ``alphabet``/``states``
is their index; every canonical order in the library is index order.
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (AlphabetMismatch, InvertibilityError, ParseError,
                     UnknownSymbol, UnsupportedOperation)

INV = "⁻¹"
COMPOSE = "∘"


class Automaton:
    """Finite-backend automaton.  Immutable after construction."""

    is_finite = True

    def __init__(self, name: str, alphabet: Iterable[str], states: Iterable[str],
                 transitions: Mapping[tuple[str, str], tuple[str, str]] | Iterable = ()):
        alphabet = tuple(alphabet)
        states = tuple(states)
        if not alphabet:
            raise ValueError("alphabet must be nonempty")
        if not states:
            raise ValueError("state set must be nonempty")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate letter in alphabet")
        if len(set(states)) != len(states):
            raise ValueError("duplicate state")
        self.name = name
        self.alphabet = alphabet
        self.states = states
        self.letter_index = {a: i for i, a in enumerate(alphabet)}
        self.state_index = {q: i for i, q in enumerate(states)}
        if isinstance(transitions, Mapping):
            items = transitions.items()
        else:
            items = (((q, a), (b, p)) for q, a, b, p in transitions)
        table = {}
        for (q, a), (b, p) in items:
            if (q, a) in table:
                raise ValueError(f"duplicate transition for ({q}, {a})")
            for s in (q, p):
                if s not in self.state_index:
                    raise UnknownSymbol(f"unknown state {s!r}")
            for c in (a, b):
                if c not in self.letter_index:
                    raise UnknownSymbol(f"unknown letter {c!r}")
            table[(q, a)] = (b, p)
        self.transitions = MappingProxyType(table)

    def step(self, state, letter):
        """(out, next) for one transition, or None if undefined."""
        return self.transitions.get((state, letter))

    def check_state(self, q):
        if q not in self.state_index:
            raise UnknownSymbol(f"unknown state {q!r}")

    def check_letter(self, a):
        if a not in self.letter_index:
            raise UnknownSymbol(f"unknown letter {a!r}")

    def render_state(self, q) -> str:
        return q

    def parse_state(self, text: str):
        self.check_state(text)
        return text

    def triples(self):
        """Transitions as (q, a, b, p) in index order of (q, a)."""
        for q in self.states:
            for a in self.alphabet:
                t = self.transitions.get((q, a))
                if t is not None:
                    yield q, a, t[0], t[1]

    def renamed(self, name: str) -> "Automaton":
        return Automaton(name, self.alphabet, self.states, self.transitions)

    def __eq__(self, other):
        if not isinstance(other, Automaton):
            return NotImplemented
        return (self.name == other.name and self.alphabet == other.alphabet
                and self.states == other.states
                and dict(self.transitions) == dict(other.transitions))

    def __hash__(self):
        return hash((self.name, self.alphabet, self.states))

    def __repr__(self):
        return (f"Automaton({self.name!r}, {len(self.states)} states, "
                f"{len(self.alphabet)} letters, {len(self.transitions)} transitions)")


class OracleAutomaton:
    """Infinite-state automaton given by a transition rule.

    ``rule(state, letter)`` returns (out, next) or None; states are hashable
    keys.  Answers are memoized under a lock so concurrent use is safe and
    repeated queries are stable.
    """

    is_finite = False

    def __init__(self, name, alphabet, rule, render=str, parse=None,
                 exploration_bound=100_000):
        self.name = name
        self.alphabet = tuple(alphabet)
        self.letter_index = {a: i for i, a in enumerate(self.alphabet)}
        self._rule = rule
        self._render = render
        self._parse = parse
        self.exploration_bound = exploration_bound
        self._memo = {}
        self._lock = threading.Lock()

    def step(self, state, letter):
        key = (state, letter)
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        res = self._rule(state, letter)
        with self._lock:
            self._memo.setdefault(key, res)
            return self._memo[key]

    def check_state(self, q):
        try:
            hash(q)
        except TypeError:
            raise UnknownSymbol(f"unhashable oracle state {q!r}")

    def check_letter(self, a):
        if a not in self.letter_index:
            raise UnknownSymbol(f"unknown letter {a!r}")

    def render_state(self, q) -> str:
        return self._render(q)

    def parse_state(self, text: str):
        if self._parse is None:
            raise UnsupportedOperation(f"{self.name}: no state parser")
        return self._parse(text)

    def __repr__(self):
        return f"OracleAutomaton({self.name!r})"


def require_finite(a, what: str):
    if not getattr(a, "is_finite", False):
        raise UnsupportedOperation(f"{what} needs a finite automaton, got {a!r}")


# --------------------------------------------------------------------------
# properties

@dataclass(frozen=True)
class Component:
    states: tuple
    strongly_connected: bool
    bi_reversible: bool


@dataclass(frozen=True)
class PropertyReport:
    complete: bool
    reversible: bool
    invertible: bool
    inverse_reversible: bool
    bi_reversible: bool
    components: tuple = field(default=())

    def flags(self) -> dict:
        return {k: getattr(self, k) for k in
                ("complete", "reversible", "invertible", "inverse_reversible", "bi_reversible")}


def _at_most_one(keys) -> bool:
    seen = set()
    for k in keys:
        if k in seen:
            return False
        seen.add(k)
    return True


def _flags(triples):
    reversible = _at_most_one((a, p) for q, a, b, p in triples)
    invertible = _at_most_one((q, b) for q, a, b, p in triples)
    inv_rev = _at_most_one((b, p) for q, a, b, p in triples)
    return reversible, invertible, inv_rev


def _reach(start, adj):
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def classify(a: Automaton) -> PropertyReport:
    require_finite(a, "classify")
    triples = list(a.triples())
    complete = len(triples) == len(a.states) * len(a.alphabet)
    reversible, invertible, inv_rev = _flags(triples)

    fwd, bwd, und = {}, {}, {}
    for q, _, _, p in triples:
        fwd.setdefault(q, set()).add(p)
        bwd.setdefault(p, set()).add(q)
        und.setdefault(q, set()).add(p)
        und.setdefault(p, set()).add(q)
    comps = []
    done = set()
    for q in a.states:
        if q in done:
            continue
        members = _reach(q, und)
        done |= members
        ordered = tuple(s for s in a.states if s in members)
        strong = _reach(q, fwd) >= members and _reach(q, bwd) >= members
        sub = [t for t in triples if t[0] in members]
        r, _, ir = _flags(sub)
        comps.append(Component(ordered, strong, r and ir))
    return PropertyReport(complete, reversible, invertible, inv_rev,
                          reversible and inv_rev, tuple(comps))


# --------------------------------------------------------------------------
# constructions

def dual(a: Automaton) -> Automaton:
    """Swap roles: q --a/b--> p becomes a --q/p--> b."""
    require_finite(a, "dual")
    trans = {}
    for q, x, y, p in a.triples():
        assert (x, q) not in trans
        trans[(x, q)] = (p, y)
    name = a.name[:-5] if a.name.endswith("-dual") else a.name + "-dual"
    return Automaton(name, a.states, a.alphabet, trans)


def _toggle_inv(s: str) -> str:
    return s[:-len(INV)] if s.endswith(INV) else s + INV


def invertibility_witness(a: Automaton):
    seen = {}
    for t in a.triples():
        key = (t[0], t[2])
        if key in seen:
            return seen[key], t
        seen[key] = t
    return None


def inverse(a: Automaton) -> Automaton:
    """q --a/b--> p becomes q⁻¹ --b/a--> p⁻¹.  Involution on names."""
    require_finite(a, "inverse")
    w = invertibility_witness(a)
    if w is not None:
        raise InvertibilityError(w)
    states = tuple(_toggle_inv(q) for q in a.states)
    trans = {(_toggle_inv(q), b): (x, _toggle_inv(p)) for q, x, b, p in a.triples()}
    return Automaton(_toggle_inv(a.name), a.alphabet, states, trans)


def disjoint_union(a: Automaton, b: Automaton, name=None) -> Automaton:
    """Union of state sets (prefixed with L./R. only if names clash)."""
    require_finite(a, "disjoint_union")
    require_finite(b, "disjoint_union")
    clash = bool(set(a.states) & set(b.states))
    ta = (lambda q: "L." + q) if clash else (lambda q: q)
    tb = (lambda q: "R." + q) if clash else (lambda q: q)
    alphabet = a.alphabet + tuple(x for x in b.alphabet if x not in a.letter_index)
    states = tuple(map(ta, a.states)) + tuple(map(tb, b.states))
    trans = {}
    for q, x, y, p in a.triples():
        trans[(ta(q), x)] = (y, ta(p))
    for q, x, y, p in b.triples():
        trans[(tb(q), x)] = (y, tb(p))
    return Automaton(name or f"{a.name}+{b.name}", alphabet, states, trans)


def compose(a2: Automaton, a1: Automaton, name=None) -> Automaton:
    """Product automaton whose state "q2∘q1" acts as q1 first, then q2."""
    require_finite(a1, "compose")
    require_finite(a2, "compose")
    if a1.alphabet != a2.alphabet:
        if set(a1.alphabet) != set(a2.alphabet):
            raise AlphabetMismatch(f"{a2.name} and {a1.name} have different alphabets")
    def nm(q2, q1):
        return f"{q2}{COMPOSE}{q1}"
    states = tuple(nm(q2, q1) for q2 in a2.states for q1 in a1.states)
    trans = {}
    for q2 in a2.states:
        for q1 in a1.states:
            for x in a1.alphabet:
                t1 = a1.step(q1, x)
                if t1 is None:
                    continue
                t2 = a2.step(q2, t1[0])
                if t2 is None:
                    continue
                trans[(nm(q2, q1), x)] = (t2[0], nm(t2[1], t1[1]))
    return Automaton(name or f"{a2.name}{COMPOSE}{a1.name}", a1.alphabet, states, trans)


def power(a: Automaton, k: int) -> Automaton:
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = a.renamed(a.name)
    for _ in range(k - 1):
        out = compose(a, out)
    return out.renamed(f"{a.name}^{k}") if k > 1 else out


def trim(a: Automaton, roots) -> Automaton:
    """Restrict to states reachable from ``roots``."""
    require_finite(a, "trim")
    keep = set()
    todo = deque(roots)
    for r in roots:
        a.check_state(r)
        keep.add(r)
    while todo:
        q = todo.popleft()
        for x in a.alphabet:
            t = a.step(q, x)
            if t is not None and t[1] not in keep:
                keep.add(t[1])
                todo.append(t[1])
    states = tuple(q for q in a.states if q in keep)
    trans = {k: v for k, v in a.transitions.items() if k[0] in keep}
    return Automaton(a.name, a.alphabet, states, trans)


def identity_automaton(alphabet, name="identity", state="id") -> Automaton:
    alphabet = tuple(alphabet)
    return Automaton(name, alphabet, (state,), {(state, x): (x, state) for x in alphabet})


# --------------------------------------------------------------------------
# file format

def parse(text: str) -> Automaton:
    name = alphabet = states = None
    trans = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "automaton":
            if len(rest) != 1:
                raise ParseError("expected 'automaton <name>'", lineno)
            name = rest[0]
        elif head == "alphabet":
            if not rest:
                raise ParseError("empty alphabet", lineno)
            alphabet = rest
        elif head == "states":
            if not rest:
                raise ParseError("empty state set", lineno)
            states = rest
        elif head == "trans":
            if len(rest) != 4:
                raise ParseError("expected 'trans <state> <in> <out> <state>'", lineno)
            q, x, y, p = rest
            if (q, x) in trans:
                raise ParseError(f"duplicate transition for ({q}, {x})", lineno)
            trans[(q, x)] = (y, p, lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if name is None:
        raise ParseError("missing 'automaton' header")
    if alphabet is None:
        raise ParseError("missing alphabet")
    if states is None:
        raise ParseError("missing states")
    if len(set(alphabet)) != len(alphabet):
        raise ParseError("duplicate letter in alphabet")
    if len(set(states)) != len(states):
        raise ParseError("duplicate state")
    sset, aset = set(states), set(alphabet)
    for (q, x), (y, p, lineno) in trans.items():
        for s in (q, p):
            if s not in sset:
                raise ParseError(f"unknown state {s!r}", lineno)
        for c in (x, y):
            if c not in aset:
                raise ParseError(f"unknown letter {c!r}", lineno)
    return Automaton(name, alphabet, states, {k: v[:2] for k, v in trans.items()})


def serialize(a: Automaton) -> str:
    require_finite(a, "serialize")
    lines = [f"automaton {a.name}",
             "alphabet " + " ".join(a.alphabet),
             "states " + " ".join(a.states)]
    for (q, x), (y, p) in a.transitions.items():
        lines.append(f"trans {q} {x} {y} {p}")
    return "\n".join(lines) + "\n"


def load(path) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())

"""Concrete automata used throughout: finite examples, infinite-state oracles,
and random generators for property tests."""
from __future__ import annotations

import random
import re

from .automaton import Automaton, OracleAutomaton, serialize
from .errors import OrbitkitError, ParseError

# flags in the order (complete, reversible, invertible, inverse_reversible, bi_reversible)
_FLAG_NAMES = ("complete", "reversible", "invertible", "inverse_reversible", "bi_reversible")


def _flags(*bits):
    return dict(zip(_FLAG_NAMES, bits))


def adding_machine():
    return Automaton("adding-machine", "01", ("q", "id"), [
        ("q", "0", "1", "id"), ("q", "1", "0", "q"),
        ("id", "0", "0", "id"), ("id", "1", "1", "id")])


def grigorchuk():
    return Automaton("grigorchuk", "01", ("a", "b", "c", "d", "id"), [
        ("a", "0", "1", "id"), ("a", "1", "0", "id"),
        ("b", "0", "0", "a"), ("b", "1", "1", "c"),
        ("c", "0", "0", "a"), ("c", "1", "1", "d"),
        ("d", "0", "0", "id"), ("d", "1", "1", "b"),
        ("id", "0", "0", "id"), ("id", "1", "1", "id")])


def grigorchuk_dual():
    # transcribed table; equals dual(grigorchuk()) (checked in the tests)
    return Automaton("grigorchuk-dual", ("a", "b", "c", "d", "id"), ("0", "1"), [
        ("0", "a", "id", "1"), ("0", "b", "a", "0"), ("0", "c", "a", "0"),
        ("0", "d", "id", "0"), ("0", "id", "id", "0"),
        ("1", "a", "id", "0"), ("1", "b", "c", "1"), ("1", "c", "d", "1"),
        ("1", "d", "b", "1"), ("1", "id", "id", "1")])


def right_ideal():
    """q rewrites the first b into a; p is only defined on a's."""
    return Automaton("right-ideal", "ab", ("q", "id", "p"), [
        ("q", "a", "a", "q"), ("q", "b", "a", "id"),
        ("id", "a", "a", "id"), ("id", "b", "b", "id"),
        ("p", "a", "a", "p")])


def t1():
    """Reversible, invertible, neither complete nor bi-reversible; 7 elements."""
    return Automaton("t1", "ab", ("q", "p"), [
        ("q", "a", "b", "p"), ("p", "a", "a", "q"), ("p", "b", "b", "p")])


def non_invertible():
    """Reversible and complete, not invertible; both states are left zeros."""
    return Automaton("non-invertible", "ab", ("q", "p"), [
        ("q", "a", "b", "p"), ("q", "b", "b", "p"),
        ("p", "a", "a", "q"), ("p", "b", "a", "q")])


def mixed():
    """Adding machines on {0,1} (state p) and on {0',1'} (state q) glued so
    that 1'0^ω has the finite orbit {1'0^ω, 0'0^ω}."""
    letters = ("0", "1", "0'", "1'")
    trans = [("p", "0", "1", "id"), ("p", "1", "0", "p"),
             ("p", "0'", "0'", "id"), ("p", "1'", "1'", "id"),
             ("q", "0'", "1'", "id"), ("q", "1'", "0'", "q"),
             ("q", "0", "0", "q"), ("q", "1", "1", "q")]
    trans += [("id", x, x, "id") for x in letters]
    return Automaton("mixed", letters, ("p", "id", "q"), trans)


def identity():
    return Automaton("identity", "01", ("id",), [("id", "0", "0", "id"), ("id", "1", "1", "id")])


_CORPUS = {
    "adding-machine": (adding_machine, _flags(True, False, True, False, False)),
    "grigorchuk": (grigorchuk, _flags(True, False, True, False, False)),
    "grigorchuk-dual": (grigorchuk_dual, _flags(True, True, False, False, False)),
    "right-ideal": (right_ideal, _flags(False, False, False, False, False)),
    "t1": (t1, _flags(False, True, True, False, False)),
    "non-invertible": (non_invertible, _flags(True, True, False, False, False)),
    "mixed": (mixed, _flags(True, False, True, False, False)),
    "identity": (identity, _flags(True, True, True, True, True)),
}


def corpus_names():
    return list(_CORPUS)


def corpus_get(name: str) -> Automaton:
    try:
        return _CORPUS[name][0]()
    except KeyError:
        raise OrbitkitError(f"unknown corpus automaton {name!r}; known: {', '.join(_CORPUS)}")


def expected_flags(name: str) -> dict:
    return dict(_CORPUS[name][1])


def corpus_dump(name: str) -> str:
    return serialize(corpus_get(name))


# --------------------------------------------------------------------------
# oracles

ID = ("id",)


def _render(key):
    if key == ID:
        return "id"
    return f"{key[0]}[{','.join(map(str, key[1:]))}]"


_KEY_RE = re.compile(r"^([a-z]+)\[(\d+(?:,\d+)*)\]$")


def _parser(valid):
    def parse(text):
        text = text.strip()
        if text == "id":
            return ID
        m = _KEY_RE.match(text)
        if not m:
            raise ParseError(f"bad oracle state {text!r}")
        key = (m.group(1),) + tuple(int(x) for x in m.group(2).split(","))
        if not valid(key):
            raise ParseError(f"no such oracle state {text!r}")
        return key
    return parse


def _fig2_rule(key, x):
    if key == ID:
        return (x, ID)
    i = key[1]
    if i == 0:
        return ({"0": "1", "1": "0", "2": "2"}[x], ID)
    if x == "2":
        return ("2", ("q", i - 1))
    return (x, ID)


def _bartholdi_rule(key, x):
    if key == ID:
        return (x, ID)
    _, i, j = key
    nxt = ("q", i, j - 1) if j > 1 else ID
    hit = j % i == 1 % i
    if x == "0":
        return ("1", nxt) if hit else ("0", ID)
    if x == "1":
        return ("0", nxt) if hit else ("1", ID)
    return ("2", ID) if hit else ("2", nxt)


def _q0_rule(key, x):
    if key == ID:
        return (x, ID)
    kind, i = key
    if kind == "q":
        if x == "0":
            return ("0", ("q", i + 1))
        return ("1", ("p", i) if i >= 1 else ID)
    # p_i adds one to the next i letters (least significant first)
    if x == "1":
        return ("0", ("p", i - 1) if i > 1 else ID)
    return ("1", ID)


def oracle_get(family: str, **params) -> OracleAutomaton:
    bound = params.pop("exploration_bound", 100_000)
    if params:
        raise OrbitkitError(f"unexpected oracle parameters {sorted(params)}")
    if family == "fig2":
        valid = lambda k: k[0] == "q" and len(k) == 2
        return OracleAutomaton("fig2", "012", _fig2_rule, _render, _parser(valid), bound)
    if family == "bartholdi":
        valid = lambda k: k[0] == "q" and len(k) == 3 and k[1] >= 1 and 1 <= k[2] <= k[1] ** 2
        return OracleAutomaton("bartholdi", "012", _bartholdi_rule, _render, _parser(valid), bound)
    if family == "q0family":
        valid = lambda k: len(k) == 2 and (k[0] == "q" or (k[0] == "p" and k[1] >= 1))
        return OracleAutomaton("q0family", "01", _q0_rule, _render, _parser(valid), bound)
    raise OrbitkitError(f"unknown oracle family {family!r}; known: fig2, bartholdi, q0family")


ORACLE_FAMILIES = ("fig2", "bartholdi", "q0family")


# --------------------------------------------------------------------------
# random generators

def _names(n, m):
    return tuple(f"s{i}" for i in range(n)), tuple("abcdefgh"[:m])


def random_automaton(rng: random.Random, n_states: int, n_letters: int,
                     density: float = 0.8, name="random") -> Automaton:
    states, letters = _names(n_states, n_letters)
    trans = {}
    for q in states:
        for x in letters:
            if rng.random() < density:
                trans[(q, x)] = (rng.choice(letters), rng.choice(states))
    return Automaton(name, letters, states, trans)


def random_reversible(rng, n_states, n_letters, density=0.8, name="random-rev"):
    """Partial reversible automaton: for each letter, targets are injective."""
    states, letters = _names(n_states, n_letters)
    trans = {}
    for x in letters:
        targets = list(states)
        rng.shuffle(targets)
        for q, p in zip(states, targets):
            if rng.random() < density:
                trans[(q, x)] = (rng.choice(letters), p)
    return Automaton(name, letters, states, trans)


def random_g_automaton(rng, n_states, n_letters, reversible=False, name="random-g"):
    """Complete invertible automaton (optionally reversible)."""
    states, letters = _names(n_states, n_letters)
    outs = {}
    for q in states:
        perm = list(letters)
        rng.shuffle(perm)
        outs[q] = dict(zip(letters, perm))
    targets = {}
    for x in letters:
        if reversible:
            perm = list(states)
            rng.shuffle(perm)
            targets[x] = dict(zip(states, perm))
        else:
            targets[x] = {q: rng.choice(states) for q in states}
    trans = {(q, x): (outs[q][x], targets[x][q]) for q in states for x in letters}
    return Automaton(name, letters, states, trans)


def random_reversible_non_bireversible(rng, n_states=3, n_letters=3, tries=10_000):
    from .automaton import classify
    for _ in range(tries):
        a = random_g_automaton(rng, n_states, n_letters, reversible=True, name="random-rnb")
        if not classify(a).bi_reversible:
            return a
    raise OrbitkitError("could not sample a reversible non-bi-reversible G-automaton")

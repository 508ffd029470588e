"""Shared independent oracles for the test suite.

Nothing here uses the library's algebra or orbit code: orbits are plain
BFS over words, element equality is BFS over tuples of automaton states.
"""
import itertools
import random
from collections import deque

import pytest

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(f"criterion {k}: {ACCEPTANCE[k]}")


def all_words(alphabet, max_len, min_len=0):
    for n in range(min_len, max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield w


def run_state(a, q, w):
    """Output of one state on w, or None; plain loop over the transition table."""
    out = []
    for x in w:
        t = a.transitions.get((q, x)) if hasattr(a, "transitions") else a.step(q, x)
        if t is None:
            return None
        out.append(t[0])
        q = t[1]
    return tuple(out)


def run_seq(a, s, w):
    """s applied to w in application order, or None."""
    for q in s:
        if w is None:
            return None
        w = run_state(a, q, w)
    return w


def brute_orbit(a, gens, u):
    """Orbit of u under the semigroup generated by gens (plus u itself)."""
    seen = {tuple(u)}
    queue = deque([tuple(u)])
    while queue:
        w = queue.popleft()
        for g in gens:
            v = run_seq(a, g, w)
            if v is not None and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def ext_equal(a, s1, s2):
    """Do s1 and s2 induce the same partial map on all finite words?

    BFS over pairs of state columns; a letter read through every row of a
    column gives its output (or undefined) and the next column.
    """
    def col_step(col, x):
        out = x
        nxt = []
        for q in col:
            t = a.transitions.get((q, out))
            if t is None:
                return None, None
            out, p = t
            nxt.append(p)
        return out, tuple(nxt)

    start = (tuple(s1), tuple(s2))
    seen = {start}
    queue = deque([start])
    while queue:
        c1, c2 = queue.popleft()
        for x in a.alphabet:
            o1, n1 = col_step(c1, x)
            o2, n2 = col_step(c2, x)
            if o1 != o2:
                return False
            if o1 is None:
                continue
            if (n1, n2) not in seen:
                seen.add((n1, n2))
                queue.append((n1, n2))
    return True


def increment_lsb(w):
    """Reverse binary +1 with overflow dropped (independent adding-machine oracle)."""
    n = int("".join(reversed(w)), 2) + 1 if w else 0
    if not w:
        return ()
    n %= 2 ** len(w)
    return tuple(reversed(format(n, f"0{len(w)}b")))


def grig_apply(gen, w):
    """Grigorchuk generators by their recursive definitions on finite words."""
    w = list(w)
    out = []
    while w:
        x = w.pop(0)
        if gen == "id":
            out.append(x)
            continue
        if gen == "a":
            out.append("1" if x == "0" else "0")
            gen = "id"
            continue
        out.append(x)
        if x == "0":
            gen = "a" if gen in ("b", "c") else "id"
        else:
            gen = {"b": "c", "c": "d", "d": "b"}[gen]
    return tuple(out)


@pytest.fixture
def rng():
    return random.Random(20240601)

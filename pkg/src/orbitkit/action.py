"""Left action of state sequences on words, dual action, ultimately periodic words.

State sequences are tuples in APPLICATION ORDER: element 0 acts first.
Written in the usual right-to-left composition notation the sequence
[q1, q2, q3] is q3 q2 q1; ``render_seq`` produces that form.

Finite words are tuples of letters.  Letters may be multi-character strings
(e.g. "1'"), so text is turned into words with ``tokenize``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BudgetExceeded, ParseError

Word = tuple
StateSeq = tuple


@dataclass(frozen=True)
class ActResult:
    output: tuple
    residual: tuple


@dataclass(frozen=True)
class Undefined:
    """First failing cross-diagram cell: ``row`` indexes the state sequence."""
    position: int
    state: object
    letter: str
    row: int = 0


@dataclass(frozen=True)
class UndefinedPrefix:
    """The action is undefined on the prefix of this length (shortest such)."""
    length: int


# --------------------------------------------------------------------------
# finite words

def act_finite(a, s: Sequence, w: Sequence[str]):
    """Cross diagram of ``s`` (application order) over ``w``.

    Returns ActResult(s∘w, s·w) or Undefined for the first failing cell in
    row-major order (rows = states in application order).
    """
    for x in w:
        a.check_letter(x)
    cur = tuple(w)
    residual = []
    for row, q in enumerate(s):
        a.check_state(q)
        out = []
        state = q
        for pos, x in enumerate(cur):
            t = a.step(state, x)
            if t is None:
                return Undefined(pos, state, x, row)
            out.append(t[0])
            state = t[1]
        cur = tuple(out)
        residual.append(state)
    return ActResult(cur, tuple(residual))


def act_dual(a, w: Sequence[str], s: Sequence):
    """The dual action s·w, i.e. the residual column of the cross diagram."""
    r = act_finite(a, s, w)
    if isinstance(r, Undefined):
        return r
    return r.residual


def act_word(a, s, w):
    """s∘w or None."""
    r = act_finite(a, s, w)
    return None if isinstance(r, Undefined) else r.output


# --------------------------------------------------------------------------
# ultimately periodic words

def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


@dataclass(frozen=True)
class UPWord:
    """u v^ω in canonical form (build with ``up_canonicalize``)."""
    preperiod: tuple
    period: tuple

    def letter(self, i: int):
        u, v = self.preperiod, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def render(self, sep="") -> str:
        return sep.join(self.preperiod) + "|" + sep.join(self.period)

    def __str__(self):
        return self.render()


def up_canonicalize(u: Sequence, v: Sequence) -> UPWord:
    u, v = tuple(u), tuple(v)
    if not v:
        raise ValueError("period must be nonempty")
    v = _primitive_root(v)
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = v[-1:] + v[:-1]
    return UPWord(u, v)


def _run(a, state, w):
    """Run one state over a finite word: (output, end state) or failing index."""
    out = []
    for i, x in enumerate(w):
        t = a.step(state, x)
        if t is None:
            return i
        out.append(t[0])
        state = t[1]
    return tuple(out), state


def _act_up_single(a, q, x: UPWord, max_blocks: int):
    r = _run(a, q, x.preperiod)
    if isinstance(r, int):
        return r
    head, state = r
    seen = {state: 0}
    blocks = []
    base = len(x.preperiod)
    per = x.period
    while True:
        r = _run(a, state, per)
        if isinstance(r, int):
            return base + len(blocks) * len(per) + r
        out, state = r
        blocks.append(out)
        if state in seen:
            m = seen[state]
            pre = head + tuple(c for b in blocks[:m] for c in b)
            cyc = tuple(c for b in blocks[m:] for c in b)
            return up_canonicalize(pre, cyc)
        if len(blocks) >= max_blocks:
            raise BudgetExceeded(
                f"act_up: no state repetition after {max_blocks} period blocks")
        seen[state] = len(blocks)


def _shortest_undefined(a, s, w):
    best = len(w)
    cur = list(w)
    for q in s:
        out = []
        state = q
        for i, x in enumerate(cur):
            t = a.step(state, x)
            if t is None:
                best = min(best, i + 1)
                break
            out.append(t[0])
            state = t[1]
        cur = out
    return best


def act_up(a, s: Sequence, x: UPWord, max_blocks: int | None = None):
    """s∘x for an ultimately periodic x, folding one state at a time.

    Returns the canonical UPWord or UndefinedPrefix(n) where n is the length
    of the shortest prefix of x on which s∘ is undefined.
    """
    for c in x.preperiod + x.period:
        a.check_letter(c)
    if max_blocks is None:
        max_blocks = getattr(a, "exploration_bound", None) or (len(a.states) + 1)
    cur = x
    for q in s:
        a.check_state(q)
        r = _act_up_single(a, q, cur, max_blocks)
        if isinstance(r, int):
            return UndefinedPrefix(_shortest_undefined(a, s, x.prefix(r + 1)))
        cur = r
    return cur


# --------------------------------------------------------------------------
# text helpers

def tokenize(alphabet: Sequence[str], text: str) -> tuple:
    """Split text into letters: commas/whitespace separate, otherwise
    greedy longest match against the alphabet."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    if "," in text or any(ch.isspace() for ch in text):
        toks = [t for t in text.replace(",", " ").split() if t]
        for t in toks:
            if t not in alphabet:
                raise ParseError(f"unknown letter {t!r}")
        return tuple(toks)
    letters = sorted(alphabet, key=len, reverse=True)
    out = []
    i = 0
    while i < len(text):
        for x in letters:
            if text.startswith(x, i):
                out.append(x)
                i += len(x)
                break
        else:
            raise ParseError(f"cannot read a letter at {text[i:]!r}")
    return tuple(out)


def parse_upword(alphabet, text: str) -> UPWord:
    if "|" not in text:
        raise ParseError("ultimately periodic word must be written 'preperiod|period'")
    u, v = text.split("|", 1)
    v = tokenize(alphabet, v)
    if not v:
        raise ParseError("period must be nonempty")
    return up_canonicalize(tokenize(alphabet, u), v)


def render_word(w) -> str:
    w = tuple(w)
    if not w:
        return "ε"
    if all(len(x) == 1 for x in w):
        return "".join(w)
    return " ".join(w)


def render_seq(s, render=str, tag=True) -> str:
    """Render in written (right-to-left) order: the last-applied state first."""
    names = [render(q) for q in reversed(tuple(s))]
    if not names:
        body = "ε"
    elif all(len(n) == 1 for n in names):
        body = "".join(names)
    else:
        body = " ".join(names)
    return body + " (written order)" if tag else body

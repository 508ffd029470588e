"""The Λ expansion and the R-automaton built from a G-automaton with a
marked state $.

Naming in R (all plain tokens, so R round-trips through the file format):
  letters  source letters, "aq:<q>:0", "aq:<q>:1", "*" and "!" (end marker)
  states   source states, "<s>", "<t>", "<id>", "hq:<q>"
"#" is the comment character of the file format, hence "!" and "hq:".
"""
from __future__ import annotations

from dataclasses import dataclass

from .action import Undefined, act_finite
from .automaton import Automaton, classify, require_finite
from .errors import BudgetExceeded, PreconditionError, UnknownSymbol

STAR = "*"
END = "!"
S_STATE = "<s>"
T_STATE = "<t>"
ID_STATE = "<id>"


def aq(q, i) -> str:
    return f"aq:{q}:{i}"


def hq(q) -> str:
    return f"hq:{q}"


def lambda_expand(s, max_output_len: int | None = None) -> tuple:
    """Λ(ε) = ε, Λ(s + [q]) = Λ(s) + [q] + Λ(s); length 2^|s| - 1."""
    s = tuple(s)
    n = 2 ** len(s) - 1
    if max_output_len is not None and n > max_output_len:
        raise BudgetExceeded(f"Λ would have length {n} > {max_output_len}")
    out = ()
    for q in s:
        out = out + (q,) + out
    return out


@dataclass(frozen=True)
class GadgetBundle:
    source: Automaton
    dollar: str
    automaton: Automaton


def build_gadget(t: Automaton, dollar: str) -> GadgetBundle:
    require_finite(t, "build_gadget")
    t.check_state(dollar)
    rep = classify(t)
    if not (rep.complete and rep.invertible):
        raise PreconditionError("source must be a G-automaton (complete and invertible)")
    Q, sigma = t.states, t.alphabet
    new_states = (S_STATE, T_STATE, ID_STATE) + tuple(hq(q) for q in Q)
    new_letters = tuple(aq(q, i) for q in Q for i in (0, 1)) + (STAR, END)
    clash = (set(new_states) & set(Q)) | (set(new_letters) & set(sigma))
    if clash:
        raise PreconditionError(f"source uses reserved names: {sorted(clash)}")
    states = Q + new_states
    letters = sigma + new_letters
    trans = dict(t.transitions)
    trans[(S_STATE, STAR)] = (STAR, T_STATE)
    trans[(T_STATE, END)] = (END, dollar)
    for q in Q:
        trans[(T_STATE, aq(q, 1))] = (aq(q, 0), T_STATE)
        trans[(T_STATE, aq(q, 0))] = (aq(q, 1), hq(q))
        for p in Q:
            for i in (0, 1):
                trans[(hq(q), aq(p, i))] = (aq(p, i), hq(q))
        trans[(hq(q), END)] = (END, q)
    for x in letters:
        trans[(ID_STATE, x)] = (x, ID_STATE)
    # identity completion
    for p in states:
        for x in letters:
            trans.setdefault((p, x), (x, ID_STATE))
    r = Automaton(f"{t.name}-gadget", letters, states, trans)
    return GadgetBundle(t, dollar, r)


def encode_word(bundle: GadgetBundle, s) -> tuple:
    """* (a_q1,0) ... (a_qn,0) ! for s = [q1, ..., qn]."""
    for q in s:
        if q not in bundle.source.state_index:
            raise UnknownSymbol(f"{q!r} is not a source state")
    return (STAR,) + tuple(aq(q, 0) for q in s) + (END,)


@dataclass(frozen=True)
class Verified:
    rows: int


@dataclass(frozen=True)
class Failed:
    position: object
    detail: str


def expected_residual(bundle: GadgetBundle, s, k: int) -> tuple:
    # The residual column read top to bottom is the application order of
    # the result: each block of |Λ(s)|+1 rows of s leaves Λ(s) first and
    # then $ (the last row of a block is the one where the counter resets).
    return (lambda_expand(s) + (bundle.dollar,)) * k


def verify_dagger(bundle: GadgetBundle, s, k: int, max_len: int = 10**5):
    """s^(k·|Λ(s)$|) fixes u = encode_word(s) and leaves (Λ(s) $)^k."""
    s = tuple(s)
    rows = k * (2 ** len(s))
    if rows > max_len:
        raise BudgetExceeded(f"{rows} rows exceed the budget {max_len}")
    u = encode_word(bundle, s)
    r = act_finite(bundle.automaton, (S_STATE,) * rows, u)
    if isinstance(r, Undefined):
        return Failed((r.row, r.position), "undefined cell (R should be complete)")
    if r.output != u:
        return Failed(None, f"output {r.output} differs from u")
    want = expected_residual(bundle, s, k)
    if r.residual != want:
        i = next(i for i, (x, y) in enumerate(zip(r.residual, want)) if x != y)
        return Failed(i, f"residual row {i} is {r.residual[i]}, expected {want[i]}")
    return Verified(rows)

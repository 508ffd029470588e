"""Structural classifiers: letters forcing infinite orbits, and extraction of
ultimately periodic words with finite orbit."""
from __future__ import annotations

from dataclasses import dataclass

from .action import UPWord, up_canonicalize
from .automaton import Automaton, _flags, classify, dual, require_finite
from .errors import PreconditionError
from .orbits import Finite, GenLang, orbit_up


@dataclass(frozen=True)
class LetterClassification:
    gamma: tuple            # letters in non-bi-reversible components of the usable part
    usable: tuple           # letters (dual states) of the reversible G-sub-automaton
    components: tuple       # ((letters, bi_reversible), ...) for the usable components
    whole_dual: bool        # the whole dual is a reversible G-automaton


@dataclass(frozen=True)
class Inapplicable:
    failing: str            # first property the dual lacks


def classify_letters(a: Automaton):
    """Components of dual(a) that are complete, invertible and reversible
    form a reversible G-sub-automaton D; gamma collects the letters of its
    non-bi-reversible components."""
    require_finite(a, "classify_letters")
    d = dual(a)
    rep = classify(d)
    n_in = len(d.alphabet)
    usable = []
    first_fail = None
    for comp in rep.components:
        members = set(comp.states)
        sub = [t for t in d.triples() if t[0] in members]
        complete = len(sub) == len(members) * n_in
        reversible, invertible, _ = _flags(sub)
        for name, ok in (("reversible", reversible), ("complete", complete),
                         ("invertible", invertible)):
            if not ok:
                first_fail = first_fail or name
                break
        else:
            usable.append(comp)
    if not usable:
        return Inapplicable(first_fail or "reversible")
    order = {x: i for i, x in enumerate(a.alphabet)}
    gamma = sorted((x for c in usable if not c.bi_reversible for x in c.states), key=order.get)
    letters = sorted((x for c in usable for x in c.states), key=order.get)
    comps = tuple((c.states, c.bi_reversible) for c in usable)
    return LetterClassification(tuple(gamma), tuple(letters), comps,
                                len(usable) == len(rep.components))


@dataclass(frozen=True)
class PredictInfinite:
    letter: str


@dataclass(frozen=True)
class NoPrediction:
    reason: str = ""


def predict_periodic_orbit(a: Automaton, x: UPWord, classification=None):
    """PredictInfinite when the period of x contains a gamma letter (and x
    lives over the usable letters unless the whole dual qualifies)."""
    c = classification if classification is not None else classify_letters(a)
    if isinstance(c, Inapplicable):
        return NoPrediction(f"inapplicable: dual not {c.failing}")
    if not c.whole_dual:
        usable = set(c.usable)
        if not set(x.preperiod + x.period) <= usable:
            return NoPrediction("word leaves the reversible G-sub-automaton")
    for letter in x.period:
        if letter in c.gamma:
            return PredictInfinite(letter)
    return NoPrediction("no gamma letter in the period")


@dataclass(frozen=True)
class Extracted:
    u: tuple
    v: tuple
    verified: bool
    covers_recurrent: bool      # v contains every letter of x's period
    periodic: object = None     # v^ω for reversible complete automata
    periodic_verified: bool = False


@dataclass(frozen=True)
class NotFoundWithinBudget:
    max_len: int


def _residual_table(a, psi: UPWord, max_len):
    """rows[ℓ] = tuple over states q of q·ψ[:ℓ] (None when undefined)."""
    cur = list(a.states)
    rows = [tuple(cur)]
    for ell in range(max_len):
        x = psi.letter(ell)
        for k, q in enumerate(cur):
            if q is not None:
                t = a.step(q, x)
                cur[k] = None if t is None else t[1]
        rows.append(tuple(cur))
    return rows


def extract_periodic_finite_orbit(a: Automaton, x: UPWord, pair_budget: int | None = None,
                                  node_budget: int = 10**5):
    """From a finite orbit {ξ0 = x, ...} pick ℓ < ℓ' (ascending ℓ', then ℓ)
    with q·ξi[:ℓ] = q·ξi[:ℓ'] for all i and q; then u v^ω with
    u = ξ0[:ℓ], v = ξ0[ℓ:ℓ'] has a finite orbit."""
    require_finite(a, "extract_periodic_finite_orbit")
    full = GenLang.full()
    res = orbit_up(a, full, x, node_budget)
    if not isinstance(res, Finite):
        raise PreconditionError("orbit of x is not proven finite within the node budget")
    orbit = res.words
    if pair_budget is None:
        pair_budget = len(a.states) * len(orbit) * len(x.period) * 8
    tables = [_residual_table(a, psi, pair_budget) for psi in orbit]
    first = {}
    for ell2 in range(pair_budget + 1):
        sig = tuple(t[ell2] for t in tables)
        ell = first.get(sig)
        if ell is None:
            first[sig] = ell2
            continue
        xi0 = orbit[0]
        u = xi0.prefix(ell)
        v = xi0.prefix(ell2)[ell:]
        cand = up_canonicalize(u, v)
        verified = isinstance(orbit_up(a, full, cand, node_budget), Finite)
        covers = set(x.period) <= set(v)
        periodic, pver = None, False
        rep = classify(a)
        if rep.reversible and rep.complete:
            periodic = up_canonicalize((), v)
            pver = isinstance(orbit_up(a, full, periodic, node_budget), Finite)
        return Extracted(u, v, verified, covers, periodic, pver)
    return NotFoundWithinBudget(pair_budget)

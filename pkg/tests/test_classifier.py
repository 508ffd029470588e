import random

import pytest
from hypothesis import given, settings, strategies as st

from orbitkit import (classify, classify_letters, dual, extract_periodic_finite_orbit,
                      orbit_up, parse_upword, predict_periodic_orbit, up_canonicalize)
from orbitkit.classifier import (Extracted, Inapplicable, LetterClassification, NoPrediction,
                                 PredictInfinite)
from orbitkit.corpus import (corpus_get, corpus_names, grigorchuk_dual, mixed, random_g_automaton,
                             random_reversible_non_bireversible)
from orbitkit.errors import PreconditionError
from orbitkit.orbits import Finite, GenLang

from conftest import brute_orbit

seeds = st.integers(0, 2**32 - 1)


def dual_is_reversible_g(a):
    rep = classify(dual(a))
    return rep.complete and rep.invertible and rep.reversible


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_classification_shape(name):
    a = corpus_get(name)
    c = classify_letters(a)
    if dual_is_reversible_g(a):
        assert isinstance(c, LetterClassification) and c.whole_dual
    else:
        assert isinstance(c, Inapplicable) or not c.whole_dual


def test_mixed_is_inapplicable():
    assert classify_letters(mixed()) == Inapplicable("invertible")
    m = mixed()
    assert isinstance(predict_periodic_orbit(m, parse_upword(m.alphabet, "|0")), NoPrediction)


def test_identity_has_no_gamma():
    c = classify_letters(corpus_get("identity"))
    assert c.gamma == () and c.usable == ("0", "1")


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_gamma_nonempty_for_non_bireversible(seed):
    r = random.Random(seed)
    a = random_reversible_non_bireversible(r, 3, 3)
    c = classify_letters(a)
    assert isinstance(c, LetterClassification)
    # every letter of a non-bi-reversible usable component is in gamma
    for letters, bi in c.components:
        assert (set(letters) <= set(c.gamma)) == (not bi)
    assert c.gamma


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_infinite_prediction_is_never_contradicted(seed):
    # a predicted-infinite periodic word never has a finite orbit
    r = random.Random(seed)
    a = random_reversible_non_bireversible(r, 3, 3)
    c = classify_letters(a)
    for v in [(x,) for x in a.alphabet] + [(x, y) for x in a.alphabet for y in a.alphabet]:
        x = up_canonicalize((), v)
        p = predict_periodic_orbit(a, x, c)
        if isinstance(p, PredictInfinite):
            assert p.letter in v and p.letter in c.gamma
            assert not isinstance(orbit_up(a, GenLang.full(), x, node_budget=200), Finite)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_prediction_over_bireversible_duals_is_silent(seed):
    r = random.Random(seed)
    a = random_g_automaton(r, 2, 2, reversible=True)
    c = classify_letters(a)
    if isinstance(c, LetterClassification) and not c.gamma:
        for x in a.alphabet:
            assert isinstance(predict_periodic_orbit(a, up_canonicalize((), (x,)), c),
                              NoPrediction)


def test_extract_mixed():
    m = mixed()
    r = extract_periodic_finite_orbit(m, parse_upword(m.alphabet, "1'|0"))
    assert isinstance(r, Extracted)
    assert (r.u, r.v) == (("1'",), ("0",)) and r.verified


def test_extract_grigorchuk_dual():
    g = grigorchuk_dual()
    r = extract_periodic_finite_orbit(g, parse_upword(g.alphabet, "|b"))
    assert (r.u, r.v) == ((), ("b", "b")) and r.verified
    assert r.periodic.period == ("b",) and r.periodic_verified


def test_extract_identity():
    i = corpus_get("identity")
    r = extract_periodic_finite_orbit(i, parse_upword(i.alphabet, "|0"))
    assert (r.u, r.v) == ((), ("0",)) and r.verified and r.covers_recurrent


def test_extract_needs_finite_orbit():
    a = corpus_get("adding-machine")
    with pytest.raises(PreconditionError):
        extract_periodic_finite_orbit(a, parse_upword(a.alphabet, "|0"), node_budget=100)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_extraction_result_has_finite_orbit(seed):
    r = random.Random(seed)
    a = random_g_automaton(r, r.randint(1, 3), 2)
    x = up_canonicalize(tuple(r.choice(a.alphabet) for _ in range(r.randint(0, 2))),
                        tuple(r.choice(a.alphabet) for _ in range(r.randint(1, 2))))
    res = orbit_up(a, GenLang.full(), x, node_budget=200)
    if not isinstance(res, Finite):
        return
    e = extract_periodic_finite_orbit(a, x, node_budget=200)
    assert isinstance(e, Extracted) and e.v
    cand = up_canonicalize(e.u, e.v)
    got = orbit_up(a, GenLang.full(), cand, node_budget=200)
    assert e.verified == isinstance(got, Finite)
    if e.verified:
        n = 6
        singles = [(q,) for q in a.states]
        assert {w.prefix(n) for w in got.words} == brute_orbit(a, singles, cand.prefix(n))

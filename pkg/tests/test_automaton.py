import random

import pytest
from hypothesis import given, settings, strategies as st

from orbitkit import (Automaton, classify, compose, disjoint_union, dual, identity_automaton,
                      inverse, parse, power, serialize, trim)
from orbitkit.automaton import invertibility_witness
from orbitkit.corpus import (corpus_get, corpus_names, expected_flags, grigorchuk,
                             grigorchuk_dual, random_automaton, random_g_automaton,
                             random_reversible)
from orbitkit.errors import (AlphabetMismatch, InvertibilityError, ParseError,
                             UnknownSymbol)

from conftest import all_words, run_seq

seeds = st.integers(0, 2**32 - 1)


def rand_aut(seed, n=None, m=None, density=0.8):
    r = random.Random(seed)
    return random_automaton(r, n or r.randint(1, 4), m or r.randint(1, 3), density)


def at_most_one(pairs):
    seen = set()
    for k in pairs:
        if k in seen:
            return False
        seen.add(k)
    return True


def flags_by_definition(a):
    """Independent check of the structural properties."""
    tr = list(a.triples())
    complete = len(tr) == len(a.states) * len(a.alphabet)
    invertible = at_most_one((q, b) for q, x, b, p in tr)
    reversible = at_most_one((x, p) for q, x, b, p in tr)
    inv_rev = at_most_one((b, p) for q, x, b, p in tr)
    return dict(complete=complete, reversible=reversible, invertible=invertible,
                inverse_reversible=inv_rev,
                bi_reversible=reversible and inv_rev)


@pytest.mark.parametrize("name", corpus_names())
def test_corpus_flags(name):
    a = corpus_get(name)
    flags = classify(a).flags()
    assert flags == expected_flags(name)
    assert flags == flags_by_definition(a)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_flags_match_definition(seed):
    a = rand_aut(seed)
    assert classify(a).flags() == flags_by_definition(a)


def test_components_grigorchuk():
    rep = classify(grigorchuk())
    assert [set(c.states) for c in rep.components] == [{"a", "b", "c", "d", "id"}]
    assert not rep.components[0].strongly_connected


def test_components_identity_is_bireversible():
    rep = classify(corpus_get("identity"))
    assert rep.components[0].strongly_connected and rep.components[0].bi_reversible


@pytest.mark.parametrize("name", corpus_names())
def test_serialize_round_trip(name):
    a = corpus_get(name)
    assert parse(serialize(a)) == a


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_serialize_round_trip_random(seed):
    a = rand_aut(seed)
    assert parse(serialize(a)) == a


def test_parse_comments_and_blank_lines():
    text = """
    # a one-state flip
    automaton flip   # trailing comment
    alphabet 0 1
    states f

    trans f 0 1 f
    trans f 1 0 f
    """
    a = parse(text)
    assert a.name == "flip" and a.step("f", "0") == ("1", "f")


@pytest.mark.parametrize("text, line", [
    ("automaton x\nalphabet 0\nstates q\ntrans q 0 0 q\ntrans q 0 0 q\n", 5),
    ("automaton x\nalphabet 0\nstates q\nfoo bar\n", 4),
    ("automaton x\nalphabet\nstates q\n", 2),
    ("automaton x\nalphabet 0\nstates\n", 3),
    ("automaton x\nalphabet 0\nstates q\ntrans q 0 0 r\n", 4),
    ("automaton x\nalphabet 0\nstates q\ntrans q 1 0 q\n", 4),
    ("automaton x\nalphabet 0\nstates q\ntrans q 0 0\n", 4),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.line == line


@pytest.mark.parametrize("text", [
    "alphabet 0\nstates q\n",
    "automaton x\nstates q\n",
    "automaton x\nalphabet 0\n",
    "automaton x\nalphabet 0 0\nstates q\n",
])
def test_parse_errors_missing_parts(text):
    with pytest.raises(ParseError):
        parse(text)


def test_constructor_rejects_unknown_symbols():
    with pytest.raises(UnknownSymbol):
        Automaton("x", "01", ("q",), [("q", "0", "2", "q")])
    with pytest.raises(UnknownSymbol):
        Automaton("x", "01", ("q",), [("q", "0", "1", "r")])


def test_grigorchuk_dual_transcription():
    d = dual(grigorchuk())
    g = grigorchuk_dual()
    assert d.alphabet == g.alphabet and d.states == g.states
    assert dict(d.transitions) == dict(g.transitions)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_dual_is_involution(seed):
    a = rand_aut(seed)
    dd = dual(dual(a))
    assert dd.name == a.name and dd.states == a.states and dd.alphabet == a.alphabet
    assert dict(dd.transitions) == dict(a.transitions)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_dual_relation(seed):
    a = rand_aut(seed)
    d = dual(a)
    for (q, x), (y, p) in a.transitions.items():
        assert d.step(x, q) == (p, y)
    assert len(d.transitions) == len(a.transitions)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_inverse_undoes_action(seed):
    r = random.Random(seed)
    a = random_g_automaton(r, r.randint(1, 4), r.randint(1, 3))
    ia = inverse(a)
    assert dict(inverse(ia).transitions) == dict(a.transitions)
    for q in a.states:
        for w in all_words(a.alphabet, 3):
            v = run_seq(a, (q,), w)
            assert run_seq(ia, (q + "⁻¹",), v) == w


def test_inverse_rejects_non_invertible():
    a = corpus_get("right-ideal")
    with pytest.raises(InvertibilityError) as e:
        inverse(a)
    (q1, x1, b1, _), (q2, x2, b2, _) = e.value.witness
    assert q1 == q2 and b1 == b2 and x1 != x2
    assert invertibility_witness(corpus_get("adding-machine")) is None


@settings(max_examples=80, deadline=None)
@given(seeds, seeds)
def test_compose_action_coherence(s1, s2):
    r = random.Random(s1)
    m = r.randint(1, 3)
    a1 = rand_aut(s1, m=m)
    a2 = rand_aut(s2, m=m)
    c = compose(a2, a1)
    for q2 in a2.states:
        for q1 in a1.states:
            for w in all_words(a1.alphabet, 3):
                mid = run_seq(a1, (q1,), w)
                want = None if mid is None else run_seq(a2, (q2,), mid)
                assert run_seq(c, (f"{q2}∘{q1}",), w) == want


def test_compose_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        compose(corpus_get("adding-machine"), corpus_get("t1"))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 3))
def test_power_action_coherence(seed, k):
    a = rand_aut(seed, n=2, m=2)
    pk = power(a, k)
    for s in pk.states:
        parts = tuple(reversed(s.split("∘")))    # written order -> application order
        assert len(parts) == k
        for w in all_words(a.alphabet, 3):
            assert run_seq(pk, (s,), w) == run_seq(a, parts, w)


@settings(max_examples=80, deadline=None)
@given(seeds, seeds)
def test_reversible_closed_under_composition(s1, s2):
    r1, r2 = random.Random(s1), random.Random(s2)
    m = r1.randint(1, 3)
    a1 = random_reversible(r1, r1.randint(1, 4), m)
    a2 = random_reversible(r2, r2.randint(1, 4), m)
    assert classify(a1).reversible and classify(a2).reversible
    assert classify(compose(a2, a1)).reversible


def test_disjoint_union_prefixes_only_on_clash():
    a = corpus_get("adding-machine")
    g = corpus_get("grigorchuk")
    u = disjoint_union(a, g)
    assert u.states == ("L.q", "L.id", "R.a", "R.b", "R.c", "R.d", "R.id")
    assert u.step("L.id", "0") == ("0", "L.id")
    assert u.step("L.q", "1") == ("0", "L.q")
    assert u.step("R.b", "0") == ("0", "R.a")
    v = disjoint_union(a, corpus_get("t1"))
    assert v.alphabet == ("0", "1", "a", "b")
    assert v.step("L.q", "a") is None and v.step("R.p", "b") == ("b", "R.p")


def test_trim_keeps_reachable():
    a = corpus_get("right-ideal")
    t = trim(a, ["p"])
    assert t.states == ("p",)
    t2 = trim(a, ["q"])
    assert set(t2.states) == {"q", "id"}


def test_identity_automaton():
    i = identity_automaton("abc")
    assert classify(i).bi_reversible and i.step("id", "b") == ("b", "id")

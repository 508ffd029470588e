import random

import pytest
from hypothesis import given, settings, strategies as st

from orbitkit import (GenLang, certify_infinite_up, extend_orbit, orbit_path_search, orbit_up,
                      orbit_word, orbital_transducer, orbital_transducer_iso, parse_upword,
                      up_canonicalize, witness_search)
from orbitkit.corpus import (adding_machine, corpus_get, mixed, random_automaton,
                             random_g_automaton, right_ideal, t1)
from orbitkit.errors import PreconditionError, UnsupportedOperation
from orbitkit.orbits import (Certified, ExceededBudget, Finite, Found, GrowthCertificate, Iso,
                             NotFoundWithinBudget, NotIso, OrbitPath, PathNotFound, Stalled,
                             Unknown)

from conftest import all_words, brute_orbit, run_seq

seeds = st.integers(0, 2**32 - 1)


def W(text):
    return tuple(text)


def singles(a):
    return [(q,) for q in a.states]


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_orbit_matches_brute_force(seed):
    r = random.Random(seed)
    a = random_automaton(r, r.randint(1, 4), r.randint(1, 3), density=0.7)
    for w in all_words(a.alphabet, 3):
        orb, o = orbit_word(a, GenLang.full(), w)
        assert orb == brute_orbit(a, singles(a), w)
        assert o.nodes[0] == w


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_block_language_orbit(seed):
    r = random.Random(seed)
    a = random_automaton(r, 3, 2, density=0.9)
    blocks = [tuple(r.choice(a.states) for _ in range(r.randint(1, 3))) for _ in range(2)]
    lang = GenLang.blocks_star(blocks)
    for w in all_words(a.alphabet, 3):
        orb, _ = orbit_word(a, lang, w)
        assert orb == brute_orbit(a, blocks, w)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_left_ideal_orbit(seed):
    r = random.Random(seed)
    a = random_automaton(r, 3, 2, density=0.9)
    p = (r.choice(a.states),)
    lang = GenLang.left_ideal(p)
    for w in all_words(a.alphabet, 3):
        orb, _ = orbit_word(a, lang, w)
        first = run_seq(a, p, w)
        want = {w}
        if first is not None:
            want |= brute_orbit(a, singles(a), first)
        assert orb == want


def test_orbital_edges_carry_output():
    a = adding_machine()
    o = orbital_transducer(a, GenLang.full(), W("00"))
    assert len(o) == 4
    # edge label q from 11 wraps around to 00 with residual id
    assert o.edges[(W("11"), 0)] == (("q",), W("00"))
    assert o.edges[(W("00"), 0)] == (("id",), W("10"))


def test_right_ideal_path_graph():
    a = right_ideal()
    orb, o = orbit_word(a, GenLang.full(), W("bbb"))
    assert orb == {W("bbb"), W("abb"), W("aab"), W("aaa")}
    q, i, p = 0, 1, 2
    chain = [W("bbb"), W("abb"), W("aab"), W("aaa")]
    for x, y in zip(chain, chain[1:]):
        assert o.edges[(x, q)][1] == y
        assert (x, p) not in o.edges
    assert o.edges[(W("aaa"), q)][1] == W("aaa")
    assert o.edges[(W("aaa"), p)][1] == W("aaa")
    for w in chain:
        assert o.edges[(w, i)][1] == w


def test_node_limit_marks_incomplete():
    o = orbital_transducer(adding_machine(), GenLang.full(), W("0000"), node_limit=5)
    assert len(o) == 5 and not o.complete


def test_full_language_needs_finite_backend():
    from orbitkit.corpus import oracle_get
    with pytest.raises(UnsupportedOperation):
        orbital_transducer(oracle_get("fig2"), GenLang.full(), W("0"))


def test_iso_examples():
    a = right_ideal()
    o1 = orbital_transducer(a, GenLang.full(), W("a"))
    o2 = orbital_transducer(a, GenLang.full(), W("aa"))
    r = orbital_transducer_iso(o1, o2)
    assert isinstance(r, Iso) and r.mapping[W("a")] == W("aa")
    b = adding_machine()
    r = orbital_transducer_iso(orbital_transducer(b, GenLang.full(), W("00")),
                               orbital_transducer(b, GenLang.full(), W("01")))
    assert r == NotIso((0, 0))
    r = orbital_transducer_iso(orbital_transducer(a, GenLang.full(), W("bb")),
                               orbital_transducer(a, GenLang.full(), W("bbb")))
    assert r == NotIso((0, 0, 0))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_iso_agrees_with_canonical_form(seed):
    r = random.Random(seed)
    a = random_automaton(r, 2, 2, density=0.8)
    words = list(all_words(a.alphabet, 3, 1))
    w1, w2 = r.choice(words), r.choice(words)
    o1 = orbital_transducer(a, GenLang.full(), w1)
    o2 = orbital_transducer(a, GenLang.full(), w2)
    iso = isinstance(orbital_transducer_iso(o1, o2), Iso)
    assert iso == (o1.canonical_form() == o2.canonical_form())


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_extend_orbit_is_least_extension(seed):
    r = random.Random(seed)
    a = random_automaton(r, r.randint(1, 3), 2, density=0.8)
    full = GenLang.full()
    for u in all_words(a.alphabet, 2):
        base = len(brute_orbit(a, singles(a), u))
        want = None
        for x in all_words(a.alphabet, 3, 1):
            n = len(brute_orbit(a, singles(a), u + x))
            if n > base:
                want = Found(x, n)
                break
        got = extend_orbit(a, full, u, 3)
        if want is None:
            assert isinstance(got, NotFoundWithinBudget)
        else:
            assert got == want


def test_witness_adding_machine():
    r = witness_search(adding_machine(), GenLang.full(), 8)
    assert isinstance(r, GrowthCertificate)
    assert r.chain == (((), 1), (W("0"), 2), (W("00"), 4), (W("000"), 8))


def test_witness_t1_stalls():
    r = witness_search(t1(), GenLang.full(), 8, budget=6)
    assert isinstance(r, Stalled)
    assert r.prefix == W("aa")


def test_orbit_up_mixed():
    m = mixed()
    x = parse_upword(m.alphabet, "1'|0")
    r = orbit_up(m, GenLang.full(), x)
    assert isinstance(r, Finite)
    assert {w.render(" ") for w in r.words} == {"1'|0", "0'|0"}


def test_orbit_up_budget():
    r = orbit_up(adding_machine(), GenLang.full(), parse_upword("01", "|0"), node_budget=50)
    assert isinstance(r, ExceededBudget) and r.visited == 50


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_orbit_up_prefixes_are_finite_orbits(seed):
    # each element's prefix lies in the finite orbit of the prefix
    r = random.Random(seed)
    a = random_g_automaton(r, r.randint(1, 3), 2)
    x = up_canonicalize(tuple(r.choice("ab") for _ in range(r.randint(0, 2))),
                        tuple(r.choice("ab") for _ in range(r.randint(1, 2))))
    res = orbit_up(a, GenLang.full(), x, node_budget=200)
    if isinstance(res, Finite):
        n = 6
        assert {w.prefix(n) for w in res.words} == brute_orbit(a, singles(a), x.prefix(n))


def test_certify_infinite_up():
    a = adding_machine()
    r = certify_infinite_up(a, parse_upword("01", "|0"), 16)
    assert r == Certified(4, 16)
    assert isinstance(certify_infinite_up(corpus_get("identity"), parse_upword("01", "|0"), 4,
                                          prefix_budget=5), Unknown)
    with pytest.raises(PreconditionError):
        certify_infinite_up(t1(), parse_upword("ab", "|a"), 4)


def test_orbit_path_adding_machine():
    a = adding_machine()
    r = orbit_path_search(a, GenLang.full(), W("000"), 7)
    assert isinstance(r, OrbitPath)
    assert [("".join(w)) for w in r.nodes] == ["000", "100", "010", "110", "001", "101",
                                                "011", "111"]
    assert r.labels == (0,) * 7
    assert orbit_path_search(a, GenLang.full(), W("000"), 8) == PathNotFound(True)
    assert orbit_path_search(a, GenLang.full(), W("000"), 0) == OrbitPath((W("000"),), ())


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 5))
def test_orbit_path_is_valid_simple_path(seed, length):
    r = random.Random(seed)
    a = random_automaton(r, r.randint(1, 3), 2, density=0.9)
    u = tuple(r.choice(a.alphabet) for _ in range(3))
    res = orbit_path_search(a, GenLang.full(), u, length)
    orb = brute_orbit(a, singles(a), u)
    if isinstance(res, OrbitPath):
        assert len(set(res.nodes)) == len(res.nodes) == length + 1
        for (x, y), f in zip(zip(res.nodes, res.nodes[1:]), res.labels):
            assert run_seq(a, (a.states[f],), x) == y
    else:
        assert res.exhausted
    if len(orb) < length + 1:
        assert isinstance(res, PathNotFound)


def test_genlang_describe():
    a = right_ideal()
    assert GenLang.full().describe() == "Q*"
    assert "p = p" in GenLang.left_ideal(("p",)).describe()
    assert GenLang.left_ideal(("p",)).blocks(a) == (("p",), ("q",), ("id",), ("p",))
    assert GenLang.left_ideal(("p",)).contains([0, 1, 2])
    assert not GenLang.left_ideal(("p",)).contains([1])
    with pytest.raises(ValueError):
        GenLang.blocks_star([])

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsynth import vocab
from graphsynth.errors import MalformedQuadError, MalformedTermError
from graphsynth.quadstore import Pattern, Quad, QuadStore, Var
from graphsynth.terms import Blank, Iri, Literal, sort_key

from oracles import canonical, expected_order, nested_loop_join, tractable_case

G = "http://t.example/g1"
H = "http://t.example/g2"
A = Iri("http://t.example/a")
B = Iri("http://t.example/b")
P = Iri("http://t.example/p")
Q = Iri("http://t.example/q")


def test_insert_returns_true_then_false():
    store = QuadStore()
    quad = Quad(A, P, B, G)
    assert store.insert(quad) is True
    assert len(store) == 1
    assert store.insert(quad) is False
    assert len(store) == 1


def test_graph_is_part_of_identity():
    store = QuadStore()
    assert store.insert(Quad(A, P, B, G)) is True
    assert store.insert(Quad(A, P, B, H)) is True
    assert len(store) == 2


def test_malformed_quads_rejected():
    with pytest.raises(MalformedQuadError):
        Quad(Literal("x"), P, B, G)
    with pytest.raises(MalformedQuadError):
        Quad(A, Literal("p"), B, G)
    with pytest.raises(MalformedQuadError):
        Quad(A, Blank("p"), B, G)
    with pytest.raises(MalformedQuadError):
        Quad(A, P, B, "")


def test_malformed_terms_rejected():
    with pytest.raises(MalformedTermError):
        Iri("")
    with pytest.raises(MalformedTermError):
        Iri("http://x/ y")
    with pytest.raises(MalformedTermError):
        Literal("x", "")
    with pytest.raises(MalformedTermError):
        Blank("no spaces allowed")


def test_match_pattern_binds_variables():
    store = QuadStore()
    store.insert(Quad(A, P, B, G))
    rows = store.match_pattern(Pattern(Var("s"), P, Var("o"), G))
    assert rows == [{"s": A, "o": B}]


def test_match_pattern_no_match_is_empty():
    store = QuadStore()
    store.insert(Quad(A, P, B, G))
    assert store.match_pattern(Pattern(Var("s"), Q, Var("o"), G)) == []


def test_match_pattern_repeated_variable_joins():
    store = QuadStore()
    store.insert(Quad(A, P, A, G))
    store.insert(Quad(A, P, B, G))
    rows = store.match_pattern(Pattern(Var("s"), P, Var("s"), G))
    assert rows == [{"s": A}]


def test_match_pattern_graph_variable():
    store = QuadStore()
    store.insert(Quad(A, P, B, G))
    store.insert(Quad(A, P, B, H))
    rows = store.match_pattern(Pattern(A, P, B, Var("g")))
    assert rows == [{"g": Iri(G)}, {"g": Iri(H)}]


def test_query_bgp_requires_a_pattern():
    with pytest.raises(ValueError):
        QuadStore().query_bgp([])


def test_query_bgp_single_pattern_equals_match_pattern():
    store = QuadStore()
    for obj in (A, B):
        store.insert(Quad(A, P, obj, G))
    pattern = Pattern(Var("s"), P, Var("o"), G)
    assert store.query_bgp([pattern]) == store.match_pattern(pattern)


def test_query_bgp_empty_store():
    store = QuadStore()
    assert store.query_bgp([Pattern(Var("s"), Var("p"), Var("o"), Var("g"))]) == []


def test_query_bgp_over_seed_kb_matches_oracle(seed_kb):
    store, _ = seed_kb
    patterns = [
        Pattern(Var("x"), Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type"), Iri(vocab.ALGORITHM), vocab.CORE_GRAPH),
        Pattern(Var("x"), Iri(vocab.HAS_OUTPUT_DESCRIPTION_LABEL), Var("l"), vocab.CORE_GRAPH),
    ]
    got = store.query_bgp(patterns)
    oracle = nested_loop_join(list(store.quads()), patterns)
    assert sorted(map(canonical, got)) == sorted(map(canonical, oracle))
    assert got == expected_order(patterns, oracle)
    labels = {row["l"].lexical for row in got}
    assert labels == {"average value", "average value variation"}


def test_graph_size():
    store = QuadStore()
    assert store.graph_size(G) == 0
    store.insert(Quad(A, P, B, G))
    store.insert(Quad(A, P, A, G))
    store.insert(Quad(A, Q, B, G))
    assert store.graph_size(G) == 3
    store.insert(Quad(A, P, B, G))
    assert store.graph_size(G) == 3


def test_term_total_order_ranks_variants():
    terms = [Literal("a"), Blank("a"), Iri("http://a")]
    ordered = sorted(terms, key=sort_key)
    assert [type(t).__name__ for t in ordered] == ["Iri", "Blank", "Literal"]


def test_literals_compare_structurally():
    assert Literal("1.0", "http://www.w3.org/2001/XMLSchema#decimal") != Literal(
        "1.00", "http://www.w3.org/2001/XMLSchema#decimal"
    )


_quads = st.builds(
    Quad,
    subject=st.sampled_from([A, B, Blank("n1"), Blank("n2")]),
    predicate=st.sampled_from([P, Q]),
    object=st.sampled_from([A, B, Literal("1"), Literal("2")]),
    graph=st.sampled_from([G, H]),
)


@given(st.lists(_quads, max_size=40))
def test_double_insertion_is_idempotent(quads):
    once = QuadStore()
    twice = QuadStore()
    for quad in quads:
        once.insert(quad)
        twice.insert(quad)
        twice.insert(quad)
    assert set(once.quads()) == set(twice.quads())
    assert len(once) == len(twice)


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_query_bgp_equals_nested_loop_oracle(seed):
    rng = random.Random(seed)
    quads, patterns = tractable_case(rng, max_quads=60)
    store = QuadStore()
    for quad in quads:
        store.insert(quad)
    got = store.query_bgp(patterns)
    oracle = nested_loop_join(sorted(set(quads), key=lambda q: (sort_key(q.subject), sort_key(q.predicate), sort_key(q.object), q.graph)), patterns)
    assert sorted(map(canonical, got)) == sorted(map(canonical, oracle))
    assert got == expected_order(patterns, oracle)


def test_results_independent_of_insertion_order():
    rng = random.Random(7)
    quads, patterns = tractable_case(rng, max_quads=50)
    forward = QuadStore()
    backward = QuadStore()
    for quad in quads:
        forward.insert(quad)
    for quad in reversed(quads):
        backward.insert(quad)
    assert forward.query_bgp(patterns) == backward.query_bgp(patterns)

import math
import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g31.errors import InvalidParameterError
from g31.graph import (VertexSet, adjacent, colex_rank, colex_rank_array, colex_unrank,
                       colex_unrank_array, count_induced_edges, format_set, make_params,
                       neighbors, parse_set, read_set_file, write_set_file)

from conftest import brute_edges, colex_triples, meets_once


# ---------------------------------------------------------------- params

@pytest.mark.parametrize("n, expected", [
    (3, (1, 0, 0)),
    (6, (20, 9, 90)),
    (10, (120, 63, 3780)),
])
def test_make_params_examples(n, expected):
    p = make_params(n)
    assert (p.vertex_count, p.degree, p.total_edges) == expected


@pytest.mark.parametrize("n", [6, 10])
def test_make_params_against_exhaustive_pairs(n):
    triples = colex_triples(n)
    degrees = {sum(meets_once(v, u) for u in triples) for v in triples}
    p = make_params(n)
    assert degrees == {p.degree}
    assert brute_edges(triples) == p.total_edges


def test_make_params_big_n_exact():
    n = 10**6
    p = make_params(n)
    assert p.total_edges * 2 == p.degree * p.vertex_count
    assert p.vertex_count == n * (n - 1) * (n - 2) // 6


@pytest.mark.parametrize("bad", [2, 0, -5])
def test_make_params_rejects_small_n(bad):
    with pytest.raises(InvalidParameterError):
        make_params(bad)


# ---------------------------------------------------------------- adjacency

def test_adjacent_examples():
    assert adjacent((1, 2, 3), (3, 4, 5))
    assert not adjacent((1, 2, 3), (1, 2, 4))
    assert not adjacent((1, 2, 3), (4, 5, 6))
    assert not adjacent((1, 2, 3), (1, 2, 3))


def test_adjacent_symmetric():
    triples = colex_triples(7)
    for u, v in combinations(triples, 2):
        assert adjacent(u, v) == adjacent(v, u)


# ---------------------------------------------------------------- ranking

def test_colex_examples():
    assert colex_rank((1, 2, 3), 6) == 0
    assert colex_rank((1, 2, 4), 6) == 1
    assert colex_rank((4, 5, 6), 6) == 19
    assert colex_unrank(0, 6) == (1, 2, 3)
    assert colex_unrank(1, 6) == (1, 2, 4)
    assert colex_unrank(19, 6) == (4, 5, 6)


@pytest.mark.parametrize("n", range(3, 13))
def test_colex_matches_enumeration(n):
    triples = colex_triples(n)
    for r, t in enumerate(triples):
        assert colex_rank(t, n) == r
        assert colex_unrank(r, n) == t
    arr = np.array(triples)
    assert np.array_equal(colex_rank_array(arr), np.arange(len(triples)))
    assert np.array_equal(colex_unrank_array(np.arange(len(triples))), arr)


@given(st.integers(min_value=3, max_value=10**6).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, math.comb(n, 3) - 1))))
def test_unrank_rank_roundtrip_large(nr):
    n, r = nr
    v = colex_unrank(r, n)
    assert colex_rank(v, n) == r
    assert colex_unrank_array(np.array([r]))[0].tolist() == list(v)


def test_colex_errors():
    with pytest.raises(InvalidParameterError):
        colex_unrank(20, 6)
    with pytest.raises(InvalidParameterError):
        colex_unrank(-1, 6)
    with pytest.raises(InvalidParameterError):
        colex_rank((1, 2, 7), 6)
    with pytest.raises(InvalidParameterError):
        colex_rank((2, 1, 3), 6)
    with pytest.raises(InvalidParameterError):
        colex_rank((1, 2), 6)


# ---------------------------------------------------------------- neighbours

def test_neighbors_examples():
    assert neighbors(make_params(4), (1, 2, 3)) == []
    assert neighbors(make_params(5), (1, 2, 3)) == [(1, 4, 5), (2, 4, 5), (3, 4, 5)]
    nb6 = neighbors(make_params(6), (1, 2, 3))
    assert len(nb6) == 9
    assert nb6 == [u for u in colex_triples(6) if meets_once(u, (1, 2, 3))]


@pytest.mark.parametrize("n", range(4, 13))
def test_regularity(n):
    p = make_params(n)
    for v in colex_triples(n):
        nb = neighbors(p, v)
        assert len(nb) == 3 * math.comb(n - 3, 2)
        assert len(set(nb)) == len(nb)
        assert [colex_rank(u, n) for u in nb] == sorted(colex_rank(u, n) for u in nb)


# ---------------------------------------------------------------- vertex sets

def test_vertex_set_basics():
    W = VertexSet.from_vertices(6, [(1, 2, 4), (1, 2, 3), (1, 2, 4)])
    assert W.size == 2 == len(W)
    assert list(W) == [(1, 2, 3), (1, 2, 4)]
    assert (1, 2, 3) in W and (4, 5, 6) not in W and (1, 2, 9) not in W
    assert W.without((1, 2, 3)) == VertexSet.from_vertices(6, [(1, 2, 4)])
    assert W.complement().size == 18
    with pytest.raises(InvalidParameterError):
        VertexSet.from_vertices(6, [(1, 2, 7)])
    with pytest.raises(InvalidParameterError):
        VertexSet(6, [20])


def test_bitvector_roundtrip():
    W = VertexSet(7, [0, 3, 9, 34])
    bits = W.bitvector()
    assert bits.dtype == np.uint8 and bits.size == math.ceil(35 / 8)
    assert int(np.unpackbits(bits).sum()) == W.size
    assert VertexSet.from_bitvector(7, bits) == W


# ---------------------------------------------------------------- counting

def test_count_examples():
    p = make_params(6)
    assert count_induced_edges(p, VertexSet.from_vertices(6, [(1, 2, 3), (1, 4, 5)])) == 1
    assert count_induced_edges(
        p, VertexSet.from_vertices(6, [(1, 2, 3), (1, 2, 4), (1, 2, 5)])) == 0
    for method in ("grouped", "pairwise", "sparse"):
        assert count_induced_edges(p, VertexSet.full(6), method) == 90


@pytest.mark.parametrize("n", range(4, 11))
def test_handshake(n):
    p = make_params(n)
    assert count_induced_edges(p, VertexSet.full(n)) == (
        3 * math.comb(n - 3, 2) * math.comb(n, 3) // 2)


@pytest.mark.parametrize("n", range(6, 11))
def test_fast_paths_agree_with_pairwise(n):
    rng = random.Random(n)
    p = make_params(n)
    N = p.vertex_count
    for _ in range(1000):
        W = VertexSet(n, rng.sample(range(N), rng.randint(0, min(N, 40))))
        ref = count_induced_edges(p, W, "pairwise")
        assert count_induced_edges(p, W, "grouped") == ref
        if _ % 50 == 0:
            assert count_induced_edges(p, W, "sparse") == ref
            assert ref == brute_edges(list(W))


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.integers(0, math.comb(n, 3) - 1), min_size=1))))
def test_removal_never_increases_edges(case):
    n, ranks = case
    p = make_params(n)
    W = VertexSet(n, ranks)
    e = count_induced_edges(p, W)
    for v in list(W)[:5]:
        assert count_induced_edges(p, W.without(v)) <= e


def test_count_rejects_wrong_n():
    with pytest.raises(InvalidParameterError):
        count_induced_edges(make_params(7), VertexSet.full(6))
    with pytest.raises(InvalidParameterError):
        count_induced_edges(make_params(6), VertexSet.full(6), "magic")


# ---------------------------------------------------------------- set files

def test_set_file_roundtrip(tmp_path):
    W = VertexSet.from_vertices(9, [(1, 2, 3), (4, 5, 9), (2, 3, 7)])
    path = tmp_path / "w.txt"
    write_set_file(path, W)
    assert read_set_file(path) == W
    assert format_set(W).splitlines()[1] == "1 2 3"


def test_parse_set_comments_and_inference():
    W = parse_set("# a comment\n1 2 3\n\n3 4 5\n")
    assert W.n == 5 and list(W) == [(1, 2, 3), (3, 4, 5)]
    assert parse_set("1 2 3\n", n=8).n == 8
    with pytest.raises(InvalidParameterError):
        parse_set("1 2\n")
    with pytest.raises(InvalidParameterError):
        parse_set("3 2 1\n")
    with pytest.raises(InvalidParameterError):
        parse_set("a b c\n")

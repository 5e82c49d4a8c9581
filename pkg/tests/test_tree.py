import random

import pytest
from hypothesis import given, strategies as st

from conftest import trees
from hypotree.constructions import path, star
from hypotree.enumeration import free_trees
from hypotree.tree import (
    Disconnected,
    DuplicateEdge,
    EdgeCountMismatch,
    IndexOutOfRange,
    ParseError,
    SelfLoop,
    canonical_code,
    centroids,
    coalesce,
    max_degree,
    new_tree,
    parse_edge_list,
    relabel,
    serialize_edge_list,
    to_dot,
)
from oracles import isomorphic_brute


def test_new_tree_small():
    t = new_tree(2, [(0, 1)])
    assert t.adjacency == ((1,), (0,))
    s = new_tree(4, [(0, 1), (0, 2), (0, 3)])
    assert max_degree(s) == 3 and s.leaves == [1, 2, 3]


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (4, [(0, 1), (2, 3)], EdgeCountMismatch),
        (4, [(0, 1), (2, 3), (3, 2)], DuplicateEdge),
        (4, [(0, 1), (1, 2), (2, 0)], Disconnected),
        (3, [(0, 0), (1, 2)], SelfLoop),
        (3, [(0, 1), (1, 3)], IndexOutOfRange),
    ],
)
def test_new_tree_rejects(n, edges, exc):
    with pytest.raises(exc):
        new_tree(n, edges)


def test_max_degree():
    assert max_degree(star(5)) == 4
    assert max_degree(path(4)) == 2
    assert max_degree(new_tree(1, [])) == 0


def test_coalesce_examples():
    s5 = star(5)
    t = coalesce(s5, 1, s5, 1)
    assert t.n == 9
    assert sorted(len(a) for a in t.adjacency).count(4) == 2
    h = path(4)
    assert canonical_code(coalesce(new_tree(1, []), 0, h, 2)) == canonical_code(h)


def test_coalesce_relabelling_contract():
    g, h = path(3), star(3)
    t = coalesce(g, 2, h, 0)
    # g keeps labels, h's centre becomes 2, its leaves 1, 2 become 3, 4
    assert t.edges == [(0, 1), (1, 2), (2, 3), (2, 4)]


@given(trees(max_n=10), trees(max_n=10), st.data())
def test_coalesce_size_law(g, h, data):
    u = data.draw(st.integers(0, g.n - 1))
    v = data.draw(st.integers(0, h.n - 1))
    assert coalesce(g, u, h, v).n == g.n + h.n - 1


@given(trees(max_n=14))
def test_constructed_trees_are_trees(t):
    assert len(t.edges) == t.n - 1
    for u in range(t.n):
        for w in t.adjacency[u]:
            assert u in t.adjacency[w]
            assert w != u


def test_centroids():
    assert centroids(path(4)) == [1, 2]
    assert centroids(path(5)) == [2]
    assert centroids(star(6)) == [0]


def test_canonical_code_examples():
    p3 = path(3)
    assert canonical_code(p3) == canonical_code(new_tree(3, [(1, 0), (0, 2)]))
    assert canonical_code(path(4)) != canonical_code(star(4))


@pytest.mark.parametrize("n", range(1, 13))
def test_canonical_code_relabelling_invariant(n):
    rng = random.Random(n)
    for t in free_trees(n):
        code = canonical_code(t)
        for _ in range(100 if n == 12 else 10):
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_code(relabel(t, perm)) == code


@pytest.mark.parametrize("n", range(1, 9))
def test_canonical_code_matches_brute_isomorphism(n):
    rng = random.Random(100 + n)
    pool = []
    for t in free_trees(n):
        perm = list(range(n))
        rng.shuffle(perm)
        pool += [t, relabel(t, perm)]
    for i, a in enumerate(pool):
        for b in pool[i + 1 :]:
            same_code = canonical_code(a) == canonical_code(b)
            if same_code or n <= 7:
                assert same_code == isomorphic_brute(n, a.edges, b.edges)


def test_parse_edge_list():
    t = parse_edge_list("0 1\n0 2\n")
    assert t.edges == [(0, 1), (0, 2)]
    t = parse_edge_list("# a star\n\n0 1  # first\n2 0\n")
    assert t.edges == [(0, 1), (0, 2)]
    assert parse_edge_list("n=1\n").n == 1
    assert parse_edge_list("").n == 1


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_edge_list("0 1\n1 x\n")
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_edge_list("0 1\n\n1 2 3\n")
    assert err.value.line == 3


def test_round_trip_normalises():
    text = "2 1\n# comment\n0 1\n"
    t = parse_edge_list(text)
    assert serialize_edge_list(t) == "0 1\n1 2\n"
    assert serialize_edge_list(parse_edge_list(serialize_edge_list(t))) == serialize_edge_list(t)


@given(trees(max_n=15))
def test_round_trip_identity(t):
    assert parse_edge_list(serialize_edge_list(t)) == t


def test_dot():
    dot = to_dot(path(3))
    assert dot.startswith("graph T {")
    assert "0 -- 1;" in dot and "1 -- 2;" in dot
    assert dot.rstrip().endswith("}")

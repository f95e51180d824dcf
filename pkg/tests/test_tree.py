import json
import random
from fractions import Fraction

import pytest

from drinfeld.arith import Mat2, matrix_alpha, matrix_w
from drinfeld.tree import ResourceLimitError, Tree


def random_invertible(rng, p):
    while True:
        m = Mat2(*[Fraction(rng.randrange(-20, 21), p ** rng.randrange(2))
                   for _ in range(4)])
        if m.det() != 0:
            return m


def test_standard_vertices_and_involution():
    for p in (3, 5):
        T = Tree(p)
        w = matrix_w(p)
        assert T.act(w, T.s1) == T.s0
        assert T.act(w, T.s0) == T.s1
        assert T.act(matrix_alpha(p), T.s1) == T.s0
        assert T.distance(T.s0, T.s1) == 1
        assert T.parity(T.s0) == 0 and T.parity(T.s1) == 1
        assert T.act(Mat2.identity(), T.s0) == T.s0


def test_canonical_idempotent_and_chart_property():
    rng = random.Random(3)
    for p in (3, 5):
        T = Tree(p)
        for _ in range(30):
            v = T.act(random_invertible(rng, p), T.s1)
            assert T.canonical(T.rep(v)) == v
            # det valuation parity encodes the orbit
            assert T.parity(v) == (v.n + 1) % 2


def test_action_homomorphism():
    rng = random.Random(4)
    for p in (3, 5):
        T = Tree(p)
        for _ in range(25):
            g, h = random_invertible(rng, p), random_invertible(rng, p)
            v = T.act(random_invertible(rng, p), T.s1)
            assert T.act(g @ h, v) == T.act(g, T.act(h, v))


def test_distance_examples():
    T = Tree(3)
    assert T.distance(T.s1, T.s1) == 0
    assert T.distance(T.s0, T.s1) == 1
    assert T.distance(T.canonical(Mat2(9, 3, 0, 1)), T.s1) == 2


def test_distance_action_invariance():
    rng = random.Random(5)
    for p in (3, 5):
        T = Tree(p)
        for _ in range(20):
            g = random_invertible(rng, p)
            u = T.act(random_invertible(rng, p), T.s1)
            v = T.act(random_invertible(rng, p), T.s1)
            assert T.distance(T.act(g, u), T.act(g, v)) == T.distance(u, v)


def test_parity_matches_distance_to_s0():
    rng = random.Random(6)
    T = Tree(3)
    for _ in range(30):
        v = T.act(random_invertible(rng, 3), T.s1)
        assert T.parity(v) == (0 if T.distance(v, T.s0) % 2 == 0 else 1)


def test_neighbors():
    for p in (3, 5):
        T = Tree(p)
        nbrs = T.neighbors(T.s1)
        assert len(nbrs) == p + 1
        assert len(set(nbrs)) == p + 1
        for u in nbrs:
            assert T.distance(u, T.s1) == 1
            assert T.parity(u) == 0
            assert T.s1 in T.neighbors(u)


def test_ball_counts_and_bipartite():
    T = Tree(3)
    b0 = T.ball(T.s1, 0)
    assert len(b0.vertices) == 1 and not b0.edges
    b2 = T.ball(T.s1, 2)
    assert len(b2.vertices) == 17 and len(b2.edges) == 16
    assert len(Tree(5).ball(Tree(5).s1, 1).vertices) == 7
    for (i, j) in b2.edges:
        assert b2.parity(i) != b2.parity(j)
        assert abs(b2.depth[i] - b2.depth[j]) == 1


def test_ball_charts_and_marked_points():
    for seed in (0, 1, 9):
        T = Tree(3)
        ball = T.ball(T.s1, 2, seed)
        for idx, v in enumerate(ball.vertices):
            assert T.act(ball.charts[idx], T.s1) == v
            labels = list(ball.neighbor_table[idx])
            assert len(labels) == len(set(labels))
            if ball.is_interior(idx):
                assert len(labels) == 4


def test_ball_cap():
    T = Tree(3)
    with pytest.raises(ResourceLimitError):
        T.ball(T.s1, 3, max_vertices=10)


def test_serialization():
    T = Tree(3)
    assert str(T.s1) == "p^0:0/p^0"
    ball = T.ball(T.s1, 1)
    blob = json.dumps(ball.to_json())
    data = json.loads(blob)
    assert data["p"] == 3 and len(data["vertices"]) == 5
    assert sorted(data["parities"]) == [0, 0, 0, 0, 1]

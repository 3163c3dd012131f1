import itertools

import pytest

from conftest import W, brute_length, words_up_to
from geodesy.models import equal, free_group_model
from geodesy.oracles import (
    Ball,
    CallStats,
    CapacityExceeded,
    NotGeodesic,
    OracleSuite,
    RadiusExceeded,
    bfs_bounded,
    bfs_delta,
    bfs_geodesic,
    bfs_length,
    build_ball,
    is_geodesic,
)


def test_ball_layer_sizes(z2, f2, z3):
    assert build_ball(z2, 1).layer_sizes() == [1, 4]
    assert len(build_ball(z2, 1)) == 5
    assert build_ball(f2, 2).layer_sizes() == [1, 4, 12]
    b = build_ball(z3, 1)
    assert b.layer_sizes() == [1, 2]
    assert len(build_ball(z3, 5)) == 3


def test_free_group_layers_closed_form(f2_ball):
    assert f2_ball.layer_sizes() == [1] + [4 * 3 ** (d - 1) for d in range(1, 9)]


def test_ball_layers_match_brute_force(bs2):
    """Sphere sizes from BFS agree with eval-dedup over all words."""
    b = build_ball(bs2, 4)
    seen = {}
    for w in words_up_to(bs2.alphabet, 4):
        seen.setdefault(bs2.eval(w), len(w))
    counts = [0] * 5
    for d in seen.values():
        counts[d] += 1
    assert b.layer_sizes() == counts


def test_ball_is_deterministic(bs2):
    assert build_ball(bs2, 5).nodes == build_ball(bs2, 5).nodes


def test_ball_parents(bs2_ball):
    for key, (d, parent, letter) in bs2_ball.nodes.items():
        if d == 0:
            assert key == bs2_ball.model.identity_key()
            continue
        assert bs2_ball.nodes[parent][0] == d - 1


def test_capacity():
    with pytest.raises(CapacityExceeded):
        build_ball(free_group_model(2), 6, capacity=100)
    with pytest.raises(ValueError):
        Ball(free_group_model(2), -1)


def test_bfs_length(z2, z2_ball, bs2, bs2_ball):
    assert bfs_length(z2_ball, W(z2, "abAB")) == 0
    assert bfs_length(z2_ball, W(z2, "aab")) == 3
    taT = W(bs2, "taT")
    assert brute_length(bs2, taT) == 2
    assert bfs_length(bs2_ball, taT) == 2


def test_radius_exceeded(z2):
    b = build_ball(z2, 1)
    with pytest.raises(RadiusExceeded):
        bfs_length(b, W(z2, "aab"))
    with pytest.raises(RadiusExceeded):
        bfs_geodesic(b, W(z2, "aa"))


def test_bfs_bounded(z2, z2_ball, z3_ball, z3):
    assert bfs_bounded(z2_ball, W(z2, "abAB"), 0)
    assert not bfs_bounded(z2_ball, W(z2, "aab"), 2)
    assert bfs_bounded(z2_ball, W(z2, "aab"), 3)
    assert not bfs_bounded(z2_ball, (), -1)
    assert not bfs_bounded(z3_ball, W(z3, "aaa"), -1)


def test_bfs_geodesic(z2, z2_ball, f2, f2_ball):
    assert bfs_geodesic(z2_ball, W(z2, "abAB")) == ()
    assert bfs_geodesic(f2_ball, W(f2, "abB")) == W(f2, "a")
    # (0, 1) has exactly one length-1 representative
    reps = [v for v in itertools.product(z2.alphabet, repeat=1) if equal(z2, v, W(z2, "abA"))]
    assert reps == [W(z2, "b")]
    assert bfs_geodesic(z2_ball, W(z2, "abA")) == W(z2, "b")


def test_bfs_delta(z2, z2_ball, z3, z3_ball):
    a, A = W(z2, "a"), W(z2, "A")
    assert bfs_delta(z2_ball, a, a[0]) == 1
    assert bfs_delta(z2_ball, a, A[0]) == -1
    # aa = A in Z/3, so l(aa) = 1 = l(a)
    assert brute_length(z3, W(z3, "aa")) == 1
    assert bfs_delta(z3_ball, W(z3, "a"), W(z3, "a")[0]) == 0


def test_bfs_delta_checks_geodesic(z2, z2_ball):
    with pytest.raises(NotGeodesic):
        bfs_delta(z2_ball, W(z2, "aA"), W(z2, "b")[0])


def test_is_geodesic(z2, z2_ball, f2, f2_ball):
    assert is_geodesic(z2_ball, W(z2, "ab"))
    assert not is_geodesic(z2_ball, W(z2, "aA"))
    assert is_geodesic(f2_ball, W(f2, "aa"))


@pytest.mark.parametrize("name", ["z2", "f2", "z3", "bs2"])
def test_bfs_length_matches_brute_force(name, request):
    model = request.getfixturevalue(name)
    ball = request.getfixturevalue(name + "_ball")
    for w in words_up_to(model.alphabet, 4):
        assert bfs_length(ball, w) == brute_length(model, w)


@pytest.mark.parametrize("name", ["z2", "f2"])
def test_consistency_and_parity(name, request):
    model = request.getfixturevalue(name)
    ball = request.getfixturevalue(name + "_ball")
    zeros = 0
    for w in words_up_to(model.alphabet, 5):
        n = bfs_length(ball, w)
        g = bfs_geodesic(ball, w)
        assert len(g) == n
        assert equal(model, g, w)
        for k in range(-1, 7):
            assert bfs_bounded(ball, w, k) == (n <= k)
        if n == len(w):
            for x in model.alphabet:
                d = bfs_delta(ball, w, x)
                assert d in (-1, 0, 1)
                zeros += d == 0
    assert zeros == 0


@pytest.mark.parametrize("name", ["z3", "bs2"])
def test_triangle_step(name, request):
    model = request.getfixturevalue(name)
    ball = request.getfixturevalue(name + "_ball")
    for w in words_up_to(model.alphabet, 5):
        if is_geodesic(ball, w):
            for x in model.alphabet:
                assert bfs_delta(ball, w, x) in (-1, 0, 1)


def test_bs2_has_zero_deltas(bs2, bs2_ball):
    """The odd relator taTAA allows l(ux) = l(u)."""
    zeros = [
        (w, x)
        for w in words_up_to(bs2.alphabet, 4)
        if is_geodesic(bs2_ball, w)
        for x in bs2.alphabet
        if bfs_delta(bs2_ball, w, x) == 0
    ]
    assert zeros


def test_oracle_suite_counts(z2, z2_ball):
    suite = OracleSuite(z2_ball)
    ab = W(z2, "ab")
    assert suite.p4(ab) == 2
    assert suite.p5(ab, 1) is False
    assert suite.p3(W(z2, "abA")) == W(z2, "b")
    assert suite.p1(ab, W(z2, "A")[0]) == -1
    assert suite.p2(ab, W(z2, "a")[0]) is True
    assert [suite.stats[i] for i in range(1, 6)] == [1, 1, 1, 1, 1]
    assert suite.stats.total() == 5
    assert suite.stats.max_word_length == 3


def test_call_stats_merge():
    a, b = CallStats(), CallStats()
    a.record(5, (1, 2))
    b.record(5)
    b.record(4, (1, 2, 3))
    a.merge(b)
    assert a[5] == 2 and a[4] == 1 and a.max_word_length == 3

import itertools
import random

import pytest

from curvecomplex.certificates import CONSTANT, check_certificate
from curvecomplex.complexes import CurveBall, is_cut_system
from curvecomplex.curves import cut_along, homology_vector
from curvecomplex.errors import BoundExhausted
from curvecomplex.jmap import c_prime, j_map
from curvecomplex.loops import (LoopState, completable, complete_to_cut_system, eliminate_separating,
                                make_edges_completable, normalize_loop, reduce_loop, side_of, subdivide_loop)


def random_loop(ball, pool, rng, length):
    nb = {c: [d for d in pool if d != c and ball.i(c, d) == 0] for c in pool}
    while True:
        loop = [rng.choice(pool)]
        for _ in range(length - 1):
            loop.append(rng.choice(nb[loop[-1]]))
        if loop[-1] != loop[0] and ball.i(loop[-1], loop[0]) == 0:
            return loop


@pytest.fixture(scope="module")
def sep2(ball2_12):
    (s,) = [c for c in ball2_12.classes if ball2_12.separating(c)][:1]
    return s


def test_subdivide_loop(ball2_8):
    a, b, c = ball2_8.classes[:3]
    out = subdivide_loop([a, b, c])
    assert out == [frozenset([a]), frozenset([a, b]), frozenset([b]), frozenset([b, c]),
                   frozenset([c]), frozenset([c, a])]


def test_normalize_removes_repeats(ball2_12):
    K = c_prime(ball2_12)
    a = ball2_12.nonseparating[0]
    nb = [c for c in ball2_12.nonseparating if c != a and ball2_12.i(a, c) == 0]
    b = nb[0]
    c = next(x for x in nb[1:] if ball2_12.i(b, x) == 0)
    loop = [a, a, b, b, b, c]
    out, cert = normalize_loop(loop, ball2_12)
    assert out == [a, b, c]
    check_certificate(K, subdivide_loop(loop), subdivide_loop(out), cert)


def test_normalize_short_loops_become_constant(ball2_12):
    K = c_prime(ball2_12)
    a = ball2_12.nonseparating[0]
    b = next(c for c in ball2_12.nonseparating if c != a and ball2_12.i(a, c) == 0)
    for loop in ([a, b], [a, a, b, b], [a, b, b, a]):
        out, cert = normalize_loop(loop, ball2_12)
        assert out == []
        check_certificate(K, subdivide_loop(loop), CONSTANT, cert)


def test_side_of_splits_neighbours(ball2_12, sep2):
    nb = [c for c in ball2_12.nonseparating if ball2_12.i(c, sep2) == 0]
    sides = {side_of(ball2_12.T, sep2, c) for c in nb}
    assert sides == {1, -1}
    # classes on opposite sides are disjoint
    for x, y in itertools.combinations(nb, 2):
        if side_of(ball2_12.T, sep2, x) != side_of(ball2_12.T, sep2, y):
            assert ball2_12.i(x, y) == 0


def test_eliminate_separating_monotone(ball2_12, sep2):
    rng = random.Random(4)
    pool = CurveBall(ball2_12.T, 10).classes
    done = 0
    while done < 15:
        loop = random_loop(ball2_12, pool, rng, rng.randint(3, 8))
        if sep2 not in loop:
            continue
        state = LoopState(ball2_12, loop)
        from curvecomplex.loops import _normalize
        _normalize(state)
        before = list(state.loop)
        out, cert, steps = eliminate_separating(state)
        assert not any(ball2_12.separating(c) for c in out)
        assert all(s["after"] < s["before"] for s in steps)
        if before:
            check_certificate(c_prime(ball2_12), subdivide_loop(before),
                              subdivide_loop(out) if len(out) > 1 else CONSTANT, cert)
        done += 1


def test_eliminate_separating_needs_a_replacement(ball2_12, sep2):
    """With no class available beyond the loop the swap case reports the stage."""
    T = ball2_12.T
    nb = [c for c in ball2_12.nonseparating if ball2_12.i(c, sep2) == 0]
    found = None
    for x, y in itertools.permutations(nb, 2):
        if side_of(T, sep2, x) == side_of(T, sep2, y) and ball2_12.i(x, y) != 0:
            found = [x, sep2, y, sep2]
            break
    assert found
    tight = CurveBall(T, 12, classes=[x, sep2, y])
    with pytest.raises(BoundExhausted) as exc:
        reduce_loop(found, tight)
    assert exc.value.stage == "eliminate_separating"
    # with the full ball the same loop reduces
    assert reduce_loop(found, ball2_12).report["verified"]


def bounding_pair(ball):
    T = ball.T
    ns = ball.nonseparating
    for a, b in itertools.combinations(ns, 2):
        if ball.i(a, b) == 0:
            ha, hb = homology_vector(T, a), homology_vector(T, b)
            if (ha == hb or ha == tuple(-x for x in hb)) and cut_along(T, [a, b]).count == 2:
                return a, b
    return None


@pytest.fixture(scope="module")
def ball3_14():
    from curvecomplex.triangulation import build_standard_triangulation
    return CurveBall(build_standard_triangulation(3), 14)


def test_completable_genus_three(ball3_14):
    a, b = bounding_pair(ball3_14)
    assert not completable(ball3_14, a, b)
    c = next(x for x in ball3_14.nonseparating
             if x not in (a, b) and ball3_14.i(a, x) == 0 and ball3_14.i(b, x) == 0)
    assert completable(ball3_14, a, c) or completable(ball3_14, b, c)


def test_make_edges_completable_genus_three(ball3_14):
    a, b = bounding_pair(ball3_14)
    c = next(x for x in ball3_14.nonseparating
             if x not in (a, b) and ball3_14.i(a, x) == 0 and ball3_14.i(b, x) == 0)
    loop = [a, b, c]
    out, cert, steps = make_edges_completable(loop, ball3_14)
    assert steps and all(s["after"] < s["before"] for s in steps)
    n = len(out)
    assert all(completable(ball3_14, out[k], out[(k + 1) % n]) for k in range(n))
    check_certificate(c_prime(ball3_14), subdivide_loop(loop), subdivide_loop(out), cert)
    red = reduce_loop(loop, ball3_14)
    assert red.report["verified"] and red.report["completable_monotone"]


def test_pairs_at_genus_two_always_completable(ball2_10):
    ns = ball2_10.nonseparating
    for a, b in itertools.combinations(ns[:40], 2):
        if ball2_10.i(a, b) == 0:
            assert completable(ball2_10, a, b)


def test_complete_to_cut_system(ball3_14):
    a = ball3_14.nonseparating[0]
    Z = complete_to_cut_system(ball3_14, [a])
    assert a in Z and is_cut_system(ball3_14.T, Z, ball3_14)


def test_reduce_random_loops_genus_two(ball2_12):
    rng = random.Random(2024)
    pool = CurveBall(ball2_12.T, 10).classes
    K = c_prime(ball2_12)
    for _ in range(25):
        loop = random_loop(ball2_12, pool, rng, rng.randint(3, 8))
        red = reduce_loop(loop, ball2_12)
        assert red.report["verified"]
        assert red.report["separating_monotone"] and red.report["completable_monotone"]
        check_certificate(K, red.source, red.target, red.certificate)
        if red.beta:
            assert red.target == j_map(red.beta, ball2_12)
            # beta alternates cut systems and simple moves
            assert all(len(v) == 1 for v in red.beta[::2]) and all(len(v) == 2 for v in red.beta[1::2])
        else:
            assert red.target == CONSTANT


def test_reduce_trivial_inputs(ball2_12):
    assert reduce_loop([], ball2_12).target == CONSTANT
    assert reduce_loop([ball2_12.classes[0]], ball2_12).report["verified"]


def test_reduce_with_capping_report(ball3_14):
    rng = random.Random(9)
    pool = CurveBall(ball3_14.T, 8).classes
    loop = random_loop(ball3_14, pool, rng, 4)
    red = reduce_loop(loop, ball3_14, check_capping=True)
    for seg in red.report["stages"]["lift_to_ht"]["segments"]:
        assert seg["capped_genus"] == 2

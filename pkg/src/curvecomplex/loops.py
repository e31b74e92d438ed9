"""Rewriting loops in the curve complex into J-images of loops of cut systems.

A loop C_1, ..., C_n of classes is handled through its subdivision
{C_1}, {C_1, C_2}, {C_2}, ... in C'.  One ``CertificateBuilder`` follows
the subdivided loop through every stage, so the moves of all stages
concatenate into a single certificate from the subdivided input to J(beta).

Stages:

1. ``normalize_loop`` removes repeated consecutive classes.
2. ``eliminate_separating`` removes separating classes one at a time.
3. ``make_edges_completable`` inserts classes until every consecutive pair
   extends to a cut system.
4. ``lift_to_ht`` completes the pairs to cut systems Z_i and joins Z_{i-1}
   to Z_i by simple moves that keep C_i, giving beta.

Replacement classes are searched for in a ``CurveBall``, lightest first;
an empty search raises ``BoundExhausted`` naming the stage.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .certificates import (CONSTANT, CertificateBuilder, HomotopyCertificate, check_certificate)
from .complexes import CurveBall, ht_path, is_cut_system
from .curves import CurveClass, Drawing, cut_along, cut_and_cap
from .errors import BoundExhausted, NormalCurveError
from .jmap import c_prime, j_map, j_on_vertices


def subdivide_loop(loop) -> list:
    """{C_1}, {C_1, C_2}, {C_2}, ..., {C_n, C_1} in C'."""
    n = len(loop)
    out = []
    for k, c in enumerate(loop):
        out.append(frozenset([c]))
        out.append(frozenset([c, loop[(k + 1) % n]]))
    return out


@dataclass
class LoopState:
    """A loop of classes together with the builder acting on its subdivision."""
    ball: CurveBall
    loop: list
    builder: CertificateBuilder = None
    log: list = field(default_factory=list)

    def __post_init__(self):
        if self.builder is None:
            self.builder = CertificateBuilder(c_prime(self.ball), subdivide_loop(self.loop))

    def sync(self):
        """Rotate the subdivided loop to start at a class and re-read the class loop."""
        B = self.builder
        if len(B.loop) <= 1:
            self.loop = []
            return
        k = next(j for j, v in enumerate(B.loop) if len(v) == 1)
        if k:
            B.rotate(k)
        self.loop = [next(iter(v)) for v in B.loop[::2]]
        if subdivide_loop(self.loop) != B.loop:
            raise RuntimeError("subdivided loop out of step with the class loop")


def _replace(B: CertificateBuilder, pos: int, old, new, apex):
    """Rotate ``pos`` to the front, check the arc there is ``old`` and swap it for ``new``."""
    pos %= len(B.loop)
    if pos:
        B.rotate(pos)
    if B.loop[:len(old)] != old:
        raise RuntimeError("arc to replace is not where expected")
    B.replace_arc(0, len(old) - 1, new, apex)


def _contract_all(state: LoopState):
    state.builder.free_reduce()
    if len(state.builder.loop) > 1:
        raise RuntimeError("short loop did not contract")
    state.loop = []


# -- stage 1 ------------------------------------------------------------------------


def _normalize(state: LoopState) -> None:
    B = state.builder
    changed = True
    while changed and len(B.loop) > 1:
        changed = False
        n = len(B.loop)
        for j in range(n):
            if B.loop[j] == B.loop[(j + 1) % n]:
                B.remove(j)
                changed = True
                break
    if len(B.loop) <= 1:
        state.loop = []
        return
    state.sync()
    if len(state.loop) <= 2:
        _contract_all(state)


def normalize_loop(loop, ball: CurveBall):
    """Drop repeated consecutive classes; loops of length at most 2 become empty.

    Returns the new class loop and the certificate on subdivided loops.
    """
    state = LoopState(ball, list(loop))
    if len(state.loop) <= 1:
        return [], HomotopyCertificate([])
    _normalize(state)
    return state.loop, state.builder.certificate


# -- stage 2 ------------------------------------------------------------------------


def side_of(T, sep: CurveClass, x: CurveClass) -> int:
    """Which side (+1 left, -1 right) of a separating class the disjoint class ``x`` lies on."""
    D = Drawing.from_normal(T, [x.coords, sep.coords])
    if D.minimize(0, 1) != 0:
        raise NormalCurveError("classes are not disjoint")
    for R in D.regions().regions:
        if (0, 1) in R.curve_sides or (0, -1) in R.curve_sides:
            sides = {s for c, s in R.curve_sides if c == 1}
            if len(sides) == 1:
                return sides.pop()
    raise NormalCurveError("curve is not separating")


def _pick(ball: CurveBall, avoid, extra=lambda c: True, stage=""):
    for c in ball.nonseparating:
        if c in avoid:
            continue
        if all(ball.i(c, x) == 0 for x in avoid) and extra(c):
            return c
    raise BoundExhausted(stage, f"no replacement class up to weight {ball.weight_bound}")


def _swap(state: LoopState, i: int, new: CurveClass) -> None:
    """Replace C_i by ``new`` across the triangles {C_{i-1}, C_i, new}, {C_i, new, C_{i+1}}."""
    L = state.loop
    n = len(L)
    a, c, b = L[i - 1], L[i], L[(i + 1) % n]
    B = state.builder
    _replace(B, 2 * (i - 1), [frozenset([a]), frozenset([a, c]), frozenset([c])],
             [frozenset([a]), frozenset([a, new]), frozenset([new]), frozenset([new, c]), frozenset([c])],
             frozenset([a, c, new]))
    _replace(B, 2, [frozenset([new]), frozenset([new, c]), frozenset([c]), frozenset([c, b]), frozenset([b])],
             [frozenset([new]), frozenset([new, b]), frozenset([b])],
             frozenset([c, new, b]))
    state.sync()


def _delete(state: LoopState, i: int) -> None:
    """Drop C_i across the triangle {C_{i-1}, C_i, C_{i+1}}."""
    L = state.loop
    n = len(L)
    a, c, b = L[i - 1], L[i], L[(i + 1) % n]
    if a == b:
        arc_new = [frozenset([a])]
    else:
        arc_new = [frozenset([a]), frozenset([a, b]), frozenset([b])]
    _replace(state.builder, 2 * (i - 1), [frozenset([a]), frozenset([a, c]), frozenset([c]), frozenset([c, b]),
                             frozenset([b])], arc_new, frozenset([a, b, c]))
    if len(state.builder.loop) <= 1:
        state.loop = []
        return
    state.sync()


def eliminate_separating(state_or_loop, ball: CurveBall | None = None):
    """Remove separating classes from a normalized loop.

    Returns (loop, certificate, steps) where each step records the case
    used and the number of separating classes left afterwards.
    """
    state = _as_state(state_or_loop, ball)
    ball = state.ball
    T = ball.T
    start = len(state.builder.moves)
    steps = []

    def count():
        return sum(1 for c in state.loop if ball.separating(c))

    while state.loop and count():
        before = count()
        L = state.loop
        n = len(L)
        i = next(k for k, c in enumerate(L) if ball.separating(c))
        prev, cur, nxt = L[i - 1], L[i], L[(i + 1) % n]
        if not ball.separating(prev) and not ball.separating(nxt):
            sp, sn = side_of(T, cur, prev), side_of(T, cur, nxt)
            if sp == sn:
                new = _pick(ball, [prev, cur, nxt], lambda c: side_of(T, cur, c) != sp,
                            "eliminate_separating")
                _swap(state, i, new)
                case = "a"
            else:
                _delete(state, i)
                case = "b"
        else:
            # at least one neighbour is separating: any non-separating class
            # disjoint from all three lies in a part of the complement of the
            # separating pair that avoids the other neighbour
            new = _pick(ball, [prev, cur, nxt], stage="eliminate_separating")
            _swap(state, i, new)
            case = "c" if ball.separating(nxt) else "c-mirrored"
        if state.loop:
            _normalize(state)
        after = count() if state.loop else 0
        steps.append({"case": case, "before": before, "after": after})
    moves = state.builder.moves[start:]
    return state.loop, HomotopyCertificate(list(moves)), steps


# -- stage 3 ------------------------------------------------------------------------


def completable(ball: CurveBall, a: CurveClass, b: CurveClass) -> bool:
    """True iff the disjoint pair extends to a cut system (its complement is connected)."""
    if a == b or ball.i(a, b) != 0 or ball.separating(a) or ball.separating(b):
        return False
    return cut_along(ball.T, [a, b]).count == 1


def make_edges_completable(state_or_loop, ball: CurveBall | None = None):
    """Insert classes until every consecutive pair extends to a cut system.

    Returns (loop, certificate, steps); each step records how many
    non-completable edges remained before and after it.
    """
    state = _as_state(state_or_loop, ball)
    ball = state.ball
    start = len(state.builder.moves)
    steps = []

    def bad_edges():
        L = state.loop
        return [k for k in range(len(L)) if not completable(ball, L[k], L[(k + 1) % len(L)])]

    while state.loop and bad_edges():
        before = len(bad_edges())
        k = bad_edges()[0]
        L = state.loop
        a, b = L[k], L[(k + 1) % len(L)]
        new = _pick(ball, [a, b], lambda c: completable(ball, a, c) and completable(ball, c, b),
                    "make_edges_completable")
        _replace(state.builder, 2 * k, [frozenset([a]), frozenset([a, b]), frozenset([b])],
                 [frozenset([a]), frozenset([a, new]), frozenset([new]), frozenset([new, b]),
                  frozenset([b])], frozenset([a, new, b]))
        state.sync()
        steps.append({"before": before, "after": len(bad_edges())})
    moves = state.builder.moves[start:]
    return state.loop, HomotopyCertificate(list(moves)), steps


# -- stage 4 ------------------------------------------------------------------------


def complete_to_cut_system(ball: CurveBall, curves, stage: str = "lift_to_ht") -> frozenset:
    """The lightest completion of a completable family to a cut system."""
    g = ball.T.genus
    curves = list(curves)

    def grow(chosen, pool):
        if len(chosen) == g:
            return frozenset(chosen) if is_cut_system(ball.T, chosen, ball) else None
        for k, c in enumerate(pool):
            if cut_along(ball.T, chosen + [c]).count != 1:
                continue
            found = grow(chosen + [c], [d for d in pool[k + 1:] if ball.i(c, d) == 0])
            if found:
                return found
        return None

    pool = [c for c in ball.nonseparating if c not in curves and all(ball.i(c, x) == 0 for x in curves)]
    found = grow(curves, pool)
    if found is None:
        raise BoundExhausted(stage, f"cannot complete to a cut system up to weight {ball.weight_bound}")
    return found


def lift_to_ht(state_or_loop, ball: CurveBall | None = None, check_capping: bool = False,
               max_radius: int = 12):
    """Replace the loop by J(beta) for a loop beta of cut systems and moves.

    Returns (beta, certificate, segments).  beta is a list of R' vertices
    ({Z} for a cut system, {Z, Z'} for a move), empty for a contractible
    loop.  Each segment records the path length and whether both paths
    compared in it contain the fixed class.
    """
    state = _as_state(state_or_loop, ball)
    ball = state.ball
    T = ball.T
    B = state.builder
    start = len(B.moves)
    state.sync()
    L = list(state.loop)
    n = len(L)
    if n == 0:
        return [], HomotopyCertificate(list(B.moves[start:])), []
    Z = [complete_to_cut_system(ball, [L[k], L[(k + 1) % n]]) for k in range(n)]
    # detour from each edge vertex {C_k, C_k+1} out to Z_k and back, last edge first
    # so that the positions of the earlier edges do not move
    for k in reversed(range(n)):
        if Z[k] != B.loop[2 * k + 1]:
            B.detour(2 * k + 1, Z[k])
    # bring Z_{n-1}, where the segment through C_0 starts, to the front
    B.rotate(len(B.loop) - (1 if Z[n - 1] == B.loop[-1] else 2))
    segments = []
    beta = []
    for i in range(n):
        prev, cur, nxt = L[i - 1], L[i], L[(i + 1) % n]
        comparison = [Z[i - 1], frozenset([prev, cur]), frozenset([cur]), frozenset([cur, nxt]), Z[i]]
        comparison = [v for j, v in enumerate(comparison) if j == 0 or v != comparison[j - 1]]
        moves = ht_path(T, Z[i - 1], Z[i], ball=ball, max_radius=max_radius, fixed={cur})
        systems = [Z[i - 1]] + [m.target for m in moves]
        path = []
        for j, W in enumerate(systems):
            path.append(frozenset([W]))
            if j + 1 < len(systems):
                path.append(frozenset([W, systems[j + 1]]))
        image = j_map_path(path)
        centre = frozenset([cur])
        in_star = all(centre <= v for v in image + comparison)
        ahead = [B.loop[j % len(B.loop)] for j in range(len(comparison))]
        if ahead != comparison:
            raise RuntimeError(f"segment {i} is not at the front of the loop")
        if image != comparison:
            if len(comparison) - 1 >= len(B.loop):
                # the segment is all that is left of the loop and closes up at Z_i
                B.cone_segment(0, len(B.loop), centre)
            else:
                B.replace_arc(0, len(comparison) - 1, image, centre)
        B.rotate(len(image) - 1)
        beta.extend(path[:-1])
        seg = {"segment": i, "moves": len(moves), "in_star": in_star}
        if check_capping:
            T2, _ = cut_and_cap(T, cur, [])
            seg["capped_genus"] = T2.genus
        segments.append(seg)
    state.loop = L
    return beta, HomotopyCertificate(list(B.moves[start:])), segments


def j_map_path(path) -> list:
    return [j_on_vertices(v) for v in path]


def _as_state(state_or_loop, ball) -> LoopState:
    if isinstance(state_or_loop, LoopState):
        return state_or_loop
    state = LoopState(ball, list(state_or_loop))
    if state.loop:
        _normalize(state)
    return state


# -- whole pipeline -----------------------------------------------------------------


@dataclass
class Reduction:
    source: list
    beta: list
    target: object
    certificate: HomotopyCertificate
    report: dict


def reduce_loop(loop, ball: CurveBall, check_capping: bool = False) -> Reduction:
    """Run all four stages on a loop of classes and verify the composite certificate."""
    loop = list(loop)
    source = subdivide_loop(loop) if len(loop) > 1 else [frozenset([c]) for c in loop]
    report = {"length": len(loop), "stages": {}}
    state = LoopState(ball, loop) if len(loop) > 1 else None
    if state is None:
        return Reduction(source, [], CONSTANT, HomotopyCertificate([]),
                         {**report, "verified": True, "certificate_moves": 0})
    B = state.builder

    def stage(name, fn):
        t0 = time.perf_counter()
        m0 = len(B.moves)
        try:
            out = fn()
        except BoundExhausted as exc:
            exc.stage = name
            raise
        report["stages"][name] = {"seconds": round(time.perf_counter() - t0, 4),
                                  "moves": len(B.moves) - m0}
        return out

    stage("normalize", lambda: _normalize(state))
    _, _, sep_steps = stage("eliminate_separating", lambda: eliminate_separating(state))
    _, _, comp_steps = stage("make_edges_completable", lambda: make_edges_completable(state))
    beta, _, segments = stage("lift_to_ht", lambda: lift_to_ht(state, check_capping=check_capping))
    report["stages"]["eliminate_separating"]["steps"] = sep_steps
    report["stages"]["make_edges_completable"]["steps"] = comp_steps
    report["stages"]["lift_to_ht"]["segments"] = segments
    report["separating_monotone"] = all(s["after"] < s["before"] for s in sep_steps)
    report["completable_monotone"] = all(s["after"] < s["before"] for s in comp_steps)
    cert = B.certificate
    if beta:
        target = j_map(beta, ball)
        if B.loop != target:
            raise RuntimeError("final loop differs from J(beta)")
    else:
        B.free_reduce()
        cert = B.certificate
        target = CONSTANT
    check_certificate(c_prime(ball), source, target, cert)
    report["verified"] = True
    report["certificate_moves"] = len(cert)
    return Reduction(source, beta, target, cert, report)

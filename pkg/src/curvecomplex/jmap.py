"""The map J from the subdivided cut-system complex to the subdivided curve complex.

Vertices of R' are simplices of the cut-system graph R: a one-element set
{Z} for a cut system and a two-element set {Z1, Z2} for a simple move.  J
sends {Z} to Z itself, a simplex of the curve complex C, and {Z1, Z2} to the
classes the two systems share.  Both are vertices of C'.

Contractibility of the J-images of the three kinds of 2-cells is witnessed
by certificates in C', checked against lazily evaluated membership tests
(pairwise disjointness of classes, chains under inclusion).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .certificates import (CONSTANT, CertificateBuilder, HomotopyCertificate, check_certificate,
                           contract_in_star, verify_certificate)
from .complexes import (CurveBall, CycleType, HTGraph, classify_cycle, ht_subgraph, is_cut_system,
                        is_simple_move)
from .curves import CurveClass, band_sum_curves, commutator_curves, homology_vector, same_class
from .errors import BoundExhausted, CertificateError
from .simplicial import Complex, FlagView, SubdivisionView, barycentric_subdivision, sort_key


# -- complexes ---------------------------------------------------------------------


def curve_view(ball: CurveBall) -> FlagView:
    """The curve complex of the surface, queried through the ball's intersection cache."""
    T = ball.T

    def is_vertex(c):
        return isinstance(c, CurveClass) and c.T == T

    return FlagView(is_vertex, lambda a, b: a != b and ball.i(a, b) == 0)


def c_prime(ball: CurveBall) -> SubdivisionView:
    return SubdivisionView(curve_view(ball))


def build_R_complex(G: HTGraph) -> Complex:
    """Cut systems as vertices, simple moves as edges, nothing of higher dimension."""
    return Complex([tuple(e) for e in G.edges], G.vertices)


def r_prime(G: HTGraph) -> Complex:
    return barycentric_subdivision(build_R_complex(G))


def j_on_vertices(v, ball: CurveBall | None = None) -> frozenset:
    """Image under J of a vertex of R'."""
    v = frozenset(v)
    if len(v) == 1:
        (Z,) = v
        return frozenset(Z)
    if len(v) == 2:
        Z1, Z2 = v
        if ball is not None and is_simple_move(ball.T, Z1, Z2, ball) is None:
            raise ValueError("midpoint of a pair that is not a simple move")
        return frozenset(Z1) & frozenset(Z2)
    raise ValueError("vertices of R' are simplices of a graph")


def subdivide_cycle(cycle) -> list:
    """The loop in R' running through cut systems and the midpoints between them."""
    cyc = [frozenset(Z) for Z in cycle]
    out = []
    for k, Z in enumerate(cyc):
        out.append(frozenset([Z]))
        out.append(frozenset([Z, cyc[(k + 1) % len(cyc)]]))
    return out


def j_map(loop, ball: CurveBall) -> list:
    """Vertexwise image of a loop in R', checked to be an edge loop of C'."""
    image = [j_on_vertices(v, ball) for v in loop]
    K = c_prime(ball)
    n = len(image)
    for k in range(n):
        if not K.has_simplex({image[k], image[(k + 1) % n]}):
            raise ValueError(f"image step {k} is not an edge of C'")
    return image


def check_j_simplicial(G: HTGraph) -> bool:
    """Every edge of R' in the ball is sent to a simplex of C'."""
    K = c_prime(G.ball)
    for Z in G.vertices:
        if not K.has_simplex({j_on_vertices({Z})}):
            return False
    for e in G.edges:
        a, b = tuple(e)
        mid = j_on_vertices(e, G.ball)
        for Z in (a, b):
            if not (mid <= Z and K.has_simplex({mid, frozenset(Z)})):
                return False
    return True


# -- auxiliary curves ----------------------------------------------------------------


def _canonical(ball: CurveBall, v) -> CurveClass:
    """The ball's representative of the class of ``v`` when it has one."""
    T = ball.T
    c = CurveClass(tuple(v), T)
    if sum(v) > ball.weight_bound:
        return c
    h = homology_vector(T, v)
    for x in ball.classes:
        if x.coords == c.coords:
            return x
        hx = homology_vector(T, x)
        if (hx == h or hx == tuple(-y for y in h)) and same_class(T, x, c):
            return x
    return c


def find_auxiliary_II(ball: CurveBall, curves) -> CurveClass:
    """A separating class disjoint from the four curves of a genus-2 type II cycle.

    The ball is scanned first, lightest class first.  When it holds no such
    class the boundary of a neighbourhood of the first intersecting pair is
    built directly; either way the answer is checked with the intersection
    oracle before it is returned.
    """
    curves = list(curves)
    for c in ball.classes:
        if c not in curves and ball.separating(c) and all(ball.i(c, x) == 0 for x in curves):
            return c
    a, b = curves[0], curves[1]
    for v in sorted(commutator_curves(ball.T, a, b), key=lambda w: (sum(w), w)):
        c = _canonical(ball, v)
        if ball.separating(c) and all(ball.i(c, x) == 0 for x in curves):
            return c
    raise BoundExhausted("find_auxiliary_II", f"no separating curve up to weight {ball.weight_bound}")


def find_auxiliary_III(ball: CurveBall, curves) -> CurveClass:
    """A class meeting C1 and C5 once and disjoint from C2, C3, C4.

    Scans the ball lightest class first, then falls back to band sums of
    C2 and C4 along C3, checking the intersection pattern in both cases.
    """
    c1, c2, c3, c4, c5 = curves
    want = [(c2, 0), (c3, 0), (c4, 0), (c1, 1), (c5, 1)]

    def good(c):
        return c not in curves and all(ball.i(c, x) == k for x, k in want)

    for c in ball.nonseparating:
        if good(c):
            return c
    for v in sorted(band_sum_curves(ball.T, c2, c3, c4), key=lambda w: (sum(w), w)):
        c = _canonical(ball, v)
        if good(c):
            return c
    raise BoundExhausted("find_auxiliary_III", f"no auxiliary curve up to weight {ball.weight_bound}")


# -- certificates for the three kinds of cells ----------------------------------------


def _j_loop(G: HTGraph, cycle) -> list:
    return j_map(subdivide_cycle(cycle), G.ball)


def _checked(K, loop, cert, what):
    v = verify_certificate(K, loop, CONSTANT, cert)
    if not v:
        raise CertificateError(v.index, f"{what}: {v.reason}")
    return cert


def verify_type_I(G: HTGraph, cycle, ct: CycleType | None = None) -> HomotopyCertificate:
    """Contract the J-image inside the star of a class fixed along the cycle."""
    ct = ct or classify_cycle(G, cycle)
    if ct.kind != "I":
        raise ValueError("not a type I cycle")
    loop = _j_loop(G, cycle)
    K = c_prime(G.ball)
    centre = frozenset([ct.fixed[0]])
    return _checked(K, loop, contract_in_star(K, loop, centre), "type I")


def _prism_contract(K, loop, extra: CurveClass) -> HomotopyCertificate:
    """Push the loop to its union with ``extra`` and cone it from {extra}."""
    B = CertificateBuilder(K, loop)
    B.cone_segment(0, len(loop), frozenset([extra]), phi=lambda s: s | {extra})
    B.free_reduce()
    if len(B.loop) > 1:
        raise CertificateError(len(B.moves), "prism contraction did not finish")
    return B.certificate


def verify_type_II(G: HTGraph, cycle, ct: CycleType | None = None,
                   aux_ball: CurveBall | None = None) -> tuple[HomotopyCertificate, CurveClass | None]:
    """Certificate for a type II cell, and the auxiliary class used (genus 2 only)."""
    ct = ct or classify_cycle(G, cycle)
    if ct.kind != "II":
        raise ValueError("not a type II cycle")
    loop = _j_loop(G, cycle)
    K = c_prime(G.ball)
    if ct.fixed:
        centre = frozenset([ct.fixed[0]])
        return _checked(K, loop, contract_in_star(K, loop, centre), "type II"), None
    c0 = find_auxiliary_II(aux_ball or G.ball, ct.curves)
    return _checked(K, loop, _prism_contract(K, loop, c0), "type II"), c0


@dataclass
class PentagonFilling:
    decagon: list
    auxiliary: CurveClass
    alpha: list                 # cut systems of the first square, as a cycle in R
    beta: list                  # cut systems of the second square
    gamma: list                 # subdivided boundary of the triangle C0, C2, C4
    alpha_aux: CurveClass
    beta_aux: CurveClass
    alpha_type: str
    beta_type: str
    certificate: HomotopyCertificate
    region_moves: dict = field(default_factory=dict)

    def regions(self, ball: CurveBall) -> dict:
        return {"alpha": j_map(subdivide_cycle(self.alpha), ball),
                "beta": j_map(subdivide_cycle(self.beta), ball),
                "gamma": list(self.gamma)}


def _find_arc(loop, arc):
    n, k = len(loop), len(arc)
    for s in range(n):
        if all(loop[(s + j) % n] == arc[j] for j in range(k)):
            return s
    raise ValueError("arc not found in the loop")


def _replace(B: CertificateBuilder, old_arc, new_arc, apex, phi):
    s = _find_arc(B.loop, old_arc)
    if s:
        B.rotate(s)
    B.replace_arc(0, len(old_arc) - 1, new_arc, apex, phi)


def build_pentagon_filling(G: HTGraph, cycle, c0: CurveClass, ct: CycleType | None = None,
                           aux_ball: CurveBall | None = None) -> PentagonFilling:
    """Fill the J-image of a genus-2 pentagon by two squares and a triangle.

    With curves C1..C5 and the auxiliary C0, the decagon through the
    systems {C1,C3}, {C3,C5}, {C5,C2}, {C2,C4}, {C4,C1} is cut by the path
    {C4}, {C0,C4}, {C0}, {C0,C3}, {C3} and the path {C0}, {C0,C2}, {C2} into
    the images of the squares {C1,C3}, {C1,C4}, {C0,C4}, {C0,C3} and
    {C3,C5}, {C2,C5}, {C0,C2}, {C0,C3}, both of type II, and the subdivided
    boundary of the triangle {C0, C2, C4}.  The squares are contracted with
    their own separating auxiliary classes, the triangle from its barycentre.
    """
    ct = ct or classify_cycle(G, cycle)
    if ct.kind != "III":
        raise ValueError("not a type III cycle")
    ball = G.ball
    aux_ball = aux_ball or ball
    C1, C2, C3, C4, C5 = ct.curves
    fixed = frozenset(ct.fixed)

    def S(*cs):
        return frozenset(cs) | fixed

    def P(*cs):
        return frozenset(cs)

    loop = _j_loop(G, cycle)
    if len(loop) != 10:
        raise ValueError("decagon expected")
    K = c_prime(ball)
    alpha = [S(C1, C3), S(C1, C4), S(c0, C4), S(c0, C3)]
    beta = [S(C3, C5), S(C2, C5), S(C2, c0), S(c0, C3)]
    for Z in alpha + beta:
        if not is_cut_system(ball.T, Z, ball):
            raise ValueError("auxiliary class does not give cut systems")
    H = ht_subgraph(ball.T, ball, alpha + beta)
    ta, tb = classify_cycle(H, alpha), classify_cycle(H, beta)
    if ta.kind != "II" or tb.kind != "II":
        raise ValueError("squares of the filling are not of type II")
    sa = find_auxiliary_II(aux_ball, ta.curves)
    sb = find_auxiliary_II(aux_ball, tb.curves)
    barycentre = S(c0, C2, C4)
    gamma = [S(c0), S(c0, C2), S(C2), S(C2, C4), S(C4), S(C4, c0)]

    B = CertificateBuilder(K, loop)
    counts = {}
    before = len(B.moves)
    _replace(B, [S(C4), S(C4, C1), S(C1), S(C1, C3), S(C3)],
             [S(C4), S(c0, C4), S(c0), S(c0, C3), S(C3)],
             frozenset([sa]), lambda s: s | {sa})
    counts["alpha"] = len(B.moves) - before
    before = len(B.moves)
    _replace(B, [S(c0), S(c0, C3), S(C3), S(C3, C5), S(C5), S(C5, C2), S(C2)],
             [S(c0), S(c0, C2), S(C2)],
             frozenset([sb]), lambda s: s | {sb})
    counts["beta"] = len(B.moves) - before
    before = len(B.moves)
    if sorted(map(_key, B.loop)) != sorted(map(_key, gamma)):
        raise CertificateError(len(B.moves), "remaining loop is not the triangle boundary")
    B.cone_segment(0, len(B.loop), barycentre)
    B.free_reduce()
    counts["gamma"] = len(B.moves) - before
    if len(B.loop) > 1:
        raise CertificateError(len(B.moves), "pentagon contraction did not finish")
    cert = B.certificate
    check_certificate(K, loop, CONSTANT, cert)
    return PentagonFilling(loop, c0, alpha, beta, gamma, sa, sb, ta.kind, tb.kind, cert, counts)


def _key(s):
    return sort_key(s)


def boundary_identity(decagon, regions) -> bool:
    """The decagon is the sum of the region boundaries, interior edges cancelling.

    Each region loop may be used in either orientation; directed edges are
    counted with sign and an edge traversed both ways cancels.
    """
    def chain(loop, sgn):
        out = {}
        n = len(loop)
        for k in range(n):
            a, b = loop[k], loop[(k + 1) % n]
            if sgn < 0:
                a, b = b, a
            out[(a, b)] = out.get((a, b), 0) + 1
            out[(b, a)] = out.get((b, a), 0) - 1
        return out

    target = {k: v for k, v in chain(decagon, 1).items() if v}
    for signs in itertools.product((1, -1), repeat=len(regions)):
        total = {}
        for loop, sg in zip(regions, signs):
            for k, v in chain(loop, sg).items():
                total[k] = total.get(k, 0) + v
        if {k: v for k, v in total.items() if v} == target:
            return True
    return False


def verify_type_III(G: HTGraph, cycle, ct: CycleType | None = None,
                    aux_ball: CurveBall | None = None):
    """Certificate for a type III cell, with the filling when genus is 2."""
    ct = ct or classify_cycle(G, cycle)
    if ct.kind != "III":
        raise ValueError("not a type III cycle")
    K = c_prime(G.ball)
    if G.T.genus >= 3 and ct.fixed:
        loop = _j_loop(G, cycle)
        centre = frozenset([ct.fixed[0]])
        return _checked(K, loop, contract_in_star(K, loop, centre), "type III"), None
    c0 = find_auxiliary_III(aux_ball or G.ball, ct.curves)
    filling = build_pentagon_filling(G, cycle, c0, ct, aux_ball)
    return filling.certificate, filling


# -- certifying every cell of a ball -------------------------------------------------


@dataclass
class CellResult:
    cycle: tuple
    kind: str
    accepted: bool
    moves: int = 0
    auxiliary: tuple | None = None
    error: str = ""
    source: list | None = field(default=None, repr=False)
    certificate: HomotopyCertificate | None = field(default=None, repr=False)


def verify_lemma5(G: HTGraph, cells=None, aux_ball: CurveBall | None = None) -> dict:
    """Certify every enumerated cell and report counts per type.

    Failures, including exhausted searches, are recorded rather than raised.
    Each certificate is replayed by the independent checker.
    """
    from .complexes import enumerate_cells
    if cells is None:
        cells = G.cells or enumerate_cells(G)
    K = c_prime(G.ball)
    results = []
    for cyc, ct in cells:
        try:
            aux = None
            if ct.kind == "I":
                cert = verify_type_I(G, cyc, ct)
            elif ct.kind == "II":
                cert, aux = verify_type_II(G, cyc, ct, aux_ball)
            else:
                cert, filling = verify_type_III(G, cyc, ct, aux_ball)
                if filling is not None:
                    aux = filling.auxiliary
                    if not boundary_identity(filling.decagon, list(filling.regions(G.ball).values())):
                        raise CertificateError(-1, "filling regions do not add up to the decagon")
            source = _j_loop(G, cyc)
            ok = bool(verify_certificate(K, source, CONSTANT, cert))
            results.append(CellResult(tuple(cyc), ct.kind, ok, len(cert),
                                      aux.coords if aux is not None else None, "", source, cert))
        except (BoundExhausted, CertificateError, ValueError) as exc:
            results.append(CellResult(tuple(cyc), ct.kind, False, error=str(exc)))
    counts = {}
    for r in results:
        c = counts.setdefault(r.kind, {"cells": 0, "accepted": 0})
        c["cells"] += 1
        c["accepted"] += int(r.accepted)
    index = {v: k for k, v in enumerate(G.vertices)}
    return {
        "counts": {k: counts[k] for k in sorted(counts)},
        "all_accepted": all(r.accepted for r in results),
        "failures": [{"cycle": [index[v] for v in r.cycle], "kind": r.kind, "error": r.error}
                     for r in results if not r.accepted],
        "certificate_moves": sum(r.moves for r in results),
        "results": results,
    }

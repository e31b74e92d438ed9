"""Isotopy classes of simple closed curves and operations on them.

Curves are stored by normal coordinates.  Isotopy is taken in the closed
surface, where a normal curve may be pushed across the vertex, so distinct
normal vectors can describe the same class.  Intersection numbers, isotopy
tests and cutting are therefore computed on explicit drawings (see
``drawing``), never read off the coordinates alone.

Two distinct normal curves that are isotopic in the closed surface have
total weight at least twice the number of edge ends at the vertices, because
every edge leaving a vertex inside the bigon or annulus between them has to
cross one of them.  Below that threshold coordinates are canonical, and the
enumeration uses this to skip most pairwise comparisons.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from .drawing import Drawing
from .errors import NormalCurveError
from .normal import add, require_normal, trace_arcs, trace_components, validate_normal
from .triangulation import Triangulation


@dataclass(frozen=True, order=True)
class CurveClass:
    """An essential simple closed curve, identified by its normal coordinates."""
    coords: tuple
    T: Triangulation = field(compare=False, repr=False, hash=False)

    @property
    def weight(self) -> int:
        return sum(self.coords)

    def to_json(self):
        return list(self.coords)


@dataclass(frozen=True)
class Piece:
    euler_characteristic: int
    boundary: int

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic - self.boundary) // 2


@dataclass(frozen=True)
class CutPieces:
    pieces: tuple

    @property
    def count(self) -> int:
        return len(self.pieces)

    def census(self):
        return sorted((p.euler_characteristic, p.boundary, p.genus) for p in self.pieces)


def make_curve(T: Triangulation, w) -> CurveClass:
    """Validate ``w`` as a connected essential curve and wrap it."""
    w = require_normal(T, w)
    if len(trace_components(T, w)) != 1:
        raise NormalCurveError(f"{w} is not a single curve")
    if not is_essential(T, w):
        raise NormalCurveError(f"{w} bounds a disk")
    return CurveClass(w, T)


def _coords(c):
    return c.coords if isinstance(c, CurveClass) else tuple(c)


# -- cutting -------------------------------------------------------------------


def _pieces_of(D: Drawing) -> CutPieces:
    R = D.regions()
    return CutPieces(tuple(Piece(r.euler_characteristic, r.boundary_components)
                           for r in R.regions))


def draw_disjoint(T: Triangulation, curves) -> Drawing:
    """A drawing of pairwise disjoint curves with no crossings at all."""
    vecs = [_coords(c) for c in curves]
    if not vecs:
        return Drawing(T)
    total = vecs[0]
    for v in vecs[1:]:
        total = add(total, v)
    if Counter(trace_components(T, total)) == Counter(vecs):
        return Drawing.from_normal(T, [total])
    D = Drawing.from_normal(T, vecs)
    for _ in range(10 * len(vecs) ** 2 + 10):
        if D.crossing_count() == 0:
            return D
        progress = False
        for a, b in itertools.combinations(range(len(vecs)), 2):
            n, _ = D.signed_crossings(a, b)
            if n and D.minimize(a, b) != 0:
                raise NormalCurveError(f"curves {vecs[a]} and {vecs[b]} intersect")
            progress = progress or n > 0
        if not progress:
            break
    if D.crossing_count():
        raise NormalCurveError("could not realize the family without crossings")
    return D


def cut_along(T: Triangulation, curves) -> CutPieces:
    """Census of the pieces obtained by cutting along pairwise disjoint curves."""
    vecs = [require_normal(T, _coords(c)) for c in curves]
    for a, b in itertools.combinations(vecs, 2):
        if geometric_intersection(T, a, b) != 0:
            raise NormalCurveError(f"{a} and {b} are not disjoint")
    return _pieces_of(draw_disjoint(T, vecs))


def is_essential(T: Triangulation, c) -> bool:
    w = require_normal(T, _coords(c))
    if len(trace_components(T, w)) != 1:
        raise NormalCurveError(f"{w} is not connected")
    return not any(r.euler_characteristic == 1
                   for r in Drawing.from_normal(T, [w]).regions().regions)


def is_separating(T: Triangulation, c) -> bool:
    w = require_normal(T, _coords(c))
    return len(Drawing.from_normal(T, [w]).regions().regions) == 2


# -- homology ------------------------------------------------------------------


def homology_vector(T: Triangulation, c) -> tuple:
    """Signed crossing counts of the traced curve with every edge.

    Each edge of a one-vertex triangulation is a closed loop, these loops
    span first homology and the intersection pairing is non-degenerate, so
    the vector determines the homology class of the curve (for the
    orientation picked by the tracer).  A crossing counts +1 when the curve
    passes from the triangle on the +1 side of the edge to the other one.
    """
    w = require_normal(T, _coords(c))
    _, cycles, point_edge = trace_arcs(T, w)
    v = [0] * T.num_edges
    for _, sides in cycles:
        for _, end in sides:
            e, d = T.side(end)
            v[e] += 1 if d == 1 else -1
    return tuple(v)


def symplectic_coordinates(T: Triangulation, c) -> tuple:
    """Coordinates of the class in the basis a1, b1, ..., ag, bg of the polygon word.

    Only meaningful on the standard triangulation, whose first 2g edges are
    the polygon sides.  Uses ``x . a_j`` and ``x . b_j`` with ``a_j . b_j = 1``.
    """
    h = homology_vector(T, c)
    out = []
    for j in range(T.genus):
        out += [h[2 * j + 1], -h[2 * j]]
    return tuple(out)


# -- intersection numbers ------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _intersection(T: Triangulation, a: tuple, b: tuple) -> int:
    if a == b:
        return 0
    total = add(a, b)
    if Counter(trace_components(T, total)) == Counter([a, b]):
        return 0
    D = Drawing.from_normal(T, [a, b])
    n, s = D.signed_crossings(0, 1)
    if n == abs(s):
        return n
    return D.minimize(0, 1)


def geometric_intersection(T: Triangulation, a, b) -> int:
    """Minimal number of crossings between representatives of two classes."""
    a = require_normal(T, _coords(a))
    b = require_normal(T, _coords(b))
    if b < a:
        a, b = b, a
    return _intersection(T, a, b)


def algebraic_intersection(T: Triangulation, a, b) -> int:
    """Signed crossing count, for the orientations chosen by the tracer."""
    a = require_normal(T, _coords(a))
    b = require_normal(T, _coords(b))
    return Drawing.from_normal(T, [a, b]).signed_crossings(0, 1)[1]


def same_class(T: Triangulation, a, b) -> bool:
    """True iff the two curves are isotopic in the closed surface."""
    a = require_normal(T, _coords(a))
    b = require_normal(T, _coords(b))
    if a == b:
        return True
    if T.num_vertices == 1:
        ha, hb = homology_vector(T, a), homology_vector(T, b)
        if ha != hb and ha != tuple(-x for x in hb):
            return False
    D = Drawing.from_normal(T, [a, b])
    if D.minimize(0, 1) != 0:
        return False
    for r in D.regions().regions:
        if r.euler_characteristic == 0 and len(r.curve_sides) == 2 \
                and {c for c, _ in r.curve_sides} == {0, 1}:
            return True
    return False


# -- enumeration ---------------------------------------------------------------


def enumerate_normal(T: Triangulation, max_total_weight: int):
    """All non-zero normal vectors with total weight at most the bound.

    Edges are assigned in index order and a triangle is checked as soon as
    its last edge is assigned.
    """
    E = T.num_edges
    check_at = [[] for _ in range(E)]
    for tri in T.triangles:
        check_at[max(e for e, _ in tri)].append(tuple(e for e, _ in tri))
    w = [0] * E
    out = []

    def rec(i, budget):
        if i == E:
            if budget < max_total_weight:
                out.append(tuple(w))
            return
        for x in range(budget + 1):
            w[i] = x
            ok = True
            for (p, q, r) in check_at[i]:
                a, b, c = w[p], w[q], w[r]
                if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
                    ok = False
                    break
            if ok:
                rec(i + 1, budget - x)
        w[i] = 0

    rec(0, max_total_weight)
    return out


def enumerate_curve_classes(T: Triangulation, max_total_weight: int) -> list[CurveClass]:
    """Essential curve classes with a representative of weight at most the bound.

    Each class appears once, represented by its lightest normal vector
    (ties broken lexicographically); the output is sorted by weight, then
    coordinates.
    """
    if max_total_weight <= 0:
        return []
    cands = []
    for w in enumerate_normal(T, max_total_weight):
        _, cycles, _ = trace_arcs(T, w)
        if len(cycles) == 1 and is_essential(T, w):
            cands.append(w)
    cands.sort(key=lambda w: (sum(w), w))
    kept: list[tuple] = []
    by_homology: dict[tuple, list[tuple]] = {}
    for w in cands:
        if T.num_vertices == 1:
            h = homology_vector(T, w)
            h = max(h, tuple(-x for x in h))
        else:
            h = ()
        dup = False
        for u in by_homology.get(h, []):
            if same_class(T, u, w):
                dup = True
                break
        if not dup:
            by_homology.setdefault(h, []).append(w)
            kept.append(w)
    return [CurveClass(w, T) for w in kept]


# -- cut and cap ---------------------------------------------------------------


def cut_and_cap(T: Triangulation, c, residual=()):
    """Cut along a non-separating curve and cap both boundary circles with disks.

    Each piece of a triangle cut by the curve is coned from a new interior
    vertex and each boundary circle is capped by a cone.  Residual curves
    disjoint from ``c`` are carried over, then normalised by pushing
    returning arcs back across edges.  Returns the new triangulation and
    the list of transported normal vectors (inessential results are kept as
    they are, and may be zero).
    """
    cw = require_normal(T, _coords(c))
    if len(trace_components(T, cw)) != 1:
        raise NormalCurveError("the cutting curve must be connected")
    if is_separating(T, cw):
        raise NormalCurveError("the cutting curve is separating")
    res = [require_normal(T, _coords(r)) for r in residual]
    for r in res:
        if geometric_intersection(T, cw, r) != 0:
            raise NormalCurveError(f"residual curve {r} meets the cutting curve")

    base = Drawing.from_normal(T, [cw])
    T2, polys = _capped_triangulation(T, base)
    out = []
    for r in res:
        D = Drawing.from_normal(T, [cw, r])
        D.minimize(1, 0)
        out.append(_transport(T, T2, polys, D))
    return T2, out


def _capped_triangulation(T, D):
    """Build the capped triangulation from a drawing of a single curve."""
    points, segs = D.curves[0]
    n = len(points)
    edges = {}

    def edge(key):
        if key not in edges:
            edges[key] = len(edges)
        return edges[key]

    triangles = []
    polys = {}
    boundary, chords, ranks = D._triangle_data()
    for t in range(T.num_triangles):
        faces = D._triangle_faces(t, boundary[t], chords[t], ranks, {})
        for fi, info in enumerate(faces):
            sides = []
            for tag in info["cycle"]:
                if tag[0] == "T":
                    sides.append((edge(("seg",) + tag[1]), tag[2]))
                else:
                    _, _, s, _, d = tag
                    sides.append((edge(("L", s)), 1) if d == 1 else (edge(("R", s)), -1))
            m = len(sides)
            spokes = [edge(("spoke", t, fi, i)) for i in range(m)]
            for i in range(m):
                triangles.append((sides[i], (spokes[(i + 1) % m], -1), (spokes[i], 1)))
            polys[(t, fi)] = (info["cycle"], spokes)
    for i in range(n):
        j = (i + 1) % n
        triangles.append(((edge(("L", i)), -1), (edge(("capL", i)), -1), (edge(("capL", j)), 1)))
        triangles.append(((edge(("R", i)), 1), (edge(("capR", j)), -1), (edge(("capR", i)), 1)))
    labels = tuple("_".join(str(x) for x in k) for k in sorted(edges, key=edges.get))
    T2 = Triangulation(tuple(triangles), len(edges), labels)
    if T2.genus != T.genus - 1:
        raise NormalCurveError(f"capped surface has genus {T2.genus}")
    return T2, (edges, polys)


def _transport(T, T2, data, D):
    """Normal coordinates on ``T2`` of curve 1 of ``D``, which avoids curve 0.

    The residual curve is followed chord by chord.  Inside a coned polygon
    the chord goes around the cone point on the side away from polygon
    corner 0, which places the cone point in one complementary region of
    all such chords and keeps the curve embedded.  Recording which edge of
    ``T2`` is crossed, and through which side, gives a cyclic word in the
    dual graph; cancelling immediate returns across the same edge leaves
    the crossing sequence of the normal representative.
    """
    edges, polys = data
    cut_points = set(D.curves[0][0])
    seg_of = {}
    for e, pts in enumerate(D.edge_points):
        below = 0
        for p in pts:
            if p in cut_points:
                below += 1
            else:
                seg_of[p] = below
    where = {}
    for key, (cycle, spokes) in polys.items():
        for idx, tag in enumerate(cycle):
            if tag[0] == "T":
                where[tag[1] + (tag[2],)] = (key, idx)
    r_points, r_sides = D.curves[1]
    nr = len(r_points)
    word = []
    for i in range(nr):
        s0, s1 = r_sides[i]
        p, q = r_points[i], r_points[(i + 1) % nr]
        e0, d0 = T.side(s0)
        e1, d1 = T.side(s1)
        key, a = where[(e0, seg_of[p], d0)]
        key1, b = where[(e1, seg_of[q], d1)]
        if key != key1:
            raise NormalCurveError("residual chord crosses the cutting curve")
        spokes = polys[key][1]
        m = len(spokes)
        if a != b:
            ccw = [(a + 1 + k) % m for k in range((b - a) % m)]
            if 0 in ccw:
                word += [(spokes[(a - k) % m], 1) for k in range((a - b) % m)]
            else:
                word += [(spokes[k], -1) for k in ccw]
        word.append((edges[("seg", e1, seg_of[q])], d1))
    reduced = []
    for tok in word:
        if reduced and reduced[-1] == (tok[0], -tok[1]):
            reduced.pop()
        else:
            reduced.append(tok)
    while len(reduced) >= 2 and reduced[0] == (reduced[-1][0], -reduced[-1][1]):
        reduced = reduced[1:-1]
    v = [0] * T2.num_edges
    for e, _ in reduced:
        v[e] += 1
    return require_normal(T2, v)


# -- curves from crossing words ------------------------------------------------
#
# A closed path in general position is recorded by the sequence of edges it
# crosses, each with the side it leaves through.  A triangle is a disk, so
# this word determines the path up to homotopy in the punctured surface;
# cancelling immediate returns gives the crossing sequence of the normal
# representative.  This is how band sums and commutators are built.


def crossing_word(D: Drawing, c: int, start: int = 0) -> list:
    """Edges crossed by curve ``c`` of a drawing, from the end of segment ``start``."""
    points, sides = D.curves[c]
    n = len(points)
    word = [D.T.side(sides[i][1]) for i in range(n)]
    return word[start:] + word[:start]


def inverse_word(word) -> list:
    return [(e, -d) for e, d in reversed(word)]


def word_vector(T: Triangulation, word):
    """Normal coordinates of the curve with this crossing word, or None if not simple."""
    reduced = []
    for tok in word:
        if reduced and reduced[-1] == (tok[0], -tok[1]):
            reduced.pop()
        else:
            reduced.append(tok)
    while len(reduced) >= 2 and reduced[0] == (reduced[-1][0], -reduced[-1][1]):
        reduced = reduced[1:-1]
    v = [0] * T.num_edges
    for e, _ in reduced:
        v[e] += 1
    v = tuple(v)
    if not any(v):
        return None
    if not validate_normal(T, v) or len(trace_components(T, v)) != 1:
        return None
    return v


def _single_crossing(T: Triangulation, a: tuple, b: tuple):
    """Drawing of ``a`` and ``b`` meeting once, with ``b`` left in normal position."""
    D = Drawing.from_normal(T, [a, b])
    if D.minimize(0, 1) != 1:
        raise NormalCurveError("curves do not meet exactly once")
    R = D.regions()
    (x,) = R.crossings.values()
    c1, s1, _, c2, s2, _, _ = x
    return D, (s1 if c1 == 0 else s2), (s2 if c1 == 0 else s1)


def commutator_curves(T: Triangulation, a, b) -> list:
    """Candidates for the boundary of a neighbourhood of two curves meeting once."""
    a, b = _coords(a), _coords(b)
    D, sa, sb = _single_crossing(T, a, b)
    A, B = crossing_word(D, 0, sa), crossing_word(D, 1, sb)
    out = []
    for word in (A + B + inverse_word(A) + inverse_word(B),
                 A + inverse_word(B) + inverse_word(A) + B):
        v = word_vector(T, word)
        if v is not None and v not in out:
            out.append(v)
    return out


def band_sum_curves(T: Triangulation, a, arc, b) -> list:
    """Candidates for the band sum of ``a`` and ``b`` along an arc of ``arc``.

    ``arc`` must meet each of ``a`` and ``b`` once; the band runs along one of
    the two sub-arcs of ``arc`` between those points.  All orientation and
    sub-arc choices whose word is a simple curve are returned.
    """
    a, arc, b = _coords(a), _coords(arc), _coords(b)
    Da, sa, sp = _single_crossing(T, a, arc)
    Db, sb, sq = _single_crossing(T, b, arc)
    A = crossing_word(Da, 0, sa)
    Bw = crossing_word(Db, 0, sb)
    loop = crossing_word(Da, 1, 0)
    n = len(loop)

    def forward(i, j, extra):
        length = (j - i) % n + extra * n
        return [loop[(i + k) % n] for k in range(length)]

    arcs = [forward(sp, sq, 0), inverse_word(forward(sq, sp, 0))]
    if sp == sq:
        arcs += [forward(sp, sq, 1), inverse_word(forward(sq, sp, 1))]
    out = []
    for gamma in arcs:
        for Bo in (Bw, inverse_word(Bw)):
            v = word_vector(T, A + gamma + Bo + inverse_word(gamma))
            if v is not None and v not in out:
                out.append(v)
    return out

"""Normal coordinates on a fixed triangulation.

A normal multicurve is a tuple of non-negative integers, one per edge.  In a
triangle with side weights ``(w0, w1, w2)`` the number of arcs cutting off
corner ``k`` (the corner between sides ``k-1`` and ``k``) is
``(w[k-1] + w[k] - w[k+1]) / 2``.
"""

from __future__ import annotations

from .errors import NormalCurveError
from .triangulation import Triangulation

NormalMulticurve = tuple  # tuple[int, ...], one entry per edge


def _check_length(T: Triangulation, w) -> None:
    if len(w) != T.num_edges:
        raise NormalCurveError(
            f"weight vector has {len(w)} entries, triangulation has {T.num_edges} edges")


def corner_counts(T: Triangulation, w) -> list[tuple[int, int, int]]:
    """Per triangle, the arc counts at corners 0, 1, 2 (may be invalid)."""
    out = []
    for tri in T.triangles:
        a, b, c = (w[e] for e, _ in tri)
        # corner 0 sits between side 2 and side 0
        out.append(((c + a - b) // 2, (a + b - c) // 2, (b + c - a) // 2))
    return out


def validate_normal(T: Triangulation, w) -> bool:
    """True iff ``w`` satisfies parity and the triangle inequalities everywhere."""
    _check_length(T, w)
    for x in w:
        if not isinstance(x, int) or x < 0:
            return False
    for tri in T.triangles:
        a, b, c = (w[e] for e, _ in tri)
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            return False
    return True


def require_normal(T: Triangulation, w) -> tuple:
    w = tuple(int(x) for x in w)
    if not validate_normal(T, w):
        raise NormalCurveError(f"not a normal multicurve: {w}")
    return w


def trace_arcs(T: Triangulation, w):
    """Trace the normal multicurve ``w`` into closed point sequences.

    Points on edge ``e`` are numbered ``offset[e] + r`` with rank ``r``
    counted from the tail.  Returns ``(offsets, cycles)`` where each cycle is
    ``(points, sides)``: ``points`` in traversal order and ``sides[i]`` the
    (start side, end side) of the segment from ``points[i]`` to
    ``points[i + 1]``.
    """
    corners = corner_counts(T, w)
    offsets = []
    acc = 0
    for e in range(T.num_edges):
        offsets.append(acc)
        acc += w[e]

    def point_at(side, j):
        # j-th point along the side in counter-clockwise order
        e, d = T.side(side)
        r = j if d == 1 else w[e] - 1 - j
        return offsets[e] + r

    # arc_of[(side, point)] = (other side, other point)
    arc_of = {}
    for t, tri in enumerate(T.triangles):
        for k in range(3):
            prev_side, side = 3 * t + (k - 1) % 3, 3 * t + k
            prev_w = w[tri[(k - 1) % 3][0]]
            for m in range(corners[t][k]):
                p = point_at(prev_side, prev_w - 1 - m)
                q = point_at(side, m)
                arc_of[(prev_side, p)] = (side, q)
                arc_of[(side, q)] = (prev_side, p)

    point_edge = []
    for e in range(T.num_edges):
        point_edge += [e] * w[e]
    visited = [False] * acc
    cycles = []
    for start in range(acc):
        if visited[start]:
            continue
        points, sides = [], []
        p = start
        side = T.edge_sides[point_edge[p]][0]  # leave into the +1 side
        while True:
            visited[p] = True
            q_side, q = arc_of[(side, p)]
            points.append(p)
            sides.append((side, q_side))
            p = q
            side = T.partner(q_side)
            if p == start:
                break
        cycles.append((points, sides))
    return offsets, cycles, point_edge


def trace_components(T: Triangulation, w) -> list[tuple]:
    """Split a normal multicurve into its connected components."""
    w = require_normal(T, w)
    _, cycles, point_edge = trace_arcs(T, w)
    comps = []
    for points, _ in cycles:
        v = [0] * T.num_edges
        for p in points:
            v[point_edge[p]] += 1
        comps.append(tuple(v))
    return comps


def is_connected(T: Triangulation, w) -> bool:
    w = require_normal(T, w)
    if not any(w):
        return False
    _, cycles, _ = trace_arcs(T, w)
    return len(cycles) == 1


def vertex_link(T: Triangulation, vertex: int = 0) -> tuple:
    """Normal coordinates of the small circle around ``vertex``."""
    v = [0] * T.num_edges
    for e, (tail, head) in enumerate(T.edge_ends):
        v[e] += (tail == vertex) + (head == vertex)
    return tuple(v)


def add(u, v) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def weight(w) -> int:
    return sum(w)

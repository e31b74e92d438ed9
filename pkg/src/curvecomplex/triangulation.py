"""Closed oriented triangulated surfaces.

A triangulation is stored as a list of triangles, each a triple of *sides*
listed counter-clockwise.  A side is a pair ``(edge, direction)``: the side
runs from the tail of ``edge`` to its head when ``direction == +1`` and the
other way round when ``direction == -1``.  Side ``k`` of a triangle goes
from corner ``k`` to corner ``k + 1``.  Global side ids are ``3 * t + k``.

Every edge occurs on exactly two sides, once in each direction, which is
what makes the glued surface closed and oriented.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .errors import TriangulationError


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[tuple[int, int], ...], ...]
    num_edges: int
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        self._check()

    # -- structure --------------------------------------------------------

    def _check(self):
        seen: dict[int, list[int]] = {}
        for t, tri in enumerate(self.triangles):
            if len(tri) != 3:
                raise TriangulationError(f"triangle {t} does not have 3 sides")
            for k, (e, d) in enumerate(tri):
                if not 0 <= e < self.num_edges or d not in (1, -1):
                    raise TriangulationError(f"bad side {(e, d)} in triangle {t}")
                seen.setdefault(e, []).append(d)
        for e in range(self.num_edges):
            dirs = sorted(seen.get(e, []))
            if dirs != [-1, 1]:
                raise TriangulationError(
                    f"edge {e} must be glued once in each direction, got {dirs}")
        if len(self.components()) != 1:
            raise TriangulationError("triangulation is disconnected")
        chi = self.num_vertices - self.num_edges + self.num_triangles
        if chi % 2:
            raise TriangulationError(f"odd Euler characteristic {chi}")

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    def side(self, s: int) -> tuple[int, int]:
        return self.triangles[s // 3][s % 3]

    @cached_property
    def edge_sides(self) -> tuple[tuple[int, int], ...]:
        """For each edge, the pair (side with direction +1, side with -1)."""
        plus = [0] * self.num_edges
        minus = [0] * self.num_edges
        for t, tri in enumerate(self.triangles):
            for k, (e, d) in enumerate(tri):
                if d == 1:
                    plus[e] = 3 * t + k
                else:
                    minus[e] = 3 * t + k
        return tuple(zip(plus, minus))

    def partner(self, s: int) -> int:
        """The side glued to side ``s``."""
        e, _ = self.side(s)
        p, m = self.edge_sides[e]
        return m if s == p else p

    @cached_property
    def _vertex_data(self):
        # union-find on corners; corner (t, k) is the start of side k
        parent = list(range(3 * self.num_triangles))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        for e, (sp, sm) in enumerate(self.edge_sides):
            # side sp runs tail->head: its start corner is the tail.
            # side sm runs head->tail: its end corner is the tail.
            tp, kp = divmod(sp, 3)
            tm, km = divmod(sm, 3)
            union(3 * tp + kp, 3 * tm + (km + 1) % 3)
            union(3 * tp + (kp + 1) % 3, 3 * tm + km)
        roots = {}
        corner_vertex = []
        for c in range(3 * self.num_triangles):
            r = find(c)
            corner_vertex.append(roots.setdefault(r, len(roots)))
        return tuple(corner_vertex), len(roots)

    @property
    def corner_vertex(self) -> tuple[int, ...]:
        """Vertex id of corner ``3 * t + k``."""
        return self._vertex_data[0]

    @property
    def num_vertices(self) -> int:
        return self._vertex_data[1]

    @cached_property
    def edge_ends(self) -> tuple[tuple[int, int], ...]:
        """(tail vertex, head vertex) of every edge."""
        ends = [None] * self.num_edges
        cv = self.corner_vertex
        for e, (sp, _) in enumerate(self.edge_sides):
            t, k = divmod(sp, 3)
            ends[e] = (cv[3 * t + k], cv[3 * t + (k + 1) % 3])
        return tuple(ends)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_triangles

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def components(self) -> list[set[int]]:
        seen = set()
        comps = []
        for start in range(self.num_triangles):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            seen.add(start)
            while stack:
                t = stack.pop()
                for k in range(3):
                    u = self.partner(3 * t + k) // 3
                    if u not in seen:
                        seen.add(u)
                        comp.add(u)
                        stack.append(u)
            comps.append(comp)
        return comps

    def edge_label(self, e: int) -> str:
        return self.labels[e] if self.labels else f"e{e}"

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "num_edges": self.num_edges,
            "labels": list(self.labels),
            "triangles": [[[e, d] for e, d in tri] for tri in self.triangles],
            "gluing": [list(pair) for pair in self.edge_sides],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Triangulation":
        tris = tuple(tuple((int(e), int(d)) for e, d in tri) for tri in data["triangles"])
        T = cls(tris, int(data["num_edges"]), tuple(data.get("labels", ())))
        if "genus" in data and T.genus != data["genus"]:
            raise TriangulationError(
                f"declared genus {data['genus']} but Euler count gives {T.genus}")
        if "gluing" in data and [list(p) for p in T.edge_sides] != [list(p) for p in data["gluing"]]:
            raise TriangulationError("gluing table does not match triangles")
        return T

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def build_standard_triangulation(g: int) -> Triangulation:
    """One-vertex triangulation of the 4g-gon with word a1 b1 A1 B1 ... ag bg Ag Bg.

    The polygon corners P0..P(4g-1) are fanned from P0.  Edge order is
    a1, b1, ..., ag, bg followed by the diagonals d2, ..., d(4g-2), where
    ``dk`` runs from P0 to Pk.
    """
    if not isinstance(g, int) or g < 1:
        raise TriangulationError(f"genus must be a positive integer, got {g!r}")
    n = 4 * g
    labels = []
    for j in range(1, g + 1):
        labels += [f"a{j}", f"b{j}"]
    diag = {}
    for k in range(2, n - 1):
        diag[k] = len(labels)
        labels.append(f"d{k}")

    def polygon_side(m):
        # side s_m runs P(m-1) -> P(m), m = 1..4g
        j, r = divmod(m - 1, 4)
        return {0: (2 * j, 1), 1: (2 * j + 1, 1), 2: (2 * j, -1), 3: (2 * j + 1, -1)}[r]

    triangles = []
    for k in range(1, n - 1):
        first = polygon_side(1) if k == 1 else (diag[k], 1)
        last = polygon_side(n) if k + 1 == n - 1 else (diag[k + 1], -1)
        triangles.append((first, polygon_side(k + 1), last))
    return Triangulation(tuple(triangles), len(labels), tuple(labels))

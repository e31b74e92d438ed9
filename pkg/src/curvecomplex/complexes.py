"""The curve complex, cut systems, simple moves and the Hatcher-Thurston graph.

Everything is built inside a finite ball of curve classes (all classes
with a representative of total normal weight at most a bound).  When a
search inside the ball comes up empty we raise ``BoundExhausted`` rather
than claim that nothing exists.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .curves import (CurveClass, cut_along, enumerate_curve_classes, geometric_intersection,
                     homology_vector, is_essential, is_separating, symplectic_coordinates)
from .errors import BoundExhausted, NormalCurveError
from .simplicial import Complex, default_label, flag_complex, sort_key
from .triangulation import Triangulation, build_standard_triangulation

CutSystem = frozenset  # of CurveClass


def system_key(Z):
    return tuple(sorted(c.coords for c in Z))


def system_label(Z) -> str:
    return "<" + "|".join(",".join(map(str, c)) for c in system_key(Z)) + ">"


class CurveBall:
    """Curve classes up to a weight bound, with cached pairwise data."""

    def __init__(self, T: Triangulation, weight_bound: int, classes=None):
        self.T = T
        self.weight_bound = weight_bound
        if classes is None:
            classes = enumerate_curve_classes(T, weight_bound)
        self.classes = sorted(classes, key=sort_key)
        self._i = {}
        self._sep = {}
        self._symp = {}
        # the homology shortcut in ``disjoint`` needs the polygon basis of the standard triangulation
        self._standard = T.genus >= 1 and T.dumps() == build_standard_triangulation(T.genus).dumps()

    def i(self, a: CurveClass, b: CurveClass) -> int:
        key = (a.coords, b.coords) if a.coords <= b.coords else (b.coords, a.coords)
        if key not in self._i:
            self._i[key] = geometric_intersection(self.T, a, b)
        return self._i[key]

    def disjoint(self, a: CurveClass, b: CurveClass) -> bool:
        """i(a, b) == 0, skipping the geometric computation when the homology pairing is nonzero."""
        key = (a.coords, b.coords) if a.coords <= b.coords else (b.coords, a.coords)
        if self._standard and key not in self._i:
            x, y = self._symplectic(a), self._symplectic(b)
            if sum(x[2 * j] * y[2 * j + 1] - x[2 * j + 1] * y[2 * j] for j in range(len(x) // 2)):
                return False
        return self.i(a, b) == 0

    def _symplectic(self, c: CurveClass) -> tuple:
        if c.coords not in self._symp:
            self._symp[c.coords] = symplectic_coordinates(self.T, c)
        return self._symp[c.coords]

    def separating(self, c: CurveClass) -> bool:
        if c.coords not in self._sep:
            self._sep[c.coords] = is_separating(self.T, c)
        return self._sep[c.coords]

    @cached_property
    def nonseparating(self) -> list:
        return [c for c in self.classes if not self.separating(c)]

    def disjoint_from_all(self, curves, pool=None) -> list:
        pool = self.classes if pool is None else pool
        return [c for c in pool if c not in curves and all(self.disjoint(c, x) for x in curves)]


# -- curve complex -------------------------------------------------------------------


def build_curve_complex(T: Triangulation, classes, ball: CurveBall | None = None) -> Complex:
    """Flag complex on the classes, simplices being pairwise disjoint families."""
    classes = list(classes)
    for c in classes:
        if not is_essential(T, c):
            raise NormalCurveError(f"{c.coords} is inessential")
    inter = ball.i if ball is not None else (lambda a, b: geometric_intersection(T, a, b))
    return flag_complex(classes, lambda a, b: a != b and inter(a, b) == 0)


# -- cut systems ----------------------------------------------------------------------


def is_cut_system(T: Triangulation, S, ball: CurveBall | None = None) -> bool:
    """Exactly g distinct disjoint curves whose complement is a 2g-holed sphere."""
    S = list(S)
    g = T.genus
    if len(S) != g or len({c.coords for c in S}) != g:
        return False
    inter = ball.i if ball is not None else (lambda a, b: geometric_intersection(T, a, b))
    if any(inter(a, b) for a, b in itertools.combinations(S, 2)):
        return False
    pieces = cut_along(T, S)
    return pieces.census() == [(2 - 2 * g, 2 * g, 0)]


def cut_system_oracle(T: Triangulation, S, ball: CurveBall | None = None) -> bool:
    """Connectivity-only test, through homology with two-element coefficients.

    Disjoint curves have connected complement exactly when their classes
    are linearly independent mod 2.  Needs a one-vertex triangulation.
    """
    S = list(S)
    g = T.genus
    if len(S) != g or len({c.coords for c in S}) != g:
        return False
    inter = ball.i if ball is not None else (lambda a, b: geometric_intersection(T, a, b))
    if any(inter(a, b) for a, b in itertools.combinations(S, 2)):
        return False
    rows = [[x % 2 for x in homology_vector(T, c)] for c in S]
    return _rank_mod2(rows) == len(rows)


def _rank_mod2(rows) -> int:
    rows = [int("".join(map(str, r)), 2) if r else 0 for r in rows]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rows.remove(pivot)
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
        rank += 1
    return rank


@dataclass(frozen=True)
class SimpleMove:
    source: CutSystem
    target: CutSystem
    index: int              # position of the replaced curve in the sorted source
    removed: CurveClass
    added: CurveClass

    def to_json(self):
        return {"source": system_label(self.source), "target": system_label(self.target),
                "index": self.index, "removed": list(self.removed.coords),
                "added": list(self.added.coords)}


def is_simple_move(T: Triangulation, Z1, Z2, ball: CurveBall | None = None):
    """The simple move from Z1 to Z2, or None."""
    Z1, Z2 = frozenset(Z1), frozenset(Z2)
    g = T.genus
    shared = Z1 & Z2
    if len(shared) != g - 1 or len(Z1) != g or len(Z2) != g:
        return None
    (old,) = Z1 - Z2
    (new,) = Z2 - Z1
    inter = ball.i if ball is not None else (lambda a, b: geometric_intersection(T, a, b))
    if inter(old, new) != 1 or any(inter(new, c) for c in shared):
        return None
    order = sorted(Z1, key=sort_key)
    return SimpleMove(Z1, Z2, order.index(old), old, new)


# -- HT graph --------------------------------------------------------------------------


@dataclass(frozen=True)
class CycleType:
    kind: str                 # "I", "II", "III" or "Other"
    fixed: tuple = ()         # classes kept by every move
    curves: tuple = ()        # C1..C3 (I), C1..C4 (II) or C1..C5 (III)

    def to_json(self):
        return {"kind": self.kind, "fixed": [list(c.coords) for c in self.fixed],
                "curves": [list(c.coords) for c in self.curves]}


@dataclass
class HTGraph:
    T: Triangulation
    ball: CurveBall
    vertices: list
    edges: dict                           # frozenset({Z1, Z2}) -> SimpleMove (Z1 < Z2)
    cells: list = field(default_factory=list)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            adj[a].append(b)
            adj[b].append(a)
        for v in adj:
            adj[v].sort(key=system_key)
        return adj

    def has_edge(self, a, b) -> bool:
        return frozenset((a, b)) in self.edges

    def move(self, a, b) -> SimpleMove:
        m = self.edges[frozenset((a, b))]
        if m.source == a:
            return m
        return is_simple_move(self.T, a, b, self.ball)

    def to_json(self) -> dict:
        index = {v: k for k, v in enumerate(self.vertices)}
        return {
            "vertices": [[list(c) for c in system_key(v)] for v in self.vertices],
            "edges": sorted([sorted((index[a], index[b])) for a, b in map(tuple, self.edges)]),
            "cells": [{"cycle": [index[v] for v in cyc], **ct.to_json()} for cyc, ct in self.cells],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_dot(self) -> str:
        index = {v: k for k, v in enumerate(self.vertices)}
        lines = ["graph HT {"]
        for v in self.vertices:
            lines.append(f'  z{index[v]} [label="{system_label(v)}"];')
        for a, b in sorted(sorted((index[a], index[b])) for a, b in map(tuple, self.edges)):
            lines.append(f"  z{a} -- z{b};")
        for k, (cyc, ct) in enumerate(self.cells):
            path = " -- ".join(f"z{index[v]}" for v in list(cyc) + [cyc[0]])
            lines.append(f'  // cell {k} type {ct.kind}: {path}')
        lines.append("}")
        return "\n".join(lines) + "\n"


def neighbours(ball: CurveBall, Z, fixed=frozenset()) -> list:
    """All cut systems one simple move away from Z whose new curve lies in the ball.

    Curves in ``fixed`` are never replaced.
    """
    out = []
    for old in sorted(Z - frozenset(fixed), key=sort_key):
        rest = Z - {old}
        for c in ball.nonseparating:
            if c in Z or ball.i(old, c) != 1:
                continue
            if any(ball.i(c, x) for x in rest):
                continue
            out.append(frozenset(rest | {c}))
    return sorted(set(out), key=system_key)


def build_ht_graph(T: Triangulation, base, move_radius: int, weight_bound: int | None = None,
                   ball: CurveBall | None = None) -> HTGraph:
    """Ball of the given radius around ``base`` in the graph of simple moves."""
    if ball is None:
        ball = CurveBall(T, weight_bound)
    base = frozenset(base)
    if not is_cut_system(T, base, ball):
        raise NormalCurveError("base is not a cut system")
    dist = {base: 0}
    queue = deque([base])
    nbr_cache = {}
    while queue:
        Z = queue.popleft()
        if dist[Z] == move_radius:
            continue
        nbr_cache[Z] = neighbours(ball, Z)
        for W in nbr_cache[Z]:
            if W not in dist:
                dist[W] = dist[Z] + 1
                queue.append(W)
    vertices = sorted(dist, key=system_key)
    vset = set(vertices)
    edges = {}
    for Z in vertices:
        nb = nbr_cache.get(Z)
        if nb is None:
            nb = neighbours(ball, Z)
        for W in nb:
            if W in vset:
                key = frozenset((Z, W))
                if key not in edges:
                    a, b = sorted((Z, W), key=system_key)
                    edges[key] = is_simple_move(T, a, b, ball)
    return HTGraph(T, ball, vertices, edges)


def classify_cycle(G: HTGraph, cycle) -> CycleType:
    """Type of a closed edge path given by its cyclic vertex list."""
    cyc = list(cycle)
    k = len(cyc)
    if k < 3:
        return CycleType("Other")
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not G.has_edge(a, b):
            raise ValueError("cycle uses a missing edge")
    g = G.T.genus
    common = frozenset.intersection(*cyc)
    fixed = tuple(sorted(common, key=sort_key))
    i = G.ball.i
    if k == 3 and len(common) == g - 1:
        curves = tuple(next(iter(Z - common)) for Z in cyc)
        if len(set(curves)) == 3:
            return CycleType("I", fixed, curves)
    if len(common) != g - 2:
        return CycleType("Other", fixed)
    Y = [Z - common for Z in cyc]
    if k == 4:
        moves = [(next(iter(Y[j] - Y[(j + 1) % 4])), next(iter(Y[(j + 1) % 4] - Y[j]))) for j in range(4)]
        (r0, a0), (r1, a1), (r2, a2), (r3, a3) = moves
        if r2 == a0 and a2 == r0 and r3 == a1 and a3 == r1 and not ({r0, a0} & {r1, a1}):
            if all(i(x, y) == 0 for x in (r0, a0) for y in (r1, a1)):
                return CycleType("II", fixed, (r0, a0, r1, a1))
        return CycleType("Other", fixed)
    if k == 5:
        if any(len(Y[j] & Y[(j + 1) % 5]) != 1 for j in range(5)):
            return CycleType("Other", fixed)
        c3 = next(iter(Y[0] & Y[1]))
        c1 = next(iter(Y[0] - {c3}))
        c5 = next(iter(Y[1] - {c3}))
        c2 = next(iter(Y[2] - {c5})) if c5 in Y[2] else None
        if c2 is None or Y[2] != frozenset({c5, c2}):
            return CycleType("Other", fixed)
        c4 = next(iter(Y[3] - {c2})) if c2 in Y[3] else None
        if c4 is None or Y[3] != frozenset({c2, c4}) or Y[4] != frozenset({c4, c1}):
            return CycleType("Other", fixed)
        C = (c1, c2, c3, c4, c5)
        if len(set(C)) != 5:
            return CycleType("Other", fixed)
        for j in range(5):
            if i(C[j], C[(j + 1) % 5]) != 1 or i(C[j], C[(j + 2) % 5]) != 0:
                return CycleType("Other", fixed)
        return CycleType("III", fixed, C)
    return CycleType("Other", fixed)


def enumerate_cells(G: HTGraph, max_len: int = 5, kinds=("I", "II", "III")) -> list:
    """Simple cycles of length 3..max_len, one per dihedral class, with their types.

    Each cycle starts at its least vertex and is oriented so that its second
    vertex precedes its last one.  Only cycles of the requested kinds are kept.
    """
    order = {v: n for n, v in enumerate(G.vertices)}
    adj = G.adjacency
    out = []
    for s in G.vertices:
        so = order[s]
        path = [s]
        on_path = {s}

        def dfs():
            u = path[-1]
            for w in adj[u]:
                if order[w] <= so:
                    if w == s and len(path) >= 3 and order[path[1]] < order[path[-1]]:
                        cyc = tuple(path)
                        ct = classify_cycle(G, cyc)
                        if ct.kind in kinds:
                            out.append((cyc, ct))
                    continue
                if w in on_path or len(path) == max_len:
                    continue
                path.append(w)
                on_path.add(w)
                dfs()
                path.pop()
                on_path.discard(w)

        dfs()
    out.sort(key=lambda item: (len(item[0]), [order[v] for v in item[0]]))
    G.cells = out
    return out


def ht_path(T: Triangulation, Z0, Z1, weight_bound: int | None = None,
            ball: CurveBall | None = None, max_radius: int = 12, fixed=frozenset()) -> list:
    """Shortest sequence of simple moves from Z0 to Z1 inside the ball.

    With ``fixed`` given, only moves keeping those curves are used, so the
    path stays among cut systems that contain them.
    """
    if ball is None:
        ball = CurveBall(T, weight_bound)
    Z0, Z1 = frozenset(Z0), frozenset(Z1)
    fixed = frozenset(fixed)
    if not (fixed <= Z0 and fixed <= Z1):
        raise ValueError("fixed curves must belong to both end points")
    if Z0 == Z1:
        return []
    prev = {Z0: None}
    frontier = [Z0]
    for _ in range(max_radius):
        nxt = []
        for Z in frontier:
            for W in neighbours(ball, Z, fixed):
                if W in prev:
                    continue
                prev[W] = Z
                if W == Z1:
                    path = [W]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return [is_simple_move(T, a, b, ball) for a, b in zip(path, path[1:])]
                nxt.append(W)
        if not nxt:
            break
        frontier = nxt
    raise BoundExhausted("ht_path", f"no path within weight {ball.weight_bound} and radius {max_radius}")


def disjoint_family(ball: CurveBall, size: int, pool=None) -> list | None:
    """The lexicographically first family of ``size`` pairwise disjoint classes, or None."""
    pool = ball.nonseparating if pool is None else list(pool)

    def grow(chosen, cands):
        if len(chosen) == size:
            return chosen
        for k, c in enumerate(cands):
            if len(chosen) + len(cands) - k < size:
                return None
            rest = [d for d in cands[k + 1:] if ball.disjoint(c, d)]
            found = grow(chosen + [c], rest)
            if found:
                return found
        return None

    return grow([], pool)


def maximal_family(T: Triangulation, start_weight: int = 4, max_weight: int = 24) -> list:
    """3g-3 pairwise disjoint non-separating classes, found by widening the weight bound."""
    size = 3 * T.genus - 3
    W = start_weight
    while W <= max_weight:
        found = disjoint_family(CurveBall(T, W), size)
        if found:
            return found
        W += 2
    raise BoundExhausted("maximal_family", f"no family of {size} curves up to weight {max_weight}")


def max_clique_size(ball: CurveBall, pool=None) -> int:
    """Size of the largest family of pairwise disjoint classes in the pool."""
    pool = ball.classes if pool is None else list(pool)
    best = 0

    def grow(n, cands):
        nonlocal best
        best = max(best, n)
        for k, c in enumerate(cands):
            if n + len(cands) - k <= best:
                return
            grow(n + 1, [d for d in cands[k + 1:] if ball.disjoint(c, d)])

    grow(0, pool)
    return best


def ht_subgraph(T: Triangulation, ball: CurveBall, systems) -> HTGraph:
    """The graph of simple moves induced on the given cut systems."""
    vertices = sorted({frozenset(Z) for Z in systems}, key=system_key)
    edges = {}
    for a, b in itertools.combinations(vertices, 2):
        m = is_simple_move(T, a, b, ball)
        if m is not None:
            edges[frozenset((a, b))] = m
    return HTGraph(T, ball, vertices, edges)

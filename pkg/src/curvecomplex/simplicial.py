"""Finite abstract simplicial complexes.

Simplices are frozensets of hashable vertices.  A complex stores every
simplex explicitly, the empty one included (dimension -1), so membership
tests are constant time.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable


def sort_key(v):
    """Total order on the vertex types used in this package."""
    if isinstance(v, (frozenset, set)):
        return ("S", len(v), tuple(sorted(sort_key(x) for x in v)))
    if hasattr(v, "coords"):
        return ("C", sum(v.coords), tuple(v.coords))
    if isinstance(v, tuple):
        return ("T", tuple(sort_key(x) for x in v))
    if isinstance(v, bool):
        return ("B", v)
    if isinstance(v, int):
        return ("I", v)
    return ("Z", str(v))


def default_label(v) -> str:
    if isinstance(v, (frozenset, set)):
        return "{" + ",".join(default_label(x) for x in sorted(v, key=sort_key)) + "}"
    if hasattr(v, "coords"):
        return "(" + ",".join(map(str, v.coords)) + ")"
    return str(v)


class Complex:
    """A downward-closed family of finite vertex sets."""

    def __init__(self, facets: Iterable[Iterable[Hashable]] = (), vertices: Iterable[Hashable] = ()):
        simplices = {frozenset()}
        for v in vertices:
            simplices.add(frozenset([v]))
        for f in facets:
            f = frozenset(f)
            if f in simplices:
                continue
            items = list(f)
            for k in range(1, len(items) + 1):
                for sub in itertools.combinations(items, k):
                    simplices.add(frozenset(sub))
        self._simplices = frozenset(simplices)
        self._vertices = frozenset(v for s in simplices if len(s) == 1 for v in s)

    # -- basic queries ------------------------------------------------------

    @property
    def simplices(self) -> frozenset:
        return self._simplices

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    def sorted_vertices(self) -> list:
        return sorted(self._vertices, key=sort_key)

    def has_simplex(self, s) -> bool:
        return frozenset(s) in self._simplices

    def __contains__(self, s) -> bool:
        return self.has_simplex(s)

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self._simplices == other._simplices

    def __hash__(self):
        return hash(self._simplices)

    def __repr__(self):
        return f"Complex(vertices={len(self._vertices)}, simplices={len(self._simplices) - 1})"

    def simplices_of_dim(self, k: int) -> list:
        out = [s for s in self._simplices if len(s) == k + 1]
        return sorted(out, key=sort_key)

    def f_vector(self) -> list[int]:
        d = dimension(self)
        return [len(self.simplices_of_dim(k)) for k in range(d + 1)]

    def facets(self) -> list:
        out = []
        for s in self._simplices:
            if not s:
                continue
            if not any(s < t for t in self._simplices if len(t) == len(s) + 1):
                out.append(s)
        return sorted(out, key=sort_key)

    def is_downward_closed(self) -> bool:
        for s in self._simplices:
            for v in s:
                if s - {v} not in self._simplices:
                    return False
        return frozenset() in self._simplices

    def edges_at(self, v) -> list:
        return [next(iter(s - {v})) for s in self._simplices if len(s) == 2 and v in s]

    # -- serialisation ------------------------------------------------------

    def to_json(self, label: Callable = default_label) -> dict:
        verts = self.sorted_vertices()
        return {
            "vertices": [label(v) for v in verts],
            "facets": [[label(v) for v in sorted(f, key=sort_key)] for f in self.facets()],
        }

    def dumps(self, label: Callable = default_label) -> str:
        return json.dumps(self.to_json(label), sort_keys=True)

    def to_dot(self, name: str = "K", label: Callable = default_label) -> str:
        verts = self.sorted_vertices()
        index = {v: i for i, v in enumerate(verts)}
        lines = [f"graph {name} {{"]
        for v in verts:
            lines.append(f'  n{index[v]} [label="{label(v)}"];')
        edges = sorted((tuple(sorted((index[a] for a in e))) for e in self.simplices_of_dim(1)))
        for a, b in edges:
            lines.append(f"  n{a} -- n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def flag_complex(vertices: Iterable, adjacent: Callable[[Hashable, Hashable], bool],
                 max_dim: int | None = None) -> Complex:
    """Clique complex of the graph given by ``adjacent``."""
    verts = sorted(set(vertices), key=sort_key)
    nbrs = {v: set() for v in verts}
    for a, b in itertools.combinations(verts, 2):
        if adjacent(a, b):
            nbrs[a].add(b)
            nbrs[b].add(a)
    order = {v: i for i, v in enumerate(verts)}
    facets = []

    def extend(clique, cands):
        if max_dim is not None and len(clique) == max_dim + 1:
            facets.append(clique)
            return
        grown = False
        for v in sorted(cands, key=order.get):
            grown = True
            extend(clique + [v], {u for u in cands & nbrs[v] if order[u] > order[v]})
        if not grown:
            facets.append(clique)

    for v in verts:
        extend([v], {u for u in nbrs[v] if order[u] > order[v]})
    return Complex(facets, verts)


def dimension(K: Complex) -> int:
    return max(len(s) for s in K.simplices) - 1


def barycentric_subdivision(K: Complex) -> Complex:
    """Vertices are the non-empty simplices of K; simplices are chains under inclusion."""
    nonempty = [s for s in K.simplices if s]
    by_size: dict[int, list] = {}
    for s in nonempty:
        by_size.setdefault(len(s), []).append(s)
    facets = []

    def grow(chain):
        top = chain[-1]
        extended = False
        for t in by_size.get(len(top) + 1, []):
            if top < t:
                extended = True
                grow(chain + [t])
        if not extended:
            facets.append(chain)

    # maximal chains start at vertices
    for s in by_size.get(1, []):
        grow([s])
    return Complex(facets, nonempty)


def star(K: Complex, v) -> Complex:
    """Closed star: every simplex S with S + {v} a simplex, plus faces."""
    if frozenset([v]) not in K.simplices:
        raise KeyError(f"unknown vertex {v!r}")
    return Complex([s | {v} for s in K.simplices if (s | {v}) in K.simplices])


def link(K: Complex, v) -> Complex:
    if frozenset([v]) not in K.simplices:
        raise KeyError(f"unknown vertex {v!r}")
    return Complex([s for s in K.simplices if v not in s and (s | {v}) in K.simplices])


def connected_components(K: Complex) -> list[list]:
    """Vertex partition, each block sorted, blocks ordered by their first vertex."""
    verts = K.sorted_vertices()
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in K.simplices_of_dim(1):
        a, b = sorted(e, key=sort_key)
        ra, rb = find(a), find(b)
        if ra != rb:
            if sort_key(ra) < sort_key(rb):
                parent[rb] = ra
            else:
                parent[ra] = rb
    blocks: dict = {}
    for v in verts:
        blocks.setdefault(find(v), []).append(v)
    return [blocks[r] for r in sorted(blocks, key=sort_key)]


# -- homology -------------------------------------------------------------------


def smith_diagonal(M: list[list[int]]) -> list[int]:
    """Non-zero diagonal entries of the Smith normal form of an integer matrix."""
    A = [row[:] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        # bring a non-zero pivot of least absolute value to (r, c) in the submatrix
        while True:
            piv = None
            for i in range(r, rows):
                for j in range(c, cols):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return diag
            i, j = piv
            A[r], A[i] = A[i], A[r]
            for row in A:
                row[c], row[j] = row[j], row[c]
            p = A[r][c]
            done = True
            for i in range(r + 1, rows):
                q = A[i][c] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                if A[i][c]:
                    done = False
            for j in range(c + 1, cols):
                q = A[r][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[c]
                if A[r][j]:
                    done = False
            if done:
                # divisibility: p must divide every remaining entry
                bad = None
                for i in range(r + 1, rows):
                    for j in range(c + 1, cols):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[r] = [x + y for x, y in zip(A[r], A[bad])]
        diag.append(abs(A[r][c]))
        r += 1
    return diag


def boundary_matrix(K: Complex, k: int) -> list[list[int]]:
    """Matrix of the boundary map from k-chains to (k-1)-chains, k >= 1."""
    rows_s = K.simplices_of_dim(k - 1)
    cols_s = K.simplices_of_dim(k)
    index = {s: i for i, s in enumerate(rows_s)}
    M = [[0] * len(cols_s) for _ in rows_s]
    for j, s in enumerate(cols_s):
        verts = sorted(s, key=sort_key)
        for i, v in enumerate(verts):
            M[index[s - {v}]][j] = (-1) ** i
    return M


def homology(K: Complex, max_degree: int = 2) -> list[tuple[int, list[int]]]:
    """Integral homology (rank, torsion coefficients) in degrees 0..max_degree."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    ranks = {}
    diags = {}
    for k in range(1, max_degree + 2):
        d = smith_diagonal(boundary_matrix(K, k)) if K.simplices_of_dim(k) and K.simplices_of_dim(k - 1) else []
        diags[k] = d
    out = []
    for k in range(max_degree + 1):
        n_k = len(K.simplices_of_dim(k))
        rank_out = len(diags[k]) if k >= 1 else 0
        rank_in = len(diags[k + 1])
        betti = n_k - rank_out - rank_in
        torsion = sorted(x for x in diags[k + 1] if x > 1)
        out.append((betti, torsion))
    return out


# -- simplicial maps ------------------------------------------------------------


@dataclass(frozen=True)
class SimplicialMap:
    source: Complex
    target: Complex
    mapping: dict

    def __call__(self, v):
        return self.mapping[v]

    def image(self, s) -> frozenset:
        return frozenset(self.mapping[v] for v in s)


def check_simplicial_map(f: SimplicialMap) -> bool:
    """Every simplex of the source maps onto a simplex of the target."""
    for s in f.source.simplices:
        if any(v not in f.mapping for v in s):
            return False
        if not f.target.has_simplex(f.image(s)):
            return False
    return True


# -- lazily queried complexes -----------------------------------------------------


class FlagView:
    """Flag complex given only by a vertex test and an adjacency test.

    Supports the membership queries used by certificate checking without
    listing any simplices, which keeps large complexes cheap to query.
    """

    def __init__(self, is_vertex: Callable, adjacent: Callable):
        self._is_vertex = is_vertex
        self._adjacent = adjacent

    def has_simplex(self, s) -> bool:
        s = list(frozenset(s))
        if not all(self._is_vertex(v) for v in s):
            return False
        return all(self._adjacent(a, b) for a, b in itertools.combinations(s, 2))

    def __contains__(self, s) -> bool:
        return self.has_simplex(s)


class SubdivisionView:
    """Barycentric subdivision of a complex, queried lazily.

    Vertices are the non-empty simplices of the base; a set of them is a
    simplex exactly when it is a chain under inclusion.
    """

    def __init__(self, base):
        self.base = base

    def has_simplex(self, s) -> bool:
        chain = sorted(frozenset(s), key=len)
        for x in chain:
            if not isinstance(x, frozenset) or not x or not self.base.has_simplex(x):
                return False
        return all(a < b for a, b in zip(chain, chain[1:]))

    def __contains__(self, s) -> bool:
        return self.has_simplex(s)

"""Explicit drawings of curves on a triangulated surface.

A drawing places closed curves on the surface as cyclic sequences of points
on edges, joined by chords inside triangles.  Chords need not be normal and
two curves may cross: two chords of the same triangle cross exactly when
their endpoints interleave on the triangle boundary.

From a drawing we read off the regions of the complement of the curves,
with Euler characteristics and corner counts.  That is enough to cut along
disjoint curves and to locate bigons between two curves.  Vertices of the
triangulation are ordinary points of the closed surface, so a bigon is
allowed to contain them.

Crossings along a chord are ordered combinatorially whenever the chords
crossing it are disjoint from one another, which is always the case for two
embedded curves.  Otherwise the chords are realized as straight segments
between points in convex position and ordered exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .normal import corner_counts, require_normal, trace_arcs
from .triangulation import Triangulation


@dataclass
class Region:
    """A connected component of the complement of the drawn curves."""
    faces: int = 0
    tsegs: set = field(default_factory=set)
    vertices: set = field(default_factory=set)
    corners: list = field(default_factory=list)      # crossing ids, one per visit
    pieces: set = field(default_factory=set)         # (curve, segment, piece, side)
    curve_sides: set = field(default_factory=set)    # (curve, side); +1 is the left side

    @property
    def euler_characteristic(self) -> int:
        return self.faces - len(self.tsegs) + len(self.vertices)

    @property
    def boundary_components(self) -> int:
        """Number of boundary circles, valid when the region has no corners."""
        return len(self.curve_sides)


@dataclass
class Regions:
    regions: list
    tseg_region: dict
    # crossing id -> (curve1, seg1, index on seg1, curve2, seg2, index on seg2, sign)
    crossings: dict
    ranks: dict

    def __len__(self):
        return len(self.regions)


class Drawing:
    """Mutable collection of closed curves drawn on a triangulation."""

    def __init__(self, T: Triangulation):
        self.T = T
        self.edge_points: list[list[int]] = [[] for _ in range(T.num_edges)]
        self.point_edge: dict[int, int] = {}
        self.point_curve: dict[int, int] = {}
        self.curves: list[tuple[list[int], list[tuple[int, int]]]] = []
        self._next = 0

    # -- construction -------------------------------------------------------

    @classmethod
    def from_normal(cls, T: Triangulation, vectors) -> "Drawing":
        """Draw several normal multicurves at once.

        On every edge the points are merged by which corner their arcs cut
        off on either side.  Among parallel arcs the earlier vector sits
        nearer the vertex, so identical vectors are drawn as parallel copies.
        A vector with several components contributes one curve per component.
        """
        D = cls(T)
        keys: list[list[tuple]] = [[] for _ in range(T.num_edges)]
        pending = []
        for ci, w in enumerate(vectors):
            w = require_normal(T, w)
            corners = corner_counts(T, w)
            offsets, cycles, point_edge = trace_arcs(T, w)
            gid = {}
            for local, e in enumerate(point_edge):
                r = local - offsets[e]
                sp, sm = T.edge_sides[e]
                tp, kp = divmod(sp, 3)
                tm, km = divmod(sm, 3)
                # side sp starts at the tail, side sm starts at the head
                head_plus = 0 if r < corners[tp][kp] else 1
                head_minus = 1 if w[e] - 1 - r < corners[tm][km] else 0
                group = (head_plus, head_minus)
                tie = -ci if group == (1, 1) else ci
                pid = D._new_point()
                gid[local] = pid
                keys[e].append((group, tie, r, pid))
            for points, sides in cycles:
                pending.append(([gid[p] for p in points], list(sides)))
        for e in range(T.num_edges):
            keys[e].sort()
            D.edge_points[e] = [k[-1] for k in keys[e]]
            for pid in D.edge_points[e]:
                D.point_edge[pid] = e
        for points, sides in pending:
            D._add_curve(points, sides)
        return D

    def _new_point(self) -> int:
        pid = self._next
        self._next += 1
        return pid

    def _add_curve(self, points, sides) -> int:
        c = len(self.curves)
        self.curves.append((list(points), list(sides)))
        for p in points:
            self.point_curve[p] = c
        return c

    def copy(self) -> "Drawing":
        D = Drawing(self.T)
        D.edge_points = [list(x) for x in self.edge_points]
        D.point_edge = dict(self.point_edge)
        D.point_curve = dict(self.point_curve)
        D.curves = [(list(p), list(s)) for p, s in self.curves]
        D._next = self._next
        return D

    def weights(self, c: int) -> tuple:
        """Edge crossing counts of curve ``c`` (not necessarily normal)."""
        v = [0] * self.T.num_edges
        for p in self.curves[c][0]:
            v[self.point_edge[p]] += 1
        return tuple(v)

    # -- per-triangle data ---------------------------------------------------

    def _triangle_data(self):
        T = self.T
        ranks = {}
        for pts in self.edge_points:
            for r, p in enumerate(pts):
                ranks[p] = r
        boundary, where = [], []
        for t, tri in enumerate(T.triangles):
            nodes, idx = [], {}
            for k, (e, d) in enumerate(tri):
                nodes.append(("c", k))
                pts = self.edge_points[e] if d == 1 else self.edge_points[e][::-1]
                for p in pts:
                    idx[(3 * t + k, p)] = len(nodes)
                    nodes.append(("p", k, p))
            boundary.append(nodes)
            where.append(idx)
        chords = [[] for _ in T.triangles]
        for c, (points, sides) in enumerate(self.curves):
            n = len(points)
            for i in range(n):
                s0, s1 = sides[i]
                t = s0 // 3
                if s1 // 3 != t:
                    raise ValueError(f"segment {i} of curve {c} leaves its triangle")
                x = where[t][(s0, points[i])]
                y = where[t][(s1, points[(i + 1) % n])]
                chords[t].append((c, i, x, y))
        return boundary, chords, ranks

    @staticmethod
    def _crosses(x1, y1, x2, y2):
        lo, hi = (x1, y1) if x1 < y1 else (y1, x1)
        return (lo < x2 < hi) != (lo < y2 < hi)

    def signed_crossings(self, c1: int, c2: int) -> tuple[int, int]:
        """(number of crossings, signed count) between curves ``c1`` and ``c2``.

        A crossing counts +1 when ``c2`` passes from the right of ``c1`` to
        its left.
        """
        boundary, chords, _ = self._triangle_data()
        count = signed = 0
        for t, ch in enumerate(chords):
            B = len(boundary[t])
            mine = [x for x in ch if x[0] == c1]
            theirs = [x for x in ch if x[0] == c2]
            for (_, _, x1, y1) in mine:
                span = (y1 - x1) % B
                for (_, _, x2, y2) in theirs:
                    if self._crosses(x1, y1, x2, y2):
                        count += 1
                        signed += 1 if (x2 - x1) % B < span else -1
        return count, signed

    def crossing_count(self) -> int:
        _, chords, _ = self._triangle_data()
        total = 0
        for ch in chords:
            for i in range(len(ch)):
                for j in range(i + 1, len(ch)):
                    if self._crosses(ch[i][2], ch[i][3], ch[j][2], ch[j][3]):
                        total += 1
        return total

    # -- regions -------------------------------------------------------------

    def regions(self) -> Regions:
        T = self.T
        boundary, chords, ranks = self._triangle_data()
        faces = []
        crossings = {}
        for t in range(T.num_triangles):
            faces.extend(self._triangle_faces(t, boundary[t], chords[t], ranks, crossings))

        parent = list(range(len(faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        seg_face = {}
        for fi, info in enumerate(faces):
            for ts in info["tsegs"]:
                if ts in seg_face:
                    a, b = find(seg_face[ts]), find(fi)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
                else:
                    seg_face[ts] = fi
        roots = {}
        regions = []
        for fi, info in enumerate(faces):
            r = find(fi)
            if r not in roots:
                roots[r] = len(regions)
                regions.append(Region())
            R = regions[roots[r]]
            R.faces += 1
            R.tsegs.update(info["tsegs"])
            R.vertices.update(info["verts"])
            R.corners.extend(info["corners"])
            R.pieces.update(info["pieces"])
            for (c, _, _, side) in info["pieces"]:
                R.curve_sides.add((c, side))
        tseg_region = {ts: roots[find(fi)] for ts, fi in seg_face.items()}
        return Regions(regions, tseg_region, crossings, ranks)

    def _triangle_faces(self, t, nodes, chords, ranks, crossings):
        B = len(nodes)
        nch = len(chords)
        on_chord = [[] for _ in range(nch)]
        xlist = []
        for i in range(nch):
            x1, y1 = chords[i][2], chords[i][3]
            span = (y1 - x1) % B
            for j in range(i + 1, nch):
                x2, y2 = chords[j][2], chords[j][3]
                if self._crosses(x1, y1, x2, y2):
                    sign = 1 if (x2 - x1) % B < span else -1
                    on_chord[i].append(len(xlist))
                    on_chord[j].append(len(xlist))
                    xlist.append((i, j, sign))
        # order crossings along each chord by where the crossing chord meets
        # the counter-clockwise arc from the chord's start to its end; this
        # is forced when the crossing chords are pairwise disjoint
        tangled = False
        for i in range(nch):
            if len(on_chord[i]) < 2:
                continue
            x1, y1 = chords[i][2], chords[i][3]
            span = (y1 - x1) % B
            keyed = []
            for xid in on_chord[i]:
                a, b, _ = xlist[xid]
                o = b if a == i else a
                x2, y2 = chords[o][2], chords[o][3]
                u = x2 if (x2 - x1) % B < span else y2
                keyed.append(((u - x1) % B, o, xid))
            keyed.sort()
            others = [o for _, o, _ in keyed]
            for p in range(len(others)):
                for q in range(p + 1, len(others)):
                    cp, cq = chords[others[p]], chords[others[q]]
                    if self._crosses(cp[2], cp[3], cq[2], cq[3]):
                        tangled = True
            on_chord[i] = [xid for _, _, xid in keyed]
        if tangled:
            on_chord = _geometric_order(B, chords, xlist)
        for xid, (i, j, sign) in enumerate(xlist):
            crossings[(t, xid)] = (chords[i][0], chords[i][1], on_chord[i].index(xid),
                                   chords[j][0], chords[j][1], on_chord[j].index(xid), sign)

        # planar graph: boundary nodes 0..B-1, crossing nodes B + xid.
        # half-edge h and its twin h ^ 1 are created in pairs.
        he_to, he_tag = [], []

        def add_pair(v_fwd, v_bwd, tag_fwd, tag_bwd):
            h = len(he_to)
            he_to.extend((v_fwd, v_bwd))
            he_tag.extend((tag_fwd, tag_bwd))
            return h

        out_next = [0] * B
        out_prev = [0] * B
        for b in range(B):
            nb = (b + 1) % B
            d = self.T.triangles[t][nodes[b][1]][1]
            h = add_pair(nb, b, ("T", self._tseg(t, nodes[b], nodes[nb], ranks), d), ("O",))
            out_next[b] = h
            out_prev[nb] = h + 1
        chord_out = {}
        xrot = {}
        for i, (c, s, x, y) in enumerate(chords):
            seq = [x] + [B + xid for xid in on_chord[i]] + [y]
            for m in range(len(seq) - 1):
                u, v = seq[m], seq[m + 1]
                h = add_pair(v, u, ("C", c, s, m, 1), ("C", c, s, m, -1))
                if m == 0:
                    chord_out[u] = h
                else:
                    xrot.setdefault(u, {})[("f", i)] = h
                if m == len(seq) - 2:
                    chord_out[v] = h + 1
                else:
                    xrot.setdefault(v, {})[("b", i)] = h + 1
        rot = {}
        for b in range(B):
            if b in chord_out:
                rot[b] = (out_next[b], chord_out[b], out_prev[b])
            else:
                rot[b] = (out_next[b], out_prev[b])
        for xid, (i, j, sign) in enumerate(xlist):
            r = xrot[B + xid]
            if sign > 0:
                rot[B + xid] = (r[("f", i)], r[("f", j)], r[("b", i)], r[("b", j)])
            else:
                rot[B + xid] = (r[("f", i)], r[("b", j)], r[("b", i)], r[("f", j)])
        rot_pos = {}
        for lst in rot.values():
            for k, h in enumerate(lst):
                rot_pos[h] = k

        cv = self.T.corner_vertex
        used = [False] * len(he_to)
        out = []
        for h0 in range(len(he_to)):
            if used[h0] or he_tag[h0][0] == "O":
                continue
            info = {"tsegs": [], "verts": set(), "corners": [], "pieces": set(), "cycle": []}
            h = h0
            while not used[h]:
                used[h] = True
                tag = he_tag[h]
                if tag[0] == "T":
                    info["tsegs"].append(tag[1])
                else:
                    info["pieces"].add(tag[1:])
                info["cycle"].append(tag)
                v = he_to[h]
                if v >= B:
                    info["corners"].append((t, v - B))
                elif nodes[v][0] == "c":
                    info["verts"].add(cv[3 * t + nodes[v][1]])
                lst = rot[v]
                h = lst[rot_pos[h ^ 1] - 1]
            out.append(info)
        return out

    def _tseg(self, t, n0, n1, ranks):
        """Id ``(edge, j)`` of the edge piece between consecutive boundary nodes.

        Pieces of edge ``e`` are numbered 0..len from the tail, piece ``j``
        lying just below the point of rank ``j``.
        """
        k = n0[1]
        e, d = self.T.triangles[t][k]
        npts = len(self.edge_points[e])

        def rank(node):
            if node[0] == "p":
                return ranks[node[2]]
            is_tail = (node[1] == k) == (d == 1)
            return -1 if is_tail else npts

        return (e, max(rank(n0), rank(n1)))

    # -- bigons --------------------------------------------------------------

    def find_bigon(self, ca: int, cb: int, regions: Regions | None = None):
        """Index of a bigon region between ``ca`` and ``cb`` (or None)."""
        regions = regions if regions is not None else self.regions()
        for ri, R in enumerate(regions.regions):
            if len(R.corners) == 2 and R.corners[0] != R.corners[1] \
                    and R.euler_characteristic == 1:
                x = regions.crossings[R.corners[0]]
                if {x[0], x[3]} == {ca, cb}:
                    return ri, regions
        return None, regions

    def remove_bigon(self, ca: int, cb: int, ri: int, regions: Regions) -> None:
        """Push curve ``ca`` across bigon ``ri`` to the far side of ``cb``."""
        R = regions.regions[ri]
        p, q = R.corners

        def locate(xid, c):
            c1, s1, m1, c2, s2, m2, _ = regions.crossings[xid]
            return (s1, m1) if c1 == c else (s2, m2)

        def after_in_region(c, pos):
            seg, m = pos
            return (c, seg, m + 1, 1) in R.pieces or (c, seg, m + 1, -1) in R.pieces

        s = p if after_in_region(ca, locate(p, ca)) else q
        e = q if s == p else p
        a_points, a_sides = self.curves[ca]
        b_points, b_sides = self.curves[cb]
        nb = len(b_points)
        i_s, m_s = locate(s, ca)
        i_e, m_e = locate(e, ca)
        js, ms = locate(s, cb)
        je, me = locate(e, cb)

        alpha = _between(a_points, i_s, m_s, i_e, m_e)
        kept = _between(a_points, i_e, m_e, i_s, m_s)
        if after_in_region(cb, (js, ms)):
            beta = _between(b_points, js, ms, je, me)
            first_side = b_sides[js][1]
            last_side = b_sides[je][0]
            mid_sides = [b_sides[(js + 1 + r) % nb] for r in range(len(beta) - 1)]
        else:
            beta = _between(b_points, je, me, js, ms)[::-1]
            first_side = b_sides[js][0]
            last_side = b_sides[je][1]
            mid_sides = []
            for r in range(len(beta) - 1):
                s0, s1 = b_sides[(js - 1 - r) % nb]
                mid_sides.append((s1, s0))
        if not kept and not beta:
            raise ValueError("degenerate bigon")

        for pt in alpha:
            ed = self.point_edge.pop(pt)
            self.edge_points[ed].remove(pt)
            del self.point_curve[pt]
        new_pts = []
        for pt in beta:
            ed = self.point_edge[pt]
            lst = self.edge_points[ed]
            below_in_bigon = regions.tseg_region.get((ed, regions.ranks[pt])) == ri
            nid = self._new_point()
            lst.insert(lst.index(pt) + (1 if below_in_bigon else 0), nid)
            self.point_edge[nid] = ed
            self.point_curve[nid] = ca
            new_pts.append(nid)

        idx = {pt: k for k, pt in enumerate(a_points)}
        sides = [a_sides[idx[kept[k]]] for k in range(len(kept) - 1)]
        start_side = a_sides[i_s][0]
        end_side = a_sides[i_e][1]
        if kept and new_pts:
            sides.append((start_side, first_side))
            sides.extend(mid_sides)
            sides.append((last_side, end_side))
        elif kept:
            sides.append((start_side, end_side))
        else:
            sides.extend(mid_sides)
            sides.append((last_side, first_side))
        self.curves[ca] = (kept + new_pts, sides)

    def minimize(self, ca: int, cb: int, max_steps: int = 100_000) -> int:
        """Remove bigons between two curves until none is left.

        Returns the final number of crossings, which is then the geometric
        intersection number of the two isotopy classes.
        """
        count = self.signed_crossings(ca, cb)[0]
        for _ in range(max_steps):
            if count == 0:
                return 0
            ri, regions = self.find_bigon(ca, cb)
            if ri is None:
                return count
            self.remove_bigon(ca, cb, ri, regions)
            after = self.signed_crossings(ca, cb)[0]
            if after > count - 2:
                raise AssertionError(f"bigon removal went from {count} to {after} crossings")
            count = after
        raise RuntimeError("bigon removal did not terminate")


def _between(points, i0, m0, i1, m1):
    """Points strictly between crossing (i0, m0) and crossing (i1, m1), going forward.

    A crossing ``(i, m)`` sits on the segment from ``points[i]`` to
    ``points[i + 1]`` as the ``m``-th crossing along it.
    """
    N = len(points)
    if i0 == i1 and m1 > m0:
        return []
    k = (i1 - i0) % N or N
    return [points[(i0 + 1 + r) % N] for r in range(k)]


def _geometric_order(B, chords, xlist, attempts=50):
    """Order crossings along chords using straight chords between points in convex position.

    Boundary node ``i`` is placed on the parabola ``y = x**2`` with
    ``x = i * 4096 + jitter``; exact rational comparisons decide the order
    and a new jitter is drawn whenever three chords are concurrent.
    """
    import random
    from fractions import Fraction

    rng = random.Random(B)
    for _ in range(attempts):
        xs = [i * 4096 + rng.randrange(1, 2048) for i in range(B)]
        pos = [(x, x * x) for x in xs]
        on_chord = [[] for _ in chords]
        for xid, (i, j, _) in enumerate(xlist):
            on_chord[i].append(xid)
            on_chord[j].append(xid)
        ok = True
        for i, lst in enumerate(on_chord):
            P, Q = pos[chords[i][2]], pos[chords[i][3]]
            keyed = []
            for xid in lst:
                a, b, _ = xlist[xid]
                o = b if a == i else a
                R, S = pos[chords[o][2]], pos[chords[o][3]]
                dx, dy = S[0] - R[0], S[1] - R[1]
                num = (R[0] - P[0]) * dy - (R[1] - P[1]) * dx
                den = (Q[0] - P[0]) * dy - (Q[1] - P[1]) * dx
                keyed.append((Fraction(num, den), xid))
            keyed.sort()
            if any(keyed[k][0] == keyed[k - 1][0] for k in range(1, len(keyed))):
                ok = False
                break
            on_chord[i] = [xid for _, xid in keyed]
        if ok:
            return on_chord
    raise RuntimeError("could not place chords in general position")

"""Edge loops in simplicial complexes and checkable homotopy certificates.

An edge loop is a cyclic tuple of vertices in which consecutive entries
(including last to first) span a simplex; repeated consecutive vertices
are allowed and stand for constant steps.  A certificate is a list of
elementary moves:

* ``TriangleReplace(pos, c, inverse, simplex)``: replace the step
  ``a -> b`` starting at ``pos`` by ``a -> c -> b`` (or the reverse),
  licensed by the simplex ``{a, b, c}``;
* ``Backtrack(pos, b, insert)``: insert ``a -> b -> a`` at a vertex ``a``
  or delete such a detour;
* ``Rotate(k)``: cyclic shift of the loop (free homotopy);
* ``StarContract(v)``: collapse a loop lying in the star of ``v``.

The verifier here shares no code with ``CertificateBuilder``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from .errors import CertificateError
from .simplicial import Complex, default_label, sort_key

CONSTANT = "CONSTANT"


@dataclass(frozen=True)
class TriangleReplace:
    pos: int
    c: object
    inverse: bool
    simplex: frozenset


@dataclass(frozen=True)
class Backtrack:
    pos: int
    b: object
    insert: bool


@dataclass(frozen=True)
class Rotate:
    k: int


@dataclass(frozen=True)
class StarContract:
    v: object


Move = Union[TriangleReplace, Backtrack, Rotate, StarContract]


@dataclass
class HomotopyCertificate:
    moves: list

    def __len__(self):
        return len(self.moves)

    def shifted(self, offset: int) -> "HomotopyCertificate":
        """The same moves acting on a loop with ``offset`` extra leading vertices."""
        out = []
        for m in self.moves:
            if isinstance(m, TriangleReplace):
                out.append(TriangleReplace(m.pos + offset, m.c, m.inverse, m.simplex))
            elif isinstance(m, Backtrack):
                out.append(Backtrack(m.pos + offset, m.b, m.insert))
            else:
                raise ValueError("only based moves can be shifted")
        return HomotopyCertificate(out)

    def __add__(self, other: "HomotopyCertificate") -> "HomotopyCertificate":
        return HomotopyCertificate(self.moves + other.moves)

    def cited_vertices(self) -> set:
        out = set()
        for m in self.moves:
            if isinstance(m, TriangleReplace):
                out |= set(m.simplex)
            elif isinstance(m, Backtrack):
                out.add(m.b)
            elif isinstance(m, StarContract):
                out.add(m.v)
        return out

    def to_json(self, label=default_label) -> list:
        out = []
        for m in self.moves:
            if isinstance(m, TriangleReplace):
                out.append({"move": "triangle", "pos": m.pos, "c": label(m.c), "inverse": m.inverse,
                            "simplex": sorted(label(v) for v in m.simplex)})
            elif isinstance(m, Backtrack):
                out.append({"move": "backtrack", "pos": m.pos, "b": label(m.b), "insert": m.insert})
            elif isinstance(m, Rotate):
                out.append({"move": "rotate", "k": m.k})
            else:
                out.append({"move": "star", "v": label(m.v)})
        return out

    @classmethod
    def from_json(cls, data, decode) -> "HomotopyCertificate":
        moves = []
        for d in data:
            kind = d["move"]
            if kind == "triangle":
                moves.append(TriangleReplace(d["pos"], decode(d["c"]), d["inverse"],
                                             frozenset(decode(v) for v in d["simplex"])))
            elif kind == "backtrack":
                moves.append(Backtrack(d["pos"], decode(d["b"]), d["insert"]))
            elif kind == "rotate":
                moves.append(Rotate(d["k"]))
            elif kind == "star":
                moves.append(StarContract(decode(d["v"])))
            else:
                raise ValueError(f"unknown move {kind!r}")
        return cls(moves)


def is_edge_loop(K: Complex, loop) -> bool:
    n = len(loop)
    if n == 0:
        return True
    for i in range(n):
        if not K.has_simplex({loop[i], loop[(i + 1) % n]}):
            return False
    return True


# -- independent verifier ----------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    index: int = -1
    reason: str = ""

    def __bool__(self):
        return self.ok


def _step(K: Complex, loop: list, m, i: int) -> list:
    n = len(loop)
    if isinstance(m, Rotate):
        if n == 0:
            return loop
        k = m.k % n
        return loop[k:] + loop[:k]
    if isinstance(m, StarContract):
        v = m.v
        if not K.has_simplex({v}):
            raise CertificateError(i, f"star centre {v!r} is not a vertex")
        for j in range(n):
            a, b = loop[j], loop[(j + 1) % n]
            if not K.has_simplex({a, b, v}):
                raise CertificateError(i, f"step {j} leaves the star of {v!r}")
        return [v]
    if n == 0:
        raise CertificateError(i, "move applied to the empty loop")
    p = m.pos
    if not 0 <= p < n:
        raise CertificateError(i, f"position {p} out of range for length {n}")
    if isinstance(m, TriangleReplace):
        a = loop[p]
        if not m.inverse:
            b = loop[(p + 1) % n]
            need = frozenset({a, b, m.c})
            if m.simplex != need:
                raise CertificateError(i, "cited simplex does not match the step")
            if not K.has_simplex(need):
                raise CertificateError(i, f"{sorted(map(default_label, need))} is not a simplex")
            return loop[:p + 1] + [m.c] + loop[p + 1:]
        if n < 2:
            raise CertificateError(i, "nothing to remove")
        c = loop[(p + 1) % n]
        b = loop[(p + 2) % n]
        if c != m.c:
            raise CertificateError(i, "removed vertex does not match")
        need = frozenset({a, b, c})
        if m.simplex != need:
            raise CertificateError(i, "cited simplex does not match the step")
        if not K.has_simplex(need):
            raise CertificateError(i, f"{sorted(map(default_label, need))} is not a simplex")
        q = (p + 1) % n
        return loop[:q] + loop[q + 1:]
    if isinstance(m, Backtrack):
        a = loop[p]
        if m.insert:
            if not K.has_simplex({a, m.b}):
                raise CertificateError(i, "inserted detour is not an edge")
            return loop[:p + 1] + [m.b, a] + loop[p + 1:]
        if n == 1:
            raise CertificateError(i, "no detour to delete")
        if n == 2:
            if loop[(p + 1) % n] != m.b:
                raise CertificateError(i, "detour vertex does not match")
            return [a]
        if loop[(p + 1) % n] != m.b or loop[(p + 2) % n] != a:
            raise CertificateError(i, "no detour at this position")
        drop = {(p + 1) % n, (p + 2) % n}
        return [x for j, x in enumerate(loop) if j not in drop]
    raise CertificateError(i, f"unknown move {m!r}")


def check_certificate(K: Complex, source, target, cert: HomotopyCertificate) -> list:
    """Replay ``cert`` on ``source``; raise ``CertificateError`` on the first bad move."""
    loop = list(source)
    if not is_edge_loop(K, loop):
        raise CertificateError(-1, "source is not an edge loop")
    for i, m in enumerate(cert.moves):
        loop = _step(K, loop, m, i)
        if not is_edge_loop(K, loop):
            raise CertificateError(i, "result is not an edge loop")
    if target == CONSTANT or target is None:
        if len(loop) > 1:
            raise CertificateError(len(cert.moves), f"final loop has length {len(loop)}")
    elif list(target) != loop:
        raise CertificateError(len(cert.moves), "final loop differs from the target")
    return loop


def verify_certificate(K: Complex, source, target, cert: HomotopyCertificate) -> Verdict:
    try:
        check_certificate(K, source, target, cert)
    except CertificateError as exc:
        return Verdict(False, exc.index, exc.reason)
    return Verdict(True)


# -- builder -------------------------------------------------------------------------


class CertificateBuilder:
    """Applies moves to a working loop, checking each against the complex."""

    def __init__(self, K: Complex, loop):
        self.K = K
        self.loop = list(loop)
        self.moves: list = []
        for j in range(len(self.loop)):
            self._need({self.loop[j], self.loop[(j + 1) % len(self.loop)]}, "initial loop")

    def _need(self, s, what):
        if not self.K.has_simplex(frozenset(s)):
            raise CertificateError(len(self.moves), f"{what}: {sorted(map(default_label, s))} missing")

    @property
    def certificate(self) -> HomotopyCertificate:
        return HomotopyCertificate(list(self.moves))

    def insert(self, pos: int, c):
        """Replace step loop[pos] -> loop[pos+1] by a detour through ``c``."""
        n = len(self.loop)
        a, b = self.loop[pos], self.loop[(pos + 1) % n]
        s = frozenset({a, b, c})
        self._need(s, "triangle insert")
        self.moves.append(TriangleReplace(pos, c, False, s))
        self.loop.insert(pos + 1, c)

    def remove(self, pos: int):
        """Remove loop[pos+1], replacing loop[pos] -> c -> b by a -> b."""
        n = len(self.loop)
        a, c, b = self.loop[pos], self.loop[(pos + 1) % n], self.loop[(pos + 2) % n]
        s = frozenset({a, b, c})
        self._need(s, "triangle remove")
        self.moves.append(TriangleReplace(pos, c, True, s))
        del self.loop[(pos + 1) % n]

    def detour(self, pos: int, b):
        a = self.loop[pos]
        self._need({a, b}, "backtrack insert")
        self.moves.append(Backtrack(pos, b, True))
        self.loop[pos + 1:pos + 1] = [b, a]

    def undetour(self, pos: int):
        n = len(self.loop)
        a, b = self.loop[pos], self.loop[(pos + 1) % n]
        self.moves.append(Backtrack(pos, b, False))
        if n == 2:
            self.loop = [a]
            return
        if self.loop[(pos + 2) % n] != a:
            raise CertificateError(len(self.moves) - 1, "no detour to remove")
        for j in sorted({(pos + 1) % n, (pos + 2) % n}, reverse=True):
            del self.loop[j]

    def rotate(self, k: int):
        n = len(self.loop)
        if n:
            k %= n
            self.loop = self.loop[k:] + self.loop[:k]
        self.moves.append(Rotate(k))

    # -- composite operations ---------------------------------------------------

    def free_reduce(self) -> None:
        """Delete constant steps ``x x`` and detours ``x y x`` until none is left."""
        while len(self.loop) > 1:
            n = len(self.loop)
            if n == 2:
                self.undetour(0)
                continue
            for j in range(n):
                if self.loop[j] == self.loop[(j + 1) % n]:
                    self.remove(j)
                    break
                if self.loop[j] == self.loop[(j + 2) % n]:
                    self.undetour(j)
                    break
            else:
                return

    def cone_segment(self, start: int, length: int, apex, phi=None) -> None:
        """Contract the closed based path loop[start .. start+length] to loop[start].

        The path must end where it starts.  It may be the whole loop
        (``start == 0`` and ``length == len(loop)``); otherwise it must not
        wrap around the end of the list, so the moves can be replayed inside
        a longer loop.  With a vertex map ``phi`` every step ``x -> y`` is
        first pushed to ``phi(x) -> phi(y)`` across the two prism triangles
        ``{x, y, phi(y)}, {x, phi(x), phi(y)}`` (or the mirrored pair) and the
        image is then coned off from ``apex``.
        """
        n = len(self.loop)
        whole = start == 0 and length == n
        if not whole and start + length >= n:
            raise ValueError("segment must not wrap")
        if self.loop[(start + length) % n] != self.loop[start]:
            raise ValueError("segment is not closed")
        if length == 0:
            return
        if phi is None:
            self._cone_path(start, length, apex)
            return
        pos = start
        for _ in range(length):
            x, y = self.loop[pos], self.loop[(pos + 1) % len(self.loop)]
            px, py = phi(x), phi(y)
            if self.K.has_simplex({x, y, py}) and self.K.has_simplex({x, px, py}):
                self.insert(pos, py)
                self.insert(pos, px)
            else:
                self.insert(pos, px)
                self.insert(pos + 1, py)
            pos += 3
        # x0, px0, px1, x1, px1, px2, x2, ..., x_{L-1}, px_{L-1}, px0 [, x0]
        for k in range(length - 1):
            self.undetour(start + 2 + k)
        # x0, px0, px1, ..., px_{L-1}, px0 [, x0]
        self._cone_path(start + 1, length, apex)
        self.undetour(start)

    def _cone_path(self, start: int, length: int, apex) -> None:
        """Cone the closed based path loop[start..start+length] to its base point."""
        pos = start
        for _ in range(length):
            self.insert(pos, apex)
            pos += 2
        # x0, v, x1, v, ..., x_{L-1}, v [, x0]
        for _ in range(length - 1):
            self.undetour(start + 1)
        self.undetour(start)

    def replace_arc(self, start: int, arc_len: int, new_arc, region_apex, phi=None) -> None:
        """Swap the sub-path loop[start..start+arc_len] for ``new_arc`` with the same ends.

        The closed path formed by the new arc followed by the old one must
        be contractible by ``cone_segment(apex, phi)``.  The new arc is put
        in as a chain of detours at loop[start], the closed path through it
        and back along the old arc is then contracted.
        """
        n = len(self.loop)
        u, w = self.loop[start], self.loop[(start + arc_len) % n]
        new_arc = list(new_arc)
        if new_arc[0] != u or new_arc[-1] != w:
            raise ValueError("arcs do not share endpoints")
        # insert new_arc then its reverse at position start: u q1 .. w .. q1 u
        pos = start
        for q in new_arc[1:]:
            self.detour(pos, q)
            pos += 1
        k = len(new_arc) - 1
        # the closed path from w (at start+k) back along the reversed arc to u,
        # then along the old arc to w
        self.cone_segment(start + k, k + arc_len, region_apex, phi)


def contract_in_star(K: Complex, loop, v) -> HomotopyCertificate:
    """Certificate contracting an edge loop that lies in the star of ``v``."""
    loop = list(loop)
    n = len(loop)
    for j in range(n):
        if not K.has_simplex({loop[j], loop[(j + 1) % n], v}):
            raise CertificateError(j, f"step {j} is not in the star of {default_label(v)}")
    if n <= 1:
        return HomotopyCertificate([])
    if n == 2:
        return HomotopyCertificate([Backtrack(0, loop[1], False)])
    B = CertificateBuilder(K, loop)
    B.cone_segment(0, n, v)
    if len(B.loop) > 1:
        raise CertificateError(len(B.moves), "contraction did not finish")
    return B.certificate


def loop_to_json(loop, label=default_label):
    return [label(v) for v in loop]


def dumps_certificate(cert: HomotopyCertificate, source, target, label=default_label) -> str:
    return json.dumps({
        "source": loop_to_json(source, label),
        "target": CONSTANT if target in (None, CONSTANT) else loop_to_json(target, label),
        "moves": cert.to_json(label),
    }, sort_keys=True)

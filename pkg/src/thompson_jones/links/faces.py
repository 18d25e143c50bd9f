"""Faces, checkerboard shadings, Tait graphs and the Jones subgroup test.

A dart ``(c, p)`` leaves crossing ``c`` through port ``p``; its face is the
one on its left.  Arriving at ``(c', p')`` the same face continues out of
``(c', p' - 1)``, the next port clockwise.  The face of dart ``(c, q)`` owns
the corner of ``c`` between ports ``q`` and ``q + 1``.

The two checkerboard shadings of a connected diagram are the two colour
classes of its faces.  In a Tait graph the shaded faces are vertices and
each crossing is an edge between the two shaded corners it touches.  The
checkerboard surface is orientable exactly when that graph is bipartite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..config import DEFAULT_SHADING
from ..errors import UnsupportedFlavor, ValidationError
from ..group import TreePair
from .build import build_link, layout
from .diagram import LinkDiagram, Port

__all__ = [
    "Faces",
    "faces_and_shading",
    "TaitGraph",
    "tait_graph",
    "is_bipartite",
    "is_orientable",
    "stabilizer_member",
    "geometric_faces",
    "INNER",
    "OUTER",
]

INNER, OUTER = "inner", "outer"


@dataclass(frozen=True)
class Faces:
    """Faces as tuples of darts, a colour (0/1) per face, and the outer face index."""

    faces: tuple[tuple[Port, ...], ...]
    face_of: dict
    colour: tuple[int, ...]
    outer: int

    @property
    def count(self) -> int:
        return len(self.faces)

    def shading(self, which: str) -> frozenset[int]:
        """Faces of the shading that avoids (``inner``) or contains (``outer``) the outer face."""
        c_out = self.colour[self.outer]
        want = 1 - c_out if which == INNER else c_out
        return frozenset(i for i, c in enumerate(self.colour) if c == want)


def _trace(L: LinkDiagram):
    partner = L.partner_map()
    face_of: dict[Port, int] = {}
    faces = []
    for start in L.ports():
        if start in face_of:
            continue
        idx = len(faces)
        cycle = []
        d = start
        while d not in face_of:
            face_of[d] = idx
            cycle.append(d)
            c, p = partner[d]
            d = (c, (p - 1) % 4)
        if d != start:
            raise ValidationError("face tracing did not close up")
        faces.append(tuple(cycle))
    return faces, face_of, partner


def faces_and_shading(L: LinkDiagram) -> Faces:
    if L.crossing_count == 0:
        if L.free_loops != 1:
            raise ValidationError("face data needs a connected diagram")
        # one circle: inside (0) and outside (1)
        return Faces(((), ()), {}, (0, 1), 1)
    faces, face_of, partner = _trace(L)
    colour = [-1] * len(faces)
    colour[0] = 0
    stack = [0]
    adj: dict[int, set[int]] = {}
    for d, f in face_of.items():
        # the two sides of the arc leaving through d
        g = face_of[partner[d]]
        adj.setdefault(f, set()).add(g)
        adj.setdefault(g, set()).add(f)
    while stack:
        f = stack.pop()
        for g in adj.get(f, ()):
            if colour[g] == -1:
                colour[g] = 1 - colour[f]
                stack.append(g)
            elif colour[g] == colour[f]:
                raise ValidationError("faces admit no checkerboard colouring")
    if -1 in colour:
        raise ValidationError("diagram is not connected; face data is per component")
    outer = face_of[L.outer] if L.outer is not None else 0
    return Faces(tuple(faces), face_of, tuple(colour), outer)


@dataclass(frozen=True)
class TaitGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # one per crossing, loops allowed


def tait_graph(L: LinkDiagram, which: str = INNER, faces: Faces | None = None) -> TaitGraph:
    faces = faces or faces_and_shading(L)
    shaded = faces.shading(which)
    edges = []
    for c in range(L.crossing_count):
        f = [faces.face_of[(c, q)] for q in range(4)]
        if f[0] in shaded:
            if f[2] not in shaded:
                raise ValidationError("opposite corners differ in colour")
            edges.append((f[0], f[2]))
        else:
            edges.append((f[1], f[3]))
    return TaitGraph(tuple(sorted(shaded)), tuple(edges))


def is_bipartite(graph: TaitGraph) -> bool:
    side: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in graph.vertices}
    for a, b in graph.edges:
        if a == b:
            return False
        adj[a].append(b)
        adj[b].append(a)
    for v in graph.vertices:
        if v in side:
            continue
        side[v] = 0
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return False
    return True


def is_orientable(g: TreePair, shading: str = DEFAULT_SHADING, allow_unreduced: bool = False) -> bool:
    """Whether the chosen checkerboard surface of ``L(g)`` is orientable.

    The default shading is the calibrated one, see :mod:`thompson_jones.config`.
    """
    L = build_link(g, allow_unreduced=allow_unreduced)
    if L.crossing_count == 0:
        return True
    return is_bipartite(tait_graph(L, shading))


def stabilizer_member(g: TreePair) -> bool:
    """Whether ``g`` preserves the parity of binary digit sums of dyadic points.

    A leaf maps ``u·x`` to ``v·x``, so parity is kept on the whole leaf iff
    ``u`` and ``v`` have equally many ones mod 2.
    """
    if g.flavor != "F" or list(g.perm) != list(range(g.leaf_count)):
        raise UnsupportedFlavor("the stabilizer test is defined on F")
    return all(u.count("1") % 2 == v.count("1") % 2 for u, v in g.pairs())


def geometric_faces(g: TreePair):
    """Faces of ``L(g)`` traced from its drawing, independently of the port labels.

    Returns ``(faces, outer)``: each face is the set of darts ``(crossing,
    port)`` whose first segment bounds it on the left, and ``outer`` is the
    face of negative signed area.
    """
    lay = layout(g)
    n = len(lay.positions)
    # planar graph: crossings plus every polyline point
    point_id: dict[tuple[float, float], int] = {}
    for i, p in enumerate(lay.positions):
        point_id[p] = i
    edges: dict[int, set[int]] = {}
    dart_edge: dict[tuple[int, int], Port] = {}

    def vid(p):
        if p not in point_id:
            point_id[p] = len(point_id)
        return point_id[p]

    for a, b, path in lay.arcs:
        ids = [vid(p) for p in path]
        # collapse repeated points
        clean = [ids[0]]
        for v in ids[1:]:
            if v != clean[-1]:
                clean.append(v)
        for u, v in zip(clean, clean[1:]):
            edges.setdefault(u, set()).add(v)
            edges.setdefault(v, set()).add(u)
        dart_edge[(clean[0], clean[1])] = a
        dart_edge[(clean[-1], clean[-2])] = b
    coords = {v: p for p, v in point_id.items()}

    def angle(u, v):
        (x0, y0), (x1, y1) = coords[u], coords[v]
        return math.atan2(y1 - y0, x1 - x0)

    order = {u: sorted(nb, key=lambda v: angle(u, v)) for u, nb in edges.items()}
    seen = set()
    faces = []
    outer = None
    for u in order:
        for v in order[u]:
            if (u, v) in seen:
                continue
            cyc = []
            e = (u, v)
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                a, b = e
                nb = order[b]
                k = nb.index(a)
                e = (b, nb[(k - 1) % len(nb)])
            area = sum(
                coords[a][0] * coords[b][1] - coords[b][0] * coords[a][1] for a, b in cyc
            )
            darts = frozenset(dart_edge[e] for e in cyc if e in dart_edge)
            if area < 0:
                if outer is not None:
                    raise ValidationError("more than one unbounded face")
                outer = len(faces)
            faces.append(darts)
    if any(len(edges[v]) not in (2, 4) for v in edges) or any(len(edges[i]) != 4 for i in range(n)):
        raise ValidationError("drawing is not a 4-valent diagram")
    return faces, outer

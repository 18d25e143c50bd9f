"""Links from elements of F: every branching of either tree becomes a crossing.

Crossings ``0 .. n-2`` are the internal vertices of the domain tree ``s`` in
preorder, crossings ``n-1 .. 2n-3`` those of the target tree ``t``.  The
domain tree is drawn below the leaf line with its root at the bottom, the
target tree mirrored above it.

Ports, counterclockwise:

* ``s``-vertex ``[S, E, N, W]``: ``S`` is the stem toward the root, ``N`` the
  through-line rising to the vertex's leaf gap, ``W``/``E`` the left/right
  child ends.
* ``t``-vertex ``[N, W, S, E]``: ``N`` is the stem, ``S`` the through-line
  descending to the gap.

So the stem and through-line form the under-strand and the cap joining the
two children passes over it.  Through-lines with the same gap are joined,
leaf ``i`` of ``s`` is joined to leaf ``i`` of ``t``, and the two root stems
are joined by a closure arc running around the right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnsupportedFlavor
from ..group import F, TreePair, flavor_of
from ..trees import Tree
from .diagram import LinkDiagram, Port, from_partner, unknot

__all__ = ["build_link", "LinkLayout", "layout", "vertex_index"]

# port numbers
S_S, S_E, S_N, S_W = 0, 1, 2, 3
T_N, T_W, T_S, T_E = 0, 1, 2, 3


def _check_flavor(g: TreePair):
    if g.flavor != F or flavor_of(g.perm) != F:
        raise UnsupportedFlavor("links are built only from elements of F")


def vertex_index(g: TreePair) -> tuple[dict[str, int], dict[str, int]]:
    """Crossing index of each internal vertex of ``s`` and of ``t``."""
    s_idx = {a: i for i, a in enumerate(g.s.internal)}
    off = len(s_idx)
    t_idx = {a: off + i for i, a in enumerate(g.t.internal)}
    return s_idx, t_idx


def _leaf_ports(tree: Tree, idx: dict[str, int], west: int, east: int) -> list[Port]:
    """For each leaf, the port of its parent vertex where it attaches."""
    return [(idx[w[:-1]], west if w[-1] == "0" else east) for w in tree.addresses]


def _partner(g: TreePair) -> dict[Port, Port]:
    s, t = g.s, g.t
    s_idx, t_idx = vertex_index(g)
    partner: dict[Port, Port] = {}

    def join(a: Port, b: Port):
        assert a not in partner and b not in partner, (a, b)
        partner[a] = b
        partner[b] = a

    for a in s.internal:
        for c, port in (("0", S_W), ("1", S_E)):
            if a + c in s_idx:
                join((s_idx[a], port), (s_idx[a + c], S_S))
    for a in t.internal:
        for c, port in (("0", T_W), ("1", T_E)):
            if a + c in t_idx:
                join((t_idx[a], port), (t_idx[a + c], T_N))
    for p, q in zip(_leaf_ports(s, s_idx, S_W, S_E), _leaf_ports(t, t_idx, T_W, T_E)):
        join(p, q)
    t_by_gap = {t.gap(a): t_idx[a] for a in t.internal}
    for a in s.internal:
        join((s_idx[a], S_N), (t_by_gap[s.gap(a)], T_S))
    join((s_idx[""], S_S), (t_idx[""], T_N))
    return partner


def build_link(g: TreePair, allow_unreduced: bool = False) -> LinkDiagram:
    """Link diagram of an element of F (or, if allowed, of any pair representing one).

    The diagram's ``outer`` dart is the ``t``-root stem, whose left face is
    the unbounded face to the right of the closure arc.
    """
    _check_flavor(g)
    if not allow_unreduced and not g.is_reduced():
        raise UnsupportedFlavor("pair is not reduced; pass allow_unreduced=True")
    n = g.leaf_count
    if n == 1:
        return unknot()
    partner = _partner(g)
    return from_partner(2 * (n - 1), partner, 0, outer=(n - 1, T_N))


@dataclass(frozen=True)
class LinkLayout:
    """Planar drawing of a built link.

    ``positions[c]`` is the point of crossing ``c``; ``arcs`` lists for every
    arc its two end ports and a polyline from the first to the second.
    """

    positions: tuple[tuple[float, float], ...]
    arcs: tuple[tuple[Port, Port, tuple[tuple[float, float], ...]], ...]
    leaves: int


def layout(g: TreePair) -> LinkLayout:
    """Coordinates: leaf ``i`` at ``x = 2i`` on ``y = 0``, gap ``j`` at ``x = 2j - 1``.

    A vertex whose subtree has ``k`` leaves sits at depth ``k - 1`` below
    (``s``) or above (``t``) the leaf line, so no arc crosses another except
    at crossings.
    """
    _check_flavor(g)
    n = g.leaf_count
    if n == 1:
        return LinkLayout((), (), 1)
    s, t = g.s, g.t
    s_idx, t_idx = vertex_index(g)
    pos: dict[int, tuple[int, int]] = {}
    for tree, idx, sign in ((s, s_idx, -1), (t, t_idx, 1)):
        for a in tree.internal:
            pos[idx[a]] = (2 * tree.gap(a) - 1, sign * (tree.subtree(a).leaf_count - 1))
    partner = _partner(g)

    s_leaf_x = {w: 2 * i for i, w in enumerate(s.addresses)}
    t_leaf_x = {w: 2 * i for i, w in enumerate(t.addresses)}
    s_of_port = {(s_idx[a], S_W if c == "0" else S_E): a + c for a in s.internal for c in "01"}
    t_of_port = {(t_idx[a], T_W if c == "0" else T_E): a + c for a in t.internal for c in "01"}
    lo = min(y for _, y in pos.values()) - 1
    hi = max(y for _, y in pos.values()) + 1

    def path(p: Port, q: Port) -> list[tuple[float, float]]:
        (ci, pi), (cj, pj) = p, q
        x0, y0 = pos[ci]
        x1, y1 = pos[cj]
        s_p, s_q = ci < n - 1, cj < n - 1
        if s_p and s_q and pi == S_S and pj == S_S:
            raise AssertionError("two stems joined")
        if s_p and not s_q and pi == S_S:
            # closure
            return [(x0, y0), (x0, lo), (2 * n, lo), (2 * n, hi), (x1, hi), (x1, y1)]
        if s_p and not s_q and pi == S_N:
            return [(x0, y0), (x1, y1)]
        if s_p and not s_q:
            x = s_leaf_x[s_of_port[p]]
            xt = t_leaf_x[t_of_port[q]]
            assert x == xt
            return [(x0, y0), (x, y0), (x, 0), (x, y1), (x1, y1)]
        if s_p and s_q:
            # parent side port (W/E) to child's stem
            return [(x0, y0), (x1, y0), (x1, y1)]
        return [(x0, y0), (x1, y0), (x1, y1)]

    arcs = []
    done = set()
    for p in sorted(partner):
        q = partner[p]
        if p in done:
            continue
        done.update((p, q))
        a, b = p, q
        # orient each arc from the s side, or from the parent
        if (b[0] < n - 1) and not (a[0] < n - 1):
            a, b = b, a
        elif (a[0] < n - 1) == (b[0] < n - 1):
            if a[1] in (S_S, T_N) and a[0] != b[0]:
                a, b = b, a
        arcs.append((a, b, tuple(path(a, b))))
    positions = tuple(pos[i] for i in range(2 * (n - 1)))
    return LinkLayout(positions, tuple(arcs), n)

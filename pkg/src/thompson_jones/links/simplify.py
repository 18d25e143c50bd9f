"""Greedy Reidemeister I and II simplification.

A kink whose loop arc joins ports ``(p0,p1)`` or ``(p2,p3)`` contributes
``-A³`` to the bracket, one joining ``(p1,p2)`` or ``(p3,p0)`` contributes
``-A⁻³``; :func:`simplify` returns the signed count ``k`` of removed kinks so
that ``⟨L⟩ = (-A³)^k ⟨L'⟩``.  Removing a bigon whose two edges each stay on
the same level leaves the bracket unchanged.
"""

from __future__ import annotations

from .diagram import LinkDiagram, Port, from_partner

__all__ = ["simplify", "splice_out", "find_kink", "find_bigon"]


def splice_out(L: LinkDiagram, removed: set[int]) -> LinkDiagram:
    """Delete crossings, letting each strand run straight through them.

    Components lying entirely in the removed crossings become free loops.
    """
    partner = L.partner_map()
    keep = [i for i in range(L.crossing_count) if i not in removed]
    new_index = {old: new for new, old in enumerate(keep)}
    out: dict[Port, Port] = {}
    visited: set[Port] = set()
    for i in keep:
        for p in range(4):
            q = partner[(i, p)]
            while q[0] in removed:
                visited.add(q)
                visited.add((q[0], (q[1] + 2) % 4))
                q = partner[(q[0], (q[1] + 2) % 4)]
            out[(new_index[i], p)] = (new_index[q[0]], q[1])
    loops = 0
    for i in removed:
        for p in range(4):
            if (i, p) in visited:
                continue
            loops += 1
            q = (i, p)
            while q not in visited:
                visited.add(q)
                r = (q[0], (q[1] + 2) % 4)
                visited.add(r)
                q = partner[r]
    return from_partner(len(keep), out, L.free_loops + loops)


def find_kink(L: LinkDiagram):
    """``(crossing, twist)`` for some removable kink, or ``None``."""
    partner = L.partner_map()
    for i in range(L.crossing_count):
        for p in range(4):
            if partner[(i, p)] == (i, (p + 1) % 4):
                return i, (1 if p % 2 == 0 else -1)
    return None


def find_bigon(L: LinkDiagram):
    """Two crossings bounding a bigon with one strand over at both, or ``None``."""
    partner = L.partner_map()
    for (c, a), (d, b) in partner.items():
        if c == d or a % 2 != b % 2:
            continue
        if partner[(c, (a - 1) % 4)] == (d, (b + 1) % 4):
            return c, d
    return None


def simplify(L: LinkDiagram) -> tuple[LinkDiagram, int]:
    twist = 0
    while True:
        kink = find_kink(L)
        if kink is not None:
            i, sign = kink
            twist += sign
            L = splice_out(L, {i})
            continue
        bigon = find_bigon(L)
        if bigon is not None:
            L = splice_out(L, set(bigon))
            continue
        return L, twist

"""Unoriented 4-valent planar link diagrams.

A crossing is a 4-tuple of arc labels at its ports ``p0..p3``, listed
counterclockwise; the under-strand runs ``p0–p2`` and the over-strand
``p1–p3`` (the usual PD convention).  Every arc label occurs on exactly two
ports.  Crossingless components are counted separately in ``free_loops``.

Text code, one item per line::

    X(a,b,c,d)      a crossing, arc labels at p0..p3
    O               a crossingless loop
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from ..errors import ParseError, ValidationError

__all__ = ["Port", "LinkDiagram", "components", "mirror", "export_code", "parse_code", "unknot"]

Port = tuple[int, int]  # (crossing index, port index)


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    free_loops: int = 0
    # dart whose left face is the distinguished outer face, when known
    outer: Port | None = field(default=None)

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        for i, c in enumerate(crossings):
            if len(c) != 4:
                raise ValidationError(f"crossing {i} has {len(c)} ports")
        counts = Counter(label for c in crossings for label in c)
        bad = sorted(label for label, k in counts.items() if k != 2)
        if bad:
            raise ValidationError(f"arc labels not used exactly twice: {bad}")
        if self.free_loops < 0:
            raise ValidationError("negative number of free loops")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    def ports(self) -> Iterable[Port]:
        for i in range(len(self.crossings)):
            for p in range(4):
                yield (i, p)

    def partner_map(self) -> dict[Port, Port]:
        """Port -> the port at the other end of its arc."""
        seen: dict[int, Port] = {}
        out: dict[Port, Port] = {}
        for i, c in enumerate(self.crossings):
            for p, label in enumerate(c):
                if label in seen:
                    q = seen.pop(label)
                    out[(i, p)] = q
                    out[q] = (i, p)
                else:
                    seen[label] = (i, p)
        return out

    def _key(self):
        # a crossing reads the same from either under-port
        return (
            tuple(min(c, c[2:] + c[:2]) for c in self.crossings),
            self.free_loops,
        )

    def __eq__(self, other):
        return isinstance(other, LinkDiagram) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def relabelled(self) -> "LinkDiagram":
        """Arc labels renumbered 1, 2, ... in order of first appearance."""
        mapping: dict[int, int] = {}
        out = []
        for c in self.crossings:
            row = []
            for label in c:
                if label not in mapping:
                    mapping[label] = len(mapping) + 1
                row.append(mapping[label])
            out.append(tuple(row))
        return LinkDiagram(tuple(out), self.free_loops, self.outer)

    def __str__(self):
        return export_code(self)


def unknot() -> LinkDiagram:
    return LinkDiagram((), 1)


def from_partner(n_crossings: int, partner: dict[Port, Port], free_loops: int = 0, outer=None) -> LinkDiagram:
    """Build a diagram from a perfect matching of ports."""
    labels: dict[Port, int] = {}
    nxt = 1
    for i in range(n_crossings):
        for p in range(4):
            if (i, p) in labels:
                continue
            q = partner[(i, p)]
            labels[(i, p)] = labels[q] = nxt
            nxt += 1
    crossings = tuple(tuple(labels[(i, p)] for p in range(4)) for i in range(n_crossings))
    return LinkDiagram(crossings, free_loops, outer)


def components(L: LinkDiagram) -> tuple[int, list[frozenset[Port]]]:
    """Number of link components and the ports on each crossing-bearing one.

    Strands continue straight through a crossing (``p ↔ p+2``).  Free loops
    count as components but carry no ports.
    """
    parent: dict[Port, Port] = {q: q for q in L.ports()}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for (i, p), q in L.partner_map().items():
        union((i, p), q)
    for i in range(L.crossing_count):
        union((i, 0), (i, 2))
        union((i, 1), (i, 3))
    groups: dict[Port, set[Port]] = {}
    for q in parent:
        groups.setdefault(find(q), set()).add(q)
    parts = sorted((frozenset(g) for g in groups.values()), key=min)
    return len(parts) + L.free_loops, parts


def mirror(L: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing (ports rotated by one)."""
    return LinkDiagram(tuple(c[1:] + c[:1] for c in L.crossings), L.free_loops, _rotate_outer(L.outer))


def _rotate_outer(outer):
    if outer is None:
        return None
    i, p = outer
    return (i, (p - 1) % 4)


def export_code(L: LinkDiagram) -> str:
    lines = [f"X({','.join(map(str, c))})" for c in L.crossings]
    lines += ["O"] * L.free_loops
    return "\n".join(lines)


_X_RE = re.compile(r"^X\((-?\d+),(-?\d+),(-?\d+),(-?\d+)\)$")


def parse_code(text: str) -> LinkDiagram:
    crossings = []
    loops = 0
    offset = 0
    for line in text.splitlines(keepends=True):
        body = "".join(line.split())
        if body == "O":
            loops += 1
        elif body:
            m = _X_RE.match(body)
            if not m:
                raise ParseError(f"bad diagram line {line.strip()!r}", text, offset)
            crossings.append(tuple(int(x) for x in m.groups()))
        offset += len(line)
    try:
        return LinkDiagram(tuple(crossings), loops)
    except ValidationError as exc:
        raise ParseError(str(exc), text, None) from None

"""Fingerprints of links and the brute-force search for the fewest leaves.

A fingerprint is the number of components together with the Kauffman
bracket of the simplified diagram taken modulo powers of ``-A³``, so it
does not depend on the framing picked up by the diagram.  Equal links have
equal fingerprints; the converse can fail, which is why every search also
returns the table of all fingerprints it met.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import NotFound, ParseError
from ..group import GroupElement, enumerate_elements
from .bracket import DEFAULT_MAX_CROSSINGS, kauffman_bracket
from .build import build_link
from .diagram import LinkDiagram, components
from .laurent import LaurentPoly
from .simplify import simplify

__all__ = [
    "Fingerprint",
    "fingerprint",
    "element_fingerprint",
    "IndexResult",
    "jt_index_search",
    "load_fingerprint",
    "dump_fingerprint",
]


@dataclass(frozen=True)
class Fingerprint:
    components: int
    bracket: LaurentPoly

    def to_json(self) -> dict:
        return {"components": self.components, "bracket": self.bracket.to_json()}

    @classmethod
    def from_json(cls, data) -> "Fingerprint":
        try:
            return cls(int(data["components"]), LaurentPoly.from_json(data["bracket"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad fingerprint: {exc}") from None

    def __str__(self):
        return f"{self.components} component(s), bracket {self.bracket}"


def fingerprint(L: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Fingerprint:
    count, _ = components(L)
    small, _ = simplify(L)
    return Fingerprint(count, kauffman_bracket(small, max_crossings).framing_normal_form())


def element_fingerprint(g: GroupElement, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Fingerprint:
    return fingerprint(build_link(g), max_crossings)


@dataclass
class IndexResult:
    leaves: int
    witnesses: list[GroupElement]
    # fingerprint -> [count, first few elements], over every element examined
    audit: dict[Fingerprint, list] = field(default_factory=dict)

    def audit_json(self) -> list[dict]:
        rows = []
        for fp, (count, examples) in self.audit.items():
            rows.append({"fingerprint": fp.to_json(), "count": count, "examples": [str(g) for g in examples]})
        rows.sort(key=lambda r: json.dumps(r["fingerprint"], sort_keys=True))
        return rows


def jt_index_search(
    target: Fingerprint,
    max_leaves: int,
    max_crossings: int = DEFAULT_MAX_CROSSINGS,
    keep_examples: int = 3,
) -> IndexResult:
    """Least leaf count at which some element of F has the target fingerprint.

    Elements are swept by increasing leaf count; the sweep stops after the
    first leaf count with a match and returns every witness with that count.
    """
    audit: dict[Fingerprint, list] = {}
    by_leaves: dict[int, list[GroupElement]] = {}
    current = None
    for g in enumerate_elements(max_leaves):
        n = g.leaf_count
        if current is not None and n != current and by_leaves.get(current):
            break
        current = n
        fp = element_fingerprint(g, max_crossings)
        row = audit.setdefault(fp, [0, []])
        row[0] += 1
        if len(row[1]) < keep_examples:
            row[1].append(g)
        if fp == target:
            by_leaves.setdefault(n, []).append(g)
    if current is not None and by_leaves.get(current):
        return IndexResult(current, by_leaves[current], audit)
    raise NotFound(f"no element with at most {max_leaves} leaves has fingerprint {target}")


def load_fingerprint(text: str) -> Fingerprint:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"fingerprint is not JSON: {exc.msg}", text, exc.pos) from None
    return Fingerprint.from_json(data)


def dump_fingerprint(fp: Fingerprint) -> str:
    return json.dumps(fp.to_json(), sort_keys=True)

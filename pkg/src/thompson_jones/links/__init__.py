"""Link diagrams from elements of F and their invariants."""

from .bracket import bracket_by_states, kauffman_bracket, normalized_bracket, writhe
from .build import build_link, layout
from .diagram import LinkDiagram, components, export_code, mirror, parse_code, unknot
from .laurent import LaurentPoly

__all__ = [
    "LaurentPoly",
    "LinkDiagram",
    "bracket_by_states",
    "build_link",
    "components",
    "export_code",
    "kauffman_bracket",
    "layout",
    "mirror",
    "normalized_bracket",
    "parse_code",
    "unknot",
    "writhe",
]

"""Text form of trees, forests and elements.

Grammar (whitespace is ignored)::

    element := tree "/" tree                  F
             | tree "/r" int "/" tree          T, rotation by k: leaf i -> i+k mod n
             | tree "/[" int ("," int)* "]/" tree    V, explicit permutation

The left tree is the target ``t``, the right one the domain ``s``; the
permutation sends domain leaves to target leaves.
"""

from __future__ import annotations

import re

from .errors import ParseError, ValidationError
from .group import F, T, V, GroupElement, TreePair
from .trees import Tree

__all__ = ["parse_tree", "parse_element", "parse_pair", "format_element"]

_PERM_RE = re.compile(r"\[([0-9,]*)\]")
_ROT_RE = re.compile(r"r(\d+)")


def _strip(text: str) -> tuple[str, list[int]]:
    """Remove whitespace, remembering original offsets for error messages."""
    kept, where = [], []
    for i, ch in enumerate(text):
        if not ch.isspace():
            kept.append(ch)
            where.append(i)
    return "".join(kept), where


def parse_tree(text: str, offset: int = 0, original: str | None = None) -> Tree:
    original = text if original is None else original
    if not text:
        raise ParseError("empty tree", original, offset)
    balance = 1
    for i, ch in enumerate(text):
        if ch not in "01":
            raise ParseError(f"unexpected character {ch!r} in tree", original, offset + i)
        if balance == 0:
            raise ParseError("Dyck violation: tree ends before its bitstring", original, offset + i)
        balance += 1 if ch == "1" else -1
    if balance != 0:
        raise ParseError(
            f"Dyck violation: {balance} subtree(s) missing", original, offset + len(text)
        )
    return Tree(text)


def parse_pair(text: str) -> TreePair:
    """Parse without reducing."""
    compact, where = _strip(text)

    def pos(i: int) -> int:
        if not where:
            return 0
        return where[i] if i < len(where) else where[-1] + 1

    parts = compact.split("/")
    if len(parts) == 2:
        middle = None
    elif len(parts) == 3:
        middle = parts[1]
    else:
        raise ParseError("expected 't/s', 't/r<k>/s' or 't/[perm]/s'", text, None)
    t_text, s_text = parts[0], parts[-1]
    t = parse_tree(t_text, pos(0), text)
    s_start = len(compact) - len(s_text)
    s = parse_tree(s_text, pos(s_start), text)
    n = t.leaf_count
    if s.leaf_count != n:
        raise ParseError(
            f"leaf-count mismatch: target has {n} leaves, domain has {s.leaf_count}",
            text,
            pos(s_start),
        )
    m_start = len(t_text) + 1
    if middle is None:
        perm, flavor = tuple(range(n)), F
    elif (m := _ROT_RE.fullmatch(middle)) is not None:
        k = int(m.group(1))
        perm, flavor = tuple((i + k) % n for i in range(n)), T
    elif (m := _PERM_RE.fullmatch(middle)) is not None:
        try:
            perm = tuple(int(x) for x in m.group(1).split(","))
        except ValueError:
            raise ParseError("bad permutation entry", text, pos(m_start)) from None
        flavor = V
        if sorted(perm) != list(range(n)):
            raise ParseError(f"bad permutation: not a bijection of {n} leaves", text, pos(m_start))
    else:
        raise ParseError(f"bad permutation field {middle!r}", text, pos(m_start))
    try:
        return TreePair(t, s, perm, flavor)
    except ValidationError as exc:
        raise ParseError(str(exc), text, None) from None


def parse_element(text: str) -> GroupElement:
    """Parse and reduce."""
    return parse_pair(text).reduced()


def format_element(g: TreePair) -> str:
    n = g.leaf_count
    if g.flavor == F:
        return f"{g.t}/{g.s}"
    if g.flavor == T:
        k = g.perm[0] if n else 0
        return f"{g.t}/r{k}/{g.s}"
    return f"{g.t}/[{','.join(map(str, g.perm))}]/{g.s}"

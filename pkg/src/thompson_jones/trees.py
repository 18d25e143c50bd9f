"""Finite ordered rooted binary trees and forests.

A tree is stored as its preorder bitstring: ``1`` for an internal vertex
(followed by its left then right subtree), ``0`` for a leaf.  Equivalently a
tree is the complete prefix code of its leaf addresses, where an address is
the binary word read on the path from the root (``0`` = left, ``1`` = right).
Leaf addresses in left-to-right order are exactly the code words in
lexicographic order, and the leaf with address ``w`` corresponds to the
standard dyadic interval ``[0.w, 0.w + 2**-len(w)]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import CompositionError, ValidationError

__all__ = [
    "Tree",
    "Forest",
    "compose_forests",
    "common_multiple",
    "trees_with_leaves",
    "catalan",
    "random_tree",
    "LEAF",
    "CARET",
]


def _check_bits(bits: str) -> None:
    if not bits:
        raise ValidationError("empty tree bitstring")
    balance = 1  # number of open slots still to be filled
    for pos, ch in enumerate(bits):
        if ch not in "01":
            raise ValidationError(f"invalid character {ch!r} at position {pos}")
        if balance == 0:
            raise ValidationError(f"trailing data after complete tree at position {pos}")
        balance += 1 if ch == "1" else -1
    if balance != 0:
        raise ValidationError(f"incomplete tree: {balance} missing subtree(s)")


@dataclass(frozen=True, order=True)
class Tree:
    bits: str

    def __post_init__(self):
        _check_bits(self.bits)

    def __str__(self):
        return self.bits

    @cached_property
    def addresses(self) -> tuple[str, ...]:
        """Leaf addresses, left to right."""
        out: list[str] = []
        stack = [""]
        for ch in self.bits:
            addr = stack.pop()
            if ch == "1":
                # left child on top so it is visited first
                stack.append(addr + "1")
                stack.append(addr + "0")
            else:
                out.append(addr)
        return tuple(out)

    @cached_property
    def internal(self) -> frozenset[str]:
        """Addresses of internal vertices."""
        return frozenset(a[:k] for a in self.addresses for k in range(len(a)))

    @property
    def leaf_count(self) -> int:
        return (len(self.bits) + 1) // 2

    @property
    def internal_count(self) -> int:
        return (len(self.bits) - 1) // 2

    def depths(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.addresses)

    @classmethod
    def from_addresses(cls, addresses: Iterable[str]) -> "Tree":
        """Build the tree whose leaves are the given complete prefix code."""
        leaves = set(addresses)
        if not leaves:
            raise ValidationError("no leaf addresses")
        limit = max(len(a) for a in leaves)
        out: list[str] = []
        stack = [""]
        while stack:
            node = stack.pop()
            if node in leaves:
                out.append("0")
                continue
            if len(node) >= limit:
                raise ValidationError("addresses do not form a complete prefix code")
            out.append("1")
            stack.append(node + "1")
            stack.append(node + "0")
        tree = cls("".join(out))
        if set(tree.addresses) != leaves:
            raise ValidationError("addresses do not form a complete prefix code")
        return tree

    @classmethod
    def from_depths(cls, depths: Sequence[int]) -> "Tree":
        """Inverse of :meth:`depths`; raises if no tree has this depth list."""
        out: list[str] = []
        it = iter(depths)

        def build(level: int) -> None:
            # consume leaves greedily: a subtree at ``level`` is a leaf iff the
            # next pending depth equals ``level``
            if pending[0] is None:
                raise ValidationError("depth sequence too short")
            if pending[0] == level:
                out.append("0")
                pending[0] = next(it, None)
                return
            if pending[0] < level:
                raise ValidationError("depth sequence is not realisable")
            out.append("1")
            build(level + 1)
            build(level + 1)

        pending = [next(it, None)]
        build(0)
        if pending[0] is not None:
            raise ValidationError("depth sequence too long")
        return cls("".join(out))

    def subtree(self, address: str) -> "Tree":
        """Subtree rooted at an internal vertex or leaf."""
        n = len(address)
        leaves = [a[n:] for a in self.addresses if a.startswith(address)]
        if not leaves:
            raise ValidationError(f"no vertex at address {address!r}")
        return Tree.from_addresses(leaves)

    def gap(self, address: str) -> int:
        """Leaf gap of an internal vertex.

        Gap ``j`` sits between leaf ``j - 1`` and leaf ``j``; the gap of a vertex
        lies right after the rightmost leaf of its left subtree.  The map is a
        bijection from internal vertices onto ``1..n-1``.
        """
        left = address + "0"
        last = max(i for i, a in enumerate(self.addresses) if a.startswith(left))
        return last + 1

    def graft(self, forest: "Forest") -> "Tree":
        return compose_forests(forest, Forest((self,))).trees[0]


LEAF = Tree("0")
CARET = Tree("100")


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...] = field()

    def __post_init__(self):
        trees = tuple(t if isinstance(t, Tree) else Tree(t) for t in self.trees)
        if not trees:
            raise ValidationError("a forest needs at least one root")
        object.__setattr__(self, "trees", trees)

    @classmethod
    def parse(cls, text: str) -> "Forest":
        return cls(tuple(Tree(part.strip()) for part in text.split(",")))

    @classmethod
    def trivial(cls, n: int) -> "Forest":
        return cls((LEAF,) * n)

    def __str__(self):
        return ",".join(t.bits for t in self.trees)

    def __len__(self):
        return len(self.trees)

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    @property
    def roots(self) -> int:
        return len(self.trees)

    @property
    def leaves(self) -> int:
        return sum(t.leaf_count for t in self.trees)

    def is_trivial(self) -> bool:
        return all(t == LEAF for t in self.trees)


def compose_forests(f: Forest, t: Forest) -> Forest:
    """Vertical concatenation ``f ∘ t``: tree ``i`` of ``f`` on leaf ``i`` of ``t``."""
    if isinstance(t, Tree):
        t = Forest((t,))
    if f.roots != t.leaves:
        raise CompositionError(
            f"cannot stack a forest with {f.roots} roots on one with {t.leaves} leaves"
        )
    upper = iter(f.trees)
    out = []
    for tree in t.trees:
        pieces = []
        for ch in tree.bits:
            pieces.append("1" if ch == "1" else next(upper).bits)
        out.append(Tree("".join(pieces)))
    return Forest(tuple(out))


def common_multiple(a: Tree, b: Tree) -> tuple[Forest, Forest]:
    """Least common refinement: forests ``p, q`` with ``p∘a == q∘b``.

    The common tree is the union of the two trees (union of their internal
    vertex sets); ``p`` and ``q`` are its subtrees hanging off the leaves of
    ``a`` and ``b`` respectively.
    """
    union_internal = a.internal | b.internal
    union = _tree_from_internal(union_internal)
    p = Forest(tuple(union.subtree(addr) for addr in a.addresses))
    q = Forest(tuple(union.subtree(addr) for addr in b.addresses))
    return p, q


def _tree_from_internal(internal: frozenset[str] | set[str]) -> Tree:
    if not internal:
        return LEAF
    leaves = [v + c for v in internal for c in "01" if v + c not in internal]
    return Tree.from_addresses(leaves)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _trees(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    out = []
    for k in range(1, n):
        for left in _trees(k):
            for right in _trees(n - k):
                out.append("1" + left + right)
    return tuple(out)


def trees_with_leaves(n: int) -> list[Tree]:
    """All trees with ``n`` leaves, ordered by left-subtree size then recursively."""
    if n < 1:
        raise ValidationError("a tree has at least one leaf")
    return [Tree(b) for b in _trees(n)]


def random_tree(n: int, rng: random.Random) -> Tree:
    """Uniformly random tree with ``n`` leaves."""

    def build(m: int) -> str:
        if m == 1:
            return "0"
        weights = [catalan(k - 1) * catalan(m - k - 1) for k in range(1, m)]
        k = rng.choices(range(1, m), weights=weights)[0]
        return "1" + build(k) + build(m - k)

    return Tree(build(n))

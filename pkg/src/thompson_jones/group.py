"""Thompson's groups F ⊂ T ⊂ V as groups of fractions of binary forests.

An element is a triple ``(t, perm, s)``: ``s`` is the domain tree, ``t`` the
target tree, and ``perm[i]`` is the ``t``-leaf that the ``i``-th ``s``-leaf is
sent to.  Internally products are computed on the equivalent list of address
pairs ``(u, v)`` meaning "the cylinder ``u·x`` is sent to ``v·x``", which makes
expansion by a common forest a matter of appending the same suffixes on both
sides.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import PrecisionError, UnsupportedFlavor, ValidationError
from .plmap import PLMap
from .trees import LEAF, Forest, Tree, common_multiple, compose_forests, random_tree, trees_with_leaves

__all__ = [
    "F",
    "T",
    "V",
    "TreePair",
    "GroupElement",
    "reduce_pair",
    "multiply",
    "invert",
    "identity",
    "generator",
    "as_pl_map",
    "act_word",
    "fixed_point_measure",
    "enumerate_elements",
    "random_element",
    "stabilize",
    "flavor_of",
]

F, T, V = "F", "T", "V"
_RANK = {F: 0, T: 1, V: 2}


def _is_rotation(perm: Sequence[int]) -> bool:
    n = len(perm)
    k = perm[0] if n else 0
    return all(p == (i + k) % n for i, p in enumerate(perm))


def flavor_of(perm: Sequence[int]) -> str:
    """Smallest flavor that contains a permutation."""
    if all(p == i for i, p in enumerate(perm)):
        return F
    return T if _is_rotation(perm) else V


def _check_perm(perm: Sequence[int], n: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValidationError(f"{list(perm)} is not a permutation of {n} leaves")
    return perm


@dataclass(frozen=True)
class TreePair:
    """A representative ``(t, perm, s)``, not necessarily reduced."""

    t: Tree
    s: Tree
    perm: tuple[int, ...]
    flavor: str = field(default=F, compare=False)

    def __post_init__(self):
        t = self.t if isinstance(self.t, Tree) else Tree(self.t)
        s = self.s if isinstance(self.s, Tree) else Tree(self.s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", s)
        if t.leaf_count != s.leaf_count:
            raise ValidationError(
                f"trees have {t.leaf_count} and {s.leaf_count} leaves"
            )
        perm = _check_perm(self.perm, s.leaf_count)
        object.__setattr__(self, "perm", perm)
        if self.flavor not in _RANK:
            raise ValidationError(f"unknown flavor {self.flavor!r}")
        if _RANK[flavor_of(perm)] > _RANK[self.flavor]:
            raise ValidationError(f"permutation {list(perm)} is not allowed in {self.flavor}")

    @property
    def leaf_count(self) -> int:
        return self.s.leaf_count

    def pairs(self) -> list[tuple[str, str]]:
        """(domain address, target address) for each ``s``-leaf, left to right."""
        ta = self.t.addresses
        return [(u, ta[self.perm[i]]) for i, u in enumerate(self.s.addresses)]

    def reduced(self) -> "GroupElement":
        return reduce_pair(self.t, self.perm, self.s, self.flavor)

    def is_reduced(self) -> bool:
        return _find_caret(dict(self.pairs())) is None

    def __str__(self):
        from .notation import format_element

        return format_element(self)


class GroupElement(TreePair):
    """A reduced tree pair; construct through :func:`reduce_pair` or the helpers."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_reduced():
            raise ValidationError("GroupElement must be reduced; use reduce_pair")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __invert__(self) -> "GroupElement":
        return invert(self)

    def is_identity(self) -> bool:
        return self.leaf_count == 1


def _find_caret(mapping: dict[str, str]):
    for u, v in mapping.items():
        if u.endswith("0") and v.endswith("0"):
            u1, v1 = u[:-1] + "1", v[:-1] + "1"
            if mapping.get(u1) == v1:
                return u[:-1], v[:-1]
    return None


def _carets(mapping: dict[str, str]) -> list[tuple[str, str]]:
    out = []
    for u, v in mapping.items():
        if u.endswith("0") and v.endswith("0") and mapping.get(u[:-1] + "1") == v[:-1] + "1":
            out.append((u[:-1], v[:-1]))
    return out


def _reduce_mapping(mapping: dict[str, str], rng: random.Random | None = None) -> dict[str, str]:
    mapping = dict(mapping)
    if rng is None:
        while True:
            found = _find_caret(mapping)
            if found is None:
                return mapping
            u, v = found
            del mapping[u + "0"], mapping[u + "1"]
            mapping[u] = v
    while True:
        options = _carets(mapping)
        if not options:
            return mapping
        u, v = rng.choice(options)
        del mapping[u + "0"], mapping[u + "1"]
        mapping[u] = v


def _from_mapping(mapping: dict[str, str], flavor: str, cls=None) -> TreePair:
    cls = cls or GroupElement
    dom = sorted(mapping)
    s = Tree.from_addresses(dom)
    t = Tree.from_addresses(mapping.values())
    index = {a: i for i, a in enumerate(t.addresses)}
    perm = tuple(index[mapping[u]] for u in dom)
    return cls(t, s, perm, flavor)


def reduce_pair(t, perm, s, flavor: str | None = None, rng: random.Random | None = None) -> GroupElement:
    """Cancel common carets until none remain.

    ``flavor`` defaults to the smallest group containing ``perm``.  ``rng``
    randomises the removal order (the result does not depend on it).
    """
    t = t if isinstance(t, Tree) else Tree(t)
    s = s if isinstance(s, Tree) else Tree(s)
    if perm is None:
        perm = tuple(range(s.leaf_count))
    raw = TreePair(t, s, tuple(perm), flavor or V)
    if flavor is None:
        flavor = flavor_of(raw.perm)
    raw = TreePair(t, s, raw.perm, flavor)
    return _from_mapping(_reduce_mapping(dict(raw.pairs()), rng), flavor)


def identity(flavor: str = F) -> GroupElement:
    return GroupElement(LEAF, LEAF, (0,), flavor)


def _join(a: str, b: str) -> str:
    return a if _RANK[a] >= _RANK[b] else b


def _lookup(mapping: dict[str, str], word: str) -> tuple[str, str]:
    """The pair ``(u, v)`` with ``u`` a prefix of ``word``."""
    for k in range(len(word) + 1):
        v = mapping.get(word[:k])
        if v is not None:
            return word[:k], v
    raise PrecisionError(f"word {word!r} is shorter than the leaf containing it")


def multiply(g: TreePair, h: TreePair) -> GroupElement:
    """``g·h``, acting as ``x ↦ g(h(x))``.

    The target tree of ``h`` and the domain tree of ``g`` are refined to their
    common multiple; each refined leaf is carried back through ``h`` and
    forward through ``g`` with the same suffix.
    """
    hmap = dict(h.pairs())
    gmap = dict(g.pairs())
    inv_h = {v: u for u, v in hmap.items()}
    p, _ = common_multiple(h.t, g.s)
    middle = compose_forests(p, Forest((h.t,))).trees[0].addresses
    out = {}
    for z in middle:
        hv, hu = _lookup(inv_h, z)
        gu, gv = _lookup(gmap, z)
        out[hu + z[len(hv):]] = gv + z[len(gu):]
    flavor = _join(g.flavor, h.flavor)
    return _from_mapping(_reduce_mapping(out), flavor)


def invert(g: TreePair) -> GroupElement:
    inverse = [0] * len(g.perm)
    for i, p in enumerate(g.perm):
        inverse[p] = i
    return reduce_pair(g.s, inverse, g.t, g.flavor)


def stabilize(g: TreePair, forest: Forest) -> TreePair:
    """The unreduced representative obtained by growing ``forest[i]`` on ``s``-leaf ``i``.

    The same tree is grown on the matching ``t``-leaf ``perm[i]`` so the pair
    still represents ``g``.
    """
    if forest.roots != g.leaf_count:
        raise ValidationError(f"need a forest with {g.leaf_count} roots")
    mapping = {}
    for (u, v), tree in zip(g.pairs(), forest.trees):
        for w in tree.addresses:
            mapping[u + w] = v + w
    return _from_mapping(mapping, g.flavor, cls=TreePair)


def generator(i: int) -> GroupElement:
    """Standard generator ``x_i`` of F.

    ``x0`` sends [0,1/2], [1/2,3/4], [3/4,1] onto [0,1/4], [1/4,1/2], [1/2,1];
    ``x_i`` is the identity on [0, 1 - 2**-i] and a rescaled ``x0`` after it.
    """
    if i < 0:
        raise ValidationError("generator index must be nonnegative")
    prefix = "1" * i
    mapping = {prefix[:k] + "0": prefix[:k] + "0" for k in range(i)}
    mapping.update({prefix + "0": prefix + "00", prefix + "10": prefix + "01", prefix + "11": prefix + "1"})
    return _from_mapping(mapping, F)


def _interval(address: str) -> tuple[Fraction, Fraction]:
    n = len(address)
    left = Fraction(int(address, 2), 2**n) if n else Fraction(0)
    return left, left + Fraction(1, 2**n)


def as_pl_map(g: TreePair) -> PLMap:
    """Exact PL map sending each ``s``-leaf interval affinely onto its ``t``-leaf."""
    if g.flavor == V and flavor_of(g.perm) == V:
        raise UnsupportedFlavor("elements of V are not PL maps of the interval")
    pieces = []
    for u, v in g.pairs():
        a, b = _interval(u)
        c, d = _interval(v)
        pieces.append((a, b, c, d))
    return PLMap.from_pieces(pieces, circle=flavor_of(g.perm) != F)


def act_word(g: TreePair, word: str) -> str:
    """Cantor-set action: replace the domain-leaf prefix of ``word`` by its target address."""
    if any(c not in "01" for c in word):
        raise ValidationError(f"{word!r} is not a binary word")
    u, v = _lookup(dict(g.pairs()), word)
    return v + word[len(u):]


def fixed_point_measure(g: TreePair) -> Fraction:
    """Lebesgue measure of ``{x in (0,1): g(x) = x}``, exactly."""
    return as_pl_map(g).fixed_measure()


def _perms(n: int, flavor: str):
    if flavor == F:
        return [tuple(range(n))]
    if flavor == T:
        return [tuple((i + k) % n for i in range(n)) for k in range(n)]
    return list(itertools.permutations(range(n)))


def enumerate_elements(max_leaves: int, flavor: str = F) -> Iterator[GroupElement]:
    """Every reduced element with at most ``max_leaves`` leaves, once each.

    Ordered by leaf count, then target tree, permutation, domain tree.
    """
    if max_leaves < 1:
        raise ValidationError("max_leaves must be at least 1")
    yield identity(flavor)
    for n in range(2, max_leaves + 1):
        trees = trees_with_leaves(n)
        perms = _perms(n, flavor)
        for t in trees:
            for perm in perms:
                for s in trees:
                    pair = TreePair(t, s, perm, flavor)
                    mapping = dict(pair.pairs())
                    if _find_caret(mapping) is None:
                        yield GroupElement(t, s, perm, flavor)


def random_element(max_leaves: int, rng: random.Random, flavor: str = F, reduce: bool = True) -> TreePair:
    """Random pair of uniform random trees with ``1..max_leaves`` leaves."""
    n = rng.randint(1, max_leaves)
    t, s = random_tree(n, rng), random_tree(n, rng)
    if flavor == F:
        perm = tuple(range(n))
    elif flavor == T:
        k = rng.randrange(n)
        perm = tuple((i + k) % n for i in range(n))
    else:
        perm = list(range(n))
        rng.shuffle(perm)
        perm = tuple(perm)
    pair = TreePair(t, s, perm, flavor)
    return pair.reduced() if reduce else pair

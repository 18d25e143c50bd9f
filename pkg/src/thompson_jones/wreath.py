"""Labelled-forest fractions: the wreath-type extension of F by a finite group.

Forests carry a group label on every leaf, and a label ``g`` sitting below a
caret equals the caret with labels ``(a_g, b_g)`` on its two leaves, where
``g ↦ (a_g, b_g)`` is a fixed homomorphism into the direct square.  Fractions
of such labelled trees form a group; with ``g ↦ (g, e)`` it is the restricted
permutational wreath product of the finite group by F.

A :class:`LabelledElement` ``(t, λ_t) / (s, λ_s)`` is stored normalised with
``λ_s`` trivial (right-multiply both sides by ``λ_s⁻¹``) and with every common
caret whose labels come from a single pushed label cancelled.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ValidationError
from .trees import LEAF, Tree, random_tree

__all__ = [
    "FiniteGroup",
    "cyclic_group",
    "symmetric_group",
    "WreathSpec",
    "LabelledElement",
    "labelled",
    "wreath_multiply",
    "wreath_invert",
    "wreath_identity",
    "random_labelled",
]


@dataclass(frozen=True)
class FiniteGroup:
    """Group on ``{0..m-1}`` given by its multiplication table ``table[a][b] = a·b``."""

    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        table = tuple(tuple(row) for row in self.table)
        object.__setattr__(self, "table", table)
        m = len(table)
        if m == 0 or any(len(row) != m for row in table):
            raise ValidationError("multiplication table must be square and nonempty")
        elems = list(range(m))
        for row in table:
            if sorted(row) != elems:
                raise ValidationError("multiplication table is not a Latin square")
        ids = [e for e in elems if all(table[e][a] == a == table[a][e] for a in elems)]
        if len(ids) != 1:
            raise ValidationError("multiplication table has no identity")
        for a, b, c in itertools.product(elems, repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise ValidationError("multiplication table is not associative")
        object.__setattr__(self, "_e", ids[0])
        inv = tuple(next(b for b in elems if table[a][b] == ids[0]) for a in elems)
        object.__setattr__(self, "_inv", inv)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def e(self) -> int:
        return self._e

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(k: int) -> FiniteGroup:
    """Permutations of ``k`` points, composed as ``(a·b)(i) = a(b(i))``."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(
        tuple(index[tuple(a[b[i]] for i in range(k))] for b in perms) for a in perms
    )
    return FiniteGroup(table, names=tuple(str(p) for p in perms))


@dataclass(frozen=True)
class WreathSpec:
    """A finite group with an injective homomorphism ``g ↦ (a_g, b_g)`` into its square."""

    group: FiniteGroup
    split: tuple[tuple[int, int], ...]

    def __post_init__(self):
        G = self.group
        split = tuple((int(a), int(b)) for a, b in self.split)
        object.__setattr__(self, "split", split)
        if len(split) != G.order:
            raise ValidationError("split must give a pair for every group element")
        if split[G.e] != (G.e, G.e):
            raise ValidationError("split(e) must be (e, e)")
        for g, h in itertools.product(range(G.order), repeat=2):
            ag, bg = split[g]
            ah, bh = split[h]
            if split[G.mul(g, h)] != (G.mul(ag, ah), G.mul(bg, bh)):
                raise ValidationError(f"split is not a homomorphism at ({g}, {h})")
        # cancelling a caret must recover a unique label
        if len(set(split)) != len(split):
            raise ValidationError("split must be injective")
        object.__setattr__(self, "_merge", {pair: g for g, pair in enumerate(split)})

    @classmethod
    def left_embedding(cls, group: FiniteGroup) -> "WreathSpec":
        """``g ↦ (g, e)``, the wreath-product case."""
        return cls(group, tuple((g, group.e) for g in range(group.order)))

    @classmethod
    def diagonal(cls, group: FiniteGroup) -> "WreathSpec":
        return cls(group, tuple((g, g) for g in range(group.order)))

    def push(self, label: int, suffix: str) -> int:
        """Label reached by pushing ``label`` up along a path of carets."""
        for c in suffix:
            label = self.split[label][c == "1"]
        return label

    def expand(self, label: int, tree: Tree) -> tuple[int, ...]:
        return tuple(self.push(label, w) for w in tree.addresses)

    def merge(self, a: int, b: int) -> int | None:
        return self._merge.get((a, b))


@dataclass(frozen=True)
class LabelledElement:
    t: Tree
    s: Tree
    labels_t: tuple[int, ...]
    labels_s: tuple[int, ...]
    spec: WreathSpec = field(repr=False)

    def __post_init__(self):
        if self.t.leaf_count != self.s.leaf_count:
            raise ValidationError("trees must have the same number of leaves")
        if len(self.labels_t) != self.t.leaf_count or len(self.labels_s) != self.s.leaf_count:
            raise ValidationError("one label per leaf is required")

    def mapping(self) -> dict[str, tuple[str, int]]:
        """domain address -> (target address, normalised label)."""
        G = self.spec.group
        return {
            u: (v, G.mul(lt, G.inv(ls)))
            for u, v, lt, ls in zip(self.s.addresses, self.t.addresses, self.labels_t, self.labels_s)
        }

    def is_identity(self) -> bool:
        return self.t == LEAF and self.labels_t == (self.spec.group.e,)

    def __mul__(self, other):
        return wreath_multiply(self, other)

    def __str__(self):
        lt = ",".join(map(str, self.labels_t))
        ls = ",".join(map(str, self.labels_s))
        return f"{self.t}[{lt}]/{self.s}[{ls}]"


def _reduce(mapping: dict[str, tuple[str, int]], spec: WreathSpec) -> dict[str, tuple[str, int]]:
    mapping = dict(mapping)
    changed = True
    while changed:
        changed = False
        for u in list(mapping):
            if not u.endswith("0") or u not in mapping:
                continue
            u1 = u[:-1] + "1"
            if u1 not in mapping:
                continue
            (v0, g0), (v1, g1) = mapping[u], mapping[u1]
            if not (v0.endswith("0") and v1 == v0[:-1] + "1"):
                continue
            g = spec.merge(g0, g1)
            if g is None:
                continue
            del mapping[u], mapping[u1]
            mapping[u[:-1]] = (v0[:-1], g)
            changed = True
    return mapping


def _build(mapping: dict[str, tuple[str, int]], spec: WreathSpec) -> LabelledElement:
    mapping = _reduce(mapping, spec)
    dom = sorted(mapping)
    s = Tree.from_addresses(dom)
    t = Tree.from_addresses(v for v, _ in mapping.values())
    if [mapping[u][0] for u in dom] != list(t.addresses):
        raise ValidationError("labelled elements must preserve leaf order")
    labels = tuple(mapping[u][1] for u in dom)
    return LabelledElement(t, s, labels, (spec.group.e,) * len(dom), spec)


def labelled(t, s, labels_t: Sequence[int], labels_s: Sequence[int] | None, spec: WreathSpec) -> LabelledElement:
    """Normalise and reduce ``(t, labels_t) / (s, labels_s)``."""
    t = t if isinstance(t, Tree) else Tree(t)
    s = s if isinstance(s, Tree) else Tree(s)
    if labels_s is None:
        labels_s = (spec.group.e,) * s.leaf_count
    for g in list(labels_t) + list(labels_s):
        if not 0 <= g < spec.group.order:
            raise ValidationError(f"label {g} is not a group element")
    raw = LabelledElement(t, s, tuple(labels_t), tuple(labels_s), spec)
    return _build(raw.mapping(), spec)


def wreath_identity(spec: WreathSpec) -> LabelledElement:
    return LabelledElement(LEAF, LEAF, (spec.group.e,), (spec.group.e,), spec)


def _lookup(mapping, word):
    for k in range(len(word) + 1):
        hit = mapping.get(word[:k])
        if hit is not None:
            return word[:k], hit
    raise ValidationError(f"no leaf contains {word!r}")


def wreath_multiply(a: LabelledElement, b: LabelledElement) -> LabelledElement:
    """``a·b`` (``b`` applied first).

    On the common refinement the label of ``a`` pushed to the refined leaf
    multiplies on the left of the pushed label of ``b``.
    """
    if a.spec != b.spec:
        raise ValidationError("labelled elements use different wreath specifications")
    spec = a.spec
    G = spec.group
    amap, bmap = a.mapping(), b.mapping()
    b_inv = {v: (u, g) for u, (v, g) in bmap.items()}
    internal = {w[:k] for w in itertools.chain(b_inv, amap) for k in range(len(w))}
    leaves = [v + c for v in internal for c in "01" if v + c not in internal] or [""]
    out = {}
    for z in leaves:
        bv, (bu, bg) = _lookup(b_inv, z)
        au, (av, ag) = _lookup(amap, z)
        sb, sa = z[len(bv):], z[len(au):]
        out[bu + sb] = (av + sa, G.mul(spec.push(ag, sa), spec.push(bg, sb)))
    return _build(out, spec)


def wreath_invert(a: LabelledElement) -> LabelledElement:
    G = a.spec.group
    out = {v: (u, G.inv(g)) for u, (v, g) in a.mapping().items()}
    return _build(out, a.spec)


def random_labelled(max_leaves: int, spec: WreathSpec, rng: random.Random) -> LabelledElement:
    n = rng.randint(1, max_leaves)
    t, s = random_tree(n, rng), random_tree(n, rng)
    m = spec.group.order
    return labelled(
        t, s, [rng.randrange(m) for _ in range(n)], [rng.randrange(m) for _ in range(n)], spec
    )

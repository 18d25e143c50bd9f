import random

import pytest

from thompson_jones.errors import ValidationError
from thompson_jones.group import multiply, reduce_pair
from thompson_jones.trees import CARET, Tree
from thompson_jones.wreath import (
    FiniteGroup,
    WreathSpec,
    cyclic_group,
    labelled,
    random_labelled,
    symmetric_group,
    wreath_identity,
    wreath_invert,
    wreath_multiply,
)

Z2 = WreathSpec.left_embedding(cyclic_group(2))
S3 = WreathSpec.left_embedding(symmetric_group(3))
S3_DIAG = WreathSpec.diagonal(symmetric_group(3))
SPECS = [Z2, S3, S3_DIAG]


def test_caret_expansion_z2():
    assert Z2.expand(1, CARET) == (1, 0)
    assert Z2.expand(0, CARET) == (0, 0)


def test_caret_with_pushed_labels_cancels():
    g = labelled("100", "100", [1, 0], None, Z2)
    assert g.t == Tree("0") and g.labels_t == (1,)
    # labels (0, 1) are not a pushed label under g -> (g, e)
    h = labelled("100", "100", [0, 1], None, Z2)
    assert h.t == CARET and h.labels_t == (0, 1)


def test_normalised_domain_labels():
    g = labelled("11000", "10100", [1, 0, 1], [1, 1, 0], Z2)
    assert set(g.labels_s) == {0}


@pytest.mark.parametrize("spec", SPECS, ids=["Z2", "S3", "S3diag"])
def test_inverse(spec):
    rng = random.Random(1)
    for _ in range(200):
        a = random_labelled(6, spec, rng)
        assert wreath_multiply(a, wreath_invert(a)).is_identity()
        assert wreath_multiply(wreath_invert(a), a).is_identity()
        e = wreath_identity(spec)
        assert wreath_multiply(a, e) == a == wreath_multiply(e, a)


@pytest.mark.parametrize("spec", SPECS, ids=["Z2", "S3", "S3diag"])
def test_associativity(spec):
    rng = random.Random(2)
    for _ in range(200):
        a, b, c = (random_labelled(5, spec, rng) for _ in range(3))
        assert wreath_multiply(wreath_multiply(a, b), c) == wreath_multiply(a, wreath_multiply(b, c))


def test_forgetting_labels_gives_f():
    rng = random.Random(3)
    for _ in range(200):
        a, b = random_labelled(5, S3, rng), random_labelled(5, S3, rng)
        ab = wreath_multiply(a, b)
        fa = reduce_pair(a.t, None, a.s)
        fb = reduce_pair(b.t, None, b.s)
        fab = reduce_pair(ab.t, None, ab.s)
        assert multiply(fa, fb) == fab


def test_label_product_order():
    # pure label elements on one leaf multiply like the group
    G = symmetric_group(3)
    spec = WreathSpec.left_embedding(G)
    for x in range(6):
        for y in range(6):
            p = wreath_multiply(labelled("0", "0", [x], None, spec), labelled("0", "0", [y], None, spec))
            assert p.labels_t == (G.mul(x, y),)


def test_specs_reject_bad_splits():
    G = cyclic_group(2)
    with pytest.raises(ValidationError):
        WreathSpec(G, ((1, 0), (0, 0)))
    with pytest.raises(ValidationError):
        WreathSpec(G, ((0, 0), (0, 0)))
    Z3 = cyclic_group(3)
    with pytest.raises(ValidationError):
        WreathSpec(Z3, ((0, 0), (1, 0), (1, 0)))


def test_finite_group_validation():
    with pytest.raises(ValidationError):
        FiniteGroup(((0, 1), (0, 1)))
    with pytest.raises(ValidationError):
        FiniteGroup(((0, 1, 2), (1, 0, 2), (2, 2, 0)))
    assert symmetric_group(3).order == 6
    G = symmetric_group(3)
    assert all(G.mul(a, G.inv(a)) == G.e for a in range(6))


def test_mismatched_specs():
    a = wreath_identity(Z2)
    b = wreath_identity(S3)
    with pytest.raises(ValidationError):
        wreath_multiply(a, b)


def test_label_validation():
    with pytest.raises(ValidationError):
        labelled("100", "100", [0, 2], None, Z2)
    with pytest.raises(ValidationError):
        labelled("100", "100", [0], None, Z2)

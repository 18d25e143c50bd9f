import pytest

from thompson_jones.errors import ParseError
from thompson_jones.group import F, T, V, enumerate_elements, generator, identity
from thompson_jones.notation import format_element, parse_element, parse_pair, parse_tree


def test_parse_x0():
    assert parse_element("11000/10100") == generator(0)
    assert parse_element(" 110 00 / 1010 0 ") == generator(0)


def test_parse_identity():
    assert parse_element("0/0") == identity()
    assert parse_element("100/100") == identity()


def test_parse_pair_keeps_carets():
    p = parse_pair("100/100")
    assert p.leaf_count == 2 and not p.is_reduced()


@pytest.mark.parametrize(
    "text,where",
    [
        ("1100/10100", 4),
        ("11000/1010", 10),
        ("11200/10100", 2),
        ("0100/0", 1),
    ],
)
def test_dyck_and_character_errors_have_positions(text, where):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.position == where
    assert f"position {where}" in str(info.value)


def test_leaf_count_mismatch():
    with pytest.raises(ParseError, match="leaf-count mismatch"):
        parse_element("11000/100")


def test_bad_permutations():
    with pytest.raises(ParseError, match="permutation"):
        parse_element("100/[0,0]/100")
    with pytest.raises(ParseError):
        parse_element("100/[0,x]/100")
    with pytest.raises(ParseError):
        parse_element("100/q1/100")


def test_wrong_number_of_slashes():
    with pytest.raises(ParseError):
        parse_element("100")
    with pytest.raises(ParseError):
        parse_element("1/0/0/0")


def test_parse_tree_errors():
    with pytest.raises(ParseError):
        parse_tree("")
    assert str(parse_tree("10100")) == "10100"


def test_rotation_and_permutation_grammar():
    r = parse_pair("10100/r1/11000")
    assert r.flavor == T and r.perm == (1, 2, 0)
    v = parse_pair("10100/[2,0,1]/11000")
    assert v.flavor == V and v.perm == (2, 0, 1)


def test_round_trip_f_up_to_eight_leaves():
    count = 0
    for g in enumerate_elements(8, F):
        assert parse_element(format_element(g)) == g
        count += 1
    assert count > 90_000


@pytest.mark.parametrize("flavor", [T, V])
def test_round_trip_t_v(flavor):
    for g in enumerate_elements(5 if flavor == T else 4, flavor):
        assert parse_element(format_element(g)) == g

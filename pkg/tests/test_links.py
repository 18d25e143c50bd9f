import itertools
import random
import xml.etree.ElementTree as ET

import pytest

from thompson_jones.acceptance import HOPF, TREFOIL, calibrate_shading
from thompson_jones.config import DEFAULT_SHADING
from thompson_jones.errors import GrowthError, NotFound, ParseError, UnsupportedFlavor, ValidationError
from thompson_jones.group import (
    enumerate_elements,
    generator,
    identity,
    invert,
    multiply,
    random_element,
    stabilize,
)
from thompson_jones.links.bracket import (
    bracket_by_states,
    jones_polynomial_exponents,
    kauffman_bracket,
    normalized_bracket,
    writhe,
)
from thompson_jones.links.build import build_link, layout, vertex_index, S_N, T_S
from thompson_jones.links.diagram import (
    LinkDiagram,
    components,
    export_code,
    from_partner,
    mirror,
    parse_code,
    unknot,
)
from thompson_jones.links.faces import (
    INNER,
    OUTER,
    faces_and_shading,
    geometric_faces,
    is_orientable,
    stabilizer_member,
    tait_graph,
)
from thompson_jones.links.index import (
    Fingerprint,
    dump_fingerprint,
    element_fingerprint,
    fingerprint,
    jt_index_search,
    load_fingerprint,
)
from thompson_jones.links.laurent import DELTA, LaurentPoly
from thompson_jones.links.simplify import simplify
from thompson_jones.links.svg import export_svg
from thompson_jones.notation import parse_element, parse_pair
from thompson_jones.trees import Forest, random_tree

X0 = generator(0)
X1 = generator(1)
TREFOIL_BRACKET = LaurentPoly({-7: 1, -3: -1, 5: -1})
HOPF_BRACKET = LaurentPoly({4: -1, -4: -1})


def _forest(n, rng, top=3):
    return Forest(tuple(random_tree(rng.randint(1, top), rng) for _ in range(n)))


def _trace_components(L: LinkDiagram) -> int:
    """Walk every strand port by port."""
    partner = L.partner_map()
    seen = set()
    count = 0
    for start in L.ports():
        if start in seen:
            continue
        count += 1
        p = start
        while p not in seen:
            seen.add(p)
            q = (p[0], (p[1] + 2) % 4)
            seen.add(q)
            p = partner[q]
    return count + L.free_loops


def _kink(twist: int) -> LinkDiagram:
    if twist > 0:
        return from_partner(1, {(0, 0): (0, 1), (0, 1): (0, 0), (0, 2): (0, 3), (0, 3): (0, 2)})
    return from_partner(1, {(0, 1): (0, 2), (0, 2): (0, 1), (0, 3): (0, 0), (0, 0): (0, 3)})


# construction


def test_identity_gives_unknot():
    L = build_link(identity())
    assert L == unknot() and L.crossing_count == 0 and L.free_loops == 1
    assert kauffman_bracket(L) == 1


def test_x0_diagram_by_hand():
    # s = 10100 gives crossings 0 (root) and 1; t = 11000 gives 2 (root) and 3
    arcs = [
        ((0, 0), (2, 0)),  # closure of the root stems
        ((0, 1), (1, 0)),  # s root, right child stem
        ((0, 3), (3, 1)),  # leaf 0
        ((1, 3), (3, 3)),  # leaf 1
        ((1, 1), (2, 3)),  # leaf 2
        ((2, 1), (3, 0)),  # t root, left child stem
        ((0, 2), (3, 2)),  # gap 1
        ((1, 2), (2, 2)),  # gap 2
    ]
    want = {}
    for a, b in arcs:
        want[a], want[b] = b, a
    L = build_link(X0)
    assert L.partner_map() == want
    assert L.crossing_count == 4
    assert components(L)[0] == 1 == _trace_components(L)


def test_gap_gluing_for_x0():
    s_idx, t_idx = vertex_index(X0)
    partner = build_link(X0).partner_map()
    assert partner[(s_idx[""], S_N)] == (t_idx["0"], T_S)
    assert partner[(s_idx["1"], S_N)] == (t_idx[""], T_S)


def test_crossing_counts():
    for g in enumerate_elements(6):
        L = build_link(g)
        assert L.crossing_count == 2 * (g.leaf_count - 1)
        assert components(L)[0] == _trace_components(L)


def test_only_f_is_supported():
    with pytest.raises(UnsupportedFlavor):
        build_link(parse_element("10100/r1/11000"))
    with pytest.raises(UnsupportedFlavor):
        build_link(parse_pair("100/100"))


def test_free_loops_add_components():
    L = build_link(X0)
    for k in range(4):
        M = LinkDiagram(L.crossings, k)
        assert components(M)[0] == 1 + k
        assert kauffman_bracket(M) == kauffman_bracket(L) * DELTA**k


def test_diagram_validation():
    with pytest.raises(ValidationError):
        LinkDiagram(((1, 2, 3, 4),))
    with pytest.raises(ValidationError):
        LinkDiagram(((1, 1, 2),))


# bracket


def test_reference_brackets():
    assert kauffman_bracket(unknot()) == 1
    assert kauffman_bracket(parse_code(TREFOIL)) == TREFOIL_BRACKET
    assert kauffman_bracket(parse_code(HOPF)) == HOPF_BRACKET
    assert kauffman_bracket(_kink(1)) == LaurentPoly({3: -1})
    assert kauffman_bracket(_kink(-1)) == LaurentPoly({-3: -1})


def test_x0_bracket_against_state_enumeration():
    L = build_link(X0)
    assert kauffman_bracket(L) == bracket_by_states(L) == 1


def test_frontier_sum_matches_state_enumeration():
    corpus = [build_link(g) for g in enumerate_elements(5)]
    rng = random.Random(1)
    while len(corpus) < 260:
        g = random_element(7, rng)
        corpus.append(build_link(g))
    corpus += [parse_code(TREFOIL), parse_code(HOPF), _kink(1), _kink(-1)]
    for L in corpus:
        assert L.crossing_count <= 12
        assert kauffman_bracket(L) == bracket_by_states(L)


def test_bracket_evaluates_to_sign_at_unit():
    # at A = -1 every state has weight ±2^{loops-1}; <L>(-1) = (-2)^{c-1} up to sign
    for g in enumerate_elements(5):
        L = build_link(g)
        c = components(L)[0]
        assert abs(kauffman_bracket(L).evaluate(-1)) == 2 ** (c - 1)


def test_crossing_bound():
    big = build_link(generator(11))
    assert big.crossing_count == 26
    with pytest.raises(GrowthError):
        kauffman_bracket(big)
    kauffman_bracket(big, max_crossings=26)


def test_writhe_and_normalised_bracket():
    tre = parse_code(TREFOIL)
    assert writhe(tre) == 3
    assert writhe(mirror(tre)) == -3
    assert jones_polynomial_exponents(tre) == {"1": 1, "3": 1, "4": -1}
    # adding a kink changes the bracket but not the normalised one
    assert normalized_bracket(_kink(1)) == 1 == normalized_bracket(_kink(-1))
    with pytest.raises(ValidationError):
        writhe(parse_code(HOPF))


# mirror and inverse


def test_mirror_involution_and_bracket():
    rng = random.Random(2)
    for _ in range(100):
        L = build_link(random_element(6, rng))
        assert mirror(mirror(L)) == L
        assert kauffman_bracket(mirror(L)) == kauffman_bracket(L).invert_variable()


def test_inverse_element_gives_mirror_bracket():
    for g in enumerate_elements(6):
        L = build_link(g)
        assert kauffman_bracket(build_link(invert(g))) == kauffman_bracket(mirror(L))


# stabilization and simplification


def test_common_caret_adds_a_distant_loop():
    # each common caret yields a circle lying over the through-line at both
    # of its crossings; an R2 move frees it, so the bracket gains a factor δ
    rng = random.Random(3)
    for _ in range(300):
        g = random_element(6, rng)
        h = stabilize(g, _forest(g.leaf_count, rng))
        added = h.leaf_count - g.leaf_count
        big = build_link(h, allow_unreduced=True)
        assert kauffman_bracket(big, big.crossing_count) == kauffman_bracket(build_link(g)) * DELTA**added
        assert components(big)[0] == components(build_link(g))[0] + added


def test_simplify_single_caret_pair():
    big = build_link(parse_pair("100/100"), allow_unreduced=True)
    assert big.crossing_count == 2
    small, twist = simplify(big)
    assert small.crossing_count == 0 and twist == 0 and small.free_loops == 2


@pytest.mark.parametrize("sign", [1, -1])
def test_simplify_kink(sign):
    small, twist = simplify(_kink(sign))
    assert twist == sign and small == unknot()
    assert kauffman_bracket(_kink(sign)) == LaurentPoly({3 * sign: -1})


def test_simplify_bracket_identity():
    rng = random.Random(4)
    minus_a3 = LaurentPoly({3: -1})
    minus_a3_inv = LaurentPoly({-3: -1})
    for _ in range(200):
        g = random_element(6, rng)
        h = stabilize(g, _forest(g.leaf_count, rng, 2))
        L = build_link(h, allow_unreduced=True)
        small, k = simplify(L)
        factor = minus_a3**k if k >= 0 else minus_a3_inv ** (-k)
        assert kauffman_bracket(L, L.crossing_count) == factor * kauffman_bracket(small, L.crossing_count)
        assert components(small)[0] == components(L)[0]


def test_simplify_keeps_the_trefoil():
    small, k = simplify(parse_code(TREFOIL))
    assert small.crossing_count == 3 and k == 0


# faces and orientability


def test_unknot_faces():
    f = faces_and_shading(unknot())
    assert f.count == 2
    assert f.shading(INNER) != f.shading(OUTER)


def test_x0_faces():
    f = faces_and_shading(build_link(X0))
    assert f.count == 6


def test_euler_characteristic():
    for g in enumerate_elements(6):
        L = build_link(g)
        if not L.crossing_count:
            continue
        f = faces_and_shading(L)
        # vertices = crossings, edges = arcs = 2 * crossings
        assert f.count - 2 * L.crossing_count + L.crossing_count == 2
        assert len(f.shading(INNER)) + len(f.shading(OUTER)) == f.count


def test_faces_alternate_colours():
    for g in enumerate_elements(5):
        L = build_link(g)
        if not L.crossing_count:
            continue
        f = faces_and_shading(L)
        partner = L.partner_map()
        for d in L.ports():
            assert f.colour[f.face_of[d]] != f.colour[f.face_of[partner[d]]]
            c, p = d
            # corners around a crossing alternate
            assert f.colour[f.face_of[d]] != f.colour[f.face_of[(c, (p + 1) % 4)]]


def test_faces_against_drawing():
    for g in enumerate_elements(6):
        if g.is_identity():
            continue
        L = build_link(g)
        f = faces_and_shading(L)
        geo, outer = geometric_faces(g)
        assert sorted(sorted(x) for x in geo) == sorted(sorted(x) for x in f.faces)
        assert set(geo[outer]) == set(f.faces[f.outer])


def _segments(g):
    for a, b, path in layout(g).arcs:
        for p, q in zip(path, path[1:]):
            if p != q:
                yield (a, b), p, q


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _touch(p, q, r, s):
    d1, d2, d3, d4 = _cross(r, s, p), _cross(r, s, q), _cross(p, q, r), _cross(p, q, s)
    if ((d1 > 0) != (d2 > 0)) and d1 and d2 and ((d3 > 0) != (d4 > 0)) and d3 and d4:
        return True

    def on(a, b, c):
        return _cross(a, b, c) == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return on(p, q, r) or on(p, q, s) or on(r, s, p) or on(r, s, q)


def test_drawing_is_planar():
    for g in enumerate_elements(5):
        if g.is_identity():
            continue
        crossings = set(layout(g).positions)
        segs = list(_segments(g))
        for (arc1, p, q), (arc2, r, s) in itertools.combinations(segs, 2):
            if arc1 == arc2:
                continue
            if _touch(p, q, r, s):
                shared = {p, q} & {r, s}
                assert shared and shared <= crossings, (str(g), p, q, r, s)


def test_orientability_examples():
    assert is_orientable(identity())
    assert not is_orientable(X0)
    assert is_orientable(multiply(X0, X1))


def test_stabilizer_examples():
    assert stabilizer_member(identity())
    assert not stabilizer_member(X0)
    assert stabilizer_member(multiply(X0, X1))
    with pytest.raises(UnsupportedFlavor):
        stabilizer_member(parse_element("10100/r1/11000"))


def test_shading_calibration():
    assert calibrate_shading(7) == DEFAULT_SHADING == OUTER


def test_orientability_of_unreduced_representatives():
    rng = random.Random(5)
    for _ in range(300):
        g = random_element(6, rng)
        h = stabilize(g, _forest(g.leaf_count, rng))
        assert is_orientable(h, allow_unreduced=True) == is_orientable(g)


def test_subgroup_closure():
    rng = random.Random(6)
    members = [g for g in enumerate_elements(6) if is_orientable(g)]
    assert len(members) > 10
    for _ in range(500):
        a, b = rng.choice(members), rng.choice(members)
        assert is_orientable(multiply(a, invert(b)))


def test_tait_graph_has_one_edge_per_crossing():
    L = build_link(multiply(X0, X1))
    for which in (INNER, OUTER):
        tg = tait_graph(L, which)
        assert len(tg.edges) == L.crossing_count


# codec and drawings


def test_export_unknot():
    assert export_code(unknot()) == "O"


def test_export_x0():
    lines = export_code(build_link(X0)).splitlines()
    assert len(lines) == 4 and all(line.startswith("X(") for line in lines)
    labels = {x for line in lines for x in line[2:-1].split(",")}
    assert len(labels) == 8


def test_codec_round_trip():
    for g in enumerate_elements(5):
        L = build_link(g)
        assert parse_code(export_code(L)) == L
    M = LinkDiagram(parse_code(TREFOIL).crossings, 2)
    assert parse_code(export_code(M)) == M


@pytest.mark.parametrize("text", ["X(1,2,3)", "Y(1,2,3,4)", "X(1,2,3,4)"])
def test_codec_errors(text):
    with pytest.raises(ParseError):
        parse_code(text)


def test_svg_is_well_formed():
    for g in [identity(), X0, generator(3), multiply(X0, X1)]:
        root = ET.fromstring(export_svg(g))
        assert root.tag.endswith("svg")
        lines = [el for el in root if el.tag.endswith("polyline")]
        assert len(lines) == len(layout(g).arcs)


# fingerprints and index search


def test_fingerprint_json_round_trip():
    fp = fingerprint(parse_code(TREFOIL))
    assert load_fingerprint(dump_fingerprint(fp)) == fp
    with pytest.raises(ParseError):
        load_fingerprint("{")
    with pytest.raises(ParseError):
        load_fingerprint('{"components": 1}')


def test_fingerprint_ignores_framing():
    assert fingerprint(_kink(1)) == fingerprint(unknot()) == fingerprint(_kink(-1))
    assert fingerprint(parse_code(TREFOIL)) != fingerprint(mirror(parse_code(TREFOIL)))


def test_index_of_unknot():
    res = jt_index_search(fingerprint(unknot()), 3)
    assert res.leaves == 1 and res.witnesses == [identity()]


def test_index_of_hopf_and_trefoil():
    for code in (HOPF, TREFOIL):
        target = fingerprint(parse_code(code))
        res = jt_index_search(target, 8)
        assert res.witnesses
        assert all(element_fingerprint(g) == target for g in res.witnesses)
        assert all(g.leaf_count == res.leaves for g in res.witnesses)
        # nothing smaller matches
        assert all(fp != target or all(g.leaf_count == res.leaves for g in ex) for fp, (_, ex) in res.audit.items())
        assert sum(c for c, _ in res.audit.values()) == sum(
            1 for g in enumerate_elements(res.leaves)
        )
    # the mirror trefoil is reached by inverses at the same size
    mirror_res = jt_index_search(fingerprint(mirror(parse_code(TREFOIL))), 8)
    assert mirror_res.leaves == jt_index_search(fingerprint(parse_code(TREFOIL)), 8).leaves


def test_index_not_found():
    with pytest.raises(NotFound):
        jt_index_search(fingerprint(parse_code(TREFOIL)), 3)
    with pytest.raises(NotFound):
        jt_index_search(Fingerprint(5, LaurentPoly({0: 7})), 4)

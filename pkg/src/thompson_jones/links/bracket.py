"""Kauffman bracket of a link diagram.

State convention: the A-smoothing of a crossing joins ports ``(p0,p1)`` and
``(p2,p3)``, the B-smoothing joins ``(p0,p3)`` and ``(p1,p2)``.  A state with
``a`` A-smoothings, ``b`` B-smoothings and ``k`` loops weighs
``A^(a-b) δ^(k-1)`` with ``δ = -A² - A⁻²``, so the crossingless unknot is 1.

:func:`kauffman_bracket` sums the states crossing by crossing, keeping for
each way of pairing up the open strand ends a histogram of ``(a-b, loops)``;
it is the full state sum, only organised so that states sharing a boundary
pattern are added together early.  :func:`bracket_by_states` enumerates all
``2^c`` states one at a time and traces every curve; it exists as an
independent check.
"""

from __future__ import annotations

from itertools import product

from ..errors import GrowthError, ValidationError
from .diagram import LinkDiagram, components
from .laurent import DELTA, LaurentPoly

__all__ = [
    "DEFAULT_MAX_CROSSINGS",
    "kauffman_bracket",
    "bracket_by_states",
    "writhe",
    "normalized_bracket",
    "jones_polynomial_exponents",
]

DEFAULT_MAX_CROSSINGS = 24

_SMOOTH = {1: ((0, 1), (2, 3)), -1: ((0, 3), (1, 2))}


def _delta_powers(n: int) -> list[LaurentPoly]:
    out = [LaurentPoly({0: 1})]
    for _ in range(n):
        out.append(out[-1] * DELTA)
    return out


def _assemble(hist: dict[tuple[int, int], int], free_loops: int) -> LaurentPoly:
    """``Σ count · A^e · δ^(loops + free_loops - 1)``."""
    if not hist:
        return LaurentPoly()
    top = max(k for _, k in hist) + free_loops
    powers = _delta_powers(max(top - 1, 0))
    total = LaurentPoly()
    for (e, k), count in hist.items():
        loops = k + free_loops
        if loops < 1:
            raise ValidationError("empty diagram has no bracket")
        total = total + powers[loops - 1].shift(e) * count
    return total


def _order(L: LinkDiagram, partner) -> list[int]:
    """Greedy crossing order keeping the open boundary small."""
    n = L.crossing_count
    done: set[int] = set()
    order = []
    links = [[partner[(i, p)][0] for p in range(4)] for i in range(n)]
    while len(order) < n:
        best, score = None, None
        for i in range(n):
            if i in done:
                continue
            inside = sum(1 for j in links[i] if j in done or j == i)
            # prefer crossings glued to the processed region
            key = (inside, -i)
            if score is None or key > score:
                best, score = i, key
        done.add(best)
        order.append(best)
    return order


def kauffman_bracket(L: LinkDiagram, max_crossings: int = DEFAULT_MAX_CROSSINGS, max_patterns: int = 10**6) -> LaurentPoly:
    if L.crossing_count > max_crossings:
        raise GrowthError(
            f"{L.crossing_count} crossings exceed the state-sum bound of {max_crossings}"
        )
    if L.crossing_count == 0:
        if L.free_loops == 0:
            raise ValidationError("empty diagram has no bracket")
        return _delta_powers(L.free_loops - 1)[-1]
    partner = L.partner_map()
    code = {q: 4 * q[0] + q[1] for q in partner}
    buddy = {code[q]: code[r] for q, r in partner.items()}
    done: set[int] = set()
    # boundary pattern (sorted pairs of open ends) -> {(a - b, loops): count}
    states: dict[tuple, dict[tuple[int, int], int]] = {(): {(0, 0): 1}}
    for c in _order(L, partner):
        new_ports = [4 * c + p for p in range(4)]
        grown: dict[tuple, dict[tuple[int, int], int]] = {}
        for pattern, hist in states.items():
            for sign, smoothing in _SMOOTH.items():
                adj: dict[int, list[int]] = {}

                def link(x, y):
                    adj.setdefault(x, []).append(y)
                    adj.setdefault(y, []).append(x)

                for x, y in pattern:
                    link(x, y)
                for i, j in smoothing:
                    link(new_ports[i], new_ports[j])
                for q in new_ports:
                    r = buddy[q]
                    if r // 4 in done or (r // 4 == c and q < r):
                        link(q, r)
                ends = sorted(v for v, nb in adj.items() if len(nb) == 1)
                seen: set[int] = set()
                pairs = []
                for v in ends:
                    if v in seen:
                        continue
                    prev, cur = None, v
                    seen.add(cur)
                    while prev is None or len(adj[cur]) == 2:
                        nb = adj[cur]
                        nxt = nb[0] if nb[0] != prev else nb[-1]
                        prev, cur = cur, nxt
                        seen.add(cur)
                    pairs.append((v, cur))
                loops = 0
                for v in adj:
                    if v in seen:
                        continue
                    loops += 1
                    stack = [v]
                    while stack:
                        x = stack.pop()
                        if x in seen:
                            continue
                        seen.add(x)
                        stack.extend(adj[x])
                key = tuple(sorted(pairs))
                bucket = grown.setdefault(key, {})
                for (e, k), count in hist.items():
                    idx = (e + sign, k + loops)
                    bucket[idx] = bucket.get(idx, 0) + count
        done.add(c)
        states = grown
        if len(states) > max_patterns:
            raise GrowthError(f"more than {max_patterns} boundary patterns")
    (hist,) = states.values()
    return _assemble(hist, L.free_loops)


def bracket_by_states(L: LinkDiagram, max_crossings: int = 20) -> LaurentPoly:
    """Enumerate every state and trace its curves explicitly."""
    n = L.crossing_count
    if n > max_crossings:
        raise GrowthError(f"{n} crossings exceed the brute-force bound of {max_crossings}")
    if n == 0:
        return kauffman_bracket(L)
    partner = L.partner_map()
    hist: dict[tuple[int, int], int] = {}
    for signs in product((1, -1), repeat=n):
        # port -> port joined to it inside its crossing by the smoothing
        inside = {}
        for i, sign in enumerate(signs):
            for a, b in _SMOOTH[sign]:
                inside[(i, a)] = (i, b)
                inside[(i, b)] = (i, a)
        visited = set()
        loops = 0
        for start in inside:
            if start in visited:
                continue
            loops += 1
            cur = start
            while cur not in visited:
                visited.add(cur)
                other = inside[cur]
                visited.add(other)
                cur = partner[other]
        key = (sum(signs), loops)
        hist[key] = hist.get(key, 0) + 1
    return _assemble(hist, L.free_loops)


def _orient(L: LinkDiagram):
    """Direction of travel through every crossing strand for a one-component diagram.

    Returns ``{(crossing, strand): entry_port}`` with strand 0 = under, 1 = over.
    """
    partner = L.partner_map()
    entry = {}
    if not partner:
        return entry
    start = (0, 0)
    cur = start
    while True:
        i, p = cur
        entry[(i, p % 2)] = p
        out = (i, (p + 2) % 4)
        cur = partner[out]
        if cur == start:
            break
    return entry


def writhe(L: LinkDiagram) -> int:
    """Sum of crossing signs; orientation-free only for knots."""
    count, _ = components(L)
    if count != 1:
        raise ValidationError(
            "writhe of a multi-component diagram depends on orientations; refusing"
        )
    entry = _orient(L)
    total = 0
    for i in range(L.crossing_count):
        under_from = entry[(i, 0)]
        over_from = entry[(i, 1)]
        # under p0->p2 with over p3->p1 is positive (right-handed)
        sign = 1 if (under_from == 0) == (over_from == 3) else -1
        total += sign
    return total


def normalized_bracket(L: LinkDiagram) -> LaurentPoly:
    """``(-A³)^(-w) ⟨L⟩``, an ambient-isotopy invariant of knots."""
    w = writhe(L)
    factor = LaurentPoly({-3: -1}) ** w if w >= 0 else LaurentPoly({3: -1}) ** (-w)
    return kauffman_bracket(L) * factor


def jones_polynomial_exponents(L: LinkDiagram) -> dict[str, int]:
    """Jones polynomial of a knot, ``t = A^-4``, as ``{exponent of t: coeff}``.

    Exponents are integers for knots.
    """
    f = normalized_bracket(L)
    out = {}
    for e, c in f.terms.items():
        if e % 4:
            raise ValidationError("bracket exponents not divisible by 4")
        out[str(-e // 4)] = c
    return out

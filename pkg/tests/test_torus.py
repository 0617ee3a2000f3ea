from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from dehnkit import torus as tc
from dehnkit.torus import TorusCurve
from oracles import torus_components

small = st.integers(0, 12)
curves = st.builds(TorusCurve, small, small, small)


@st.composite
def slopes(draw):
    p = draw(st.integers(-40, 40))
    q = draw(st.integers(0, 40))
    assume(gcd(p, q) == 1 and (q > 0 or p == 1))
    return p, q


# frozen values: trivial count, slope, complement, length, intersections, type, components
TABLE = [
    ((1, 1, 1), 1, None, None, 6, (2, 2, 2), {"I", "II", "III"}, 1),
    ((2, 0, 1), 0, (2, 0, 1), (0, 2, 1), 6, (1, 3, 2), {"II"}, 1),
    ((4, 0, 2), 0, (2, 0, 1), (0, 2, 1), 12, (2, 6, 4), {"II"}, 2),
    ((0, 2, 0), 0, (0, 1, 0), (1, 0, 1), 4, (2, 0, 2), {"I", "III"}, 2),
    ((0, 0, 1), 0, (0, 0, 1), (1, 1, 0), 2, (1, 1, 0), {"I", "II"}, 1),
    ((3, 2, 2), 2, (1, 0, 0), (0, 1, 1), 14, (4, 5, 5), {"II", "III"}, 3),
    ((5, 1, 3), 1, (2, 0, 1), (0, 2, 1), 18, (4, 8, 6), {"II"}, 3),
]


@pytest.mark.parametrize("row", TABLE, ids=[str(r[0]) for r in TABLE])
def test_frozen_curve_table(row):
    c, tau, slope, comp, length, inter, kind, count = row
    c = TorusCurve(*c)
    assert tc.trivial_count(c) == tau
    assert tc.slope_of(c) == (None if slope is None else TorusCurve(*slope))
    if comp is None:
        with pytest.raises(tc.CurveError):
            tc.complement_of(c)
    else:
        assert tc.complement_of(c) == TorusCurve(*comp)
    assert tc.length(c) == length
    assert tc.to_intersections(c) == inter
    assert tc.curve_type(c) == frozenset(kind)
    assert tc.component_count(c) == count


def test_empty_curve():
    z = TorusCurve(0, 0, 0)
    assert tc.component_count(z) == 0
    assert tc.slope_of(z) is None
    assert tc.length(z) == 0


def test_negative_coordinates_rejected():
    with pytest.raises(tc.CurveError):
        TorusCurve(-1, 0, 0)


@given(curves)
def test_component_count_matches_drawn_curve(c):
    assert tc.component_count(c) == torus_components(tuple(c))


@given(curves)
def test_drawing_is_label_independent(c):
    counts = {torus_components(tuple(c), labels) for labels in [("h", "d", "v"), ("v", "h", "d"), ("d", "v", "h")]}
    assert len(counts) == 1


@given(curves)
def test_intersections_round_trip(c):
    assert tc.from_intersections(tc.to_intersections(c)) == c
    assert sum(tc.to_intersections(c)) == tc.length(c)


@given(curves)
def test_curve_splits_into_trivial_part_and_slope_multiple(c):
    tau = tc.trivial_count(c)
    s = tc.slope_of(c)
    rest = TorusCurve(*(v - tau for v in c))
    if s is None:
        assert not any(rest)
    else:
        k = max(rest) // max(s)
        assert rest == s.scaled(k)
        assert tc.component_count(c) == tau + k
        assert tc.is_slope(s)


@given(curves)
def test_slope_and_complement_make_trivial_curves(c):
    s = tc.slope_of(c)
    assume(s is not None)
    comp = tc.complement_of(c)
    both = s + comp
    assert both.x1 == both.x2 == both.x3
    assert tc.same_or_complementary(s, comp)
    assert tc.complement_of(comp) == s


@given(curves, curves)
def test_length_is_additive(a, b):
    assert tc.length(a + b) == tc.length(a) + tc.length(b)


@given(curves)
def test_type_is_the_minimal_coordinates(c):
    kind = tc.curve_type(c)
    assert kind
    assert {"I", "II", "III"} >= kind


@given(slopes())
def test_pq_round_trip(pq):
    c = tc.slope_from_pq(*pq)
    assert tc.is_slope(c)
    assert tc.pq_of(c) == pq
    assert tc.parse_slope(tc.format_pq(pq)) == c


def test_pq_convention():
    # e2 is read as e1 + e3
    assert tc.to_intersections(tc.slope_from_pq(1, 0)) == (0, 1, 1)
    assert tc.to_intersections(tc.slope_from_pq(0, 1)) == (1, 1, 0)
    assert tc.to_intersections(tc.slope_from_pq(2, 3)) == (3, 5, 2)
    assert tc.to_intersections(tc.slope_from_pq(-2, 3)) == (3, 1, 2)


@pytest.mark.parametrize("bad", [(1, 1, 1), (3, 1, 1), (2, 2, 3)])
def test_from_intersections_rejects_impossible_triples(bad):
    with pytest.raises(tc.CurveError):
        tc.from_intersections(bad)


@pytest.mark.parametrize("text", ["1,1,1", "2,0,2", "4/6", "a/b", "1,2"])
def test_parse_slope_rejects(text):
    with pytest.raises(tc.CurveError):
        tc.parse_slope(text)


def test_parse_slope_accepts_triples():
    assert tc.parse_slope(" 2,0,1 ") == TorusCurve(2, 0, 1)


def test_slopes_up_to_length():
    got = tc.slopes_up_to_length(6)
    assert all(tc.length(s) <= 6 and tc.is_slope(s) for s in got)
    brute = sorted(
        {TorusCurve(a, b, c) for a in range(4) for b in range(4) for c in range(4)
         if tc.is_slope(TorusCurve(a, b, c)) and tc.length(TorusCurve(a, b, c)) <= 6}
    )
    assert got == brute


def test_small_examples():
    assert tc.trivial_count(TorusCurve(5, 3, 7)) == 3
    assert tc.from_intersections((0, 1, 1)) == TorusCurve(1, 0, 0)
    assert tc.from_intersections((1, 3, 2)) == TorusCurve(2, 0, 1)
    assert tc.component_count(TorusCurve(3, 3, 3)) == 3
    assert tc.curve_type(TorusCurve(0, 1, 0)) == {"I", "III"}
    assert tc.complement_of(TorusCurve(1, 0, 0)) == TorusCurve(0, 1, 1)
    assert tc.to_intersections(TorusCurve(0, 0, 0)) == (0, 0, 0)


def test_component_count_agrees_with_drawing_exhaustively():
    for x in range(9):
        for y in range(9):
            for z in range(9):
                assert tc.component_count(TorusCurve(x, y, z)) == torus_components((x, y, z))


@given(curves, curves)
def test_intersections_are_additive(a, b):
    lhs = tc.to_intersections(a + b)
    assert lhs == tuple(u + v for u, v in zip(tc.to_intersections(a), tc.to_intersections(b)))


@given(curves, curves)
def test_trivial_count_under_sums(a, b):
    tau = tc.trivial_count(a + b)
    if tc.curve_type(a) & tc.curve_type(b):
        assert tau == tc.trivial_count(a) + tc.trivial_count(b)
    else:
        assert tau > tc.trivial_count(a) + tc.trivial_count(b)


@given(curves, st.integers(0, 5))
def test_slope_ignores_trivial_curves(c, k):
    assert tc.slope_of(c + TorusCurve(k, k, k)) == tc.slope_of(c)

from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dehnkit import torus as tc
from dehnkit.layered import (
    A_ALPHA,
    CORE_MERIDIAN_DISK,
    D_MU,
    D_TAU,
    MOBIUS,
    OTHER,
    LayeringError,
    build_lst,
    classify_planar,
    classify_surface,
    core,
    descent,
    extension_options,
    flip,
    layer_once,
    layered_from_positions,
    layered_solutions,
    pad_lst,
    push_through,
    relabel_coords,
    weight_floor,
)
from dehnkit.normal import (
    NormalCoords,
    admissible_pattern,
    boundary_restriction,
    is_matched,
    matching_matrix,
    summarize,
)
from dehnkit.perm import Perm4
from dehnkit.vertex import solutions_up_to


@st.composite
def slope_triples(draw):
    p = draw(st.integers(-25, 25))
    q = draw(st.integers(0, 25))
    assume(gcd(p, q) == 1 and (q > 0 or p == 1))
    return tc.slope_from_pq(p, q)


def test_flip_examples():
    assert flip((1, 3, 2), 1) == (1, 1, 2)
    assert flip((1, 1, 2), 1) == (1, 3, 2)
    assert flip((2, 5, 3), 1) == (2, 1, 3)
    assert flip((0, 1, 1), 0) == (2, 1, 1)


@given(slope_triples(), st.integers(0, 2))
def test_flip_is_an_involution_on_slopes(c, k):
    y = tc.to_intersections(c)
    once = flip(y, k)
    assert flip(once, k) == y
    assert tc.is_slope(tc.from_intersections(once))


def test_descent_of_a_long_triple():
    positions, triples = descent((7, 10, 3))
    assert triples[0] == (7, 10, 3)
    assert sorted(triples[-1]) == [1, 2, 3]
    assert len(positions) == len(triples) - 1
    for a, b in zip(triples, triples[1:]):
        if sum(a) > 6:
            assert sum(b) < sum(a)


def test_descent_from_short_triples():
    for y in [(0, 1, 1), (1, 1, 2), (2, 1, 1), (1, 3, 2)]:
        _, triples = descent(y)
        assert sorted(triples[-1]) == [1, 2, 3]


def test_descent_padding_goes_first():
    positions, _ = descent((1, 3, 2), pad=4)
    assert positions[:4] == [0, 1, 2, 0]


def test_layer_once_keeps_other_positions():
    base = core()
    for k in (1, 2, 3):
        tri = layer_once(base, k)
        old, new = base.torus(), tri.torus()
        assert tri.size == 2
        for pos in (1, 2, 3):
            cls = new.edges[pos - 1]
            in_new_tet_only = all(t == 1 for t, _ in tri.edge_classes[cls])
            assert in_new_tet_only == (pos == k)
        assert new.is_one_vertex_torus and tri.is_orientable()
        assert len(tri.edge_classes) == len(base.edge_classes) + 1
        assert old.edges  # base is untouched


def test_layer_rejects_bad_position():
    with pytest.raises(LayeringError):
        layer_once(core(), 4)


def test_build_lst_examples():
    lst = build_lst("3/7")
    assert lst.pq == (3, 7)
    assert tc.to_intersections(lst.meridian) == (7, 10, 3)
    assert boundary_restriction(lst.tri, lst.meridian_disk) == lst.meridian
    s = summarize(lst.tri, lst.meridian_disk)
    assert (s.euler, s.orientable, s.boundary_circles) == (1, True, 1)
    assert lst.t == len(lst.layers) + 1


def test_build_lst_accepts_three_spellings():
    a = build_lst("2/5")
    b = build_lst(a.meridian)
    c = build_lst(list(tc.to_intersections(a.meridian)))
    assert a.tri == b.tri == c.tri
    assert a.meridian_disk == b.meridian_disk == c.meridian_disk


def test_one_tetrahedron_torus():
    lst = build_lst("2/1")
    assert lst.t == 1 and lst.layers == ()
    assert lst.meridian == tc.TorusCurve(2, 0, 1)
    assert lst.tri == core()


@settings(max_examples=60, deadline=None)
@given(slope_triples())
def test_meridian_disk_realises_the_target(c):
    lst = build_lst(c)
    assert lst.meridian == c
    assert is_matched(lst.tri, lst.meridian_disk)
    s = summarize(lst.tri, lst.meridian_disk)
    assert s.euler == 1 and s.connected
    assert lst.tri.is_knot_manifold()


@pytest.mark.parametrize("bad", ["2,2,2", "0,0,0", "4/6", [1, 1, 1]])
def test_build_lst_rejects_non_slopes(bad):
    with pytest.raises((LayeringError, tc.CurveError)):
        build_lst(bad)


def test_padding_preserves_the_meridian():
    lst = build_lst("1/2")
    padded = pad_lst(lst, 5)
    assert padded.t > 5 and padded.meridian == lst.meridian and padded.pad > 0
    assert pad_lst(padded, 2) is padded
    s = summarize(padded.tri, padded.meridian_disk)
    assert s.euler == 1


def test_sidecar_fields():
    side = build_lst("3/7").sidecar()
    assert side["meridian_pq"] == "3/7"
    assert side["meridian_intersections"] == [7, 10, 3]
    assert side["descent"][0] == [7, 10, 3]
    assert all(x.startswith("e") for x in side["layers"])
    assert side["padding_layers"] == 0


def test_relabel_coords_moves_pieces():
    ident = relabel_coords(CORE_MERIDIAN_DISK, [Perm4.identity()])
    assert ident.values == CORE_MERIDIAN_DISK
    for s in Perm4.all():
        moved = relabel_coords(CORE_MERIDIAN_DISK, [s])
        assert is_matched(core().relabel([0], [s]), moved)
        assert sum(moved.values) == sum(CORE_MERIDIAN_DISK)


def test_push_through_without_bands_keeps_the_boundary():
    tri = layer_once(core(), 2)
    start = NormalCoords(CORE_MERIDIAN_DISK + (0,) * 7)
    pushed = push_through(tri, start, 1)
    assert is_matched(tri, pushed)
    assert summarize(tri, pushed).euler == 1


def test_extension_options_need_a_layered_tetrahedron():
    with pytest.raises(LayeringError):
        list(extension_options(core(), NormalCoords((0,) * 7), 0))


def test_layered_solutions_match_brute_force():
    tri = layered_from_positions([1])
    sols, truncated = layered_solutions(tri, 5)
    assert not truncated
    brute = sorted(
        x for x in solutions_up_to(matching_matrix(tri), 14, 5)
        if any(x) and admissible_pattern(NormalCoords(x))
    )
    assert [c.values for c in sols] == brute


def test_classify_surface_kinds(core_tri):
    cases = {
        (1, 1, 1, 1, 0, 0, 0): D_TAU,
        CORE_MERIDIAN_DISK: D_MU,
        (0, 1, 1, 0, 0, 0, 1): A_ALPHA,
        (0, 0, 0, 0, 0, 1, 0): MOBIUS,
        (0, 0, 0, 0, 0, 2, 0): A_ALPHA,  # the connected double of the Moebius band
        (2, 1, 1, 2, 1, 0, 0): OTHER,  # meridian disk plus the boundary-parallel disk
    }
    for vals, kind in cases.items():
        assert classify_surface(summarize(core_tri, NormalCoords(vals))) == kind


def test_core_planar_audit():
    audit = classify_planar(core())
    assert audit.ok and audit.meridian_disk_unique and not audit.truncated
    kinds = {pc.kind for pc in audit.classes}
    assert {D_MU, D_TAU, A_ALPHA} <= kinds
    (mu,) = audit.of_kind(D_MU)
    assert mu.witness.weight == 6 >= weight_floor(D_MU, 1)


def test_weight_floors():
    assert [weight_floor(k, 3) for k in (D_MU, D_TAU, A_ALPHA, MOBIUS)] == [7, 10, 8, None]

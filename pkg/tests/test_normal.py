import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dehnkit import torus as tc
from dehnkit.filling import cap_surface, fill
from dehnkit.layered import CORE_MERIDIAN_DISK, build_lst, layered_solutions
from dehnkit.normal import (
    CoordinateError,
    NormalCoords,
    add,
    admissible_pattern,
    as_coords,
    boundary_restriction,
    compatible,
    decompose_components,
    edge_points,
    euler_characteristic,
    format_coords,
    is_admissible,
    is_matched,
    matching_matrix,
    parse_coords,
    summarize,
    summarize_components,
    weight,
    zero,
)
from dehnkit.vertex import enumerate_vertices
from oracles import is_two_sided

D_MU = NormalCoords(CORE_MERIDIAN_DISK)
D_TAU = NormalCoords((1, 1, 1, 1, 0, 0, 0))
ANNULUS = NormalCoords((0, 1, 1, 0, 0, 0, 1))
MOBIUS = NormalCoords((0, 0, 0, 0, 0, 1, 0))


def test_lone_tetrahedron_has_no_equations(lone_tet):
    m = matching_matrix(lone_tet)
    assert m.shape == (0, 7)
    assert is_matched(lone_tet, (3, 0, 1, 0, 2, 0, 0))


def test_core_matrix_shape(core_tri):
    m = matching_matrix(core_tri)
    assert m.shape[1] == 7 and m.shape[0] <= 3
    for c in (D_MU, D_TAU, ANNULUS, MOBIUS):
        assert not (m @ np.array(c.values)).any()


@settings(max_examples=200)
@given(st.lists(st.integers(0, 3), min_size=14, max_size=14))
def test_matrix_agrees_with_arc_counting(two_layer, vals):
    m = matching_matrix(two_layer)
    assert (not (m @ np.array(vals)).any()) == is_matched(two_layer, vals)


def test_almost_normal_matrix_width(core_tri):
    assert matching_matrix(core_tri, True).shape[1] == 10


def test_admissibility(core_tri):
    assert is_admissible(core_tri, D_MU)
    assert not admissible_pattern(NormalCoords((0, 0, 0, 0, 1, 1, 0)))
    two_octagons = NormalCoords((0,) * 7 + (1, 0, 0) + (0,) * 7 + (0, 1, 0), True)
    assert not admissible_pattern(two_octagons)
    quad_and_octagon = NormalCoords((0, 0, 0, 0, 1, 0, 0, 1, 0, 0), True)
    assert not admissible_pattern(quad_and_octagon)
    with pytest.raises(CoordinateError):
        is_admissible(core_tri, (1, 0, 0, 0, 0, 0, 0))


def test_coordinates_validate_shape():
    with pytest.raises(CoordinateError):
        NormalCoords((1, 2, 3))
    with pytest.raises(CoordinateError):
        NormalCoords((-1, 0, 0, 0, 0, 0, 0))
    with pytest.raises(CoordinateError):
        D_MU + NormalCoords((0,) * 10, True)


def test_core_surfaces(core_tri):
    expected = {
        D_TAU: ((1, 1, 1), 1, True, 1),
        D_MU: ((2, 0, 1), 1, True, 1),
        ANNULUS: ((0, 2, 0), 0, True, 2),
        MOBIUS: ((0, 0, 1), 0, False, 1),
        MOBIUS.scaled(2): ((0, 0, 2), 0, True, 2),
    }
    for c, (bdry, chi, orientable, circles) in expected.items():
        s = summarize(core_tri, c)
        assert tuple(s.boundary[0]) == bdry
        assert (s.euler, s.orientable, s.boundary_circles) == (chi, orientable, circles)
        assert s.connected


def test_meridian_disk_weight(core_tri):
    assert weight(core_tri, D_MU) == 6
    assert weight(core_tri, D_MU) >= 1 + 4


def test_doubled_meridian_disk(core_tri):
    double = add(D_MU, D_MU)
    assert tuple(boundary_restriction(core_tri, double)) == (4, 0, 2)
    parts = decompose_components(core_tri, double)
    assert parts == [D_MU, D_MU]


def test_zero_is_additive_identity(core_tri):
    z = zero(core_tri)
    assert add(D_MU, z) == D_MU
    assert tuple(boundary_restriction(core_tri, z)) == (0, 0, 0)


def test_compatibility(core_tri):
    assert compatible(core_tri, D_MU, D_TAU)
    assert not compatible(core_tri, D_MU, ANNULUS)


def test_vertex_link_of_a_closed_filling():
    f = fill(build_lst("2/1").tri, "1/0")
    tri = f.tri
    link = NormalCoords((1, 1, 1, 1, 0, 0, 0) * tri.size)
    assert is_matched(tri, link)
    # one vertex: every edge meets the link once at each end
    assert weight(tri, link) == 2 * len(tri.edge_classes)
    s = summarize(tri, link)
    assert (s.euler, s.is_closed, s.separating) == (2, True, True)


def test_capped_meridian_sphere_does_not_separate():
    lst = build_lst("2/1")
    f = fill(lst.tri, lst.meridian)
    sphere = summarize(f.tri, cap_surface(f, lst.meridian_disk))
    assert sphere.euler == 2 and sphere.is_closed
    assert sphere.separating is False


def test_edge_points_count_crossings():
    c = NormalCoords((1, 0, 0, 1, 1, 0, 0))
    # edge 01 meets triangles at 0 and 1 and quads of the two types not pairing 0 with 1
    assert edge_points(c, 0, 0, 1) == 1
    assert edge_points(c, 0, 0, 3) == 2 + 1


def test_octagon_surfaces_in_the_core(core_tri):
    found = {}
    for v in enumerate_vertices(core_tri, "almost-normal", embedded_only=True):
        s = summarize(core_tri, v.coords)
        assert s.euler == euler_characteristic(core_tri, v.coords)
        found[v.coords.values] = (s.euler, s.orientable, tuple(s.boundary[0]))
    assert found[(0, 0, 0, 0, 0, 0, 0, 0, 1, 0)] == (-1, False, (1, 1, 0))
    assert found[(1, 0, 0, 1, 0, 0, 0, 0, 0, 1)] == (0, True, (2, 0, 2))


def test_coords_text_round_trip():
    for c in (D_MU, NormalCoords((0, 1, 1, 0, 0, 0, 0, 1, 0, 0), True)):
        assert parse_coords(format_coords(c)) == c
    assert format_coords(D_MU) == "coords normal\n1 0 0 1 1 0 0\n"


@pytest.mark.parametrize(
    "text",
    ["", "coords\n1 0 0 0 0 0 0\n", "coords spherical\n1\n", "coords normal\n1 0 x 0 0 0 0\n",
     "coords almost-normal\n0 0 0 0 0 0 0 0 0 0 tube1\n", "coords normal\n1 0 0\n"],
)
def test_parse_coords_rejects(text):
    with pytest.raises(CoordinateError):
        parse_coords(text)


def test_as_coords_infers_mode(core_tri):
    assert not as_coords((0,) * 7, core_tri).almost_normal
    assert as_coords((0,) * 10, core_tri).almost_normal
    with pytest.raises(CoordinateError):
        as_coords((0,) * 14, core_tri)


# -- properties over small solution sets --------------------------------------------------------


@pytest.fixture(scope="module")
def sample_surfaces():
    out = []
    for s in ("2/1", "3/2", "1/0", "2/5"):
        tri = build_lst(s).tri
        sols, _ = layered_solutions(tri, 10)
        out.append((tri, sols))
    return out


def test_orientability_matches_double_cover(sample_surfaces):
    checked = 0
    for tri, sols in sample_surfaces:
        for c in sols:
            for part in decompose_components(tri, c):
                assert summarize(tri, part).orientable == is_two_sided(tri, part)
                checked += 1
    assert checked > 50


def test_components_sum_back(sample_surfaces):
    for tri, sols in sample_surfaces:
        for c in sols:
            parts = decompose_components(tri, c)
            total = parts[0]
            for p in parts[1:]:
                total = total + p
            assert total == c
            assert all(is_matched(tri, p) and admissible_pattern(p) for p in parts)
            summaries = summarize_components(tri, c)
            assert sum(s.euler for s in summaries) == summarize(tri, c).euler
            assert all(s.connected for s in summaries)


def test_euler_from_cells_matches_count_formula(sample_surfaces):
    for tri, sols in sample_surfaces:
        for c in sols:
            assert summarize(tri, c).euler == euler_characteristic(tri, c)


def test_genus_formula_on_connected_orientable_pieces(sample_surfaces):
    for tri, sols in sample_surfaces:
        for c in sols:
            for s in summarize_components(tri, c):
                if s.orientable:
                    assert s.euler == 2 - 2 * s.genus - s.boundary_circles


def test_boundary_circles_match_curve_components(sample_surfaces):
    for tri, sols in sample_surfaces:
        for c in sols:
            s = summarize(tri, c)
            assert s.boundary_circles == tc.component_count(s.boundary[0])

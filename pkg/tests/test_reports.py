import json

import pytest

from dehnkit import torus as tc
from dehnkit.layered import build_lst, core
from dehnkit.reports import (
    ALE_BOUND,
    ANNULUS_SLOPE,
    BOUNDARY_EDGE,
    GOALS,
    REQUIRED_CAVEATS,
    VERTEX_SURFACE,
    candidates,
    emit,
    vertex_slopes,
)
from dehnkit.triangulation import TriangulationError
from dehnkit.vertex import slope_bound

T = tc.TorusCurve


def _kinds(report, slope):
    (c,) = [c for c in report.candidates if c.slope == slope]
    return {p.kind for p in c.provenance}


@pytest.mark.parametrize("goal", GOALS)
@pytest.mark.parametrize("target", ["2/1", "3/7"])
def test_caveats_name_every_external_step(goal, target):
    report = candidates(build_lst(target).tri, goal)
    assert report.caveats
    text = " ".join(report.caveats)
    for phrase in REQUIRED_CAVEATS[goal]:
        assert phrase in text, (goal, phrase)


@pytest.mark.parametrize("goal", ["reducible", "surface", "haken"])
def test_fundamental_source_adds_its_caveat(goal):
    report = candidates(core(), goal, source="fundamental")
    assert report.source == "fundamental"
    assert any("fundamental set" in c for c in report.caveats)
    for phrase in REQUIRED_CAVEATS[goal]:
        assert phrase in " ".join(report.caveats)


@pytest.mark.parametrize("goal", ["s3", "lens"])
def test_fundamental_source_is_normal_only(goal):
    with pytest.raises(ValueError):
        candidates(core(), goal, source="fundamental")


def test_bad_goal_and_input(lone_tet):
    with pytest.raises(ValueError):
        candidates(core(), "fibred")
    with pytest.raises(TriangulationError):
        candidates(lone_tet, "reducible")


def test_core_reducible_slopes():
    report = candidates(core(), "reducible")
    assert report.slopes() == [T(0, 1, 0), T(2, 0, 1)]
    assert vertex_slopes(report) == report.slopes()


def test_core_lens_report():
    report = candidates(core(), "lens")
    for k in range(3):
        e = [0, 0, 0]
        e[k] = 1
        assert BOUNDARY_EDGE in _kinds(report, T(*e))
    assert ANNULUS_SLOPE in _kinds(report, T(0, 1, 0))
    assert len(vertex_slopes(report)) <= slope_bound(1, "almost-normal")


def test_s3_report_points_at_the_meridian_line():
    report = candidates(core(), "s3")
    note = report.notes[0]
    assert "(2,0,1)" in note and "1/0, 1/1, 3/1, 3/2" in note


def test_surface_report_adds_short_slopes():
    report = candidates(build_lst("3/7").tri, "surface")
    ale = [c.slope for c in report.candidates if any(p.kind == ALE_BOUND for p in c.provenance)]
    assert ale and all(tc.length(s) <= 4 for s in ale)
    assert "length bound C = 4" in report.notes


def test_haken_report_joins_both_sides():
    red = candidates(core(), "reducible")
    surf = candidates(core(), "surface")
    both = candidates(core(), "haken")
    assert set(both.slopes()) == set(red.slopes()) | set(surf.slopes())
    assert any(n.startswith("in both lists:") for n in both.notes)


def test_json_schema_and_determinism():
    report = candidates(core(), "lens")
    text = emit(report, "json")
    assert text == emit(candidates(core(), "lens"), "json")
    data = json.loads(text)
    assert {"goal", "slopes", "caveats"} <= set(data)
    for s in data["slopes"]:
        assert set(s) == {"triple", "pq", "provenance"}
        assert tc.format_pq(tc.pq_of(T(*s["triple"]))) == s["pq"]
        for p in s["provenance"]:
            assert p["kind"] in {VERTEX_SURFACE, BOUNDARY_EDGE, ANNULUS_SLOPE, ALE_BOUND}


def test_tsv_output():
    text = emit(candidates(core(), "reducible"), "tsv")
    lines = text.splitlines()
    assert lines[0] == "goal\ttriple\tpq\tprovenance"
    assert lines[1] == "reducible\t0,1,0\t-1/1\tvertex-surface:1"
    assert any(line.startswith("# caveat\t") for line in lines)
    with pytest.raises(ValueError):
        emit(candidates(core(), "reducible"), "xml")

"""Candidate-slope reports for Dehn-filling questions.

Each report lists the finitely many slopes worth checking for one goal,
each slope tagged with where it came from.  The final answer for any slope
always needs a decision procedure this package does not implement; those
steps are spelled out in ``caveats``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import torus as tc
from .filling import line_of
from .normal import NormalCoords, SurfaceSummary, admissible_pattern, summarize
from .triangulation import Triangulation, TriangulationError
from .vertex import VertexSolution, ale_constant, enumerate_fundamental, enumerate_vertices, slope_bound

GOALS = ("reducible", "surface", "haken", "s3", "lens")
VERTEX_SURFACE, BOUNDARY_EDGE, ANNULUS_SLOPE, ALE_BOUND = "vertex-surface", "boundary-edge", "annulus-slope", "ale-bound"

CAVEAT_ESSENTIAL_SPHERE = (
    "For each candidate slope, decide externally whether the capped planar surface is an essential sphere "
    "(Haken's incompressibility decision and 3-sphere recognition are not implemented here)."
)
CAVEAT_INCOMPRESSIBLE = (
    "Incompressibility of each listed surface, and of its capped or compressed versions, must be decided "
    "externally with Haken's incompressibility algorithm."
)
CAVEAT_S3 = (
    "Each candidate filling must be tested externally with 3-sphere recognition (Rubinstein-Thompson); "
    "this package only lists the slopes."
)
CAVEAT_SOLID_TORUS = "Whether the knot-manifold is a solid torus must be decided externally (solid torus recognition)."
CAVEAT_LENS = (
    "Each candidate filling must be tested externally with lens space recognition; separating annuli also need "
    "an external solid torus check of the pieces they cut off."
)
CAVEAT_FUNDAMENTAL = "Witnesses come from the fundamental set, not the vertex solutions; the two lists are not interchangeable."

REQUIRED_CAVEATS = {
    "reducible": ("Haken's incompressibility", "3-sphere recognition"),
    "surface": ("Haken's incompressibility",),
    "haken": ("Haken's incompressibility", "3-sphere recognition"),
    "s3": ("3-sphere recognition", "solid torus recognition"),
    "lens": ("lens space recognition", "solid torus"),
}


@dataclass(frozen=True)
class Provenance:
    kind: str
    witness_index: int | None


@dataclass
class CandidateSlope:
    slope: tc.TorusCurve
    provenance: list[Provenance] = field(default_factory=list)

    @property
    def pq(self) -> str:
        return tc.format_pq(tc.pq_of(self.slope))


@dataclass
class CandidateReport:
    goal: str
    candidates: list[CandidateSlope]
    caveats: list[str]
    notes: list[str] = field(default_factory=list)
    source: str = "vertex"

    def slopes(self) -> list[tc.TorusCurve]:
        return [c.slope for c in self.candidates]

    def to_dict(self) -> dict:
        return {
            "goal": self.goal,
            "source": self.source,
            "slopes": [
                {
                    "triple": list(c.slope),
                    "pq": c.pq,
                    "provenance": [{"kind": p.kind, "witness_index": p.witness_index} for p in c.provenance],
                }
                for c in self.candidates
            ],
            "caveats": list(self.caveats),
            "notes": list(self.notes),
        }


class _Collector:
    def __init__(self):
        self.by_slope: dict[tc.TorusCurve, CandidateSlope] = {}

    def add(self, slope, kind, witness):
        entry = self.by_slope.setdefault(slope, CandidateSlope(slope))
        prov = Provenance(kind, witness)
        if prov not in entry.provenance:
            entry.provenance.append(prov)

    def result(self):
        return [self.by_slope[s] for s in sorted(self.by_slope)]


@dataclass
class _Witness:
    index: int
    summary: SurfaceSummary

    @property
    def slope(self):
        return tc.slope_of(self.summary.boundary[0]) if self.summary.boundary else None


def _witnesses(tri: Triangulation, mode: str, source: str, cap: int | None) -> list[_Witness]:
    if not tri.is_knot_manifold():
        raise TriangulationError("triangulation is not a knot-manifold")
    tri.torus()
    if source == "vertex":
        sols = [v for v in enumerate_vertices(tri, mode, embedded_only=True)]
    elif source == "fundamental":
        if mode != "normal":
            raise ValueError("fundamental surfaces are only enumerated in normal mode")
        fs = enumerate_fundamental(tri, cap)
        sols = []
        for k, m in enumerate(fs.members):
            c = NormalCoords(m)
            if admissible_pattern(c):
                sols.append(VertexSolution(k, c, True))
    else:
        raise ValueError(f"unknown source {source!r}")
    return [_Witness(v.index, summarize(tri, v.coords)) for v in sols]


def _finish(goal, collector, caveats, notes, source, tri, mode):
    report = CandidateReport(goal, collector.result(), caveats, notes, source)
    if source == "fundamental":
        report.caveats.append(CAVEAT_FUNDAMENTAL)
    bound = slope_bound(tri.size, mode)
    report.notes.append(
        f"{len(report.candidates)} candidate slope(s), {len(vertex_slopes(report))} from {mode} vertex surfaces "
        f"(at most {bound} possible)."
    )
    return report


def vertex_slopes(report: CandidateReport) -> list[tc.TorusCurve]:
    return [c.slope for c in report.candidates if any(p.kind == VERTEX_SURFACE for p in c.provenance)]


def candidates_reducible(tri: Triangulation, source: str = "vertex", cap: int | None = None) -> CandidateReport:
    """Slopes of planar vertex surfaces with essential boundary."""
    col = _Collector()
    for w in _witnesses(tri, "normal", source, cap):
        s = w.summary
        if s.connected and s.is_planar and w.slope is not None:
            col.add(w.slope, VERTEX_SURFACE, w.index)
    notes = []
    if not col.by_slope:
        notes.append(
            "No planar surface with essential boundary was found, so every filling is irreducible "
            "provided the knot-manifold itself is irreducible with incompressible boundary."
        )
    return _finish("reducible", col, [CAVEAT_ESSENTIAL_SPHERE], notes, source, tri, "normal")


def _surface_lists(tri, source, cap):
    closed, bounded = [], []
    for w in _witnesses(tri, "normal", source, cap):
        s = w.summary
        if not s.connected:
            continue
        if s.is_closed and not (s.orientable and s.euler == 2):
            closed.append(w)
        elif not s.is_closed and not s.is_planar and w.slope is not None:
            bounded.append(w)
    return closed, bounded


def candidates_surface(tri: Triangulation, source: str = "vertex", cap: int | None = None) -> CandidateReport:
    """Closed non-sphere vertex surfaces, and slopes of non-planar bounded ones."""
    closed, bounded = _surface_lists(tri, source, cap)
    col = _Collector()
    for w in bounded:
        col.add(w.slope, VERTEX_SURFACE, w.index)
    negative = [w for w in bounded if w.summary.euler < 0]
    c = ale_constant([w.summary for w in negative]) if negative else None
    if c is not None:
        best = max(negative, key=lambda w: (w.summary.boundary_length / -w.summary.euler, -w.index))
        for s in tc.slopes_up_to_length(c):
            col.add(s, ALE_BOUND, best.index)
    notes = [
        "closed list: " + (", ".join(f"#{w.index} ({w.summary.describe()})" for w in closed) or "empty"),
        "bounded list: " + (", ".join(f"#{w.index} slope {w.slope}" for w in bounded) or "empty"),
    ]
    if c is not None:
        notes.append(f"length bound C = {c}")
    if not closed:
        notes.append(
            "The closed list is empty: a closed incompressible surface in a filling must come from "
            "the bounded list's slopes, pending the external checks."
        )
    return _finish("surface", col, [CAVEAT_INCOMPRESSIBLE], notes, source, tri, "normal")


def candidates_haken(tri: Triangulation, source: str = "vertex", cap: int | None = None) -> CandidateReport:
    """Both lists above side by side, plus the slopes common to both."""
    red = candidates_reducible(tri, source, cap)
    surf = candidates_surface(tri, source, cap)
    col = _Collector()
    for rep in (red, surf):
        for cand in rep.candidates:
            for p in cand.provenance:
                col.add(cand.slope, p.kind, p.witness_index)
    common = sorted(set(red.slopes()) & set(surf.slopes()))
    notes = [
        "reducible-side slopes: " + (", ".join(map(str, red.slopes())) or "none"),
        "surface-side slopes: " + (", ".join(map(str, surf.slopes())) or "none"),
        "in both lists: " + (", ".join(map(str, common)) or "none"),
    ]
    caveats = [CAVEAT_ESSENTIAL_SPHERE, CAVEAT_INCOMPRESSIBLE]
    return _finish("haken", col, caveats, notes, source, tri, "normal")


def candidates_s3(tri: Triangulation, source: str = "vertex", cap: int | None = None, window: int = 3) -> CandidateReport:
    """Slopes of normal and single-octagon almost-normal vertex surfaces."""
    col = _Collector()
    witnesses = _witnesses(tri, "almost-normal", source, cap)
    for w in witnesses:
        if w.slope is not None:
            col.add(w.slope, VERTEX_SURFACE, w.index)
    notes = []
    disks = [
        w for w in witnesses
        if w.slope is not None and w.summary.orientable and w.summary.euler == 1 and w.summary.boundary_circles == 1
    ]
    # the no-candidate verdict also rests on the base not being a solid torus
    caveats = [CAVEAT_S3, CAVEAT_SOLID_TORUS]
    if disks:
        mu = disks[0].slope
        line = ", ".join(tc.format_pq(pq) for pq in line_of(tc.pq_of(mu), window))
        notes.append(
            f"Compressing disk #{disks[0].index} has boundary slope {mu} ({tc.format_pq(tc.pq_of(mu))}); "
            f"if the knot-manifold is a solid torus, the fillings giving S^3 are the slopes at distance one "
            f"from it (within |r|, s <= {window}: {line})."
        )
    elif not col.by_slope:
        notes.append("No candidate slopes: no filling yields S^3, subject to the caveats.")
    return _finish("s3", col, caveats, notes, source, tri, "almost-normal")


def candidates_lens(tri: Triangulation, source: str = "vertex", cap: int | None = None) -> CandidateReport:
    """Vertex-surface slopes, the three boundary edge slopes, and separating annuli."""
    col = _Collector()
    witnesses = _witnesses(tri, "almost-normal", source, cap)
    for w in witnesses:
        if w.slope is not None:
            col.add(w.slope, VERTEX_SURFACE, w.index)
    for k in range(3):
        edge = [0, 0, 0]
        edge[k] = 1
        col.add(tc.TorusCurve(*edge), BOUNDARY_EDGE, k + 1)
    annuli = []
    for w in witnesses:
        s = w.summary
        if (
            s.connected and s.orientable and s.euler == 0 and s.boundary_circles == 2
            and w.slope is not None and s.separating
        ):
            annuli.append(w)
            col.add(w.slope, ANNULUS_SLOPE, w.index)
    notes = ["separating annuli: " + (", ".join(f"#{w.index} slope {w.slope}" for w in annuli) or "none")]
    return _finish("lens", col, [CAVEAT_LENS], notes, source, tri, "almost-normal")


_BUILDERS = {
    "reducible": candidates_reducible,
    "surface": candidates_surface,
    "haken": candidates_haken,
    "s3": candidates_s3,
    "lens": candidates_lens,
}


def candidates(tri: Triangulation, goal: str, source: str = "vertex", cap: int | None = None) -> CandidateReport:
    if goal not in _BUILDERS:
        raise ValueError(f"unknown goal {goal!r}; choose from {', '.join(GOALS)}")
    return _BUILDERS[goal](tri, source, cap)


def emit(report: CandidateReport, fmt: str = "json") -> str:
    """Serialize a report; output is deterministic."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt != "tsv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    out = csv.writer(buf, delimiter="\t", lineterminator="\n")
    out.writerow(["goal", "triple", "pq", "provenance"])
    for c in report.candidates:
        prov = ";".join(f"{p.kind}:{'' if p.witness_index is None else p.witness_index}" for p in c.provenance)
        out.writerow([report.goal, ",".join(map(str, c.slope)), c.pq, prov])
    for cav in report.caveats:
        buf.write(f"# caveat\t{cav}\n")
    for note in report.notes:
        buf.write(f"# note\t{note}\n")
    return buf.getvalue()

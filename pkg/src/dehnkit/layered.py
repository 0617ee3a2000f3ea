"""Layered triangulations of the solid torus.

Starting from the one-tetrahedron solid torus, each layer glues a new
tetrahedron onto the two boundary triangles along a boundary edge, which
flips that edge to the opposite diagonal.  :func:`build_lst` chooses layers
so that a prescribed slope bounds the meridional disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import torus as tc
from .normal import (
    NormalCoords,
    QUAD_PAIRS,
    SurfaceSummary,
    arc_count,
    boundary_restriction,
    decompose_components,
    matching_matrix,
    quad_type,
    summarize,
)
from .perm import Perm4
from .vertex import solutions_up_to
from .triangulation import EDGE_INDEX, Triangulation, TriangulationError, face_vertices, parse_triangulation

CORE_TEXT = "% one-tetrahedron solid torus\ntetrahedra 1\n0:3012 bdry bdry 0:1230\n"
CORE_MERIDIAN_DISK = (1, 0, 0, 1, 1, 0, 0)


def core() -> Triangulation:
    return parse_triangulation(CORE_TEXT)


class LayeringError(ValueError):
    pass


# -- intersection-triple arithmetic ------------------------------------------------------


def flip(y, k: int) -> tuple[int, int, int]:
    """Intersection numbers after replacing edge ``k`` by the other diagonal."""
    y = list(y)
    i, j = (m for m in range(3) if m != k)
    y[k] = abs(y[i] - y[j]) if y[k] == y[i] + y[j] else y[i] + y[j]
    return tuple(y)


def descent(y, pad: int = 0):
    """Flip positions taking ``y`` down to a permutation of [1, 3, 2].

    ``pad`` extra flips at positions 0, 1, 2, 0, ... come first.  Returns
    ``(positions, triples)`` with ``triples[0] == y``.
    """
    y = tuple(y)
    triples, positions = [y], []

    def step(k):
        nonlocal y
        y = flip(y, k)
        positions.append(k)
        triples.append(y)

    for p in range(pad):
        step(p % 3)
    while sum(y) > 6:
        before = sum(y)
        step(y.index(max(y)))
        if sum(y) >= before:
            raise LayeringError(f"descent failed to shorten {triples[-2]}")
    if sum(y) == 2:
        step(y.index(0))
    if sum(y) == 4:
        step(y.index(1))
    if sorted(y) != [1, 2, 3]:
        raise LayeringError(f"descent ended at {list(y)} instead of a permutation of [1,3,2]")
    return positions, triples


# -- layering ------------------------------------------------------------------------------------


def _rows(tri: Triangulation):
    return [list(row) for row in tri.gluings]


def layer_once(tri: Triangulation, k: int) -> Triangulation:
    """Layer a new tetrahedron on boundary edge ``e_k`` (``k`` in 1..3).

    The new boundary torus keeps ``e_i`` in position ``i`` for ``i != k`` and
    puts the new diagonal in position ``k``.
    """
    return _layer(tri, k)[0]


@lru_cache(maxsize=4096)
def _layer(tri, k):
    # triangulations are immutable, so layerings shared between builds are reused
    if k not in (1, 2, 3):
        raise LayeringError(f"boundary edge index must be 1, 2 or 3, got {k}")
    torus = tri.torus()
    reps = []
    for (i, f), labels in sorted(torus.corner_label.items())[:1]:
        for pos in (1, 2, 3):
            (v,) = [w for w, lab in labels.items() if lab == pos]
            a, b = (w for w in face_vertices(f) if w != v)
            reps.append((i, EDGE_INDEX[a, b]))
    (fa, fb) = sorted(torus.corner_label)
    n = tri.size
    base_orientable = tri.is_orientable()

    def face_map(face, labels, flip_ends):
        (apex,) = [w for w, lab in labels.items() if lab == k]
        ends = sorted(w for w in labels if w != apex)
        if flip_ends:
            ends.reverse()
        return ends, apex

    candidates = []
    for sa in (False, True):
        for sb in (False, True):
            rows = _rows(tri) + [[None] * 4]
            ends_a, apex_a = face_map(fa[1], torus.corner_label[fa], sa)
            ends_b, apex_b = face_map(fb[1], torus.corner_label[fb], sb)
            # new tet: face 3 = (0,1,2) on the first triangle, face 2 = (0,1,3) on the second
            pa = Perm4((ends_a[0], ends_a[1], apex_a, fa[1]))
            pb = Perm4((ends_b[0], ends_b[1], fb[1], apex_b))
            if base_orientable and (
                tri.tet_orientation(fa[0]) * pa.sign() != tri.tet_orientation(fb[0]) * pb.sign()
            ):
                continue  # the new tetrahedron would be oriented two ways
            rows[n][3] = (fa[0], fa[1], pa)
            rows[fa[0]][fa[1]] = (n, 3, pa.inverse())
            rows[n][2] = (fb[0], fb[1], pb)
            rows[fb[0]][fb[1]] = (n, 2, pb.inverse())
            candidates.append(rows)
    for rows in candidates:
        try:
            base = Triangulation(rows)
        except TriangulationError:
            continue
        if base_orientable and not base.is_orientable():
            continue
        if len(base.boundary_tori()) != 1 or len(base.boundary_components()) != 1:
            continue
        for sigma in Perm4.all():
            # the new boundary lies on faces 0 and 1 of tetrahedron n; the
            # lower-numbered one after relabelling fixes the torus labels
            w = 0 if sigma(0) < sigma(1) else 1
            order = sorted((1 - w, 2, 3), key=sigma)
            ok = True
            for pos, opp in enumerate(order, start=1):
                a, b = sorted(v for v in order if v != opp)
                cls = base.edge_class(n, EDGE_INDEX[a, b])
                if pos == k:
                    ok &= opp == 1 - w and all(t == n for t, _ in base.edge_classes[cls])
                else:
                    ok &= reps[pos - 1] in base.edge_classes[cls]
            if ok:
                new = base.relabel(range(n + 1), [Perm4.identity()] * n + [sigma])
                return new, sigma
    raise LayeringError(f"could not layer on edge e{k}")


def relabel_coords(c, perms) -> NormalCoords:
    """Coordinates after relabelling each tetrahedron's vertices by ``perms[i]``."""
    c = c if isinstance(c, NormalCoords) else NormalCoords(tuple(c))
    vals = [0] * len(c)
    b = c.block
    for i, s in enumerate(perms):
        for v in range(4):
            vals[b * i + s(v)] += c.tri(i, v)
        for k, ((a0, a1), _) in enumerate(QUAD_PAIRS):
            nk = quad_type(s(a0), s(a1))
            vals[b * i + 4 + nk] += c.quad(i, k)
            if c.almost_normal:
                vals[b * i + 7 + nk] += c.oct(i, k)
    return NormalCoords(tuple(vals), c.almost_normal)


def extension_options(tri: Triangulation, c: NormalCoords, m: int, max_band: int | None = None):
    """All admissible piece lists for tetrahedron ``m`` continuing the surface
    ``c`` (given on tetrahedra ``< m``) across the two faces layered onto it.

    Yields ``(band, block)`` where ``band`` counts quads parallel to the new
    edge and ``block`` is the 7-entry tetrahedron block.
    """
    glued = [f for f in range(4) if tri.gluing(m, f) is not None and tri.gluing(m, f)[0] < m]
    if len(glued) != 2:
        raise LayeringError(f"tetrahedron {m} is not layered onto earlier tetrahedra")
    x, z = glued
    u, w = (v for v in range(4) if v not in (x, z))

    def arcs(face, v):
        j, g, perm = tri.gluing(m, face)
        return arc_count(c, j, g, perm(v))

    alpha = {v: arcs(x, v) for v in (z, u, w)}
    beta = {v: arcs(z, v) for v in (x, u, w)}
    q_band, q_a, q_b = quad_type(u, w), quad_type(u, x), quad_type(u, z)
    if alpha[u] >= beta[u]:
        a, bq = alpha[u] - beta[u], 0
        t_u, t_w = beta[u], alpha[w]
    else:
        a, bq = 0, beta[u] - alpha[u]
        t_u, t_w = alpha[u], beta[w]
    if beta[w] != t_w + a or alpha[w] != t_w + bq:
        return
    top = min(alpha[z], beta[x])
    if a or bq:
        top = 0
    if max_band is not None:
        top = min(top, max_band)
    for band in range(top + 1):
        block = [0] * 7
        block[x], block[z] = beta[x] - band, alpha[z] - band
        block[u], block[w] = t_u, t_w
        block[4 + q_band] += band
        block[4 + q_a] += a
        block[4 + q_b] += bq
        yield band, tuple(block)


def _with_block(c: NormalCoords, m: int, block) -> NormalCoords:
    vals = list(c.values)
    vals[7 * m : 7 * m + 7] = block
    return NormalCoords(tuple(vals))


def push_through(tri: Triangulation, c: NormalCoords, start: int) -> NormalCoords:
    """Extend ``c`` (given on tetrahedra ``< start``) through the later layers
    without adding bands."""
    for m in range(start, tri.size):
        band, block = next(extension_options(tri, c, m, max_band=0))
        c = _with_block(c, m, block)
    return c


@dataclass(frozen=True)
class LayeredTorus:
    tri: Triangulation
    layers: tuple[int, ...]
    meridian: tc.TorusCurve
    meridian_disk: NormalCoords
    descent: tuple[tuple[int, int, int], ...]
    core_perm: Perm4
    pad: int = 0

    @property
    def t(self) -> int:
        return self.tri.size

    @property
    def pq(self):
        return tc.pq_of(self.meridian)

    def sidecar(self) -> dict:
        return {
            "tetrahedra": self.t,
            "layers": [f"e{k}" for k in self.layers],
            "meridian": list(self.meridian),
            "meridian_pq": tc.format_pq(self.pq),
            "meridian_intersections": list(tc.to_intersections(self.meridian)),
            "descent": [list(y) for y in self.descent],
            "padding_layers": self.pad,
        }


def _target_triple(target):
    if isinstance(target, str):
        target = tc.parse_slope(target)
    if isinstance(target, tc.TorusCurve):
        if not tc.is_slope(target):
            raise LayeringError(f"{target} is not a slope")
        return tc.to_intersections(target)
    y = tuple(int(v) for v in target)
    x = tc.from_intersections(y)
    if not tc.is_slope(x):
        raise LayeringError(f"intersection triple {list(y)} is not a slope")
    return y


@lru_cache(maxsize=None)
def _core_labellings():
    """First vertex relabelling of the core giving each meridian intersection triple."""
    base = core()
    out = {}
    for sigma in Perm4.all():
        tri = base.relabel([0], [sigma])
        disk = relabel_coords(CORE_MERIDIAN_DISK, [sigma])
        out.setdefault(tc.to_intersections(boundary_restriction(tri, disk)), sigma)
    return out


def build_lst(target, pad: int = 0) -> LayeredTorus:
    """Layered solid torus whose meridian is ``target``.

    ``target`` is a slope triple (:class:`TorusCurve`), an intersection
    triple ``[y1, y2, y3]`` given as a plain sequence, or a ``p/q`` string.
    """
    y = _target_triple(target)
    positions, triples = descent(y, pad)
    final = triples[-1]
    if final not in _core_labellings():
        raise LayeringError(f"no core labelling realises {list(final)}")
    core_perm = _core_labellings()[final]
    tri = core().relabel([0], [core_perm])
    disk = relabel_coords(CORE_MERIDIAN_DISK, [core_perm])
    layers = []
    for k in reversed(positions):
        tri = layer_once(tri, k + 1)
        layers.append(k + 1)
        disk = push_through(tri, NormalCoords(disk.values + (0,) * 7), tri.size - 1)
    meridian = boundary_restriction(tri, disk)
    if tc.to_intersections(meridian) != y:
        raise LayeringError(f"meridian {meridian} does not realise {list(y)}")
    return LayeredTorus(tri, tuple(layers), meridian, disk, tuple(triples), core_perm, pad)


def pad_lst(lst: LayeredTorus, n_min: int) -> LayeredTorus:
    """An equivalent layered torus with more than ``n_min`` tetrahedra."""
    if lst.t > n_min:
        return lst
    target = tc.to_intersections(lst.meridian)
    pad = lst.pad
    while True:
        pad += 1
        out = build_lst(target, pad)
        if out.t > n_min:
            return out


def layered_from_positions(positions) -> Triangulation:
    """Core plus layers at the given edge positions (1..3), in order."""
    tri = core()
    for k in positions:
        tri = layer_once(tri, k)
    return tri


# -- planar surface audit ---------------------------------------------------------------------------

D_MU, D_TAU, A_ALPHA, MOBIUS, OTHER = "D_mu", "D_tau", "A_alpha", "Mobius", "NonPlanarOther"


@dataclass(frozen=True)
class PlanarClass:
    kind: str
    witness: SurfaceSummary


def classify_surface(s: SurfaceSummary) -> str:
    if len(s.boundary) != 1:
        return OTHER
    slope = tc.slope_of(s.boundary[0])
    if s.orientable and s.euler == 1 and s.boundary_circles == 1:
        return D_TAU if slope is None else D_MU
    if s.orientable and s.euler == 0 and s.boundary_circles == 2 and slope is not None:
        return A_ALPHA
    if not s.orientable and s.euler == 0 and s.boundary_circles == 1:
        return MOBIUS
    return OTHER


def weight_floor(kind: str, t: int) -> int | None:
    return {D_MU: t + 4, D_TAU: 2 * (t + 2), A_ALPHA: 2 * (t + 1)}.get(kind)


@dataclass
class PlanarAudit:
    t: int
    cap: int
    classes: list[PlanarClass]
    closed: list[NormalCoords] = field(default_factory=list)
    weight_violations: list[PlanarClass] = field(default_factory=list)
    truncated: bool = False

    def of_kind(self, kind):
        return [c for c in self.classes if c.kind == kind]

    @property
    def planar_ok(self) -> bool:
        """Every planar class is one of the three expected kinds."""
        return all(c.kind in (D_MU, D_TAU, A_ALPHA) for c in self.classes if c.witness.is_planar)

    @property
    def meridian_disk_unique(self) -> bool:
        return len(self.of_kind(D_MU)) == 1

    @property
    def ok(self) -> bool:
        return self.planar_ok and self.meridian_disk_unique and not self.weight_violations and not self.closed


def layered_solutions(tri: Triangulation, cap: int, max_solutions: int = 2_000_000):
    """All nonzero admissible solutions with at most ``cap`` pieces on a
    triangulation built as core (tet 0) plus successive layers.

    Returns ``(solutions, truncated)``.
    """
    out = []
    truncated = False
    for core_block in _core_solutions(tri, cap):
        c = NormalCoords(core_block + (0,) * (7 * (tri.size - 1)))
        stack = [(c, 1, sum(core_block))]
        while stack:
            c, m, total = stack.pop()
            if m == tri.size:
                if total:
                    out.append(c)
                    if len(out) >= max_solutions:
                        return out, True
                continue
            for _, block in extension_options(tri, c, m, max_band=None):
                t2 = total + sum(block)
                if t2 <= cap:
                    stack.append((_with_block(c, m, block), m + 1, t2))
    out.sort(key=lambda c: c.values)
    return out, truncated


def _core_solutions(tri: Triangulation, cap: int):
    """Admissible solutions on tetrahedron 0 alone, with its self-gluings."""
    alone = Triangulation([[g if g is not None and g[0] == 0 else None for g in tri.gluings[0]]])
    for vals in solutions_up_to(matching_matrix(alone), 7, cap):
        if sum(1 for q in vals[4:] if q) <= 1:
            yield vals


def classify_planar(lst, search_cap: int | None = None) -> PlanarAudit:
    """Enumerate connected admissible surfaces up to the piece cap and classify them."""
    tri = lst.tri if isinstance(lst, LayeredTorus) else lst
    t = tri.size
    cap = 8 * t if search_cap is None else search_cap
    sols, truncated = layered_solutions(tri, cap)
    audit = PlanarAudit(t, cap, [], truncated=truncated)
    for c in sols:
        parts = decompose_components(tri, c)
        if len(parts) != 1:
            continue
        s = summarize(tri, c)
        if s.is_closed:
            audit.closed.append(c)
            continue
        pc = PlanarClass(classify_surface(s), s)
        audit.classes.append(pc)
        floor = weight_floor(pc.kind, t)
        if floor is not None and s.weight < floor:
            audit.weight_violations.append(pc)
    return audit

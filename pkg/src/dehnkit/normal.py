"""Normal and almost-normal surface coordinates.

Each tetrahedron contributes ``t0 t1 t2 t3 q0 q1 q2`` and, in almost-normal
mode, ``o0 o1 o2``.  ``t_v`` counts triangles cutting off vertex ``v``.
Quadrilateral and octagon type ``k`` is named by the vertex pairing it
respects: 0 = {01|23}, 1 = {02|13}, 2 = {03|12}.  A quad of type {ab|cd}
separates a, b from c, d; an octagon of that type crosses edges ab and cd
twice and the other four edges once.

Surfaces are rebuilt as explicit cell complexes (points on edges, arcs on
faces, pieces in tetrahedra) to read off Euler characteristic,
orientability, boundary circles, connectivity and separation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from ._unionfind import UnionFind
from .torus import TorusCurve
from .triangulation import EDGE_INDEX, Triangulation, face_vertices

QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
NORMAL, ALMOST_NORMAL = "normal", "almost-normal"


def quad_type(a: int, b: int) -> int:
    """The quad type whose vertex pairing puts ``a`` with ``b``."""
    for k, (p, r) in enumerate(QUAD_PAIRS):
        if {a, b} in ({*p}, {*r}):
            return k
    raise ValueError(f"no quad type pairs {a} with {b}")


def partner(v: int, k: int) -> int:
    p, r = QUAD_PAIRS[k]
    for pair in (p, r):
        if v in pair:
            return pair[1] if pair[0] == v else pair[0]
    raise AssertionError


class CoordinateError(ValueError):
    pass


@dataclass(frozen=True)
class NormalCoords:
    """A coordinate list, tetrahedron-major, with its mode."""

    values: tuple[int, ...]
    almost_normal: bool = False

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise CoordinateError("coordinates must be nonnegative")
        if len(vals) % self.block:
            raise CoordinateError(f"length {len(vals)} is not a multiple of {self.block}")
        object.__setattr__(self, "values", vals)

    @property
    def block(self) -> int:
        return 10 if self.almost_normal else 7

    @property
    def mode(self) -> str:
        return ALMOST_NORMAL if self.almost_normal else NORMAL

    @property
    def tet_count(self) -> int:
        return len(self.values) // self.block

    def tri(self, i: int, v: int) -> int:
        return self.values[self.block * i + v]

    def quad(self, i: int, k: int) -> int:
        return self.values[self.block * i + 4 + k]

    def oct(self, i: int, k: int) -> int:
        return self.values[self.block * i + 7 + k] if self.almost_normal else 0

    def tet(self, i: int) -> tuple[int, ...]:
        return self.values[self.block * i : self.block * (i + 1)]

    def __add__(self, other):
        other = _same_mode(self, other)
        return NormalCoords(tuple(a + b for a, b in zip(self.values, other.values)), self.almost_normal)

    def scaled(self, k: int) -> "NormalCoords":
        return NormalCoords(tuple(k * v for v in self.values), self.almost_normal)

    def is_zero(self) -> bool:
        return not any(self.values)

    def total(self) -> int:
        return sum(self.values)

    def as_almost_normal(self) -> "NormalCoords":
        if self.almost_normal:
            return self
        vals = []
        for i in range(self.tet_count):
            vals.extend(self.tet(i))
            vals.extend((0, 0, 0))
        return NormalCoords(tuple(vals), True)

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return " ".join(map(str, self.values))


def _same_mode(a: NormalCoords, b) -> NormalCoords:
    b = as_coords(b, almost_normal=a.almost_normal) if not isinstance(b, NormalCoords) else b
    if a.almost_normal != b.almost_normal:
        if a.almost_normal:
            b = b.as_almost_normal()
        else:
            raise CoordinateError("cannot add almost-normal coordinates to normal ones")
    if len(a) != len(b):
        raise CoordinateError("coordinate lists have different lengths")
    return b


def as_coords(c, tri: Triangulation | None = None, almost_normal=None) -> NormalCoords:
    """Coerce a sequence to :class:`NormalCoords`, inferring the mode from its length."""
    if isinstance(c, NormalCoords):
        coords = c
    else:
        vals = tuple(int(v) for v in c)
        if almost_normal is None:
            if tri is None:
                almost_normal = len(vals) % 7 != 0
            else:
                almost_normal = len(vals) == 10 * tri.size
        coords = NormalCoords(vals, almost_normal)
    if tri is not None and coords.tet_count != tri.size:
        raise CoordinateError(f"coordinates describe {coords.tet_count} tetrahedra, triangulation has {tri.size}")
    return coords


def zero(tri: Triangulation, almost_normal=False) -> NormalCoords:
    return NormalCoords((0,) * ((10 if almost_normal else 7) * tri.size), almost_normal)


# -- arc and point counts -------------------------------------------------------


def arc_coefficients(f: int, v: int, block: int) -> dict[int, int]:
    """Offsets (within one tetrahedron's block) of the pieces leaving an arc
    near corner ``v`` of face ``f``."""
    coeff = {v: 1, 4 + quad_type(v, f): 1}
    if block == 10:
        for k in range(3):
            if partner(v, k) != f:
                coeff[7 + k] = 1
    return coeff


def arc_count(c: NormalCoords, i: int, f: int, v: int) -> int:
    base = c.block * i
    return sum(c.values[base + off] * m for off, m in arc_coefficients(f, v, c.block).items())


def edge_coefficients(a: int, b: int, block: int) -> dict[int, int]:
    """Offsets of the pieces meeting tetrahedron edge ``ab``, with multiplicity."""
    coeff = {a: 1, b: 1}
    pairing = quad_type(a, b)
    for k in range(3):
        if k != pairing:
            coeff[4 + k] = 1
    if block == 10:
        for k in range(3):
            coeff[7 + k] = 2 if k == pairing else 1
    return coeff


def edge_points(c: NormalCoords, i: int, a: int, b: int) -> int:
    base = c.block * i
    return sum(c.values[base + off] * m for off, m in edge_coefficients(a, b, c.block).items())


def matching_matrix(tri: Triangulation, almost_normal=False) -> np.ndarray:
    """One row per (interior face pair, arc type); identically zero rows dropped."""
    block = 10 if almost_normal else 7
    rows = []
    for i, f, j, g, perm in tri.face_pairs():
        for v in face_vertices(f):
            row = [0] * (block * tri.size)
            for off, m in arc_coefficients(f, v, block).items():
                row[block * i + off] += m
            for off, m in arc_coefficients(g, perm(v), block).items():
                row[block * j + off] -= m
            if any(row):
                rows.append(row)
    return np.array(rows, dtype=np.int64).reshape(len(rows), block * tri.size)


def is_matched(tri: Triangulation, c) -> bool:
    c = as_coords(c, tri)
    for i, f, j, g, perm in tri.face_pairs():
        for v in face_vertices(f):
            if arc_count(c, i, f, v) != arc_count(c, j, g, perm(v)):
                return False
    return True


def is_admissible(tri: Triangulation, c) -> bool:
    """Embedded-admissible: one quad type per tetrahedron, one octagon overall,
    and never a quad beside the octagon.  ``c`` must satisfy the matching
    equations."""
    c = as_coords(c, tri)
    if not is_matched(tri, c):
        raise CoordinateError("coordinates do not satisfy the matching equations")
    return admissible_pattern(c)


def admissible_pattern(c: NormalCoords) -> bool:
    octagons = 0
    for i in range(c.tet_count):
        quads = [c.quad(i, k) for k in range(3)]
        octs = sum(c.oct(i, k) for k in range(3))
        if sum(1 for q in quads if q) > 1:
            return False
        if octs and any(quads):
            return False
        octagons += octs
    return octagons <= 1


def compatible(tri: Triangulation, c1, c2) -> bool:
    """Two admissible surfaces are compatible when their sum is admissible."""
    return is_admissible(tri, add(c1, c2))


def add(c1, c2) -> NormalCoords:
    c1 = c1 if isinstance(c1, NormalCoords) else as_coords(c1)
    return c1 + c2


def weight(tri: Triangulation, c) -> int:
    c = as_coords(c, tri)
    total = 0
    for cls in tri.edge_classes:
        i, e = cls[0]
        a, b = _EDGE_VERTS[e]
        total += edge_points(c, i, a, b)
    return total


_EDGE_VERTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def boundary_restriction(tri: Triangulation, c, torus=None) -> TorusCurve:
    """Read the boundary curve on a one-vertex boundary torus."""
    c = as_coords(c, tri)
    if torus is None:
        torus = tri.torus()
    if not hasattr(torus, "corner_label"):
        raise CoordinateError("boundary component is not a one-vertex torus")
    seen = []
    for (i, f), labels in torus.corner_label.items():
        x = [0, 0, 0]
        for v, k in labels.items():
            x[k - 1] = arc_count(c, i, f, v)
        seen.append(tuple(x))
    if len(set(seen)) != 1:
        raise CoordinateError(f"boundary arc counts disagree between the two triangles: {seen}")
    return TorusCurve(*seen[0])


# -- serialization ------------------------------------------------------------------


def format_coords(c: NormalCoords) -> str:
    lines = [f"coords {c.mode}"]
    for i in range(c.tet_count):
        lines.append(" ".join(map(str, c.tet(i))))
    return "\n".join(lines) + "\n"


def parse_coords(text: str) -> NormalCoords:
    body = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln and not ln.startswith("%")]
    if not body:
        raise CoordinateError("empty coordinate file")
    header = body[0].split()
    if header[:1] != ["coords"] or len(header) != 2 or header[1] not in (NORMAL, ALMOST_NORMAL):
        raise CoordinateError("expected header 'coords normal' or 'coords almost-normal'")
    if any(tok.startswith("u") or tok.startswith("tube") for ln in body[1:] for tok in ln.split()):
        raise CoordinateError("tube pieces are not supported")
    try:
        vals = tuple(int(tok) for ln in body[1:] for tok in ln.split())
    except ValueError as exc:
        raise CoordinateError(f"bad coordinate token: {exc}") from None
    return NormalCoords(vals, header[1] == ALMOST_NORMAL)


# -- cell complex reconstruction ---------------------------------------------------

# Cyclic corner lists (as vertex pairs) for each piece shape.  Consecutive
# corners share a vertex v; the arc between them lies on the face missing
# from both, running from the far end of the first to that of the second.


def _tri_corners(v):
    a, b, c = (w for w in range(4) if w != v)
    return [(v, a), (v, b), (v, c)]


def _quad_corners(k):
    (a, b), (c, d) = QUAD_PAIRS[k]
    return [(a, c), (b, c), (b, d), (a, d)]


def _oct_corners(k):
    (a, b), (c, d) = QUAD_PAIRS[k]
    return [(a, b), (a, c), (c, d), (b, c), (a, b), (b, d), (c, d), (a, d)]


def _arc_directions(corners):
    """Map (face, corner vertex) -> (from, to) around the piece's boundary."""
    out = {}
    n = len(corners)
    for s in range(n):
        e1, e2 = set(corners[s]), set(corners[(s + 1) % n])
        (v,) = e1 & e2
        (x,) = e1 - {v}
        (y,) = e2 - {v}
        (f,) = {0, 1, 2, 3} - {v, x, y}
        out[f, v] = (x, y)
    return out


_DIRS = {
    "t": [_arc_directions(_tri_corners(v)) for v in range(4)],
    "q": [_arc_directions(_quad_corners(k)) for k in range(3)],
    "o": [_arc_directions(_oct_corners(k)) for k in range(3)],
}


class SurfaceComplex:
    """Explicit cell structure of an admissible surface.

    Pieces are ``(kind, tet, type, index)`` with kind ``t``, ``q`` or ``o``.
    Parallel quads of one type are indexed from the side holding vertex 0.
    """

    def __init__(self, tri: Triangulation, c):
        c = as_coords(c, tri)
        if not is_matched(tri, c):
            raise CoordinateError("coordinates do not satisfy the matching equations")
        if not admissible_pattern(c):
            raise CoordinateError("coordinates are not embedded-admissible")
        self.tri, self.coords = tri, c
        self.pieces = []
        for i in range(tri.size):
            for v in range(4):
                self.pieces += [("t", i, v, k) for k in range(c.tri(i, v))]
            for k in range(3):
                self.pieces += [("q", i, k, j) for j in range(c.quad(i, k))]
            for k in range(3):
                self.pieces += [("o", i, k, j) for j in range(c.oct(i, k))]
        self._arc_lists = {}
        for i in range(tri.size):
            for f in range(4):
                for v in face_vertices(f):
                    self._arc_lists[i, f, v] = self._arcs_near(i, f, v)
        self._glue()

    def _arcs_near(self, i, f, v):
        c = self.coords
        out = [("t", i, v, k) for k in range(c.tri(i, v))]
        k = quad_type(v, f)
        n = c.quad(i, k)
        order = range(n) if v in QUAD_PAIRS[k][0] else range(n - 1, -1, -1)
        out += [("q", i, k, j) for j in order]
        for k in range(3):
            if partner(v, k) != f:
                out += [("o", i, k, j) for j in range(c.oct(i, k))]
        return out

    def arc_piece(self, i, f, v, p):
        return self._arc_lists[i, f, v][p]

    def _point(self, i, v, a, p):
        """Point on tet edge {v, a} at distance ``p`` from ``v``."""
        lo, hi = min(v, a), max(v, a)
        if v == lo:
            idx = p
        else:
            idx = edge_points(self.coords, i, lo, hi) - 1 - p
        return (i, EDGE_INDEX[lo, hi], idx)

    def arc_endpoints(self, i, f, v, p):
        a, b = (w for w in face_vertices(f) if w != v)
        return self._point(i, v, a, p), self._point(i, v, b, p)

    def _glue(self):
        tri = self.tri
        self.piece_uf = UnionFind(self.pieces)
        self.orient_uf = UnionFind(self.pieces)
        self.arc_uf = UnionFind(self._all_arcs())
        self.point_uf = UnionFind()
        for arc in self._all_arcs():
            for pt in self.arc_endpoints(*arc):
                self.point_uf.add(pt)
        for i, f, j, g, perm in tri.face_pairs():
            for v in face_vertices(f):
                w = perm(v)
                for p, piece in enumerate(self._arc_lists[i, f, v]):
                    other = self._arc_lists[j, g, w][p]
                    self.piece_uf.union(piece, other)
                    self.arc_uf.union((i, f, v, p), (j, g, w, p))
                    a, b = (u for u in face_vertices(f) if u != v)
                    self.point_uf.union(self._point(i, v, a, p), self._point(j, w, perm(a), p))
                    self.point_uf.union(self._point(i, v, b, p), self._point(j, w, perm(b), p))
                    x, y = self.direction(piece, f, v)
                    x2, y2 = self.direction(other, g, w)
                    self.orient_uf.union(piece, other, odd=(perm(x), perm(y)) == (x2, y2))

    @staticmethod
    def direction(piece, f, v):
        kind, _, k, _ = piece
        return _DIRS[kind][k][f, v]

    def _all_arcs(self):
        for (i, f, v), lst in self._arc_lists.items():
            for p in range(len(lst)):
                yield (i, f, v, p)

    def boundary_arcs(self):
        for (i, f, v), lst in self._arc_lists.items():
            if self.tri.gluing(i, f) is None:
                for p in range(len(lst)):
                    yield (i, f, v, p)

    # -- derived data --------------------------------------------------------

    def components(self):
        """Piece lists of the connected components, ordered by first piece."""
        groups = {}
        for piece in self.pieces:
            groups.setdefault(self.piece_uf.root(piece), []).append(piece)
        return list(groups.values())

    def component_of(self, piece):
        return self.piece_uf.root(piece)

    def euler_by_component(self):
        out = {}
        for piece in self.pieces:
            r = self.component_of(piece)
            out[r] = out.get(r, 0) + 1
        arcs_seen, points_seen = set(), set()
        for arc in self._all_arcs():
            r = self.component_of(self.arc_piece(*arc))
            ar = self.arc_uf.root(arc)
            if ar not in arcs_seen:
                arcs_seen.add(ar)
                out[r] -= 1
            for pt in self.arc_endpoints(*arc):
                pr = self.point_uf.root(pt)
                if pr not in points_seen:
                    points_seen.add(pr)
                    out[r] += 1
        return out

    def boundary_circles_by_component(self):
        circles = UnionFind()
        by_point = {}
        for arc in self.boundary_arcs():
            circles.add(arc)
            for pt in self.arc_endpoints(*arc):
                by_point.setdefault(self.point_uf.root(pt), []).append(arc)
        for arcs in by_point.values():
            for other in arcs[1:]:
                circles.union(arcs[0], other)
        out = {}
        for group in circles.groups():
            r = self.component_of(self.arc_piece(*group[0]))
            out[r] = out.get(r, 0) + 1
        return out

    def orientable_by_component(self):
        bad = {self.component_of(a) for a, _ in self.orient_uf.conflicts}
        return {self.component_of(p): self.component_of(p) not in bad for p in self.pieces}

    def complement_regions(self) -> int:
        """Number of connected components of the triangulation minus the surface."""
        tri = self.tri
        uf = UnionFind()
        for i in range(tri.size):
            for r in self._tet_regions(i):
                uf.add((i, r))
        for i, f, j, g, perm in tri.face_pairs():
            for r1, v in self._face_regions(i, f):
                if v is None:
                    uf.union((i, r1), (j, self._central_face_region(j, g)))
                else:
                    uf.union((i, r1), (j, self._corner_face_region(j, g, perm(v[0]), v[1])))
        return len(uf.groups())

    def _tet_regions(self, i):
        c = self.coords
        regions = [("v", v, k) for v in range(4) for k in range(c.tri(i, v))]
        kq = [k for k in range(3) if c.quad(i, k)]
        ko = [k for k in range(3) if c.oct(i, k)]
        if kq:
            regions += [("s", m) for m in range(c.quad(i, kq[0]) + 1)]
        elif ko:
            regions += [("X",), ("Y",)]
        else:
            regions.append(("C",))
        return regions

    def _face_regions(self, i, f):
        """Face regions as (tet region, (corner, depth) or None for the centre)."""
        out = []
        for v in face_vertices(f):
            for k in range(len(self._arc_lists[i, f, v])):
                out.append((self._corner_face_region(i, f, v, k), (v, k)))
        out.append((self._central_face_region(i, f), None))
        return out

    def _corner_face_region(self, i, f, v, k):
        c = self.coords
        t = c.tri(i, v)
        if k < t:
            return ("v", v, k)
        kind, _, typ, _ = self._arc_lists[i, f, v][k]
        if kind == "q":
            m = k - t
            return ("s", m) if v in QUAD_PAIRS[typ][0] else ("s", c.quad(i, typ) - m)
        return ("X",) if v in QUAD_PAIRS[typ][0] else ("Y",)

    def _central_face_region(self, i, f):
        c = self.coords
        for v in face_vertices(f):
            extra = self._arc_lists[i, f, v][c.tri(i, v) :]
            if extra:
                kind, _, typ, _ = extra[0]
                if kind == "q":
                    return ("s", c.quad(i, typ)) if v in QUAD_PAIRS[typ][0] else ("s", 0)
                # the centre lies with the corner carrying no octagon arc
                (w,) = [u for u in face_vertices(f) if partner(u, typ) == f]
                return ("X",) if w in QUAD_PAIRS[typ][0] else ("Y",)
        kq = [k for k in range(3) if c.quad(i, k)]
        if kq:
            # no quad arc on this face is impossible for a nonzero quad type
            raise AssertionError("quad type without arcs on a face")
        ko = [k for k in range(3) if c.oct(i, k)]
        if ko:
            raise AssertionError("octagon without arcs on a face")
        return ("C",)


def decompose_components(tri: Triangulation, c) -> list[NormalCoords]:
    """Coordinates of the connected components, summing to ``c``."""
    cx = SurfaceComplex(tri, c)
    return [_coords_of(cx.coords, group) for group in cx.components()]


def _coords_of(template: NormalCoords, pieces) -> NormalCoords:
    vals = [0] * len(template)
    b = template.block
    for kind, i, k, _ in pieces:
        off = {"t": 0, "q": 4, "o": 7}[kind]
        vals[b * i + off + k] += 1
    return NormalCoords(tuple(vals), template.almost_normal)


@dataclass(frozen=True)
class SurfaceSummary:
    coords: NormalCoords
    euler: int
    boundary: tuple[TorusCurve, ...]
    boundary_circles: int
    weight: int
    orientable: bool
    genus: int
    connected: bool
    separating: bool | None

    @property
    def is_closed(self) -> bool:
        return self.boundary_circles == 0

    @property
    def is_planar(self) -> bool:
        return self.orientable and self.genus == 0

    @property
    def boundary_length(self) -> int:
        return sum(2 * sum(b) for b in self.boundary)

    def describe(self) -> str:
        if self.orientable:
            kind = f"orientable genus {self.genus}"
        else:
            kind = f"non-orientable, {self.genus} crosscaps"
        return f"chi={self.euler}, {kind}, {self.boundary_circles} boundary circle(s)"


def summarize(tri: Triangulation, c) -> SurfaceSummary:
    """Topology of the whole surface ``c`` (one entry, possibly disconnected)."""
    cx = SurfaceComplex(tri, c)
    return _summary(cx, cx.coords)


def summarize_components(tri: Triangulation, c) -> list[SurfaceSummary]:
    return [summarize(tri, part) for part in decompose_components(tri, c)]


def _summary(cx: SurfaceComplex, coords: NormalCoords) -> SurfaceSummary:
    tri = cx.tri
    chi = sum(cx.euler_by_component().values())
    circles = sum(cx.boundary_circles_by_component().values())
    orient = cx.orientable_by_component()
    orientable = all(orient.values())
    ncomp = len(cx.components())
    if orientable:
        genus = (2 * ncomp - chi - circles) // 2
    else:
        genus = 2 * ncomp - chi - circles
    boundary = tuple(boundary_restriction(tri, coords, torus) for torus in tri.boundary_tori())
    separating = None
    if not coords.is_zero():
        separating = cx.complement_regions() > tri.component_count()
    return SurfaceSummary(
        coords=coords,
        euler=chi,
        boundary=boundary,
        boundary_circles=circles,
        weight=weight(tri, coords),
        orientable=orientable,
        genus=genus,
        connected=ncomp == 1,
        separating=separating,
    )


def euler_characteristic(tri: Triangulation, c) -> int:
    """Points minus arcs plus pieces; valid for any matched list."""
    c = as_coords(c, tri)
    arcs = 0
    for i in range(tri.size):
        for f in range(4):
            g = tri.gluing(i, f)
            if g is not None and (g[0], g[1]) < (i, f):
                continue
            arcs += sum(arc_count(c, i, f, v) for v in face_vertices(f))
    return weight(tri, c) - arcs + c.total()


def primitive(values) -> tuple[int, ...]:
    g = 0
    for v in values:
        g = gcd(g, v)
    return tuple(v // g for v in values) if g else tuple(values)

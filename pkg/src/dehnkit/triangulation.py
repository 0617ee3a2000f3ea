"""Generalized triangulations of 3-manifolds: tetrahedra with face gluings.

Face ``f`` of a tetrahedron is the face opposite vertex ``f``.  A gluing of
face ``f`` of tetrahedron ``i`` is a triple ``(j, g, perm)`` where ``perm``
maps the vertices of tetrahedron ``i`` to those of ``j`` with
``perm(f) == g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ._unionfind import UnionFind
from .perm import Perm4

EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {}
for _k, (_a, _b) in enumerate(EDGES):
    EDGE_INDEX[_a, _b] = _k
    EDGE_INDEX[_b, _a] = _k


def face_vertices(f: int) -> tuple[int, int, int]:
    return tuple(v for v in range(4) if v != f)


class TriangulationError(ValueError):
    """Malformed or inconsistent triangulation data."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class BoundarySurface:
    """One connected component of the boundary surface."""

    faces: tuple[tuple[int, int], ...]
    vertex_count: int
    edge_count: int
    orientable: bool

    @property
    def euler(self) -> int:
        return self.vertex_count - self.edge_count + len(self.faces)

    @property
    def is_torus(self) -> bool:
        return self.orientable and self.euler == 0

    @property
    def is_one_vertex_torus(self) -> bool:
        return self.is_torus and self.vertex_count == 1


@dataclass(frozen=True)
class BoundaryTorus(BoundarySurface):
    """A boundary component that is a one-vertex torus (two triangles).

    ``edges`` holds the edge-class ids ``(e1, e2, e3)``.  The labelling is
    read off the first boundary triangle (lowest ``(tet, face)``): with its
    vertices in increasing order, ``e_k`` is the edge opposite the k-th
    vertex.  ``corner_label[(tet, face)][v]`` gives the k for which the side
    of that triangle opposite corner ``v`` is ``e_k``; normal arcs cutting
    off corner ``v`` are counted by coordinate ``x_k``.
    """

    edges: tuple[int, int, int] = ()
    corner_label: dict = field(default_factory=dict, compare=False, hash=False)


class Triangulation:
    """A finite set of tetrahedra with a family of face identifications.

    Instances are immutable.  The constructor validates the gluing table
    and derives the skeleton (edge and vertex classes, boundary faces).
    """

    def __init__(self, gluings):
        table = []
        for i, row in enumerate(gluings):
            row = list(row)
            if len(row) != 4:
                raise TriangulationError(f"tetrahedron {i} needs 4 faces")
            out = []
            for g in row:
                if g is None:
                    out.append(None)
                else:
                    j, face, perm = g
                    if not isinstance(perm, Perm4):
                        perm = Perm4(perm)
                    out.append((int(j), int(face), perm))
            table.append(tuple(out))
        if not table:
            raise TriangulationError("triangulation needs at least one tetrahedron")
        self._gluings = tuple(table)
        self._validate()
        self._build_skeleton()

    # -- construction ---------------------------------------------------

    def _validate(self):
        n = len(self._gluings)
        for i, row in enumerate(self._gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                j, face, perm = g
                if not 0 <= j < n:
                    raise TriangulationError(f"face ({i},{f}) glued to missing tetrahedron {j}")
                if perm(f) != face:
                    raise TriangulationError(
                        f"permutation {perm} does not map face {f} of tet {i} to face {face} of tet {j}"
                    )
                if (j, face) == (i, f):
                    raise TriangulationError(f"face ({i},{f}) glued to itself")
                back = self._gluings[j][face]
                if back is None or back[0] != i or back[1] != f or back[2] != perm.inverse():
                    raise TriangulationError(f"non-involutive gluing at face ({i},{f})")

    def _build_skeleton(self):
        n = self.size
        edges = UnionFind((i, e) for i in range(n) for e in range(6))
        verts = UnionFind((i, v) for i in range(n) for v in range(4))
        for i, f, j, g, perm in self.face_pairs():
            for v in face_vertices(f):
                verts.union((i, v), (j, perm(v)))
            for a, b in EDGES:
                if f in (a, b):
                    continue
                pa, pb = perm(a), perm(b)
                # parity records whether the edge direction flips
                edges.union((i, EDGE_INDEX[a, b]), (j, EDGE_INDEX[pa, pb]), odd=pa > pb)
        self._edge_conflicts = list(edges.conflicts)
        if self._edge_conflicts:
            (i, e), _ = self._edge_conflicts[0]
            raise TriangulationError(f"edge {EDGES[e]} of tet {i} is identified with itself in reverse")
        self.edge_classes = self._canonical_classes(edges)
        self.vertex_classes = self._canonical_classes(verts)
        self._edge_class_of = {m: k for k, cls in enumerate(self.edge_classes) for m in cls}
        self._vertex_class_of = {m: k for k, cls in enumerate(self.vertex_classes) for m in cls}

    @staticmethod
    def _canonical_classes(uf):
        groups = [sorted(g) for g in uf.groups()]
        groups.sort(key=lambda g: g[0])
        return [tuple(g) for g in groups]

    # -- basic queries ----------------------------------------------------

    @property
    def size(self) -> int:
        return len(self._gluings)

    @property
    def gluings(self):
        return self._gluings

    def gluing(self, tet: int, face: int):
        return self._gluings[tet][face]

    def face_pairs(self):
        """Each interior face pair once, as ``(i, f, j, g, perm)`` with ``(i, f) < (j, g)``."""
        for i, row in enumerate(self._gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                j, face, perm = g
                if (i, f) < (j, face):
                    yield i, f, j, face, perm

    @cached_property
    def boundary_faces(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, f) for i in range(self.size) for f in range(4) if self._gluings[i][f] is None)

    def edge_class(self, tet: int, edge: int) -> int:
        return self._edge_class_of[tet, edge]

    def vertex_class(self, tet: int, vertex: int) -> int:
        return self._vertex_class_of[tet, vertex]

    def is_closed(self) -> bool:
        return not self.boundary_faces

    @cached_property
    def _tet_components(self):
        uf = UnionFind(range(self.size))
        for i, _, j, _, _ in self.face_pairs():
            uf.union(i, j)
        return uf

    def component_count(self) -> int:
        return len(self._tet_components.groups())

    def is_connected(self) -> bool:
        return self.component_count() == 1

    @cached_property
    def _orientation(self):
        uf = UnionFind(range(self.size))
        for i, _, j, _, perm in self.face_pairs():
            # consistent orientations need an odd gluing between like-signed tets
            uf.union(i, j, odd=perm.sign() > 0)
        return uf

    def is_orientable(self) -> bool:
        return not self._orientation.conflicts

    def tet_orientation(self, tet: int) -> int:
        """A consistent +1/-1 orientation per tetrahedron (orientable case)."""
        return -1 if self._orientation.find(tet)[1] else 1

    # -- boundary -----------------------------------------------------------

    def boundary_edge_partner(self, tet, face, a, b):
        """Walk around edge ``ab`` through the interior to the next boundary face.

        Returns ``(tet', face', a', b')`` with ``a -> a'`` and ``b -> b'``.
        """
        i, a0, b0 = tet, a, b
        entered = face
        for _ in range(6 * self.size + 6):
            nxt = 6 - a0 - b0 - entered
            g = self._gluings[i][nxt]
            if g is None:
                return i, nxt, a0, b0
            j, gface, perm = g
            i, a0, b0, entered = j, perm(a0), perm(b0), gface
        raise TriangulationError(f"edge {a}{b} of tet {tet} does not close up on the boundary")

    @cached_property
    def _boundary(self):
        faces = self.boundary_faces
        pairing = {}
        for i, f in faces:
            for a, b in EDGES:
                if f in (a, b):
                    continue
                pairing[i, f, a, b] = self.boundary_edge_partner(i, f, a, b)
        comps = UnionFind(faces)
        corners = UnionFind((i, f, v) for i, f in faces for v in face_vertices(f))
        orient = UnionFind(faces)
        for (i, f, a, b), (i2, f2, a2, b2) in pairing.items():
            comps.union((i, f), (i2, f2))
            corners.union((i, f, a), (i2, f2, a2))
            corners.union((i, f, b), (i2, f2, b2))
            # induced orientations must run the shared side in opposite directions
            s1 = _side_direction(f, a, b)
            s2 = _side_direction(f2, a2, b2)
            orient.union((i, f), (i2, f2), odd=(s1 == s2))
        return pairing, comps, corners, orient

    def boundary_components(self):
        """Boundary components in order of their first face.

        One-vertex tori come back as :class:`BoundaryTorus`; everything else
        as a plain :class:`BoundarySurface` summary.
        """
        pairing, comps, corners, orient = self._boundary
        out = []
        bad_orient = {orient.root(a) for a, _ in orient.conflicts}
        for group in comps.groups():
            group = tuple(sorted(group))
            gset = set(group)
            vroots = {corners.root((i, f, v)) for i, f in group for v in face_vertices(f)}
            sides = {
                frozenset([(i, f, a, b), _side_key(*pairing[i, f, a, b])])
                for (i, f, a, b) in pairing
                if (i, f) in gset
            }
            orientable = orient.root(group[0]) not in bad_orient
            base = dict(faces=group, vertex_count=len(vroots), edge_count=len(sides), orientable=orientable)
            surf = BoundarySurface(**base)
            if surf.is_one_vertex_torus and len(group) == 2:
                torus = self._label_torus(group, base)
                out.append(torus if torus is not None else surf)
            else:
                out.append(surf)
        return out

    def _label_torus(self, group, base):
        first = group[0]
        i, f = first
        fv = face_vertices(f)
        labels = []
        for v in fv:
            a, b = (w for w in fv if w != v)
            labels.append(self.edge_class(i, EDGE_INDEX[a, b]))
        if len(set(labels)) != 3:
            return None
        corner_label = {}
        for ti, tf in group:
            tv = face_vertices(tf)
            lab = {}
            for v in tv:
                a, b = (w for w in tv if w != v)
                cls = self.edge_class(ti, EDGE_INDEX[a, b])
                if cls not in labels:
                    return None
                lab[v] = labels.index(cls) + 1
            if sorted(lab.values()) != [1, 2, 3]:
                return None
            corner_label[ti, tf] = lab
        return BoundaryTorus(edges=tuple(labels), corner_label=corner_label, **base)

    def boundary_tori(self) -> list[BoundaryTorus]:
        return [c for c in self.boundary_components() if isinstance(c, BoundaryTorus)]

    def torus(self) -> BoundaryTorus:
        """The unique boundary component, which must be a one-vertex torus."""
        comps = self.boundary_components()
        if len(comps) != 1 or not isinstance(comps[0], BoundaryTorus):
            raise TriangulationError("boundary is not a single one-vertex torus")
        return comps[0]

    def is_knot_manifold(self) -> bool:
        if not (self.is_connected() and self.is_orientable()):
            return False
        comps = self.boundary_components()
        return len(comps) == 1 and comps[0].is_torus

    # -- transformations and output ---------------------------------------------

    def relabel(self, tet_order, vertex_perms=None):
        """Renumber tetrahedra (old ``tet_order[k]`` becomes new ``k``) and
        optionally relabel each old tetrahedron's vertices by ``vertex_perms[old]``."""
        n = self.size
        new_index = {old: new for new, old in enumerate(tet_order)}
        if vertex_perms is None:
            vertex_perms = [Perm4.identity()] * n
        rows = [[None] * 4 for _ in range(n)]
        for old, row in enumerate(self._gluings):
            s = vertex_perms[old]
            for f, g in enumerate(row):
                if g is None:
                    continue
                j, face, perm = g
                t = vertex_perms[j]
                rows[new_index[old]][s(f)] = (new_index[j], t(face), t * perm * s.inverse())
        return Triangulation(rows)

    def to_text(self, comment=None) -> str:
        lines = []
        if comment:
            for c in comment.splitlines():
                lines.append(f"% {c}")
        lines.append(f"tetrahedra {self.size}")
        for row in self._gluings:
            toks = ["bdry" if g is None else f"{g[0]}:{g[2]}" for g in row]
            lines.append(" ".join(toks))
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self._gluings == other._gluings

    def __hash__(self):
        return hash(self._gluings)

    def __repr__(self):
        return f"<Triangulation: {self.size} tetrahedra, {len(self.boundary_faces)} boundary faces>"


def _side_key(i, f, a, b):
    return (i, f, min(a, b), max(a, b))


def _side_direction(f, a, b):
    """+1 if ``a -> b`` follows the increasing cyclic order of face ``f``'s vertices."""
    v = face_vertices(f)
    return 1 if (v.index(b) - v.index(a)) % 3 == 1 else -1


def parse_triangulation(text: str) -> Triangulation:
    """Read the ``tetrahedra <t>`` text format; errors carry line numbers."""
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, ln) for k, ln in lines if ln and not ln.startswith("%")]
    if not lines:
        raise TriangulationError("empty triangulation file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "tetrahedra" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise TriangulationError("expected 'tetrahedra <t>' with t >= 1", lineno)
    n = int(parts[1])
    body = lines[1:]
    if len(body) != n:
        line = body[n][0] if len(body) > n else lineno
        raise TriangulationError(f"expected {n} tetrahedron lines, found {len(body)}", line)
    rows = []
    for i, (lineno, ln) in enumerate(body):
        toks = ln.split()
        if len(toks) != 4:
            raise TriangulationError("malformed line: need 4 face tokens", lineno)
        row = []
        for f, tok in enumerate(toks):
            if tok == "bdry":
                row.append(None)
                continue
            j, sep, p = tok.partition(":")
            if not sep or not j.isdigit():
                raise TriangulationError(f"malformed gluing token {tok!r}", lineno)
            try:
                perm = Perm4(p)
            except ValueError as exc:
                raise TriangulationError(f"malformed gluing token {tok!r}: {exc}", lineno) from None
            row.append((int(j), perm(f), perm))
        rows.append(row)
    # validate here so errors point at the offending line
    for i, row in enumerate(rows):
        for f, g in enumerate(row):
            if g is None:
                continue
            j, face, perm = g
            if not 0 <= j < n:
                raise TriangulationError(f"target tetrahedron {j} out of range", body[i][0])
            if (j, face) == (i, f):
                raise TriangulationError(f"face {f} glued to itself", body[i][0])
            back = rows[j][face]
            if back is None or back[0] != i or back[2] != perm.inverse():
                raise TriangulationError(f"non-involutive gluing at face ({i},{f})", body[i][0])
    try:
        return Triangulation(rows)
    except TriangulationError as exc:
        if exc.line is None:
            raise TriangulationError(str(exc), body[0][0]) from None
        raise


def read_triangulation(path) -> Triangulation:
    with open(path, encoding="utf-8") as fh:
        return parse_triangulation(fh.read())

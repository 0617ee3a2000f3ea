"""Dehn filling: glue a layered solid torus to a knot-manifold, cap surfaces,
and do slope arithmetic in p/q form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from . import torus as tc
from .layered import LayeredTorus, build_lst, pad_lst
from .normal import NormalCoords, as_coords, boundary_restriction
from .perm import Perm4
from .triangulation import Triangulation, TriangulationError, face_vertices


class FillingError(ValueError):
    pass


@dataclass(frozen=True)
class FilledTriangulation:
    base: Triangulation
    lst: LayeredTorus
    tri: Triangulation
    alpha: tc.TorusCurve
    label_map: tuple[int, int, int]
    """``label_map[i]`` is the base edge position (0-based) glued to LST edge ``i``."""

    @property
    def offset(self) -> int:
        """Index of the first LST tetrahedron in ``tri``."""
        return self.base.size


def fill(base: Triangulation, alpha, min_lst_tets: int = 1) -> FilledTriangulation:
    """Close up ``base`` with a layered solid torus whose meridian lands on ``alpha``."""
    if not base.is_knot_manifold():
        raise FillingError("base is not a knot-manifold")
    torus = base.torus()
    alpha = tc.parse_slope(alpha) if isinstance(alpha, str) else tc.curve(alpha)
    if not tc.is_slope(alpha):
        raise FillingError(f"{alpha} is not a slope")
    for sigma in itertools.permutations(range(3)):
        # LST edge i will be glued to base edge sigma[i]
        target = tc.TorusCurve(*(alpha[sigma[i]] for i in range(3)))
        lst = build_lst(target)
        if min_lst_tets > 1:
            lst = pad_lst(lst, min_lst_tets - 1)
        for onto_first in (True, False):
            tri = _glue(base, torus, lst, sigma, onto_first)
            if tri is not None:
                return FilledTriangulation(base, lst, tri, alpha, tuple(sigma))
    raise FillingError(f"no simplicial gluing places the meridian on {alpha}")


def _glue(base, torus, lst, sigma, onto_first):
    lt = lst.tri.torus()
    n = base.size
    base_faces = sorted(torus.corner_label)
    lst_faces = sorted(lt.corner_label)
    if not onto_first:
        base_faces.reverse()
    rows = [list(r) for r in base.gluings]
    for row in lst.tri.gluings:
        rows.append([None if g is None else (g[0] + n, g[1], g[2]) for g in row])
    for (li, lf), (bi, bf) in zip(lst_faces, base_faces):
        lab_l = lt.corner_label[li, lf]
        lab_b = torus.corner_label[bi, bf]
        by_label = {lab: v for v, lab in lab_b.items()}
        images = [0] * 4
        for v in face_vertices(lf):
            images[v] = by_label[sigma[lab_l[v] - 1] + 1]
        images[lf] = bf
        perm = Perm4(images)
        rows[n + li][lf] = (bi, bf, perm)
        rows[bi][bf] = (n + li, lf, perm.inverse())
    try:
        tri = Triangulation(rows)
    except TriangulationError:
        return None
    if not (tri.is_closed() and tri.is_connected() and tri.is_orientable()):
        return None
    return tri


def restrict_to_base(f: FilledTriangulation) -> Triangulation:
    """The filled triangulation's first tetrahedra with the LST gluings cut."""
    n = f.base.size
    rows = [[g if g is None or g[0] < n else None for g in f.tri.gluings[i]] for i in range(n)]
    return Triangulation(rows)


def lst_vertex_link(lst: LayeredTorus) -> NormalCoords:
    """The boundary-parallel disk: one triangle at every tetrahedron corner."""
    return NormalCoords((1, 1, 1, 1, 0, 0, 0) * lst.t)


def cap_surface(f: FilledTriangulation, s) -> NormalCoords:
    """Close off ``s`` inside the filling solid torus with meridian disks and
    vertex-linking disks."""
    s = as_coords(s, f.base)
    if s.almost_normal:
        raise FillingError("capping is defined for normal coordinates")
    boundary = boundary_restriction(f.base, s)
    slope = tc.slope_of(boundary)
    if slope is not None and slope != f.alpha:
        raise FillingError(f"surface boundary slope {slope} differs from the filling slope {f.alpha}")
    m = tc.trivial_count(boundary)
    n = tc.component_count(boundary) - m
    lst_part = [n * a + m * b for a, b in zip(f.lst.meridian_disk.values, lst_vertex_link(f.lst).values)]
    return NormalCoords(s.values + tuple(lst_part))


# -- slope arithmetic ---------------------------------------------------------------------------


def normalize_pq(p: int, q: int) -> tuple[int, int]:
    if gcd(p, q) != 1:
        raise ValueError(f"{p}/{q} is not a reduced slope")
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return p, q


def parse_pq(text: str) -> tuple[int, int]:
    p, sep, q = text.strip().partition("/")
    if not sep:
        raise ValueError(f"expected p/q, got {text!r}")
    return normalize_pq(int(p), int(q))


def distance(alpha, beta) -> int:
    (p, q), (r, s) = alpha, beta
    return abs(p * s - q * r)


def line_of(alpha, window: int) -> list[tuple[int, int]]:
    """Slopes ``r/s`` with ``|r|, s <= window`` at distance one from ``alpha``.

    The full set is infinite; this is its truncation to the window.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    alpha = normalize_pq(*alpha)
    out = []
    for s in range(window + 1):
        for r in range(-window, window + 1):
            if gcd(r, s) != 1 or (s == 0 and r != 1):
                continue
            if distance(alpha, (r, s)) == 1:
                out.append((r, s))
    return sorted(out, key=lambda rs: (rs[1], rs[0]))

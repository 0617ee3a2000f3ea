"""Extreme rays and Hilbert bases of normal-surface solution cones.

Everything here runs on Python integers; there is no floating point on the
enumeration path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import torus as tc
from .normal import (
    QUAD_PAIRS,
    NormalCoords,
    as_coords,
    boundary_restriction,
    compatible,
    is_admissible,
    matching_matrix,
    primitive,
)
from .triangulation import Triangulation, TriangulationError


class EnumerationLimitError(RuntimeError):
    """An enumeration hit its configured resource cap."""


# -- double description ---------------------------------------------------------------


def _rows_as_ints(matrix):
    return [tuple(int(v) for v in row) for row in matrix]


def rank(rows) -> int:
    """Exact rank of an integer matrix given as a list of rows."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for col in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for k in range(len(m)):
            if k != r and m[k][col] != 0:
                fac = m[k][col] / m[r][col]
                m[k] = [a - fac * b for a, b in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def extreme_rays(rows, n: int, support_ok=None, max_rays: int = 200_000) -> list[tuple[int, ...]]:
    """Extreme rays of ``{x >= 0 : row . x = 0 for every row}`` in primitive form.

    ``support_ok`` optionally restricts to rays whose support (as a bitmask)
    passes the predicate; it must describe a union of coordinate faces.
    Output is sorted lexicographically.
    """
    rows = [r for r in _rows_as_ints(rows) if any(r)]
    rows.sort(key=lambda r: (sum(1 for v in r if v), r))
    full = (1 << n) - 1
    rays = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    zeros = [full & ~(1 << j) for j in range(n)]
    processed = []
    for row in rows:
        dim_old = n - rank(processed) if processed else n
        processed.append(row)
        vals = [sum(a * x for a, x in zip(row, r)) for r in rays]
        zero_idx = [k for k, v in enumerate(vals) if v == 0]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays = [rays[k] for k in zero_idx]
        new_zeros = [zeros[k] for k in zero_idx]
        need = dim_old - 2
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if support_ok is not None and not support_ok(full & ~common):
                    continue
                if common.bit_count() < need:
                    continue
                if any(k != p and k != q and (zeros[k] & common) == common for k in range(len(rays))):
                    continue
                vp, vq = vals[p], -vals[q]
                ray = primitive(tuple(vq * a + vp * b for a, b in zip(rays[p], rays[q])))
                new_rays.append(ray)
                new_zeros.append(sum(1 << j for j, v in enumerate(ray) if v == 0))
                if len(new_rays) > max_rays:
                    raise EnumerationLimitError(f"more than {max_rays} intermediate rays")
        rays, zeros = new_rays, new_zeros
    if support_ok is not None:
        keep = [k for k, z in enumerate(zeros) if support_ok(full & ~z)]
        rays = [rays[k] for k in keep]
    return sorted(set(rays))


def embedded_support_filter(tet_count: int, almost_normal: bool):
    """Predicate on support bitmasks: one quad type per tetrahedron, at most
    one octagon coordinate, and no quad next to an octagon."""
    block = 10 if almost_normal else 7
    quad_masks = [[1 << (block * i + 4 + k) for k in range(3)] for i in range(tet_count)]
    oct_masks = [[1 << (block * i + 7 + k) for k in range(3)] for i in range(tet_count)] if almost_normal else []

    def ok(support: int) -> bool:
        octs = 0
        for i in range(tet_count):
            nq = sum(1 for m in quad_masks[i] if support & m)
            if nq > 1:
                return False
            if almost_normal:
                no = sum(1 for m in oct_masks[i] if support & m)
                if no and nq:
                    return False
                octs += no
        return octs <= 1

    return ok


@dataclass(frozen=True)
class VertexSolution:
    index: int
    coords: NormalCoords
    embedded: bool

    @property
    def projective_class(self) -> tuple[Fraction, ...]:
        total = self.coords.total()
        return tuple(Fraction(v, total) for v in self.coords)


def enumerate_vertices(
    tri: Triangulation, mode: str = "normal", embedded_only: bool = False, max_rays: int = 200_000
) -> list[VertexSolution]:
    """Vertex solutions of the projective solution space, lexicographically ordered."""
    if mode not in ("normal", "almost-normal"):
        raise ValueError(f"unknown mode {mode!r}")
    an = mode == "almost-normal"
    n = (10 if an else 7) * tri.size
    flt = embedded_support_filter(tri.size, an) if embedded_only else None
    rays = extreme_rays(matching_matrix(tri, an), n, flt, max_rays=max_rays)
    out = []
    for r in rays:
        c = NormalCoords(r, an)
        emb = is_admissible(tri, c)
        if embedded_only and not emb:
            continue
        out.append(VertexSolution(len(out), c, emb))
    return out


# -- slopes -------------------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeWitnesses:
    slope: tc.TorusCurve
    witnesses: tuple[int, ...]


def _require_knot_manifold(tri):
    if not tri.is_knot_manifold():
        raise TriangulationError("triangulation is not a knot-manifold")
    return tri.torus()


def boundary_slope_set(tri: Triangulation, vertices) -> list[SlopeWitnesses]:
    """Distinct slopes of embedded vertex solutions with nontrivial boundary."""
    torus = _require_knot_manifold(tri)
    found: dict[tc.TorusCurve, list[int]] = {}
    for vs in vertices:
        if not vs.embedded:
            continue
        s = tc.slope_of(boundary_restriction(tri, vs.coords, torus))
        if s is not None:
            found.setdefault(s, []).append(vs.index)
    return [SlopeWitnesses(s, tuple(w)) for s, w in sorted(found.items())]


def slope_bound(t: int, mode: str = "normal") -> int:
    return 2 * 3**t if mode == "normal" else 2 * t * 3**t


@dataclass
class CarrierVerdict:
    slopes: list[tc.TorusCurve]
    counterexample: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def carrier_slopes_check(tri: Triangulation, surfaces) -> CarrierVerdict:
    """Slopes of pairwise compatible surfaces must be equal or complementary."""
    torus = tri.torus()
    coords = [as_coords(getattr(s, "coords", s), tri) for s in surfaces]
    for a in range(len(coords)):
        for b in range(a + 1, len(coords)):
            if not compatible(tri, coords[a], coords[b]):
                raise ValueError(f"surfaces {a} and {b} are not compatible")
    slopes = []
    for c in coords:
        s = tc.slope_of(boundary_restriction(tri, c, torus))
        if s is not None and s not in slopes:
            slopes.append(s)
    for a in range(len(slopes)):
        for b in range(a + 1, len(slopes)):
            if not tc.same_or_complementary(slopes[a], slopes[b]):
                return CarrierVerdict(slopes, (slopes[a], slopes[b]))
    if len(slopes) > 2:
        return CarrierVerdict(slopes, tuple(slopes))
    return CarrierVerdict(sorted(slopes))


# -- Hilbert bases ----------------------------------------------------------------------------


@dataclass
class FundamentalSet:
    members: list[tuple[int, ...]]
    complete: bool
    cap: int | None
    needed_cap: int
    box: tuple[int, ...] = field(repr=False, default=())

    @property
    def status(self) -> str:
        return "complete" if self.complete else "incomplete"


def hilbert_basis(rows, n: int, cap: int | None = None, max_nodes: int = 5_000_000) -> FundamentalSet:
    """Minimal generating set of the integer points of ``{x >= 0 : rows . x = 0}``.

    Every basis element lies in the half-open parallelepiped spanned by a
    linearly independent set of extreme rays, which bounds each coordinate
    and the total by sums of the largest ray entries.  The search covers
    that box; ``cap`` additionally limits the coordinate total, and the
    result is marked complete only when ``cap`` is at least the provable
    bound.
    """
    rows = [r for r in _rows_as_ints(rows) if any(r)]
    rays = extreme_rays(rows, n)
    if not rays:
        return FundamentalSet([], True, cap, 0)
    d = rank(rays)

    def bound(values):
        top = sorted(values, reverse=True)[:d]
        return max(max(values), sum(top) - 1) if d > 1 else max(values)

    box = tuple(bound([r[j] for r in rays]) for j in range(n))
    needed = bound([sum(r) for r in rays])
    limit = needed if cap is None else min(cap, needed)
    found = _minimal_solutions(rows, n, box, limit, max_nodes)
    return FundamentalSet(found, limit >= needed, cap, needed, box)


def _minimal_solutions(rows, n, box, total_cap, max_nodes):
    # capacity of the not-yet-assigned tail, per row and sign
    pos_tail = [[0] * (n + 1) for _ in rows]
    neg_tail = [[0] * (n + 1) for _ in rows]
    for k, r in enumerate(rows):
        for j in range(n - 1, -1, -1):
            a = r[j]
            pos_tail[k][j] = pos_tail[k][j + 1] + (a * box[j] if a > 0 else 0)
            neg_tail[k][j] = neg_tail[k][j + 1] + (-a * box[j] if a < 0 else 0)
    found: list[tuple[int, ...]] = []
    x = [0] * n
    sums = [0] * len(rows)
    nodes = 0

    def dominates_found():
        return any(all(x[j] >= b[j] for j in range(n)) for b in found)

    def rec(j, total):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise EnumerationLimitError(f"Hilbert basis search exceeded {max_nodes} nodes")
        if j == n:
            if total and not dominates_found():
                found.append(tuple(x))
            return
        col = [rows[k][j] for k in range(len(rows))]
        for v in range(min(box[j], total_cap - total) + 1):
            x[j] = v
            for k, a in enumerate(col):
                if a:
                    sums[k] += a * v
            ok, hopeless = True, False
            for k, s in enumerate(sums):
                if s + pos_tail[k][j + 1] < 0:
                    ok = False
                    hopeless = hopeless or col[k] <= 0
                elif s - neg_tail[k][j + 1] > 0:
                    ok = False
                    hopeless = hopeless or col[k] >= 0
            if ok and v and dominates_found():
                # every completion dominates a known solution, as does every larger v
                ok, hopeless = False, True
            if ok:
                rec(j + 1, total + v)
            for k, a in enumerate(col):
                if a:
                    sums[k] -= a * v
            if hopeless:
                break
        x[j] = 0

    rec(0, 0)
    found.sort(key=lambda v: (sum(v), v))
    minimal = []
    for v in found:
        if not any(all(a <= b for a, b in zip(m, v)) for m in minimal):
            minimal.append(v)
    return sorted(minimal)


def solutions_up_to(rows, n: int, total_cap: int, box=None):
    """Yield every nonnegative integer solution with coordinate total at most
    ``total_cap`` (and entries within ``box`` if given), zero included."""
    rows = [r for r in _rows_as_ints(rows) if any(r)]
    box = tuple(box) if box is not None else (total_cap,) * n
    pos_tail = [[0] * (n + 1) for _ in rows]
    neg_tail = [[0] * (n + 1) for _ in rows]
    for k, r in enumerate(rows):
        for j in range(n - 1, -1, -1):
            a = r[j]
            pos_tail[k][j] = pos_tail[k][j + 1] + (a * box[j] if a > 0 else 0)
            neg_tail[k][j] = neg_tail[k][j + 1] + (-a * box[j] if a < 0 else 0)
    x = [0] * n
    sums = [0] * len(rows)

    def rec(j, total):
        if j == n:
            yield tuple(x)
            return
        col = [r[j] for r in rows]
        for v in range(min(box[j], total_cap - total) + 1):
            x[j] = v
            for k, a in enumerate(col):
                if a:
                    sums[k] += a * v
            ok, hopeless = True, False
            for k, s in enumerate(sums):
                if s + pos_tail[k][j + 1] < 0:
                    ok = False
                    hopeless = hopeless or col[k] <= 0
                elif s - neg_tail[k][j + 1] > 0:
                    ok = False
                    hopeless = hopeless or col[k] >= 0
            if ok:
                yield from rec(j + 1, total + v)
            for k, a in enumerate(col):
                if a:
                    sums[k] -= a * v
            if hopeless:
                break
        x[j] = 0

    yield from rec(0, 0)


def enumerate_fundamental(tri: Triangulation, cap: int | None = None, mode: str = "normal") -> FundamentalSet:
    an = mode == "almost-normal"
    return hilbert_basis(matching_matrix(tri, an), (10 if an else 7) * tri.size, cap)


def decompose_over(basis, target) -> list[int] | None:
    """Nonnegative integer multipliers writing ``target`` over ``basis``, or None."""
    basis = [tuple(b) for b in basis]
    target = tuple(target)
    order = sorted(range(len(basis)), key=lambda k: -sum(basis[k]))
    memo = {}

    def rec(rem, start):
        if not any(rem):
            return []
        key = (rem, start)
        if key in memo:
            return memo[key]
        res = None
        for idx in range(start, len(order)):
            b = basis[order[idx]]
            if all(x >= y for x, y in zip(rem, b)):
                sub = rec(tuple(x - y for x, y in zip(rem, b)), idx)
                if sub is not None:
                    res = [order[idx]] + sub
                    break
        memo[key] = res
        return res

    picks = rec(target, 0)
    if picks is None:
        return None
    mult = [0] * len(basis)
    for k in picks:
        mult[k] += 1
    return mult


# -- length bound -----------------------------------------------------------------------------


def ale_constant(surfaces) -> Fraction | None:
    """Largest ratio of boundary length to ``-euler`` over the given surfaces.

    Items may be summaries (with ``boundary_length`` and ``euler``) or plain
    ``(length, euler)`` pairs.
    """
    best = None
    for s in surfaces:
        if isinstance(s, tuple):
            length, chi = s
        else:
            length, chi = s.boundary_length, s.euler
        if chi >= 0:
            raise ValueError(f"surface with euler characteristic {chi} >= 0 has no length ratio")
        ratio = Fraction(length, -chi)
        if best is None or ratio > best:
            best = ratio
    return best


def slopes_within_ale(surfaces) -> list[tc.TorusCurve]:
    c = ale_constant(surfaces)
    return [] if c is None else tc.slopes_up_to_length(c)


__all__ = [
    "EnumerationLimitError",
    "VertexSolution",
    "FundamentalSet",
    "SlopeWitnesses",
    "CarrierVerdict",
    "QUAD_PAIRS",
    "extreme_rays",
    "embedded_support_filter",
    "enumerate_vertices",
    "boundary_slope_set",
    "slope_bound",
    "carrier_slopes_check",
    "hilbert_basis",
    "enumerate_fundamental",
    "decompose_over",
    "ale_constant",
    "slopes_within_ale",
    "rank",
]

"""Normal curves on the one-vertex torus in reduced coordinates.

A normal curve on the two-triangle torus is a triple ``(x1, x2, x3)``:
``x_k`` counts the arcs, in each triangle, that cut off the corner opposite
edge ``e_k``.  The six arc counts of the two triangles are always
``(x1, x2, x3, x1, x2, x3)``, so the triple is a complete description.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class CurveError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TorusCurve:
    x1: int
    x2: int
    x3: int

    def __post_init__(self):
        for v in self:
            if not isinstance(v, int) or v < 0:
                raise CurveError(f"curve coordinates must be nonnegative integers, got {tuple(self)}")

    def __iter__(self):
        return iter((self.x1, self.x2, self.x3))

    def __getitem__(self, i):
        return (self.x1, self.x2, self.x3)[i]

    def __add__(self, other):
        return TorusCurve(*(a + b for a, b in zip(self, other)))

    def scaled(self, k: int) -> "TorusCurve":
        return TorusCurve(*(k * a for a in self))

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x1, self.x2, self.x3)

    def full(self) -> tuple[int, ...]:
        """The six arc counts over both triangles."""
        return self.coords * 2

    def __str__(self):
        return f"({self.x1},{self.x2},{self.x3})"


def curve(c) -> TorusCurve:
    return c if isinstance(c, TorusCurve) else TorusCurve(*(int(v) for v in c))


def trivial_count(c) -> int:
    return min(curve(c))


def _reduce(vals):
    g = 0
    for v in vals:
        g = gcd(g, v)
    if g == 0:
        return None
    return TorusCurve(*(v // g for v in vals))


def slope_of(c) -> TorusCurve | None:
    """Canonical slope triple, or None when every component is trivial."""
    c = curve(c)
    tau = min(c)
    return _reduce([v - tau for v in c])


def is_slope(c) -> bool:
    c = curve(c)
    return min(c) == 0 and slope_of(c) == c


def complement_of(c) -> TorusCurve:
    """The slope that together with ``slope_of(c)`` fills out trivial curves."""
    s = slope_of(c)
    if s is None:
        raise CurveError("an all-trivial curve has no complementary slope")
    mu = max(s)
    return _reduce([mu - v for v in s])


def length(c) -> int:
    return 2 * sum(curve(c))


def to_intersections(c) -> tuple[int, int, int]:
    x1, x2, x3 = curve(c)
    return (x2 + x3, x1 + x3, x1 + x2)


def from_intersections(y) -> TorusCurve:
    y1, y2, y3 = (int(v) for v in y)
    if min(y1, y2, y3) < 0:
        raise CurveError(f"intersection numbers must be nonnegative: {list(y)}")
    if (y1 + y2 + y3) % 2:
        raise CurveError(f"intersection triple {list(y)} has odd sum")
    if y1 > y2 + y3 or y2 > y1 + y3 or y3 > y1 + y2:
        raise CurveError(f"intersection triple {list(y)} violates the triangle inequality")
    return TorusCurve((y2 + y3 - y1) // 2, (y1 + y3 - y2) // 2, (y1 + y2 - y3) // 2)


def curve_type(c) -> frozenset[str]:
    c = curve(c)
    m = min(c)
    return frozenset(name for name, v in zip(("I", "II", "III"), c) if v == m)


def component_count(c) -> int:
    c = curve(c)
    tau = min(c)
    rest = sorted(v - tau for v in c)[1:]
    return tau + gcd(*rest)


def same_or_complementary(a, b) -> bool:
    a, b = slope_of(a), slope_of(b)
    return a == b or a == complement_of(b)


# -- p/q naming ----------------------------------------------------------------
#
# With basis (e1, e3) and e2 ~ e1 + e3, the slope p/q meets the three edges
# [|q|, |p+q|, |p|] times.


def slope_from_pq(p: int, q: int) -> TorusCurve:
    if gcd(p, q) != 1:
        raise CurveError(f"{p}/{q} is not a reduced slope")
    return from_intersections((abs(q), abs(p + q), abs(p)))


def pq_of(c) -> tuple[int, int]:
    """Inverse of :func:`slope_from_pq`; q >= 0, and 1/0 for the e1 slope."""
    s = slope_of(c)
    if s is None:
        raise CurveError("an all-trivial curve has no slope")
    y1, y2, y3 = to_intersections(s)
    q, p = y1, y3
    if y2 != y1 + y3:
        p = -p
    if q == 0:
        return (1, 0)
    if p == 0:
        return (0, 1)
    return (p, q)


def format_pq(pq) -> str:
    return f"{pq[0]}/{pq[1]}"


def parse_slope(text: str) -> TorusCurve:
    """Accept ``x1,x2,x3`` (reduced triple) or ``p/q``."""
    text = text.strip()
    if "/" in text:
        p, _, q = text.partition("/")
        try:
            return slope_from_pq(int(p), int(q))
        except ValueError as exc:
            raise CurveError(f"bad slope {text!r}: {exc}") from None
    parts = text.split(",")
    if len(parts) != 3:
        raise CurveError(f"bad slope {text!r}: expected x1,x2,x3 or p/q")
    try:
        c = TorusCurve(*(int(v) for v in parts))
    except ValueError:
        raise CurveError(f"bad slope {text!r}") from None
    if not is_slope(c):
        raise CurveError(f"{text} is not a reduced slope triple")
    return c


def slopes_up_to_length(bound) -> list[TorusCurve]:
    """All slopes whose curve length is at most ``bound``, in sorted order."""
    half = int(Fraction(bound) // 2)
    out = []
    for a in range(half + 1):
        for b in range(half + 1 - a):
            for k in range(3):
                vals = [a, b]
                vals.insert(k, 0)
                c = TorusCurve(*vals)
                if sum(c) and is_slope(c):
                    out.append(c)
    return sorted(set(out))

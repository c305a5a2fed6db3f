"""Numeric plane-geometry primitives and tolerance-aware incidence predicates.

Everything here is pure and double-precision.  Incidence residuals are
dimensionless: determinant-style quantities are divided by the appropriate
power of a figure scale (diameter), angle residuals are radians, length
comparisons are relative.  A relation "holds" when its residual is at most
the tolerance in use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from .errors import (
    ArityMismatch,
    CenterInversion,
    CoincidentPoints,
    CollinearPoints,
    ConcentricCircles,
    DegenerateConfiguration,
    DegenerateRay,
    DisjointCircles,
    ParallelLines,
    RankDeficient,
    TangentCircles,
    UnknownRelation,
)

TWO_PI = 2.0 * math.pi

# Default relative tolerances: tight for constructions, looser for the
# randomized catalog assertions.
CONSTRUCTION_REL = 1e-9
ASSERTION_REL = 1e-7

_TINY = 1e-14


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class Line:
    """Normalized line l*x + m*y + n = 0 with l^2 + m^2 = 1."""

    l: float
    m: float
    n: float


@dataclass(frozen=True, slots=True)
class Circle:
    center: Point
    radius: float


@dataclass(frozen=True, slots=True)
class DirectedAngle:
    """Counterclockwise rotation in [0, 2*pi) taking ray YX onto ray YZ."""

    radians: float


@dataclass(frozen=True, slots=True)
class Segment:
    start: Point
    end: Point


@dataclass(frozen=True, slots=True)
class Tolerance:
    """Dimensionless tolerance plus the figure scale used to normalize."""

    rel: float = ASSERTION_REL
    scale: float = 1.0


@dataclass(frozen=True)
class Conic:
    """Unit-norm coefficients of A u^2 + B uv + C v^2 + D u + E v + F = 0.

    Coefficients live in a local frame u = (x - cx)/s, v = (y - cy)/s derived
    from the fit points, which keeps membership residuals similarity-invariant.
    """

    coeffs: Tuple[float, ...]
    cx: float
    cy: float
    s: float


@dataclass(frozen=True)
class Cubic:
    """Unit-norm coefficients of the ten degree-<=3 monomials, local frame."""

    coeffs: Tuple[float, ...]
    cx: float
    cy: float
    s: float


def distance(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def figure_scale(points: Iterable[Point]) -> float:
    """Diameter of a point set; the normalizer for incidence residuals."""
    pts = list(points)
    best = 0.0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = distance(pts[i], pts[j])
            if d > best:
                best = d
    return max(best, _TINY)


def _norm_line(l: float, m: float, n: float) -> Line:
    h = math.hypot(l, m)
    if h <= _TINY:
        raise CoincidentPoints("degenerate line coefficients")
    l, m, n = l / h, m / h, n / h
    if l < 0.0 or (l == 0.0 and m < 0.0):
        l, m, n = -l, -m, -n
    return Line(l, m, n)


def line_through(p: Point, q: Point, rel: float = 1e-12) -> Line:
    scale = max(abs(p.x), abs(p.y), abs(q.x), abs(q.y), 1.0)
    if distance(p, q) <= rel * scale:
        raise CoincidentPoints(f"{p} and {q}")
    dx, dy = q.x - p.x, q.y - p.y
    return _norm_line(-dy, dx, dy * p.x - dx * p.y)


def signed_distance(l: Line, p: Point) -> float:
    return l.l * p.x + l.m * p.y + l.n


def intersect_lines(a: Line, b: Line, rel: float = CONSTRUCTION_REL) -> Point:
    det = a.l * b.m - b.l * a.m  # sin of the angle between normalized lines
    if abs(det) <= rel:
        raise ParallelLines(f"{a} and {b}")
    x = (-a.n * b.m + b.n * a.m) / det
    y = (-a.l * b.n + b.l * a.n) / det
    return Point(x, y)


def circle_through(p: Point, q: Point, r: Point, rel: float = 1e-12) -> Circle:
    scale = figure_scale((p, q, r))
    cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if abs(cross) <= rel * scale * scale:
        raise CollinearPoints(f"{p}, {q}, {r}")
    # Perpendicular-bisector intersection, written out for accuracy.
    d = 2.0 * cross
    p2, q2, r2 = p.x * p.x + p.y * p.y, q.x * q.x + q.y * q.y, r.x * r.x + r.y * r.y
    ux = (p2 * (q.y - r.y) + q2 * (r.y - p.y) + r2 * (p.y - q.y)) / d
    uy = (p2 * (r.x - q.x) + q2 * (p.x - r.x) + r2 * (q.x - p.x)) / d
    center = Point(ux, uy)
    return Circle(center, (distance(center, p) + distance(center, q) + distance(center, r)) / 3.0)


def intersect_circles(c1: Circle, c2: Circle, rel: float = CONSTRUCTION_REL) -> Tuple[Point, Point]:
    """Both intersection points, ordered lexicographically by (x, y)."""
    d = distance(c1.center, c2.center)
    scale = max(c1.radius, c2.radius, d)
    if d <= rel * scale:
        raise ConcentricCircles(f"{c1} and {c2}")
    a = (d * d + c1.radius * c1.radius - c2.radius * c2.radius) / (2.0 * d)
    h2 = c1.radius * c1.radius - a * a
    band = (rel * scale) ** 2
    if h2 < -band:
        raise DisjointCircles(f"{c1} and {c2}")
    ux, uy = (c2.center.x - c1.center.x) / d, (c2.center.y - c1.center.y) / d
    mx, my = c1.center.x + a * ux, c1.center.y + a * uy
    if h2 <= band:
        raise TangentCircles(Point(mx, my))
    h = math.sqrt(h2)
    p1 = Point(mx - h * uy, my + h * ux)
    p2 = Point(mx + h * uy, my - h * ux)
    return (p1, p2) if (p1.x, p1.y) <= (p2.x, p2.y) else (p2, p1)


def foot(p: Point, l: Line) -> Point:
    t = signed_distance(l, p)
    return Point(p.x - t * l.l, p.y - t * l.m)


def reflect(p: Point, l: Line) -> Point:
    t = signed_distance(l, p)
    return Point(p.x - 2.0 * t * l.l, p.y - 2.0 * t * l.m)


def midpoint(p: Point, q: Point) -> Point:
    return Point(0.5 * (p.x + q.x), 0.5 * (p.y + q.y))


def directed_angle(x: Point, y: Point, z: Point, rel: float = 1e-12) -> DirectedAngle:
    scale = figure_scale((x, y, z))
    if distance(x, y) <= rel * scale or distance(z, y) <= rel * scale:
        raise DegenerateRay(f"rays from {y}")
    a = math.atan2(z.y - y.y, z.x - y.x) - math.atan2(x.y - y.y, x.x - y.x)
    return DirectedAngle(a % TWO_PI)


def angle_between_circles(c1: Circle, c2: Circle) -> float:
    """Angle between tangents at an intersection point, in [0, pi/2]."""
    d = distance(c1.center, c2.center)
    cosv = abs(c1.radius * c1.radius + c2.radius * c2.radius - d * d) / (2.0 * c1.radius * c2.radius)
    if cosv > 1.0 + 1e-9:
        raise DisjointCircles(f"{c1} and {c2}")
    return math.acos(min(cosv, 1.0))


def invert(p: Point, center: Point, power: float, rel: float = 1e-12) -> Point:
    scale = max(abs(center.x), abs(center.y), abs(p.x), abs(p.y), 1.0)
    dx, dy = p.x - center.x, p.y - center.y
    d2 = dx * dx + dy * dy
    if d2 <= (rel * scale) ** 2:
        raise CenterInversion(f"{p} at inversion center")
    k = power / d2
    return Point(center.x + k * dx, center.y + k * dy)


# ---------------------------------------------------------------------------
# Conic / cubic fitting

def _frame(points: Sequence[Point]) -> Tuple[float, float, float]:
    cx = sum(p.x for p in points) / len(points)
    cy = sum(p.y for p in points) / len(points)
    s = figure_scale(points)
    return cx, cy, s


def _conic_row(u: float, v: float) -> List[float]:
    return [u * u, u * v, v * v, u, v, 1.0]


def _cubic_row(u: float, v: float) -> List[float]:
    return [u**3, u * u * v, u * v * v, v**3, u * u, u * v, v * v, u, v, 1.0]


def fit_conic(points: Sequence[Point]) -> Conic:
    if len(points) != 5:
        raise ArityMismatch("conic fit needs exactly 5 points")
    cx, cy, s = _frame(points)
    rows = [_conic_row((p.x - cx) / s, (p.y - cy) / s) for p in points]
    _, sv, vt = np.linalg.svd(np.asarray(rows))
    if sv[4] <= 1e-12 * sv[0]:
        raise DegenerateConfiguration("fit points not in general position")
    coeffs = vt[-1]
    return Conic(tuple(float(c) for c in coeffs / np.linalg.norm(coeffs)), cx, cy, s)


def on_conic(conic: Conic, p: Point) -> float:
    """First-order (Sampson) distance from p to the conic, in diameter units."""
    u, v = (p.x - conic.cx) / conic.s, (p.y - conic.cy) / conic.s
    a, b, c, d, e, f = conic.coeffs
    q = a * u * u + b * u * v + c * v * v + d * u + e * v + f
    gu = 2.0 * a * u + b * v + d
    gv = b * u + 2.0 * c * v + e
    g = math.hypot(gu, gv)
    return abs(q) / max(g, 1e-8)


def conic_class(conic: Conic, band: float = CONSTRUCTION_REL) -> str:
    a, b, c = conic.coeffs[0], conic.coeffs[1], conic.coeffs[2]
    disc = b * b - 4.0 * a * c
    if abs(disc) <= band:
        return "parabola"
    return "hyperbola" if disc > 0.0 else "ellipse"


def fit_cubic(points: Sequence[Point]) -> Cubic:
    if len(points) != 9:
        raise ArityMismatch("cubic fit needs exactly 9 points")
    cx, cy, s = _frame(points)
    rows = [_cubic_row((p.x - cx) / s, (p.y - cy) / s) for p in points]
    _, sv, vt = np.linalg.svd(np.asarray(rows))
    if sv[8] <= 1e-12 * sv[0]:
        raise RankDeficient("cubic design matrix rank < 9")
    coeffs = vt[-1]
    return Cubic(tuple(float(c) for c in coeffs / np.linalg.norm(coeffs)), cx, cy, s)


def on_cubic(cubic: Cubic, p: Point) -> float:
    u, v = (p.x - cubic.cx) / cubic.s, (p.y - cubic.cy) / cubic.s
    c = cubic.coeffs
    q = (c[0] * u**3 + c[1] * u * u * v + c[2] * u * v * v + c[3] * v**3
         + c[4] * u * u + c[5] * u * v + c[6] * v * v + c[7] * u + c[8] * v + c[9])
    gu = 3.0 * c[0] * u * u + 2.0 * c[1] * u * v + c[2] * v * v + 2.0 * c[4] * u + c[5] * v + c[7]
    gv = c[1] * u * u + 2.0 * c[2] * u * v + 3.0 * c[3] * v * v + c[5] * u + 2.0 * c[6] * v + c[8]
    g = math.hypot(gu, gv)
    return abs(q) / max(g, 1e-8)


# ---------------------------------------------------------------------------
# Relation residuals

AngleLike = Union[DirectedAngle, float]


def as_radians(a: AngleLike) -> float:
    return a.radians if isinstance(a, DirectedAngle) else float(a)


def wrap_signed(a: float, period: float = TWO_PI) -> float:
    """Distance from a to the nearest multiple of period."""
    a = a % period
    return min(a, period - a)


def _rel_diff(a: float, b: float) -> float:
    m = max(abs(a), abs(b))
    return 0.0 if m <= _TINY else abs(a - b) / m


def _cross3(p: Point, q: Point, r: Point) -> float:
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


def _collinear(args, s: float) -> float:
    worst = 0.0
    for p, q, r in combinations(args, 3):
        worst = max(worst, abs(_cross3(p, q, r)) / (s * s))
    return worst


def _det4_scaled(pts, cx: float, cy: float, s: float) -> float:
    rows = []
    for p in pts:
        u, v = (p.x - cx) / s, (p.y - cy) / s
        rows.append((u * u + v * v, u, v, 1.0))
    m = np.asarray(rows)
    return abs(float(np.linalg.det(m)))


def _concyclic(args, s: float) -> float:
    cx = sum(p.x for p in args) / len(args)
    cy = sum(p.y for p in args) / len(args)
    worst = 0.0
    for quad in combinations(args, 4):
        worst = max(worst, _det4_scaled(quad, cx, cy, s))
    return worst


def _concurrent(lines, s: float) -> float:
    (a, b, c) = lines
    det = (a.l * (b.m * c.n - c.m * b.n)
           - a.m * (b.l * c.n - c.l * b.n)
           + a.n * (b.l * c.m - c.l * b.m))
    return abs(det) / s


def _line_angle(a: Line, b: Line) -> float:
    cross = a.l * b.m - b.l * a.m
    return math.asin(min(1.0, abs(cross)))


def _similar(args, s: float) -> float:
    a1, b1, c1, a2, b2, c2 = args
    z1 = complex(b1.x - a1.x, b1.y - a1.y)
    z2 = complex(c1.x - a1.x, c1.y - a1.y)
    w1 = complex(b2.x - a2.x, b2.y - a2.y)
    w2 = complex(c2.x - a2.x, c2.y - a2.y)
    if abs(z1) <= _TINY * s or abs(w1) <= _TINY * s:
        return 1.0
    r1, r2 = z2 / z1, w2 / w1
    return abs(r1 - r2) / max(1.0, abs(r1), abs(r2))


def _congruent(args, s: float) -> float:
    a1, b1, _, a2, b2, _ = args
    return max(_similar(args, s), _rel_diff(distance(a1, b1), distance(a2, b2)))


def _kite(args, s: float) -> float:
    p1, p2, p3, p4 = args
    s1, s2, s3, s4 = (distance(p1, p2), distance(p2, p3), distance(p3, p4), distance(p4, p1))
    opt_a = max(_rel_diff(s4, s1), _rel_diff(s2, s3))
    opt_b = max(_rel_diff(s1, s2), _rel_diff(s3, s4))
    return min(opt_a, opt_b)


_POINT_ARITIES = {
    "collinear": (3, 8),
    "concyclic": (4, 8),
    "equilateral": (3, 3),
    "equal_length": (4, 4),
    "midpoint_of": (3, 3),
    "similar": (6, 6),
    "congruent": (6, 6),
    "kite": (4, 4),
}


def check_relation(kind: str, args: Sequence, tol: Tolerance) -> float:
    """Scale-invariant residual for a named incidence relation.

    Supported kinds: collinear, concyclic, concurrent, parallel,
    perpendicular, equal_angle, equal_angle_mod_pi, equal_length,
    equilateral, similar, congruent, midpoint_of, bisects, tangent_circles,
    orthogonal_circles, on_line, on_circle, on_conic, on_cubic, kite.
    """
    s = tol.scale
    if kind in _POINT_ARITIES:
        lo, hi = _POINT_ARITIES[kind]
        if not (lo <= len(args) <= hi) or not all(isinstance(a, Point) for a in args):
            raise ArityMismatch(f"{kind} expects {lo}..{hi} points")
    if kind == "collinear":
        return _collinear(args, s)
    if kind == "concyclic":
        return _concyclic(args, s)
    if kind == "concurrent":
        if len(args) != 3 or not all(isinstance(a, Line) for a in args):
            raise ArityMismatch("concurrent expects 3 lines")
        return _concurrent(args, s)
    if kind == "parallel":
        if len(args) != 2 or not all(isinstance(a, Line) for a in args):
            raise ArityMismatch("parallel expects 2 lines")
        return _line_angle(*args)
    if kind == "perpendicular":
        if len(args) != 2 or not all(isinstance(a, Line) for a in args):
            raise ArityMismatch("perpendicular expects 2 lines")
        dot = args[0].l * args[1].l + args[0].m * args[1].m
        return math.asin(min(1.0, abs(dot)))
    if kind == "equal_angle":
        if len(args) != 2:
            raise ArityMismatch("equal_angle expects 2 angles")
        return wrap_signed(as_radians(args[0]) - as_radians(args[1]))
    if kind == "equal_angle_mod_pi":
        if len(args) != 2:
            raise ArityMismatch("equal_angle_mod_pi expects 2 angles")
        return wrap_signed(as_radians(args[0]) - as_radians(args[1]), math.pi)
    if kind == "equal_length":
        return _rel_diff(distance(args[0], args[1]), distance(args[2], args[3]))
    if kind == "equilateral":
        d = sorted((distance(args[0], args[1]), distance(args[1], args[2]), distance(args[2], args[0])))
        mean = sum(d) / 3.0
        return (d[2] - d[0]) / max(mean, _TINY)
    if kind == "similar":
        return _similar(args, s)
    if kind == "congruent":
        return _congruent(args, s)
    if kind == "midpoint_of":
        m, p, q = args
        return distance(m, midpoint(p, q)) / s
    if kind == "bisects":
        if len(args) != 3 or not isinstance(args[0], Line):
            raise ArityMismatch("bisects expects (line, point, point)")
        return abs(signed_distance(args[0], midpoint(args[1], args[2]))) / s
    if kind == "tangent_circles":
        c1, c2 = args
        d = distance(c1.center, c2.center)
        return min(abs(d - (c1.radius + c2.radius)), abs(d - abs(c1.radius - c2.radius))) / s
    if kind == "orthogonal_circles":
        c1, c2 = args
        d = distance(c1.center, c2.center)
        cosv = (c1.radius**2 + c2.radius**2 - d * d) / (2.0 * c1.radius * c2.radius)
        return abs(math.acos(max(-1.0, min(1.0, cosv))) - 0.5 * math.pi)
    if kind == "on_line":
        p, l = args
        return abs(signed_distance(l, p)) / s
    if kind == "on_circle":
        p, c = args
        return abs(distance(p, c.center) - c.radius) / s
    if kind == "on_conic":
        return on_conic(args[1], args[0])
    if kind == "on_cubic":
        return on_cubic(args[1], args[0])
    if kind == "kite":
        return _kite(args, s)
    raise UnknownRelation(kind)

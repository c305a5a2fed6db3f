"""Construction vocabulary: cevians, Apollonius circles, pedal triangles,
circumcevians, Simson and Euler lines, sagittae, and the chord family.

Vertex arguments are the labels "A", "B", "C"; the side opposite a vertex
carries the same label (side "A" is BC).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Tuple, Union

from .centers import Triangle
from .errors import (
    DegenerateConfiguration,
    DegeneratePedal,
    DegenerateTriangle,
    EquilateralNoEulerLine,
    ExternalFootAtInfinity,
    NotOnCircumcircle,
    ParallelLines,
    ParallelToSide,
    PointOnCircle,
)
from .kernel import (
    Circle,
    Conic,
    Cubic,
    DirectedAngle,
    Line,
    Point,
    Segment,
    circle_through,
    distance,
    foot,
    intersect_lines,
    line_through,
    midpoint,
    signed_distance,
)

FigureObject = Union[Point, Line, Circle, Segment, Triangle, Conic, Cubic, DirectedAngle, float]


@dataclass
class Figure:
    """Named construction results plus the steps that produced them."""

    objects: Dict[str, FigureObject] = field(default_factory=dict)
    provenance: List[str] = field(default_factory=list)

    def bind(self, name: str, value: FigureObject, step: str) -> None:
        if name in self.objects:
            raise KeyError(f"name {name!r} already bound")
        self.objects[name] = value
        self.provenance.append(step)

    def __getitem__(self, name: str) -> FigureObject:
        return self.objects[name]

    def points(self) -> Dict[str, Point]:
        return {k: v for k, v in self.objects.items() if isinstance(v, Point)}


def _parts(t: Triangle, vertex: str) -> Tuple[Point, Point, Point]:
    """(vertex point, opposite side endpoints) for a label."""
    if vertex == "A":
        return t.A, t.B, t.C
    if vertex == "B":
        return t.B, t.C, t.A
    if vertex == "C":
        return t.C, t.A, t.B
    raise ValueError(f"vertex label {vertex!r}")


def side_line(t: Triangle, vertex: str) -> Line:
    _, p, q = _parts(t, vertex)
    return line_through(p, q)


def apollonius_circle(t: Triangle, vertex: str) -> Circle:
    """Circle on the diameter cut by the two bisectors from ``vertex``."""
    v, p, q = _parts(t, vertex)
    near, far = distance(v, q), distance(v, p)  # |v p| ratio weights
    e = Point((near * p.x + far * q.x) / (near + far), (near * p.y + far * q.y) / (near + far))
    denom = far - near
    if abs(denom) <= 1e-12 * t.diameter:
        raise ExternalFootAtInfinity(f"isosceles toward {vertex}")
    f = Point((-near * p.x + far * q.x) / denom, (-near * p.y + far * q.y) / denom)
    return Circle(midpoint(e, f), 0.5 * distance(e, f))


def pedal_triangle(t: Triangle, p: Point) -> Triangle:
    fa = foot(p, line_through(t.B, t.C))
    fb = foot(p, line_through(t.C, t.A))
    fc = foot(p, line_through(t.A, t.B))
    try:
        return Triangle(fa, fb, fc)
    except DegenerateTriangle as exc:
        raise DegeneratePedal("feet collinear (point on circumcircle)") from exc


def circumcevian_points(t: Triangle, p: Point) -> Tuple[Point, Point, Point]:
    """Second intersections of the rays vertex->p with the circumcircle."""
    cc = t.circumcircle()
    if abs(distance(p, cc.center) - cc.radius) <= 1e-12 * cc.radius:
        raise PointOnCircle(f"{p} lies on the circumcircle")
    out = []
    for v in t.vertices:
        dx, dy = p.x - v.x, p.y - v.y
        a2 = dx * dx + dy * dy
        if a2 <= (1e-12 * t.diameter) ** 2:
            raise PointOnCircle(f"{p} coincides with a vertex")
        b2 = 2.0 * (dx * (v.x - cc.center.x) + dy * (v.y - cc.center.y))
        s = -b2 / a2  # the non-vertex root; the vertex root is 0
        out.append(Point(v.x + s * dx, v.y + s * dy))
    return tuple(out)


def cevian_trace(t: Triangle, p: Point, vertex: str) -> Point:
    v, q, r = _parts(t, vertex)
    try:
        return intersect_lines(line_through(v, p), line_through(q, r))
    except ParallelLines as exc:
        raise ParallelToSide(f"cevian from {vertex} through {p}") from exc


def cevian(t: Triangle, p: Point, vertex: str) -> Segment:
    v, _, _ = _parts(t, vertex)
    return Segment(v, cevian_trace(t, p, vertex))


def spoke(t: Triangle, p: Point, vertex: str) -> Segment:
    v, _, _ = _parts(t, vertex)
    return Segment(p, v)


def apothem(t: Triangle, p: Point, vertex: str) -> Segment:
    return Segment(p, foot(p, side_line(t, vertex)))


def chord(p: Point, q: Point) -> Segment:
    return Segment(p, q)


def parachord(t: Triangle, vertex: str, fraction: float) -> Segment:
    v, p, q = _parts(t, vertex)
    return Segment(
        Point(v.x + fraction * (p.x - v.x), v.y + fraction * (p.y - v.y)),
        Point(v.x + fraction * (q.x - v.x), v.y + fraction * (q.y - v.y)),
    )


def antiparallel(t: Triangle, vertex: str, fraction: float) -> Segment:
    """Antiparallel chord: cuts the two sides so the four endpoints are concyclic."""
    v, p, q = _parts(t, vertex)
    dp, dq = distance(v, p), distance(v, q)
    fp = fraction * dq / dp
    fq = fraction * dp / dq
    return Segment(
        Point(v.x + fp * (p.x - v.x), v.y + fp * (p.y - v.y)),
        Point(v.x + fq * (q.x - v.x), v.y + fq * (q.y - v.y)),
    )


def pararadius(t: Triangle, p: Point, vertex: str) -> Segment:
    """Segment from p parallel to the side opposite ``vertex``, ending on
    the nearest other side."""
    _, sp, sq = _parts(t, vertex)
    dx, dy = sq.x - sp.x, sq.y - sp.y
    sides = ((t.A, t.B), (t.B, t.C), (t.C, t.A))
    best = None
    for u, w in sides:
        ex, ey = w.x - u.x, w.y - u.y
        det = dx * ey - dy * ex
        if abs(det) <= 1e-14 * t.diameter * t.diameter:
            continue  # the side we are parallel to
        tr = ((u.x - p.x) * ey - (u.y - p.y) * ex) / det
        su = ((u.x - p.x) * dy - (u.y - p.y) * dx) / det
        if abs(tr) <= 1e-12 or not (0.0 <= su <= 1.0):
            continue
        if best is None or abs(tr) < abs(best):
            best = tr
    if best is None:
        raise DegenerateConfiguration("pararadius does not reach another side")
    return Segment(p, Point(p.x + best * dx, p.y + best * dy))


def incline(t: Triangle, p: Point, vertex: str, angle: float) -> Segment:
    """Segment from p meeting the side opposite ``vertex`` at the given angle."""
    _, sp, sq = _parts(t, vertex)
    dx, dy = sq.x - sp.x, sq.y - sp.y
    ca, sa = math.cos(angle), math.sin(angle)
    rx, ry = ca * dx - sa * dy, sa * dx + ca * dy
    ray = line_through(p, Point(p.x + rx, p.y + ry))
    return Segment(p, intersect_lines(ray, line_through(sp, sq)))


def circlecevian(t: Triangle, p: Point, vertex: str) -> Segment:
    """From a vertex through p to the circle through p and the other vertices."""
    v, q, r = _parts(t, vertex)
    circ = circle_through(q, p, r)
    dx, dy = p.x - v.x, p.y - v.y
    a2 = dx * dx + dy * dy
    cx, cy = v.x - circ.center.x, v.y - circ.center.y
    c2 = cx * cx + cy * cy - circ.radius * circ.radius
    s2 = c2 / a2  # Vieta: the root at p is s = 1
    return Segment(v, Point(v.x + s2 * dx, v.y + s2 * dy))


def simson_line(t: Triangle, p: Point, rel: float = 1e-7) -> Line:
    cc = t.circumcircle()
    if abs(distance(p, cc.center) - cc.radius) > rel * cc.radius:
        raise NotOnCircumcircle(f"{p} is off the circumcircle")
    feet = [foot(p, side_line(t, v)) for v in "ABC"]
    pairs = [(distance(feet[i], feet[j]), i, j) for i in range(3) for j in range(i + 1, 3)]
    _, i, j = max(pairs)
    return line_through(feet[i], feet[j])


def euler_line(t: Triangle) -> Line:
    o = t.circumcircle().center
    g = t.centroid()
    if distance(o, g) <= 1e-12 * t.diameter:
        raise EquilateralNoEulerLine("circumcenter and centroid coincide")
    return line_through(o, g)


def sagitta(t: Triangle, vertex: str) -> Segment:
    """From the midpoint of the side opposite ``vertex`` outward to the far
    circumcircle point on the perpendicular at that midpoint."""
    v, p, q = _parts(t, vertex)
    m = midpoint(p, q)
    side = line_through(p, q)
    cc = t.circumcircle()
    cands = (
        Point(cc.center.x + cc.radius * side.l, cc.center.y + cc.radius * side.m),
        Point(cc.center.x - cc.radius * side.l, cc.center.y - cc.radius * side.m),
    )
    inward = signed_distance(side, v)
    far = cands[0] if signed_distance(side, cands[0]) * inward < 0.0 else cands[1]
    return Segment(m, far)

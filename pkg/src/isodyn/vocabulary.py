"""Constructor vocabulary for figure programs.

Every constructor takes the evaluation context first; geometry errors
propagate and the runner skips the trial.  Vertex-specific families are
generated per label (e.g. ``apollonius_a``, ``trace_b``).
"""

from __future__ import annotations

import math
from typing import Callable, Dict

from . import constructions as cons
from . import formulas
from .centers import REGISTRY, Triangle, center, isodynamic_second
from .errors import DegenerateConfiguration
from .kernel import (
    Circle,
    Point,
    circle_through,
    directed_angle,
    distance,
    fit_conic,
    fit_cubic,
    foot,
    intersect_circles,
    intersect_lines,
    invert,
    line_through,
    midpoint,
    reflect,
    signed_distance,
)

Constructor = Callable[..., object]
VOCABULARY: Dict[str, Constructor] = {}


def _register(name: str, fn: Constructor) -> None:
    if name in VOCABULARY:
        raise ValueError(f"duplicate constructor {name!r}")
    VOCABULARY[name] = fn


def _plain(name: str):
    """Register a constructor that ignores the evaluation context."""
    def deco(fn):
        _register(name, lambda ctx, *args: fn(*args))
        return fn
    return deco


# -- samplers ---------------------------------------------------------------

def _sample(ctx):
    return ctx.sampler.sample_triangle(ctx.rng)


def _sample_quad(ctx):
    a, b, c, d = ctx.sampler.sample_quad(ctx.rng)
    return cons.Figure({"a": a, "b": b, "c": c, "d": d})


def _sample_scalar(ctx, lo, hi):
    return float(ctx.rng.uniform(lo, hi))


def _sample_point_in(ctx, circ: Circle):
    while True:
        x, y = ctx.rng.uniform(-1.0, 1.0, 2)
        if x * x + y * y < 0.9409:  # radius 0.97: stay clear of the rim
            return Point(circ.center.x + x * circ.radius, circ.center.y + y * circ.radius)


def _sample_point_on(ctx, circ: Circle):
    th = ctx.rng.uniform(0.0, 2.0 * math.pi)
    return Point(circ.center.x + circ.radius * math.cos(th),
                 circ.center.y + circ.radius * math.sin(th))


def _arc_point(ctx, circ: Circle, p: Point, q: Point, marker: Point, containing: bool):
    """Random point on arc p->q of circ, avoiding (or forcing) the side
    holding ``marker``; stays 5 degrees clear of the endpoints."""
    ap = math.atan2(p.y - circ.center.y, p.x - circ.center.x)
    aq = math.atan2(q.y - circ.center.y, q.x - circ.center.x)
    am = math.atan2(marker.y - circ.center.y, marker.x - circ.center.x)
    sweep = (aq - ap) % (2.0 * math.pi)
    marker_inside = (am - ap) % (2.0 * math.pi) < sweep
    use_ccw_arc = marker_inside if containing else not marker_inside
    margin = math.radians(5.0)
    if use_ccw_arc:
        th = ap + ctx.rng.uniform(margin, sweep - margin)
    else:
        other = 2.0 * math.pi - sweep
        th = aq + ctx.rng.uniform(margin, other - margin)
    return Point(circ.center.x + circ.radius * math.cos(th),
                 circ.center.y + circ.radius * math.sin(th))


def _sample_point_on_line(ctx, line):
    anchor = foot(Point(0.0, 0.0), line)
    t = ctx.rng.uniform(-4.0, 4.0)
    return Point(anchor.x - t * line.m, anchor.y + t * line.l)


def _jitter(ctx, p: Point, frac: float):
    th = ctx.rng.uniform(0.0, 2.0 * math.pi)
    r = frac * ctx.scale()
    return Point(p.x + r * math.cos(th), p.y + r * math.sin(th))


_register("sample", _sample)
_register("sample_quad", _sample_quad)
_register("sample_scalar", _sample_scalar)
_register("sample_point_in", _sample_point_in)
_register("sample_point_on", _sample_point_on)
_register("sample_point_on_arc", lambda ctx, c, p, q, avoid: _arc_point(ctx, c, p, q, avoid, False))
_register("sample_point_on_arc_containing", lambda ctx, c, p, q, m: _arc_point(ctx, c, p, q, m, True))
_register("sample_point_on_line", _sample_point_on_line)
_register("jitter", _jitter)


# -- kernel constructions ----------------------------------------------------

_plain("point")(lambda x, y: Point(x, y))
_plain("line_through")(line_through)
_plain("intersect")(intersect_lines)
_plain("circle3")(circle_through)
_plain("midpoint")(midpoint)
_plain("foot")(foot)
_plain("reflect")(reflect)
_plain("directed_angle")(directed_angle)
_plain("invert")(invert)
_plain("conic_through")(lambda *pts: fit_conic(pts))
_plain("cubic_through")(lambda *pts: fit_cubic(pts))


@_plain("circle_diameter")
def _circle_diameter(p: Point, q: Point) -> Circle:
    return Circle(midpoint(p, q), 0.5 * distance(p, q))


@_plain("common_chord")
def _common_chord(c1: Circle, c2: Circle):
    p1, p2 = intersect_circles(c1, c2)
    return line_through(p1, p2)


@_plain("centroid_of")
def _centroid_of(*pts: Point) -> Point:
    n = len(pts)
    return Point(sum(p.x for p in pts) / n, sum(p.y for p in pts) / n)


@_plain("parallel_at")
def _parallel_at(p: Point, q: Point, offset: float):
    """Line parallel to pq, shifted by ``offset`` to the left of p->q."""
    base = line_through(p, q)
    sign = 1.0 if signed_distance(base, Point(p.x - (q.y - p.y), p.y + (q.x - p.x))) > 0 else -1.0
    from .kernel import Line
    return Line(base.l, base.m, base.n - sign * offset)


# -- triangles and their parts ------------------------------------------------

_plain("triangle_of")(lambda p, q, r: Triangle(p, q, r))
_plain("triangle_sides")(Triangle.from_sides)
_plain("triangle_angles")(lambda alpha, beta: Triangle.from_angles(alpha, beta))
_plain("vertex_a")(lambda t: t.A)
_plain("vertex_b")(lambda t: t.B)
_plain("vertex_c")(lambda t: t.C)
_plain("quad_a")(lambda q: q["a"])
_plain("quad_b")(lambda q: q["b"])
_plain("quad_c")(lambda q: q["c"])
_plain("quad_d")(lambda q: q["d"])
_plain("circumcircle")(lambda t: t.circumcircle())
_plain("centroid")(lambda t: t.centroid())
_plain("euler_line")(cons.euler_line)
_plain("pedal")(cons.pedal_triangle)
_plain("simson")(cons.simson_line)
_plain("chord")(cons.chord)

for _v in "abc":
    _V = _v.upper()
    _plain(f"apollonius_{_v}")(lambda t, v=_V: cons.apollonius_circle(t, v))
    _plain(f"trace_{_v}")(lambda t, p, v=_V: cons.cevian_trace(t, p, v))
    _plain(f"cevian_{_v}")(lambda t, p, v=_V: cons.cevian(t, p, v))
    _plain(f"spoke_{_v}")(lambda t, p, v=_V: cons.spoke(t, p, v))
    _plain(f"apothem_{_v}")(lambda t, p, v=_V: cons.apothem(t, p, v))
    _plain(f"sagitta_{_v}")(lambda t, v=_V: cons.sagitta(t, v))
    _plain(f"parachord_{_v}")(lambda t, f, v=_V: cons.parachord(t, v, f))
    _plain(f"antiparallel_{_v}")(lambda t, f, v=_V: cons.antiparallel(t, v, f))
    _plain(f"pararadius_{_v}")(lambda t, p, v=_V: cons.pararadius(t, p, v))
    _plain(f"incline_{_v}")(lambda t, p, ang, v=_V: cons.incline(t, p, v, ang))
    _plain(f"circlecevian_{_v}")(lambda t, p, v=_V: cons.circlecevian(t, p, v))
    _plain(f"side_{_v}")(lambda t, v=_V: cons.side_line(t, v))


@_plain("circumcevian_a")
def _cc_a(t, p):
    return cons.circumcevian_points(t, p)[0]


@_plain("circumcevian_b")
def _cc_b(t, p):
    return cons.circumcevian_points(t, p)[1]


@_plain("circumcevian_c")
def _cc_c(t, p):
    return cons.circumcevian_points(t, p)[2]


# -- centers ------------------------------------------------------------------

for _cid in REGISTRY:
    _plain(_cid.lower())(lambda t, c=_cid: center(t, c))

_plain("isodynamic1")(lambda t: center(t, "X15"))
_plain("isodynamic2")(isodynamic_second)
_plain("excenter_a")(lambda t: center(t, "ExA"))
_plain("excenter_b")(lambda t: center(t, "ExB"))
_plain("excenter_c")(lambda t: center(t, "ExC"))


# -- scalar measurements and formula values ------------------------------------

_plain("dist")(distance)
_plain("radius_of")(lambda c: c.radius)
_plain("circumradius")(lambda t: t.circumradius)
_plain("area")(lambda t: t.area)
_plain("spoke_formula")(formulas.spoke_length)
_plain("separation_formula")(formulas.isodynamic_separation)
_plain("pedal_area_formula")(formulas.pedal_area)
_plain("cevian_length_formula")(formulas.cevian_length)
_plain("locus_radius_formula")(formulas.locus_radius)


@_plain("segment_endpoint")
def _segment_endpoint(seg, index: float) -> Point:
    if int(index) == 0:
        return seg.start
    if int(index) == 1:
        return seg.end
    raise DegenerateConfiguration("segment endpoint index must be 0 or 1")

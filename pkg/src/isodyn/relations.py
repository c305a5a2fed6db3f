"""Assertion predicates available to catalog entries and figure programs.

Extends the kernel's core incidence relations with the scalar, angle, and
bespoke metric identities the property corpus needs.  Every residual is
dimensionless; angle residuals are radians.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Sequence

from . import formulas, kernel
from .centers import Triangle
from .errors import ArityMismatch, UnknownRelation
from .kernel import (
    Circle,
    Conic,
    Line,
    Point,
    Tolerance,
    angle_between_circles,
    as_radians,
    check_relation,
    distance,
    line_through,
    signed_distance,
    wrap_signed,
)

_CORE_KINDS = frozenset({
    "collinear", "concyclic", "concurrent", "parallel", "perpendicular",
    "equal_angle", "equal_angle_mod_pi", "equal_length", "similar",
    "congruent", "midpoint_of", "bisects", "tangent_circles",
    "orthogonal_circles", "on_line", "on_circle", "on_conic", "on_cubic",
    "kite",
})


def _need(args: Sequence, n: int, kind: str) -> None:
    if len(args) != n:
        raise ArityMismatch(f"{kind} expects {n} args, got {len(args)}")


def _rel(u: float, v: float) -> float:
    m = max(abs(u), abs(v))
    return 0.0 if m <= 1e-300 else abs(u - v) / m


def _coincident(args, tol: Tolerance) -> float:
    _need(args, 2, "coincident")
    return distance(args[0], args[1]) / tol.scale


def _equilateral(args, tol: Tolerance) -> float:
    pts = args[0].vertices if len(args) == 1 and isinstance(args[0], Triangle) else args
    return check_relation("equilateral", tuple(pts), tol)


def _inward_distances(p: Point, t: Triangle):
    for line, opposite in ((line_through(t.B, t.C), t.A),
                           (line_through(t.C, t.A), t.B),
                           (line_through(t.A, t.B), t.C)):
        yield signed_distance(line, p) * math.copysign(1.0, signed_distance(line, opposite))


def _inside_triangle(args, tol: Tolerance) -> float:
    _need(args, 2, "inside_triangle")
    return max(0.0, -min(_inward_distances(args[0], args[1]))) / tol.scale


def _outside_triangle(args, tol: Tolerance) -> float:
    _need(args, 2, "outside_triangle")
    return max(0.0, min(_inward_distances(args[0], args[1]))) / tol.scale


def _inside_circle(args, tol: Tolerance) -> float:
    _need(args, 2, "strictly_inside_circle")
    p, c = args
    return max(0.0, distance(p, c.center) - c.radius) / tol.scale


def _angle_is(args, tol: Tolerance) -> float:
    _need(args, 2, "angle_is")
    return wrap_signed(as_radians(args[0]) - as_radians(args[1]))


def _angle_sum_is(args, tol: Tolerance) -> float:
    _need(args, 3, "angle_sum_is")
    return wrap_signed(as_radians(args[0]) + as_radians(args[1]) - as_radians(args[2]))


def _angle_diff_is(args, tol: Tolerance) -> float:
    _need(args, 3, "angle_diff_is")
    return wrap_signed(as_radians(args[0]) - as_radians(args[1]) - as_radians(args[2]))


def _angle_mult_eq(args, tol: Tolerance) -> float:
    _need(args, 3, "angle_mult_eq")
    return wrap_signed(as_radians(args[0]) - args[2] * as_radians(args[1]))


def _equal_product(args, tol: Tolerance) -> float:
    """|p1 p2| * |p3 p4| == |p5 p6| * |p7 p8|, relative."""
    _need(args, 8, "equal_product")
    lhs = distance(args[0], args[1]) * distance(args[2], args[3])
    rhs = distance(args[4], args[5]) * distance(args[6], args[7])
    return _rel(lhs, rhs)


def _cubed_ratio_eq(args, tol: Tolerance) -> float:
    """(|p1 p2| / |p3 p4|)^3 == |p5 p6| / |p7 p8|, relative."""
    _need(args, 8, "cubed_ratio_eq")
    lhs = (distance(args[0], args[1]) / distance(args[2], args[3])) ** 3
    rhs = distance(args[4], args[5]) / distance(args[6], args[7])
    return _rel(lhs, rhs)


def _equal_scalar(args, tol: Tolerance) -> float:
    _need(args, 2, "equal_scalar")
    return _rel(float(args[0]), float(args[1]))


def _ratio_lt(args, tol: Tolerance) -> float:
    """x / y < k; one-sided violation residual."""
    _need(args, 3, "ratio_lt")
    return max(0.0, float(args[0]) / float(args[1]) - float(args[2]))


def _circles_angle_is(args, tol: Tolerance) -> float:
    _need(args, 3, "circles_angle_is")
    return abs(angle_between_circles(args[0], args[1]) - float(args[2]))


def _conic_is_hyperbola(args, tol: Tolerance) -> float:
    _need(args, 1, "conic_is_hyperbola")
    return 0.0 if kernel.conic_class(args[0]) == "hyperbola" else 1.0


def _inv_radius_sum(args, tol: Tolerance) -> float:
    """1/R(p1p2p3) + 1/R(p4p5p6) == 1/R(p7p8p9), relative."""
    _need(args, 9, "inv_radius_sum")
    r1 = Triangle(*args[0:3]).circumradius
    r2 = Triangle(*args[3:6]).circumradius
    r3 = Triangle(*args[6:9]).circumradius
    return _rel(1.0 / r1 + 1.0 / r2, 1.0 / r3)


def _apothem_sine_ratio(args, tol: Tolerance) -> float:
    """Perpendicular distances from p to the sides are proportional to
    sin(angle + shift); checks all three cyclic ratios."""
    _need(args, 3, "apothem_sine_ratio")
    p, t, shift = args[0], args[1], as_radians(args[2])
    d = list(_inward_distances(p, t))
    w = [math.sin(t.angle_a + shift), math.sin(t.angle_b + shift), math.sin(t.angle_c + shift)]
    return max(
        _rel(d[0] * w[1], d[1] * w[0]),
        _rel(d[1] * w[2], d[2] * w[1]),
        _rel(d[2] * w[0], d[0] * w[2]),
    )


def _brocard_power_identity(args, tol: Tolerance) -> float:
    """|O S|^2 * |O K| == R^2 * (|O S| - |K S|) along the Brocard axis."""
    _need(args, 4, "brocard_power_identity")
    o, s, k, circ = args
    p, q, r = distance(o, s), distance(o, k), distance(k, s)
    return _rel(p * p * q, circ.radius ** 2 * (p - r))


def _brocard_gap_identities(args, tol: Tolerance) -> float:
    """Axis-gap identities under the oracle-resolved labeling; an optional
    second argument != 0 selects a deliberately wrong labeling (negative
    controls only)."""
    if len(args) not in (1, 2):
        raise ArityMismatch("brocard_gap_identities expects 1 or 2 args")
    assignment = formulas.BROCARD_GAP_ASSIGNMENT
    if len(args) == 2 and float(args[1]) != 0.0:
        assignment = (0, 1, 2)
    return formulas.brocard_gap_residuals(args[0], assignment)


_EXTENDED: Dict[str, Callable[[Sequence, Tolerance], float]] = {
    "coincident": _coincident,
    "equilateral": _equilateral,
    "inside_triangle": _inside_triangle,
    "outside_triangle": _outside_triangle,
    "strictly_inside_circle": _inside_circle,
    "angle_is": _angle_is,
    "angle_sum_is": _angle_sum_is,
    "angle_diff_is": _angle_diff_is,
    "angle_mult_eq": _angle_mult_eq,
    "equal_product": _equal_product,
    "cubed_ratio_eq": _cubed_ratio_eq,
    "equal_scalar": _equal_scalar,
    "ratio_lt": _ratio_lt,
    "circles_angle_is": _circles_angle_is,
    "conic_is_hyperbola": _conic_is_hyperbola,
    "inv_radius_sum": _inv_radius_sum,
    "apothem_sine_ratio": _apothem_sine_ratio,
    "brocard_power_identity": _brocard_power_identity,
    "brocard_gap_identities": _brocard_gap_identities,
}

RELATION_KINDS = frozenset(_CORE_KINDS | set(_EXTENDED))


def evaluate_relation(kind: str, args: Sequence, tol: Tolerance) -> float:
    """Residual of any relation kind (core or extended)."""
    fn = _EXTENDED.get(kind)
    if fn is not None:
        return fn(args, tol)
    if kind in _CORE_KINDS:
        return check_relation(kind, tuple(args), tol)
    raise UnknownRelation(kind)

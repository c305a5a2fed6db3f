"""Triangle data model, trilinear-coordinate engine, and named centers.

The registry of trilinear formulas ships as a plain-text table
(``data/centers.tsv``, one ``center_id <TAB> expression`` line per center)
and is parsed at import time.  Only X15's trilinears come verbatim from the
defining sine formula; every other entry is the standard published formula
and is pinned down by a defining-property test.
"""

from __future__ import annotations

import ast
import math
from importlib import resources
from typing import Callable, Dict, Tuple

from . import kernel
from .errors import (
    DegenerateApollonius,
    DegenerateTriangle,
    EquilateralSingular,
    PointAtInfinity,
    UnknownCenter,
)
from .kernel import Circle, Point, circle_through, distance, intersect_circles

REQUIRED_CENTERS = (
    "X1", "X2", "X3", "X4", "X5", "X6",
    "X13", "X14", "X15", "X16", "X17", "X18",
    "X39", "X61",
    "Brocard1", "Brocard2", "ExA", "ExB", "ExC",
)

# Relative side spread below which the second isodynamic point is treated
# as being at infinity.
EQUILATERAL_SPREAD = 1e-6


class Triangle:
    """Labeled vertices plus eagerly computed side/angle/radius data."""

    __slots__ = ("A", "B", "C", "a", "b", "c", "angle_a", "angle_b", "angle_c",
                 "s", "area", "circumradius", "inradius", "orientation")

    def __init__(self, A: Point, B: Point, C: Point):
        self.A, self.B, self.C = A, B, C
        self.a = distance(B, C)
        self.b = distance(C, A)
        self.c = distance(A, B)
        cross = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x)
        scale = max(self.a, self.b, self.c)
        if scale <= 0.0 or abs(cross) <= 1e-14 * scale * scale:
            raise DegenerateTriangle(f"collinear vertices {A}, {B}, {C}")
        self.orientation = 1 if cross > 0.0 else -1
        self.area = 0.5 * abs(cross)
        self.angle_a = self._angle(self.b, self.c, self.a)
        self.angle_b = self._angle(self.c, self.a, self.b)
        self.angle_c = self._angle(self.a, self.b, self.c)
        self.s = 0.5 * (self.a + self.b + self.c)
        self.circumradius = self.a * self.b * self.c / (4.0 * self.area)
        self.inradius = self.area / self.s

    @staticmethod
    def _angle(u: float, v: float, opposite: float) -> float:
        cosv = (u * u + v * v - opposite * opposite) / (2.0 * u * v)
        return math.acos(max(-1.0, min(1.0, cosv)))

    @classmethod
    def from_sides(cls, a: float, b: float, c: float) -> "Triangle":
        """Canonical placement: B at the origin, C at (a, 0), A above."""
        if min(a, b, c) <= 0.0 or a + b <= c or b + c <= a or c + a <= b:
            raise DegenerateTriangle(f"side lengths {a}, {b}, {c}")
        x = (a * a + c * c - b * b) / (2.0 * a)
        y2 = c * c - x * x
        if y2 <= 0.0:
            raise DegenerateTriangle(f"side lengths {a}, {b}, {c}")
        return cls(Point(x, math.sqrt(y2)), Point(0.0, 0.0), Point(a, 0.0))

    @classmethod
    def from_angles(cls, alpha: float, beta: float, circumradius: float = 1.0) -> "Triangle":
        """Counterclockwise triangle with the given angles, on a circumcircle.

        Vertices sit on a circle of the given radius; the arc spans are twice
        the opposite angles, so the angles are hit to machine accuracy.
        """
        gamma = math.pi - alpha - beta
        if min(alpha, beta, gamma) <= 0.0:
            raise DegenerateTriangle(f"angles {alpha}, {beta}")
        ta = 0.0
        tb = 2.0 * gamma
        tc = 2.0 * gamma + 2.0 * alpha
        pts = [Point(circumradius * math.cos(t), circumradius * math.sin(t)) for t in (ta, tb, tc)]
        return cls(*pts)

    @property
    def vertices(self) -> Tuple[Point, Point, Point]:
        return (self.A, self.B, self.C)

    @property
    def diameter(self) -> float:
        return max(self.a, self.b, self.c)

    @property
    def side_spread(self) -> float:
        lo, hi = min(self.a, self.b, self.c), max(self.a, self.b, self.c)
        return (hi - lo) / ((self.a + self.b + self.c) / 3.0)

    @property
    def min_angle(self) -> float:
        return min(self.angle_a, self.angle_b, self.angle_c)

    def centroid(self) -> Point:
        return Point((self.A.x + self.B.x + self.C.x) / 3.0, (self.A.y + self.B.y + self.C.y) / 3.0)

    def circumcircle(self) -> Circle:
        return circle_through(self.A, self.B, self.C)

    def __repr__(self):
        return f"Triangle({self.A}, {self.B}, {self.C})"


# ---------------------------------------------------------------------------
# Trilinear expression table

_ALLOWED_FUNCS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sec": lambda x: 1.0 / math.cos(x),
    "csc": lambda x: 1.0 / math.sin(x),
    "cot": lambda x: math.cos(x) / math.sin(x),
    "sqrt": math.sqrt,
}
_ALLOWED_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Constant,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd, ast.Load,
)
_ALLOWED_NAMES = {"A", "B", "C", "a", "b", "c", "pi"} | set(_ALLOWED_FUNCS)

TrilinearFn = Callable[[Triangle], Tuple[float, float, float]]


def _compile_expr(text: str, origin: str):
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED_NODES):
            raise ValueError(f"{origin}: disallowed syntax {type(node).__name__!r} in {text!r}")
        if isinstance(node, ast.Name) and node.id not in _ALLOWED_NAMES:
            raise ValueError(f"{origin}: unknown name {node.id!r} in {text!r}")
        if isinstance(node, ast.Call) and (
                not isinstance(node.func, ast.Name) or node.func.id not in _ALLOWED_FUNCS):
            raise ValueError(f"{origin}: only {sorted(_ALLOWED_FUNCS)} may be called")
    return compile(tree, f"<trilinear {origin}>", "eval")


def _make_evaluator(exprs, origin: str) -> TrilinearFn:
    codes = [_compile_expr(e, origin) for e in exprs]
    consts = {"pi": math.pi, "__builtins__": {}}
    consts.update(_ALLOWED_FUNCS)

    def evaluate(t: Triangle) -> Tuple[float, float, float]:
        env = {"A": t.angle_a, "B": t.angle_b, "C": t.angle_c, "a": t.a, "b": t.b, "c": t.c}
        return tuple(eval(code, consts, env) for code in codes)  # noqa: S307 (whitelisted AST)

    return evaluate


def parse_registry(text: str) -> Dict[str, TrilinearFn]:
    """Parse a ``center_id <TAB> alpha : beta : gamma`` table."""
    registry: Dict[str, TrilinearFn] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"registry line {lineno}: expected TAB separator")
        cid, expr = line.split("\t", 1)
        parts = [p.strip() for p in expr.split(":")]
        if len(parts) != 3:
            raise ValueError(f"registry line {lineno}: expected three ':'-separated expressions")
        registry[cid.strip()] = _make_evaluator(parts, cid.strip())
    return registry


def _load_default_registry() -> Dict[str, TrilinearFn]:
    text = resources.files("isodyn.data").joinpath("centers.tsv").read_text(encoding="utf-8")
    registry = parse_registry(text)
    missing = [c for c in REQUIRED_CENTERS if c not in registry]
    if missing:
        raise ValueError(f"registry misses required centers: {missing}")
    return registry


REGISTRY: Dict[str, TrilinearFn] = _load_default_registry()


# ---------------------------------------------------------------------------
# Coordinate conversion and centers

def trilinear_to_point(t: Triangle, trilinears: Tuple[float, float, float]) -> Point:
    """Convert homogeneous trilinears via the vertex weights a*alpha etc."""
    wa = t.a * trilinears[0]
    wb = t.b * trilinears[1]
    wc = t.c * trilinears[2]
    total = wa + wb + wc
    if abs(total) <= 1e-12 * (abs(wa) + abs(wb) + abs(wc)):
        raise PointAtInfinity(f"trilinears {trilinears}")
    return Point(
        (wa * t.A.x + wb * t.B.x + wc * t.C.x) / total,
        (wa * t.A.y + wb * t.B.y + wc * t.C.y) / total,
    )


def center(t: Triangle, cid: str) -> Point:
    fn = REGISTRY.get(cid)
    if fn is None:
        raise UnknownCenter(cid)
    return trilinear_to_point(t, fn(t))


def isodynamic_first_trilinear(t: Triangle) -> Point:
    shift = math.pi / 3.0
    return trilinear_to_point(
        t, (math.sin(t.angle_a + shift), math.sin(t.angle_b + shift), math.sin(t.angle_c + shift)))


def isodynamic_first_apollonius(t: Triangle) -> Point:
    """First isodynamic point via intersecting two Apollonius circles.

    Uses the two best-conditioned vertex circles (largest opposite-side
    difference) and picks the intersection inside the circumcircle.
    """
    from .constructions import apollonius_circle  # deferred: avoids import cycle

    if t.side_spread < 1e-12:
        return t.circumcircle().center  # equilateral: circles degenerate to lines through the center
    margins = sorted(
        (("A", abs(t.b - t.c)), ("B", abs(t.c - t.a)), ("C", abs(t.a - t.b))),
        key=lambda kv: kv[1], reverse=True)
    circles = [apollonius_circle(t, v) for v, _ in margins[:2]]
    try:
        p1, p2 = intersect_circles(circles[0], circles[1])
    except Exception as exc:  # tangency/disjointness never happens for valid input
        raise DegenerateApollonius(str(exc)) from exc
    cc = t.circumcircle()
    return p1 if distance(p1, cc.center) < cc.radius else p2


def isodynamic_second(t: Triangle) -> Point:
    if t.side_spread < EQUILATERAL_SPREAD:
        raise EquilateralSingular("second isodynamic point at infinity")
    shift = math.pi / 3.0
    return trilinear_to_point(
        t, (math.sin(t.angle_a - shift), math.sin(t.angle_b - shift), math.sin(t.angle_c - shift)))


def brocard_points(t: Triangle) -> Tuple[Point, Point]:
    return center(t, "Brocard1"), center(t, "Brocard2")

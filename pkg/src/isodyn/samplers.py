"""Seeded triangle-class samplers for the randomized catalog runner.

Fixed-angle classes place the constrained vertex analytically (vertices on
a circumcircle with arc spans twice the opposite angles) so the constraint
holds to machine accuracy; nothing is rejection-sampled into a constraint.
All emitted triangles are counterclockwise and get a random similarity
transform so predicates are exercised at arbitrary pose and scale.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .centers import Triangle
from .kernel import Point

MIN_ANGLE = math.radians(5.0)
MIN_SIDE_SPREAD = 1e-3  # keeps X16 and the conic fits well-conditioned

_CLASS_RE = re.compile(r"^(angle_at|angle_gt|angle_lt)\(([ABC]),\s*([0-9.]+)\)$")

KNOWN_CLASSES = ("generic", "acute120", "isosceles", "equilateral", "cyclic_quad", "synthetic")


@dataclass(frozen=True)
class TriangleClassSampler:
    """One triangle-shape class; ``tag`` is the string used in the catalog."""

    tag: str
    vertex: Optional[str] = None
    degrees: Optional[float] = None

    @classmethod
    def parse(cls, tag: str) -> "TriangleClassSampler":
        tag = tag.strip()
        if tag in KNOWN_CLASSES:
            return cls(tag)
        m = _CLASS_RE.match(tag)
        if not m:
            raise ValueError(f"unknown triangle class {tag!r}")
        return cls(m.group(1), m.group(2), float(m.group(3)))

    def sample_triangle(self, rng: np.random.Generator) -> Triangle:
        if self.tag == "synthetic":
            raise ValueError("synthetic class has no triangle sampler")
        if self.tag == "cyclic_quad":
            raise ValueError("cyclic_quad class samples quads, not triangles")
        return _transform(self._base(rng), rng)

    def sample_quad(self, rng: np.random.Generator) -> Tuple[Point, Point, Point, Point]:
        if self.tag != "cyclic_quad":
            raise ValueError(f"class {self.tag!r} does not sample quadrilaterals")
        min_gap = math.radians(20.0)
        while True:
            angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, 4))
            gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * math.pi]]))
            if gaps.min() >= min_gap:
                break
        pts = [Point(math.cos(a), math.sin(a)) for a in angles]
        rot, scale, tx, ty = _pose(rng)
        return tuple(_apply(p, rot, scale, tx, ty) for p in pts)

    # internal -------------------------------------------------------------

    def _base(self, rng: np.random.Generator) -> Triangle:
        if self.tag == "equilateral":
            third = math.pi / 3.0
            return Triangle.from_angles(third, third)
        if self.tag == "isosceles":
            while True:
                apex = rng.uniform(MIN_ANGLE, math.pi - 2.0 * MIN_ANGLE)
                base = 0.5 * (math.pi - apex)
                if base >= MIN_ANGLE and abs(apex - base) > math.radians(1.0):
                    return Triangle.from_angles(apex, base)
        if self.tag == "generic" or self.tag == "acute120":
            cap = math.radians(119.99) if self.tag == "acute120" else math.pi - 2.0 * MIN_ANGLE
            while True:
                alpha = rng.uniform(MIN_ANGLE, cap)
                beta = rng.uniform(MIN_ANGLE, cap)
                gamma = math.pi - alpha - beta
                if gamma < MIN_ANGLE or max(alpha, beta, gamma) > cap:
                    continue
                t = Triangle.from_angles(alpha, beta)
                if t.side_spread >= MIN_SIDE_SPREAD:
                    return t
        if self.tag in ("angle_at", "angle_gt", "angle_lt"):
            fixed = math.radians(self.degrees)
            while True:
                if self.tag == "angle_gt":
                    fixed = rng.uniform(math.radians(self.degrees) + math.radians(0.1),
                                        math.pi - 2.0 * MIN_ANGLE)
                elif self.tag == "angle_lt":
                    fixed = rng.uniform(MIN_ANGLE,
                                        math.radians(self.degrees) - math.radians(0.1))
                second = rng.uniform(MIN_ANGLE, math.pi - fixed - MIN_ANGLE)
                third = math.pi - fixed - second
                if third < MIN_ANGLE:
                    continue
                if self.vertex == "A":
                    t = Triangle.from_angles(fixed, second)
                elif self.vertex == "B":
                    t = Triangle.from_angles(second, fixed)
                else:
                    t = Triangle.from_angles(second, third)
                if t.side_spread >= 1e-4:
                    return t
        raise ValueError(f"unhandled class {self.tag!r}")


def _pose(rng: np.random.Generator) -> Tuple[float, float, float, float]:
    rot = rng.uniform(0.0, 2.0 * math.pi)
    scale = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    tx, ty = rng.uniform(-3.0, 3.0, 2)
    return rot, scale, float(tx), float(ty)


def _apply(p: Point, rot: float, scale: float, tx: float, ty: float) -> Point:
    c, s = math.cos(rot), math.sin(rot)
    return Point(scale * (c * p.x - s * p.y) + tx, scale * (s * p.x + c * p.y) + ty)


def _transform(t: Triangle, rng: np.random.Generator) -> Triangle:
    rot, scale, tx, ty = _pose(rng)
    return Triangle(*(_apply(v, rot, scale, tx, ty) for v in t.vertices))

"""Closed-form metric formulas for the first isodynamic point, plus the
extremal-constant machinery for the sharp SI < k*R bound.

Every formula has a constructed counterpart elsewhere in the package; the
test suite cross-checks them against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from .centers import Triangle, center
from .errors import EquilateralSingular, NonpositiveInput
from .kernel import distance

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# Coefficients, highest degree first, of the sextic whose positive root is
# the sharp constant in SI < k*R.
SI_SEXTIC = (4.0, 36.0, 120.0, 288.0, 513.0, -72.0, -16.0)

# Gap labeling on the Brocard axis for the metric identities relating the
# consecutive gaps of X3 -- X15 -- X6 -- X16 and R.  The oracle
# resolve_brocard_assignment() finds this assignment uniquely:
# x = |X6 X16|, y = |X15 X6|, z = |X3 X15|.
BROCARD_GAP_ASSIGNMENT: Tuple[int, int, int] = (2, 1, 0)


def _sides(t: Triangle, vertex: str) -> Tuple[float, float, float]:
    if vertex == "A":
        return t.a, t.b, t.c
    if vertex == "B":
        return t.b, t.c, t.a
    if vertex == "C":
        return t.c, t.a, t.b
    raise ValueError(f"vertex label {vertex!r}")


def spoke_length(t: Triangle, vertex: str = "A") -> float:
    """Distance from a vertex to the first isodynamic point."""
    a, b, c = _sides(t, vertex)
    return b * c * SQRT2 / math.sqrt(a * a + b * b + c * c + 4.0 * t.area * SQRT3)


def isodynamic_separation(t: Triangle) -> float:
    """|S S'|; the radicand vanishes exactly for equilateral input."""
    q = t.a * t.a + t.b * t.b + t.c * t.c
    radicand = q * q - 48.0 * t.area * t.area
    if t.side_spread < 1e-6 or radicand <= 0.0:
        raise EquilateralSingular("separation formula radicand vanishes")
    return 2.0 * SQRT3 * t.a * t.b * t.c / math.sqrt(radicand)


def pedal_area(t: Triangle) -> float:
    """Area of the (equilateral) pedal triangle of S."""
    k = t.area
    return 2.0 * k * k * SQRT3 / (t.a * t.a + t.b * t.b + t.c * t.c + 4.0 * k * SQRT3)


def cevian_length(t: Triangle, vertex: str = "A") -> float:
    """Length of the cevian from a vertex through S to the opposite side line.

    The quotient is signed by which side of the vertex the trace falls on
    (it goes negative once S leaves the vertex's angular sector); the
    length is its absolute value.
    """
    from .errors import ParallelToSide

    a, b, c = _sides(t, vertex)
    k = t.area
    num = 4.0 * SQRT2 * b * c * k * math.sqrt(a * a + b * b + c * c + 4.0 * k * SQRT3)
    den = (b * b + c * c) * (4.0 * k + a * a * SQRT3) - SQRT3 * (b * b - c * c) ** 2
    if abs(den) <= 1e-12 * (b * b + c * c) * (4.0 * k + a * a * SQRT3):
        raise ParallelToSide("cevian through the isodynamic point is parallel to the side")
    return abs(num / den)


def locus_radius(a: float, h: float) -> float:
    """Radius of the circle traced by S(A_i B C) as A_i runs along a line
    parallel to BC at distance h."""
    if a <= 0.0 or h <= 0.0:
        raise NonpositiveInput(f"a={a}, h={h}")
    return a * a / (2.0 * h + a * SQRT3)


# ---------------------------------------------------------------------------
# Extremal constant for SI < k*R

def _sextic(x: float) -> float:
    v = 0.0
    for coef in SI_SEXTIC:
        v = v * x + coef
    return v


def sextic_root(lo: float = 0.1, hi: float = 0.5, tol: float = 1e-12) -> float:
    """Positive root of the sharpness sextic, by bisection."""
    flo, fhi = _sextic(lo), _sextic(hi)
    if flo * fhi > 0.0:
        raise ValueError("root not bracketed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _sextic(mid) * flo <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def si_ratio(t: Triangle) -> float:
    """SI / R for one triangle."""
    return distance(center(t, "X15"), center(t, "X1")) / t.circumradius


def _si_ratio_angles(alpha: float, beta: float) -> float:
    gamma = math.pi - alpha - beta
    if min(alpha, beta, gamma) <= 1e-7:
        return -1.0
    return si_ratio(Triangle.from_angles(alpha, beta))


@dataclass(frozen=True)
class ExtremalResult:
    k: float
    witness: Triangle
    sextic_root: float
    starts: int


def si_ratio_supremum(starts: int = 200, seed: int = 0) -> ExtremalResult:
    """Maximize SI/R over triangle shapes (two-angle parameterization).

    Multi-start Nelder-Mead over the angle simplex; the minimum-angle floor
    shrinks with the start index so near-degenerate shapes stay reachable.
    Each start is seeded deterministically from (seed, index).
    """
    if starts < 1:
        raise ValueError("starts must be >= 1")
    best_val, best_x = -1.0, None
    for i in range(starts):
        rng = np.random.default_rng((seed, i))
        floor = math.radians(5.0) * (0.5 ** (i / 25.0))
        while True:
            alpha = rng.uniform(floor, math.pi - 2.0 * floor)
            beta = rng.uniform(floor, math.pi - 2.0 * floor)
            if alpha + beta < math.pi - floor:
                break
        res = minimize(
            lambda x: -_si_ratio_angles(x[0], x[1]),
            (alpha, beta),
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 600},
        )
        if -res.fun > best_val:
            best_val, best_x = -res.fun, res.x
    witness = Triangle.from_angles(best_x[0], best_x[1])
    return ExtremalResult(k=best_val, witness=witness, sextic_root=sextic_root(), starts=starts)


# ---------------------------------------------------------------------------
# Brocard-axis gap identities

def brocard_gaps(t: Triangle) -> Tuple[float, float, float, float]:
    """Consecutive gaps along X3 -- X15 -- X6 -- X16 plus the circumradius."""
    o = center(t, "X3")
    s = center(t, "X15")
    k = center(t, "X6")
    sp = center(t, "X16")
    return distance(o, s), distance(s, k), distance(k, sp), t.circumradius


def brocard_gap_residuals(t: Triangle, assignment: Sequence[int]) -> float:
    """Worst relative residual of the five axis identities under a labeling.

    ``assignment`` maps the labels (x, y, z) to gap indices 0..2 in the
    order |X3 X15|, |X15 X6|, |X6 X16|.
    """
    g = brocard_gaps(t)
    r = g[3]
    x, y, z = g[assignment[0]], g[assignment[1]], g[assignment[2]]
    s = x + y + z

    def rel(u: float, v: float) -> float:
        return abs(u - v) / max(abs(u), abs(v))

    return max(
        rel(y * s, x * z),
        rel(z * s, r * r),
        rel(1.0 / z + 1.0 / s, 2.0 / (y + z)),
        rel(1.0 / x + 1.0 / s, 2.0 / (x + y)),
        rel((x + y) * (y + z), 2.0 * x * z),
    )


def resolve_brocard_assignment(trials: int = 50, seed: int = 0,
                               tol: float = 1e-7) -> Optional[Tuple[int, int, int]]:
    """Search the six labelings for the one satisfying all five identities
    on every sampled triangle; None when no labeling survives."""
    rng = np.random.default_rng(seed)
    triangles = []
    while len(triangles) < trials:
        alpha = rng.uniform(math.radians(10), math.radians(150))
        beta = rng.uniform(math.radians(10), math.radians(150))
        if math.pi - alpha - beta > math.radians(10):
            t = Triangle.from_angles(alpha, beta)
            if t.side_spread > 1e-3:
                triangles.append(t)
    survivors = []
    for perm in permutations((0, 1, 2)):
        if all(brocard_gap_residuals(t, perm) <= tol for t in triangles):
            survivors.append(perm)
    return survivors[0] if len(survivors) == 1 else None

"""Exception hierarchy shared by all isodyn modules."""


class GeometryError(Exception):
    """Base class for all geometric construction and predicate failures."""


# kernel
class CoincidentPoints(GeometryError):
    pass


class ParallelLines(GeometryError):
    """Lines meet at infinity; used to flag degenerate trials."""


class CollinearPoints(GeometryError):
    pass


class DisjointCircles(GeometryError):
    pass


class TangentCircles(GeometryError):
    """Circles touch at a single point, available as ``.point``."""

    def __init__(self, point):
        super().__init__(f"circles tangent at {point}")
        self.point = point


class ConcentricCircles(GeometryError):
    pass


class DegenerateRay(GeometryError):
    pass


class CenterInversion(GeometryError):
    pass


class ArityMismatch(GeometryError):
    pass


class UnknownRelation(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class RankDeficient(GeometryError):
    pass


# centers
class PointAtInfinity(GeometryError):
    pass


class UnknownCenter(GeometryError):
    pass


class EquilateralSingular(GeometryError):
    """Second isodynamic point is at infinity for (near-)equilateral input."""


class DegenerateApollonius(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


# constructions
class ExternalFootAtInfinity(GeometryError):
    pass


class DegeneratePedal(GeometryError):
    pass


class PointOnCircle(GeometryError):
    pass


class ParallelToSide(GeometryError):
    pass


class NotOnCircumcircle(GeometryError):
    pass


class EquilateralNoEulerLine(GeometryError):
    pass


# formulas
class NonpositiveInput(GeometryError):
    pass


# catalog / dsl
class UnknownEntry(GeometryError):
    pass


class CombinatorialLimit(GeometryError):
    pass


class FigSyntaxError(GeometryError):
    """Parse failure with 1-based position and the offending token."""

    def __init__(self, message, line, column, token=""):
        super().__init__(f"{message} at line {line}, column {column}" + (f": {token!r}" if token else ""))
        self.line = line
        self.column = column
        self.token = token


class UnknownConstructor(FigSyntaxError):
    pass


class UseBeforeDefine(FigSyntaxError):
    pass


class Redefinition(FigSyntaxError):
    pass


class ConstructionError(GeometryError):
    """A program statement failed; the trial instance is skipped."""

    def __init__(self, name, cause):
        super().__init__(f"constructing {name!r}: {cause}")
        self.name = name
        self.cause = cause

"""Figure-description language: parser, pretty-printer, evaluator.

Grammar (normative for the shipped corpus, file extension ``.fig``)::

    program = {stmt NEWLINE}
    stmt    = IDENT ":=" call | "assert" call
    call    = IDENT "(" [args] ")"
    args    = arg {"," arg}
    arg     = IDENT | NUMBER | ANGLE      # angle literals: 60deg, 22.5deg

Comments run from ``#`` to end of line.  Programs are single-assignment
with no control flow; angle literals are degrees in source and radians at
evaluation time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .constructions import Figure
from .errors import (
    ConstructionError,
    FigSyntaxError,
    GeometryError,
    Redefinition,
    UnknownConstructor,
    UseBeforeDefine,
)
from .kernel import Point, Segment, Tolerance, figure_scale
from .centers import Triangle
from .relations import RELATION_KINDS, evaluate_relation


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Ang:
    degrees: float


Arg = Union[Ref, Num, Ang]


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple[Arg, ...]


@dataclass(frozen=True)
class Binding:
    name: str
    call: Call
    line: int


@dataclass(frozen=True)
class Assertion:
    call: Call
    line: int


Statement = Union[Binding, Assertion]


@dataclass(frozen=True)
class Program:
    statements: Tuple[Statement, ...]

    @property
    def assertions(self) -> Tuple[Assertion, ...]:
        return tuple(s for s in self.statements if isinstance(s, Assertion))


_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t]+)
      | (?P<comment>\#[^\n]*)
      | (?P<angle>-?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?deg\b)
      | (?P<number>-?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<assign>:=)
      | (?P<punct>[(),])
    """,
    re.VERBOSE,
)


def _tokenize_line(text: str, lineno: int) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FigSyntaxError("unexpected character", lineno, pos + 1, text[pos])
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append((kind, m.group(), pos + 1))
        pos = m.end()
    return tokens


class _LineParser:
    def __init__(self, tokens, lineno):
        self.tokens = tokens
        self.lineno = lineno
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eol", "", -1)

    def take(self, kind: str, what: str):
        tk, tv, tc = self.peek()
        if tk != kind:
            raise FigSyntaxError(f"expected {what}", self.lineno, tc if tc > 0 else 1, tv)
        self.i += 1
        return tv, tc

    def take_punct(self, ch: str):
        tk, tv, tc = self.peek()
        if tk != "punct" or tv != ch:
            raise FigSyntaxError(f"expected {ch!r}", self.lineno, tc if tc > 0 else 1, tv)
        self.i += 1

    def parse_call(self) -> Call:
        fname, _ = self.take("ident", "constructor name")
        self.take_punct("(")
        args: List[Arg] = []
        tk, tv, _ = self.peek()
        if not (tk == "punct" and tv == ")"):
            while True:
                args.append(self.parse_arg())
                tk, tv, _ = self.peek()
                if tk == "punct" and tv == ",":
                    self.i += 1
                    continue
                break
        self.take_punct(")")
        return Call(fname, tuple(args))

    def parse_arg(self) -> Arg:
        tk, tv, tc = self.peek()
        self.i += 1
        if tk == "ident":
            return Ref(tv)
        if tk == "number":
            return Num(float(tv))
        if tk == "angle":
            return Ang(float(tv[:-3]))
        raise FigSyntaxError("expected argument", self.lineno, tc if tc > 0 else 1, tv)


def parse(source: str, vocabulary: Optional[Dict] = None) -> Program:
    """Parse a figure program, validating names and single assignment.

    ``vocabulary`` maps constructor names to implementations; when omitted
    the default vocabulary is used.  Relation names are valid in ``assert``
    statements only.
    """
    if vocabulary is None:
        from .vocabulary import VOCABULARY
        vocabulary = VOCABULARY
    statements: List[Statement] = []
    defined = set()
    for lineno, raw in enumerate(source.splitlines(), start=1):
        tokens = _tokenize_line(raw, lineno)
        if not tokens:
            continue
        lp = _LineParser(tokens, lineno)
        tk, tv, tc = lp.peek()
        if tk == "ident" and tv == "assert":
            lp.i += 1
            call = lp.parse_call()
            if call.func not in RELATION_KINDS:
                raise UnknownConstructor(f"unknown relation {call.func!r}", lineno, 1, call.func)
            stmt: Statement = Assertion(call, lineno)
        else:
            name, nc = lp.take("ident", "name")
            lp.take("assign", "':='")
            call = lp.parse_call()
            if call.func not in vocabulary:
                raise UnknownConstructor(f"unknown constructor {call.func!r}", lineno, 1, call.func)
            if name in defined:
                raise Redefinition(f"name {name!r} reassigned", lineno, nc, name)
            stmt = Binding(name, call, lineno)
        tk, tv, tc = lp.peek()
        if tk != "eol":
            raise FigSyntaxError("trailing input", lineno, tc, tv)
        for a in stmt.call.args:
            if isinstance(a, Ref) and a.name not in defined:
                raise UseBeforeDefine(f"name {a.name!r} not defined", lineno, 1, a.name)
        if isinstance(stmt, Binding):
            defined.add(stmt.name)
        statements.append(stmt)
    return Program(tuple(statements))


def _fmt_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def _fmt_arg(a: Arg) -> str:
    if isinstance(a, Ref):
        return a.name
    if isinstance(a, Num):
        return _fmt_number(a.value)
    return _fmt_number(a.degrees) + "deg"


def pretty(program: Program) -> str:
    """Canonical source text; parse(pretty(parse(s))) == parse(s)."""
    lines = []
    for stmt in program.statements:
        call = stmt.call
        text = f"{call.func}({', '.join(_fmt_arg(a) for a in call.args)})"
        if isinstance(stmt, Binding):
            lines.append(f"{stmt.name} := {text}")
        else:
            lines.append(f"assert {text}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Evaluation

class EvalContext:
    """Per-trial state: the RNG, the triangle-class sampler, and the figure."""

    def __init__(self, rng: np.random.Generator, sampler=None, tol_rel: float = 1e-7):
        self.rng = rng
        self.sampler = sampler
        self.tol_rel = tol_rel
        self.figure = Figure()

    def scale(self) -> float:
        pts = _figure_points(self.figure)
        return figure_scale(pts) if len(pts) >= 2 else 1.0


def _figure_points(figure: Figure) -> List[Point]:
    pts: List[Point] = []
    for value in figure.objects.values():
        if isinstance(value, Point):
            pts.append(value)
        elif isinstance(value, Triangle):
            pts.extend(value.vertices)
        elif isinstance(value, Segment):
            pts.extend((value.start, value.end))
    return pts


def evaluate(program: Program, ctx: EvalContext,
             vocabulary: Optional[Dict] = None) -> Tuple[Figure, List[Tuple[str, float]]]:
    """Bind names in order, then score assertions in program order.

    Raises ConstructionError when a binding fails; the caller treats that
    as a skipped (degenerate) trial.
    """
    if vocabulary is None:
        from .vocabulary import VOCABULARY
        vocabulary = VOCABULARY

    def resolve(a: Arg):
        if isinstance(a, Ref):
            return ctx.figure[a.name]
        if isinstance(a, Num):
            return a.value
        return math.radians(a.degrees)

    for stmt in program.statements:
        if not isinstance(stmt, Binding):
            continue
        fn = vocabulary[stmt.call.func]
        try:
            value = fn(ctx, *[resolve(a) for a in stmt.call.args])
        except GeometryError as exc:
            raise ConstructionError(stmt.name, exc) from exc
        except (ZeroDivisionError, ValueError, OverflowError) as exc:
            raise ConstructionError(stmt.name, exc) from exc
        ctx.figure.bind(stmt.name, value, pretty(Program((stmt,))).strip())

    tol = Tolerance(rel=ctx.tol_rel, scale=ctx.scale())
    residuals = []
    for assertion in program.assertions:
        args = [resolve(a) for a in assertion.call.args]
        try:
            res = evaluate_relation(assertion.call.func, args, tol)
        except GeometryError as exc:
            raise ConstructionError(f"assert {assertion.call.func}", exc) from exc
        residuals.append((assertion.call.func, res))
    return ctx.figure, residuals

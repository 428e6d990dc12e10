"""Fixed-point, bisection, secant and Newton root finders plus a comparison harness.

Loop counters match the textbook pseudocode: ``i`` starts at 1 for fixed
point, bisection and Newton and at 2 for secant (two starting points already
count), and ``iterations`` in a report is the value of ``i`` when the method
stopped. ``iterates`` holds every approximation in order, starting points
included.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (BracketError, DegenerateSecant, DerivativeSingularity, GraphconsError,
                     InvalidArgument, NumericError)

METHODS = ("fixed_point", "bisection", "secant", "newton")
SINGULAR_DERIVATIVE = 1e-14


@dataclass(frozen=True)
class ScalarFunction:
    f: Callable[[float], float]
    df: Callable[[float], float] | None = None
    domain: tuple[float, float] = (-math.inf, math.inf)
    name: str = "f"
    # Rearrangement x = g(x) used by the fixed-point row of compare_methods.
    g: Callable[[float], float] | None = None

    def __call__(self, x: float) -> float:
        return self.f(x)


XCOS_MINUS_SIN = ScalarFunction(
    f=lambda x: x * math.cos(x) - math.sin(x),
    df=lambda x: -x * math.sin(x),
    domain=(0.0, 5.0),
    name="x*cos(x) - sin(x)",
    g=math.tan,
)

QUADRATIC2 = ScalarFunction(
    f=lambda x: x * x - 2.0,
    df=lambda x: 2.0 * x,
    domain=(0.0, 2.0),
    name="x^2 - 2",
)

BUILTIN = {"paper": XCOS_MINUS_SIN, "quadratic2": QUADRATIC2}


@dataclass
class RootFindReport:
    method: str
    iterates: list[float]
    root: float | None
    iterations: int
    converged: bool
    tolerance: float
    note: str = ""
    # Bisection only: (a, b) at the start of each pass.
    brackets: list[tuple[float, float]] = field(default_factory=list)


def _as_callable(fn) -> Callable[[float], float]:
    return fn.f if isinstance(fn, ScalarFunction) else fn


def _check(value: float, what: str, report: RootFindReport) -> float:
    if not math.isfinite(value):
        report.note = f"non-finite {what}"
        raise NumericError(f"{report.method}: non-finite {what} after {len(report.iterates)} iterates",
                           report)
    return value


def _validate(tol: float, max_iters: int):
    if not tol > 0:
        raise InvalidArgument(f"tolerance must be positive, got {tol}")
    if max_iters < 1:
        raise InvalidArgument(f"max_iters must be at least 1, got {max_iters}")


def fixed_point(g, p0: float, tol: float = 1e-6, max_iters: int = 100) -> RootFindReport:
    """Iterate ``p <- g(p)`` until two successive values differ by less than ``tol``."""
    _validate(tol, max_iters)
    g = _as_callable(g)
    rep = RootFindReport("fixed_point", [float(p0)], None, 0, False, tol)
    i = 1
    while i <= max_iters:
        rep.iterations = i
        p = _check(float(g(p0)), "g(p)", rep)
        rep.iterates.append(p)
        if abs(p - p0) < tol:
            rep.root, rep.converged = p, True
            return rep
        i += 1
        p0 = p
    rep.note = "fail to converge"
    return rep


def bisection(f, a: float, b: float, tol: float = 1e-6, max_iters: int = 100) -> RootFindReport:
    """Halve ``[a, b]`` until ``f(p) == 0`` or the half-width drops below ``tol``."""
    _validate(tol, max_iters)
    f = _as_callable(f)
    a, b = float(a), float(b)
    rep = RootFindReport("bisection", [], None, 0, False, tol)
    fa = _check(float(f(a)), "f(a)", rep)
    fb = _check(float(f(b)), "f(b)", rep)
    if not fa * fb < 0:
        raise BracketError(f"f(a) and f(b) must have opposite signs: f({a})={fa}, f({b})={fb}")
    i = 1
    while i <= max_iters:
        rep.iterations = i
        rep.brackets.append((a, b))
        p = a + (b - a) / 2
        fp = _check(float(f(p)), "f(p)", rep)
        rep.iterates.append(p)
        if fp == 0 or (b - a) / 2 < tol:
            rep.root, rep.converged = p, True
            return rep
        i += 1
        if fa * fp > 0:
            a, fa = p, fp
        else:
            b = p
    rep.note = "fail to converge"
    return rep


def secant(f, p0: float, p1: float, tol: float = 1e-6, max_iters: int = 100) -> RootFindReport:
    """Secant update ``p = p1 - q1 (p1 - p0) / (q1 - q0)`` until ``|p - p1| < tol``."""
    _validate(tol, max_iters)
    f = _as_callable(f)
    p0, p1 = float(p0), float(p1)
    rep = RootFindReport("secant", [p0, p1], None, 1, False, tol)
    q0 = _check(float(f(p0)), "f(p0)", rep)
    q1 = _check(float(f(p1)), "f(p1)", rep)
    i = 2
    while i <= max_iters:
        rep.iterations = i
        if q1 == q0:
            rep.note = "degenerate secant"
            raise DegenerateSecant(f"secant: f(p0) == f(p1) == {q1} at iterate {len(rep.iterates)}", rep)
        p = _check(p1 - q1 * (p1 - p0) / (q1 - q0), "secant step", rep)
        rep.iterates.append(p)
        if abs(p - p1) < tol:
            rep.root, rep.converged = p, True
            return rep
        i += 1
        p0, q0 = p1, q1
        p1 = p
        q1 = _check(float(f(p)), "f(p)", rep)
    rep.note = "fail to converge"
    return rep


def central_difference(f: Callable[[float], float]) -> Callable[[float], float]:
    eps3 = np.finfo(float).eps ** (1 / 3)

    def df(x: float) -> float:
        h = eps3 * max(1.0, abs(x))
        return (f(x + h) - f(x - h)) / (2 * h)

    return df


def newton(f, p0: float, tol: float = 1e-6, max_iters: int = 100, df=None) -> RootFindReport:
    """Newton-Raphson ``p <- p - f(p) / f'(p)``, stopping when ``|p - p_prev| < tol``.

    The derivative comes from ``df``, then ``f.df`` for a :class:`ScalarFunction`,
    then a central difference.
    """
    _validate(tol, max_iters)
    if df is None and isinstance(f, ScalarFunction):
        df = f.df
    f = _as_callable(f)
    if df is None:
        df = central_difference(f)
    p0 = float(p0)
    rep = RootFindReport("newton", [p0], None, 0, False, tol)
    i = 1
    while i <= max_iters:
        rep.iterations = i
        fp = _check(float(f(p0)), "f(p)", rep)
        dfp = _check(float(df(p0)), "f'(p)", rep)
        if abs(dfp) < SINGULAR_DERIVATIVE:
            rep.note = "derivative singularity"
            raise DerivativeSingularity(f"newton: |f'({p0})| = {abs(dfp):g} is below "
                                        f"{SINGULAR_DERIVATIVE:g}", rep)
        p = _check(p0 - fp / dfp, "newton step", rep)
        rep.iterates.append(p)
        if abs(p - p0) < tol:
            rep.root, rep.converged = p, True
            return rep
        i += 1
        p0 = p
    rep.note = "fail to converge"
    return rep


@dataclass(frozen=True)
class MethodConfig:
    a: float = 4.0
    b: float = 5.0
    p0: float | None = None  # newton and fixed point start; defaults to the midpoint
    secant_p0: float | None = None  # defaults to a
    secant_p1: float | None = None  # defaults to b
    tol: float = 1e-6
    max_iters: int = 100
    g: Callable[[float], float] | None = None


def compare_methods(fn: ScalarFunction, config: MethodConfig = MethodConfig(),
                    methods=METHODS) -> list[RootFindReport]:
    """Run each method on ``fn`` with shared tolerance; failures become rows.

    The fixed-point row iterates ``fn.g`` (or ``config.g``); without either it
    uses ``x - f(x)``. Roots that land outside ``[a, b]`` are flagged
    ``out-of-bracket``.
    """
    c = config
    mid = c.a + (c.b - c.a) / 2
    start = mid if c.p0 is None else c.p0
    g = c.g or fn.g or (lambda x: x - fn.f(x))
    runners = {
        "fixed_point": lambda: fixed_point(g, start, c.tol, c.max_iters),
        "bisection": lambda: bisection(fn, c.a, c.b, c.tol, c.max_iters),
        "secant": lambda: secant(fn, c.a if c.secant_p0 is None else c.secant_p0,
                                 c.b if c.secant_p1 is None else c.secant_p1, c.tol, c.max_iters),
        "newton": lambda: newton(fn, start, c.tol, c.max_iters),
    }
    reports = []
    for name in methods:
        if name not in runners:
            raise InvalidArgument(f"unknown method {name!r}; expected one of {METHODS}")
        try:
            rep = runners[name]()
        except GraphconsError as exc:
            rep = getattr(exc, "report", None) or RootFindReport(name, [], None, 0, False, c.tol)
            rep.root, rep.converged = None, False
            rep.note = str(exc)
        if rep.converged and not min(c.a, c.b) <= rep.root <= max(c.a, c.b):
            rep.note = "out-of-bracket"
        reports.append(rep)
    return reports


def _result_text(rep: RootFindReport) -> str:
    return f"{rep.root:.6f}" if rep.root is not None else "-"


def format_table(reports: list[RootFindReport]) -> str:
    rows = [("Method", "Iterations", "Result", "Converged", "Note")]
    rows += [(r.method, str(r.iterations), _result_text(r), str(r.converged).lower(), r.note)
             for r in reports]
    widths = [max(len(row[k]) for row in rows) for k in range(5)]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
                     for row in rows) + "\n"


def reports_to_csv(reports: list[RootFindReport]) -> str:
    lines = ["method,iterations,result,converged"]
    for r in reports:
        result = repr(r.root) if r.root is not None else ""
        lines.append(f"{r.method},{r.iterations},{result},{str(r.converged).lower()}")
    return "\n".join(lines) + "\n"

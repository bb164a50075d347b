"""Distances, angles, areas and closest approaches between hyperbolic objects.

Every measurement normalizes its inputs after checking that they are proper,
and takes absolute values where orientation would otherwise leak into the
answer.  Where two formulas give the same quantity (``sinh`` from a join,
``cosh`` from an inner product) the second one is used as a consistency check.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .algebra import (
    NULL_TOL,
    Multivector,
    commutator,
    inner,
    join,
    normalize,
    pseudo_norm,
    undual,
    wedge,
)
from .errors import (
    DegenerateTriangle,
    GradeError,
    HyperGAError,
    LinesIntersect,
    MeetNotProper,
    NotHyperparallel,
    NotRightAngled,
    NullOrImproperInput,
    NullVertexAtP,
)
from .geometry import axes, classify, point_grade, require_proper

CHECK_TOL = 1e-9


class ConsistencyError(HyperGAError, ArithmeticError):
    """Two equivalent formulas disagreed beyond tolerance."""


def _cross_check(r: float, cosh_value: float, what: str) -> None:
    expected = math.cosh(r)
    if abs(expected - cosh_value) > CHECK_TOL * max(1.0, cosh_value):
        raise ConsistencyError(f"{what}: cosh r = {expected!r} but inner product gives {cosh_value!r}")


def _acos(x: float) -> float:
    return math.acos(max(-1.0, min(1.0, x)))


def _expect_grades(a: Multivector, b: Multivector, ga: int, gb: int, what: str) -> None:
    if a.homogeneous_grade() != ga or b.homogeneous_grade() != gb:
        raise GradeError(f"{what} expects grades ({ga}, {gb}) in {a.algebra.name}")


# ---------------------------------------------------------------------------
# distances


def distance(p: Multivector, q: Multivector, tol: float = NULL_TOL) -> float:
    """Distance between two proper points of the same space."""
    g = point_grade(p.algebra)
    _expect_grades(p, q, g, g, "distance")
    p, q = require_proper(p, q, tol=tol)
    r = math.asinh(pseudo_norm(join(p, q)))
    _cross_check(r, abs(inner(p, q).scalar), "distance")
    return r


def _point_to(x: Multivector, p: Multivector, tol: float) -> float:
    x, p = require_proper(x, p, tol=tol)
    r = math.asinh(pseudo_norm(join(x, p)))
    _cross_check(r, pseudo_norm(inner(x, p)), "point distance")
    return r


def distance_point_line_h2(a: Multivector, p: Multivector, tol: float = NULL_TOL) -> float:
    if a.algebra.dim != 2:
        raise GradeError("distance_point_line_h2 works in H2")
    _expect_grades(a, p, 1, 2, "distance_point_line_h2")
    return _point_to(a, p, tol)


def distance_point_plane_h3(a: Multivector, p: Multivector, tol: float = NULL_TOL) -> float:
    if a.algebra.dim != 3:
        raise GradeError("distance_point_plane_h3 works in H3")
    _expect_grades(a, p, 1, 3, "distance_point_plane_h3")
    return _point_to(a, p, tol)


def distance_point_line_h3(line: Multivector, p: Multivector, tol: float = NULL_TOL) -> float:
    if line.algebra.dim != 3:
        raise GradeError("distance_point_line_h3 works in H3")
    _expect_grades(line, p, 2, 3, "distance_point_line_h3")
    return _point_to(line, p, tol)


def distance_to(x: Multivector, p: Multivector, tol: float = NULL_TOL) -> float:
    """Distance from point ``p`` to a point, line or plane ``x`` (dispatch on grades)."""
    g = point_grade(x.algebra)
    gx = x.homogeneous_grade()
    if gx == g:
        return distance(x, p, tol)
    dim = x.algebra.dim
    if dim == 2:
        return distance_point_line_h2(x, p, tol)
    if dim == 3 and gx == 1:
        return distance_point_plane_h3(x, p, tol)
    if dim == 3 and gx == 2:
        return distance_point_line_h3(x, p, tol)
    raise GradeError(f"no point distance for grade {gx} in {x.algebra.name}")


# ---------------------------------------------------------------------------
# angles


def angle(a: Multivector, b: Multivector, tol: float = NULL_TOL) -> float:
    """Angle between H2 lines, H3 planes, H3 lines, or an H3 line and plane.

    The objects must meet at a proper point (or along a proper line for planes);
    otherwise :class:`MeetNotProper` is raised and a distance should be asked for instead.
    """
    dim = a.algebra.dim
    ga, gb = a.homogeneous_grade(), b.homogeneous_grade()
    if dim == 1:
        raise GradeError("there are no angles in H1")
    a, b = require_proper(a, b, tol=tol)
    if ga == 1 and gb == 1:
        meet = wedge(a, b)
        if meet.max_abs() <= 1e-12:
            return _acos(inner(a, b).scalar)
        cls = classify(meet, tol)
        if not cls.proper:
            raise MeetNotProper(f"objects meet at a {cls.kind} {'point' if dim == 2 else 'line'}")
        return _acos(inner(a, b).scalar)
    if dim == 3 and ga == 2 and gb == 2:
        if abs(join(a, b).scalar) > 1e-9:
            raise MeetNotProper("lines are skew; use skew_lines_gap")
        comm = commutator(a, b)
        if comm.max_abs() > 1e-12:
            cls = classify(comm, tol)
            if not cls.proper:
                raise MeetNotProper(f"lines meet at a {cls.kind} point")
        return _acos(-inner(a, b).scalar)
    if dim == 3 and {ga, gb} == {1, 2}:
        plane, line = (a, b) if ga == 1 else (b, a)
        meet = wedge(plane, line)
        if meet.max_abs() > 1e-12:
            cls = classify(meet, tol)
            if not cls.proper:
                raise MeetNotProper(f"line meets plane at a {cls.kind} point")
        return math.atan2(pseudo_norm(meet), pseudo_norm(inner(plane, line)))
    raise GradeError(f"no angle between grades {ga} and {gb} in {a.algebra.name}")


# ---------------------------------------------------------------------------
# closest approach


class LineGap(NamedTuple):
    r: float
    c: Multivector
    P: Multivector
    Q: Multivector


def line_line_gap_h2(a: Multivector, b: Multivector, tol: float = NULL_TOL) -> LineGap:
    """Closest approach of two hyperparallel H2 lines.

    Returns the separation, the normalized common perpendicular ``c`` and the
    normalized feet ``P`` on ``a`` and ``Q`` on ``b``.
    """
    if a.algebra.dim != 2:
        raise GradeError("line_line_gap_h2 works in H2")
    _expect_grades(a, b, 1, 1, "line_line_gap_h2")
    an, bn = require_proper(a, b, tol=tol)
    meet = wedge(a, b)
    if meet.max_abs() <= 1e-12 * a.max_abs() * b.max_abs() or not classify(meet, tol).improper:
        raise NotHyperparallel("lines are not hyperparallel")
    r = math.asinh(pseudo_norm(wedge(an, bn)))
    _cross_check(r, abs(inner(an, bn).scalar), "line gap")
    # normalizing after the product keeps exact inputs exact
    c = normalize(undual(meet))
    p = normalize(wedge(an, c))
    q = normalize(wedge(bn, c))
    _cross_check(r, abs(inner(p, q).scalar), "line gap feet")
    return LineGap(r, c, p, q)


class SkewGap(NamedTuple):
    r: float
    alpha: float
    commutator_axes: tuple[Multivector, Multivector]


def skew_lines_gap(line: Multivector, other: Multivector, tol: float = NULL_TOL) -> SkewGap:
    """Distance and angle between two proper non-intersecting H3 lines."""
    if line.algebra.dim != 3:
        raise GradeError("skew_lines_gap works in H3")
    _expect_grades(line, other, 2, 2, "skew_lines_gap")
    line, other = require_proper(line, other, tol=tol)
    u = inner(line, other).scalar
    v = join(line, other).scalar
    if abs(v) <= 1e-12:
        raise LinesIntersect("lines intersect; the commutator is simple")
    s = u * u + v * v - 1.0
    root = math.sqrt(s * s + 4.0 * v * v)
    two_sinh2 = s + root if s >= 0 else 4.0 * v * v / (root - s)
    r = math.asinh(math.sqrt(0.5 * two_sinh2))
    alpha = _acos(-u / math.cosh(r))
    return SkewGap(r, alpha, axes(commutator(line, other)))


def _meet_line_with(axis: Multivector, line: Multivector) -> Multivector:
    """Point where ``axis`` crosses ``line`` (the two lines are assumed to meet)."""
    alg = line.algebra
    candidates = [alg.blade(n) + c * alg.blade(m)
                  for n in ("e123",) for m in ("e320", "e130", "e210") for c in (0.0, 0.5, -0.5)]
    best = None
    for x in candidates:
        plane = join(line, x)
        size = pseudo_norm(plane)
        if best is None or size > best[0]:
            best = (size, plane)
    return wedge(axis, best[1])


def skew_feet(line: Multivector, other: Multivector) -> tuple[Multivector, Multivector]:
    """Normalized feet of the common perpendicular (the proper commutator axis) on each line."""
    line, other = require_proper(line, other)
    proper_axis, _ = axes(commutator(line, other))
    return normalize(_meet_line_with(proper_axis, line)), normalize(_meet_line_with(proper_axis, other))


# ---------------------------------------------------------------------------
# triangles


def _join3(p, q, r) -> float:
    return join(join(p, q), r).scalar


def right_triangle_area(p: Multivector, q: Multivector, r: Multivector, tol: float = NULL_TOL) -> float:
    """Area of an H2 triangle with a right angle at ``p``; ``q`` and ``r`` may be null (ideal)."""
    if p.algebra.dim != 2:
        raise GradeError("triangle areas are defined in H2")
    for v in (p, q, r):
        if v.homogeneous_grade() != 2:
            raise GradeError("triangle vertices must be points")
    pc = classify(p, tol)
    if pc.null:
        raise NullVertexAtP("the right-angle vertex cannot be null")
    if not pc.proper:
        raise NullOrImproperInput("the right-angle vertex must be proper")
    verts = []
    for v in (q, r):
        cls = classify(v, tol)
        if cls.improper:
            raise NullOrImproperInput(f"improper vertex {v!r}")
        verts.append(normalize(v) if cls.proper else v / v.max_abs())
    p = normalize(p)
    q, r = verts
    top = abs(_join3(p, q, r))
    if top <= 1e-12:
        return 0.0
    edge_q, edge_r = join(p, q), join(p, r)
    cos_p = inner(normalize(edge_q), normalize(edge_r)).scalar
    if abs(cos_p) > CHECK_TOL:
        raise NotRightAngled(f"angle at P has cosine {cos_p:.3g}, expected 0")
    qn = pseudo_norm(q) if classify(q, tol).proper else 0.0
    rn = pseudo_norm(r) if classify(r, tol).proper else 0.0
    sin_s = top / (qn * rn + abs(inner(q, r).scalar))
    return math.asin(min(1.0, sin_s))


def triangle_angles(p: Multivector, q: Multivector, r: Multivector, tol: float = NULL_TOL) -> tuple[float, float, float]:
    """Interior angles at ``p``, ``q``, ``r`` of a proper H2 triangle."""
    alpha, beta, gamma = _edge_angles(p, q, r, tol)
    return alpha, beta, math.pi - gamma


def _edge_angles(p, q, r, tol):
    if p.algebra.dim != 2:
        raise GradeError("triangle areas are defined in H2")
    # the edge-angle formula assumes every vertex has positive weight
    p, q, r = (v if v["e12"] > 0 else -v for v in require_proper(p, q, r, tol=tol))
    if abs(_join3(p, q, r)) <= 1e-12:
        raise DegenerateTriangle("vertices are collinear")
    edge_r, edge_q, edge_p = join(p, q), join(p, r), join(r, q)
    try:
        er, eq, ep = (normalize(e, tol) for e in (edge_r, edge_q, edge_p))
    except HyperGAError as exc:
        raise DegenerateTriangle(str(exc)) from None
    alpha = _acos(inner(er, eq).scalar)
    beta = _acos(inner(er, ep).scalar)
    gamma = _acos(inner(eq, ep).scalar)
    return alpha, beta, gamma


def general_triangle_area(p: Multivector, q: Multivector, r: Multivector, tol: float = NULL_TOL) -> float:
    """Area of a proper H2 triangle from the angles between its oriented edge lines."""
    alpha, beta, gamma = _edge_angles(p, q, r, tol)
    return -alpha - beta + gamma

"""Hyperbolic objects in H1, H2, H3: constructors, classification, polarity and incidence.

Objects are represented dually.  In H1 a point is a vector ``d e0 + a e1``;
in H2 a line is a vector and a point ``w e12 + x e20 + y e01``; in H3 a plane
is a vector, a line a bivector, and a point ``w e123 + x e320 + y e130 + z e210``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    NULL_TOL,
    Algebra,
    Multivector,
    algebra,
    dual,
    grade,
    inner,
    inverse,
    is_null,
    join,
    normalize,
    split_bivector,
    square_scalar,
    wedge,
)
from .errors import (
    GradeError,
    ImproperInput,
    NotInvertible,
    NullMirror,
    NullOrImproperInput,
    PlueckerViolation,
    WeightVanishes,
)

# blade names carrying the weight and the chart coordinates of a point
_POINT_BLADES = {
    1: ("e1", ("e0",)),
    2: ("e12", ("e20", "e01")),
    3: ("e123", ("e320", "e130", "e210")),
}


class Kind(enum.Enum):
    PROPER = "Proper"
    NULL = "Null"
    IMPROPER = "Improper"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GeomClass:
    """Classification of an object; ``discriminant`` is ``<A A~>_0`` (positive means proper)."""

    kind: Kind
    discriminant: float
    tolerance_used: float

    @property
    def proper(self) -> bool:
        return self.kind is Kind.PROPER

    @property
    def null(self) -> bool:
        return self.kind is Kind.NULL

    @property
    def improper(self) -> bool:
        return self.kind is Kind.IMPROPER


@dataclass(frozen=True)
class ChartPoint:
    coords: tuple[float, ...]
    weight: float

    @property
    def radius_squared(self) -> float:
        return sum(c * c for c in self.coords)


def point_grade(alg: Algebra) -> int:
    return 1 if alg.dim == 1 else alg.dim


# ---------------------------------------------------------------------------
# constructors


def point_h1(phi: float) -> Multivector:
    """Normalized, positively oriented H1 point at chart ``x = tanh(phi)``."""
    return algebra(1).vector(-math.sinh(phi), math.cosh(phi))


def point(coords, weight: float = 1.0) -> Multivector:
    """Point at chart coordinates ``coords`` (length 1, 2 or 3 selects H1/H2/H3)."""
    coords = tuple(float(c) for c in coords)
    dim = len(coords)
    if dim not in (1, 2, 3):
        raise ValueError("point() takes 1, 2 or 3 chart coordinates")
    alg = algebra(dim)
    wname, names = _POINT_BLADES[dim]
    out = alg.blade(wname)
    if dim == 1:
        out = out - coords[0] * alg.blade("e0")
    else:
        for name, c in zip(names, coords):
            out = out + c * alg.blade(name)
    return weight * out


def line_h2(d: float, a: float, b: float) -> Multivector:
    return algebra(2).vector(d, a, b)


def plane_h3(d: float, a: float, b: float, c: float) -> Multivector:
    return algebra(3).vector(d, a, b, c)


def line_h3(p10, p20, p30, p23, p31, p12, tol: float = 1e-9) -> Multivector:
    """Line from Pluecker coordinates; the quadratic constraint must hold to ``tol`` (relative)."""
    coords = (p10, p20, p30, p23, p31, p12)
    scale = max(abs(c) for c in coords) ** 2
    residual = p10 * p23 + p20 * p31 + p30 * p12
    if abs(residual) > tol * max(scale, 1e-300):
        raise PlueckerViolation(f"p10*p23 + p20*p31 + p30*p12 = {residual:g}, expected 0")
    alg = algebra(3)
    names = ("e10", "e20", "e30", "e23", "e31", "e12")
    out = alg.zero()
    for name, c in zip(names, coords):
        out = out + float(c) * alg.blade(name)
    return out


def line_join(p: Multivector, q: Multivector) -> Multivector:
    return join(p, q)


def chart(p: Multivector, tol: float = 1e-12) -> ChartPoint:
    """Chart coordinates of a point, dividing out its weight."""
    dim = p.algebra.dim
    if p.homogeneous_grade() != point_grade(p.algebra):
        raise GradeError("chart() needs a point")
    wname, names = _POINT_BLADES[dim]
    w = p[wname]
    scale = p.max_abs()
    if abs(w) <= tol * max(scale, 1e-300):
        raise WeightVanishes(f"point {p!r} has no finite chart position")
    if dim == 1:
        return ChartPoint((-p["e0"] / w,), w)
    return ChartPoint(tuple(p[n] / w for n in names), w)


# ---------------------------------------------------------------------------
# classification and polarity


def classify(a: Multivector, tol: float = NULL_TOL) -> GeomClass:
    """Proper / null / improper by the sign of ``<A A~>_0``, with a scale-relative null band."""
    g = a.homogeneous_grade()
    if not 1 <= g <= a.algebra.dim or (a.algebra.dim == 1 and g != 1):
        raise GradeError(f"grade {g} does not represent a geometric object in {a.algebra.name}")
    disc = square_scalar(a)
    band = tol * a.max_abs() ** 2
    if abs(disc) <= band:
        kind = Kind.NULL
    elif disc > 0:
        kind = Kind.PROPER
    else:
        kind = Kind.IMPROPER
    return GeomClass(kind, disc, tol)


def require_proper(*objs: Multivector, tol: float = NULL_TOL, exc=NullOrImproperInput) -> list[Multivector]:
    """Normalize each argument, raising ``exc`` if any is not proper."""
    out = []
    for obj in objs:
        cls = classify(obj, tol)
        if not cls.proper:
            raise exc(f"{cls.kind} input {obj!r}; a proper object is required")
        out.append(normalize(obj, tol))
    return out


def polar(a: Multivector) -> Multivector:
    return dual(a)


def is_perpendicular(x: Multivector, y: Multivector, tol: float = 1e-9) -> bool:
    """True when the inner product of the normalized objects vanishes."""
    xn, yn = normalize(x), normalize(y)
    return inner(xn, yn).max_abs() <= tol


def is_incident(x: Multivector, y: Multivector, tol: float = 1e-10) -> bool:
    """Join of the normalized (or max-scaled, for null objects) arguments vanishes."""
    def unit(m):
        return m / m.max_abs() if is_null(m) else normalize(m)

    return join(unit(x), unit(y)).max_abs() <= tol


# ---------------------------------------------------------------------------
# null points


def null_points(a: Multivector, tol: float = NULL_TOL) -> tuple[Multivector, Multivector]:
    """The two null points on a proper object; for a null object, its touch point twice.

    H1 takes a point and returns ``(n+, n-)`` scaled by the point's position.
    """
    alg = a.algebra
    g = a.homogeneous_grade()
    cls = classify(a, tol)
    if cls.improper:
        raise ImproperInput(f"improper input {a!r} has no null points")
    if alg.dim == 1:
        if cls.null:
            return a, a
        a = normalize(a)
        ai = a * alg.I
        return a + ai, a - ai
    if alg.dim == 2 and g == 1:
        if cls.null:
            touch = dual(a)
            return touch, touch
        a = normalize(a)
        foot = inner(a, alg.blade("e12"))
        return grade((a + alg.I) * foot, 2), grade((a - alg.I) * foot, 2)
    if alg.dim == 3 and g == 2:
        e123 = alg.blade("e123")
        if cls.null:
            touch = grade(a * inner(a, e123), 3)
            return touch, touch
        a = normalize(a)
        foot = inner(a, e123)
        return grade((a + alg.I) * foot, 3), grade((a - alg.I) * foot, 3)
    raise GradeError(f"null_points is defined for H1 points, H2 lines and H3 lines, not grade {g} in {alg.name}")


# ---------------------------------------------------------------------------
# projection, rejection, reflection


def _mirror_inverse(b: Multivector, tol: float) -> Multivector:
    if is_null(b, tol):
        raise NullMirror(f"{b!r} is null and not invertible")
    try:
        return inverse(b)
    except NotInvertible as exc:
        raise NullMirror(str(exc)) from None


def project(a: Multivector, b: Multivector, tol: float = NULL_TOL) -> Multivector:
    """``(a . b) b^-1``"""
    return inner(a, b) * _mirror_inverse(b, tol)


def reject(a: Multivector, b: Multivector, tol: float = NULL_TOL) -> Multivector:
    """``(a ^ b) b^-1``"""
    return wedge(a, b) * _mirror_inverse(b, tol)


def reflect(a: Multivector, b: Multivector, tol: float = NULL_TOL) -> Multivector:
    """Top-down reflection ``(-1)^(grade a * grade b) b a b^-1``."""
    binv = _mirror_inverse(b, tol)
    sign = -1.0 if (a.homogeneous_grade() * b.homogeneous_grade()) % 2 else 1.0
    return sign * (b * a * binv)


# ---------------------------------------------------------------------------
# axes of a bivector


def axes(bv: Multivector, tol: float = 1e-12) -> tuple[Multivector, Multivector]:
    """Split an H3 bivector into its proper axis and improper axis, ``bv = L1 + L2``.

    Simple bivectors (``bv ^ bv == 0`` up to ``tol`` relative) return ``(bv, 0)``.
    """
    if bv.algebra.dim != 3:
        raise GradeError("axes() is defined in H3 only")
    if bv.max_abs() == 0.0:
        return bv, bv
    if bv.homogeneous_grade() != 2:
        raise GradeError("axes() needs a bivector")
    return split_bivector(bv, tol)


def weight_scale(a: Multivector) -> float:
    return float(np.max(np.abs(a.coeffs)))

"""Spinors for the proper motions of H1, H2, H3 and closed-form trajectory sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    NULL_TOL,
    Multivector,
    algebra,
    exp_bivector,
    grade,
    normalize,
    reverse,
    split_bivector,
)
from .errors import GradeError, WeightVanishes, WrongGeneratorClass
from .geometry import ChartPoint, chart, classify, point_grade

_WEIGHT_BLADE = {1: "e1", 2: "e12", 3: "e123"}


@dataclass(frozen=True)
class Spinor:
    """Even multivector ``value = exp(generator)`` acting by ``S A S^-1``."""

    value: Multivector
    generator: Multivector | None = None
    kind: str = "general"
    params: dict = field(default_factory=dict)

    @property
    def algebra(self):
        return self.value.algebra

    def inverse(self) -> Multivector:
        r = reverse(self.value)
        return r / (self.value * r).scalar

    def __mul__(self, other: Spinor) -> Spinor:
        """Composition: ``(s2 * s1)`` acts as ``s1`` followed by ``s2``."""
        return Spinor(self.value * other.value, None, "composite")

    def __neg__(self):
        return Spinor(-self.value, self.generator, self.kind, self.params)

    def norm_defect(self) -> float:
        """``|S S~| - 1``; zero for a unit spinor."""
        s = self.value * reverse(self.value)
        return abs(abs(s.scalar) - 1.0) + float(np.abs(s.coeffs[1:]).max())


def from_generator(bv: Multivector, kind: str = "general", **params) -> Spinor:
    return Spinor(exp_bivector(bv), bv, kind, params)


def identity(dim: int) -> Spinor:
    alg = algebra(dim)
    return Spinor(alg.scalar(), alg.zero(), "identity")


def apply(s: Spinor | Multivector, a: Multivector) -> Multivector:
    """Spinor action ``S A S^-1``."""
    if isinstance(s, Spinor):
        return s.value * a * s.inverse()
    r = reverse(s)
    return s * a * r / (s * r).scalar


def _expect(obj: Multivector, dim: int, g: int, what: str) -> None:
    if obj.algebra.dim != dim or obj.homogeneous_grade() != g:
        raise GradeError(f"{what} needs a grade-{g} element of H{dim}")


# ---------------------------------------------------------------------------
# constructors per motion type


def translation_h1(lam: float) -> Spinor:
    gen = -0.5 * lam * algebra(1).blade("e01")
    return from_generator(gen, "translation", **{"lambda": lam})


def translation_h2(t: Multivector, lam: float, tol: float = NULL_TOL) -> Spinor:
    """Translation by ``lam`` along the polar line of the improper point ``t``."""
    _expect(t, 2, 2, "translation_h2")
    if not classify(t, tol).improper:
        raise WrongGeneratorClass("translation needs an improper point")
    t = normalize(t)
    return from_generator(-0.5 * lam * t, "translation", **{"lambda": lam})


def rotation_h2(r: Multivector, alpha: float, tol: float = NULL_TOL) -> Spinor:
    _expect(r, 2, 2, "rotation_h2")
    if not classify(r, tol).proper:
        raise WrongGeneratorClass("rotation needs a proper centre")
    r = normalize(r)
    return from_generator(-0.5 * alpha * r, "rotation", alpha=alpha)


def anchored_null_point(n: Multivector) -> Multivector:
    """Rescale a null H2 point to unit ``e12`` weight, the form ``e12 + e0 ^ a``."""
    w = n["e12"]
    if abs(w) <= 1e-12 * n.max_abs():
        raise WrongGeneratorClass("null point has no finite chart position")
    return n / w


def null_translation_h2(n: Multivector, theta: float, tol: float = NULL_TOL) -> Spinor:
    _expect(n, 2, 2, "null_translation_h2")
    if not classify(n, tol).null:
        raise WrongGeneratorClass("null translation needs a null point")
    n = anchored_null_point(n)
    gen = -0.5 * theta * n
    # the series terminates: N^2 = 0
    return Spinor(n.algebra.scalar() + gen, gen, "null_translation", {"theta": theta})


def screw_h3(line: Multivector, alpha: float, lam: float, tol: float = NULL_TOL) -> Spinor:
    """Rotation by ``alpha`` about a proper line combined with translation by ``lam`` along it."""
    _expect(line, 3, 2, "screw_h3")
    if not classify(line, tol).proper:
        raise WrongGeneratorClass("screw motion needs a proper line")
    line = normalize(line)
    alg = line.algebra
    one = alg.scalar()
    rot = math.cos(0.5 * alpha) * one - math.sin(0.5 * alpha) * line
    trans = math.cosh(0.5 * lam) * one - math.sinh(0.5 * lam) * (line * alg.I)
    gen = -0.5 * (alpha * line + lam * (line * alg.I))
    kind = "screw" if alpha and lam else ("translation" if lam else "rotation")
    return Spinor(rot * trans, gen, kind, {"alpha": alpha, "lambda": lam})


def rotation_h3(line: Multivector, alpha: float) -> Spinor:
    return screw_h3(line, alpha, 0.0)


def translation_h3(line: Multivector, lam: float) -> Spinor:
    return screw_h3(line, 0.0, lam)


def null_translation_h3(line: Multivector, theta: float, tol: float = NULL_TOL) -> Spinor:
    """Null translation generated by a null line, used at its given weight."""
    _expect(line, 3, 2, "null_translation_h3")
    if not classify(line, tol).null:
        raise WrongGeneratorClass("null translation needs a null line")
    sq = line * line
    if sq.max_abs() > tol * max(1.0, line.max_abs() ** 2):
        # a null discriminant alone admits non-simple bivectors such as e10 + e23
        raise WrongGeneratorClass("null translation needs a simple null line (L^2 = 0)")
    gen = -0.5 * theta * line
    return Spinor(line.algebra.scalar() + gen, gen, "null_translation", {"theta": theta})


# ---------------------------------------------------------------------------
# trajectories


@dataclass(frozen=True)
class TrajectorySample:
    t: float
    obj: Multivector
    chart: ChartPoint | None


@dataclass(frozen=True)
class Trajectory:
    generator: Multivector
    obj: Multivector
    samples: list[TrajectorySample]
    dropped: int = 0


def _exp_family(bv: Multivector):
    """Write ``exp(t*bv)`` as ``exp(L(t)) * sum_j f_j(t) M_j`` for fixed multivectors ``M_j``.

    The coefficient rows ``f_j`` are kept of order one and the log-scale ``L``
    is returned separately, so large hyperbolic parameters do not overflow.
    """
    alg = bv.algebra
    one = alg.scalar()

    def simple(b):
        s = (b * b).scalar
        scale = b.max_abs() ** 2
        if scale == 0.0:
            return [one], lambda t: (np.ones((len(t), 1)), np.zeros(len(t)))
        if abs(s) <= 1e-14 * scale:
            def lin(t):
                m = np.maximum(1.0, np.abs(t))
                return np.stack([1.0 / m, t / m], axis=1), np.log(m)
            return [one, b], lin
        beta = math.sqrt(abs(s))
        if s < 0:
            return [one, b / beta], lambda t: (
                np.stack([np.cos(beta * t), np.sin(beta * t)], axis=1), np.zeros(len(t)))

        def hyp(t):
            x = beta * t
            e = np.exp(-2.0 * np.abs(x))
            # cosh x = exp(|x|) (1 + e) / 2,  sinh x = sign(x) exp(|x|) (1 - e) / 2
            return np.stack([1.0 + e, np.sign(x) * (1.0 - e)], axis=1), np.abs(x) - math.log(2.0)
        return [one, b / beta], hyp

    l1, l2 = split_bivector(bv) if alg.dim == 3 else (bv, alg.zero())
    if l2.max_abs() == 0.0:
        return simple(bv)
    m1, f1 = simple(l1)
    m2, f2 = simple(l2)
    mats = [x * y for x in m1 for y in m2]

    def coeffs(t):
        (a, la), (b, lb) = f1(t), f2(t)
        return np.einsum("ti,tj->tij", a, b).reshape(len(t), -1), la + lb

    return mats, coeffs


def sample_trajectory(
    bv: Multivector,
    obj: Multivector,
    t_min: float,
    t_max: float,
    n: int,
    on_vanish: str = "raise",
) -> Trajectory:
    """Orbit of ``obj`` under ``exp(-t bv / 2)`` at ``n`` uniform parameters.

    Each sample is evaluated from ``t = 0`` independently.  Points whose weight
    vanishes have no chart position, and far out on a hyperbolic orbit the
    coefficients overflow a double.  ``on_vanish="raise"`` raises
    :class:`WeightVanishes` for either; ``"drop"`` skips the sample and counts
    it in ``dropped``.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    if bv.max_abs() and bv.grades_present() != {2}:
        raise GradeError("generator must be a bivector")
    if not classify(obj).proper:
        raise WrongGeneratorClass("trajectories are sampled for proper objects only")
    ts = np.linspace(t_min, t_max, n)
    mats, fam = _exp_family(-0.5 * bv)
    coeffs, logscale = fam(ts)
    # exp(B) exp(B)~ = 1 for a bivector B, so the sandwich needs no normalization
    sand = np.array([[(mj * obj * reverse(mk)).coeffs for mk in mats] for mj in mats])
    scaled = np.einsum("tj,tk,jkm->tm", coeffs, coeffs, sand)
    with np.errstate(over="ignore", invalid="ignore"):
        out = scaled * np.exp(2.0 * logscale)[:, None]
    is_point = obj.homogeneous_grade() == point_grade(obj.algebra)
    g = obj.homogeneous_grade()
    samples, dropped = [], 0
    for t, row, srow in zip(ts, out, scaled):
        cp = None
        try:
            if not np.all(np.isfinite(row)):
                raise WeightVanishes(f"coefficients overflow at t = {t:g}")
            moved = grade(Multivector(obj.algebra, row), g)
            if is_point:
                cp = chart(grade(Multivector(obj.algebra, srow), g))
                cp = ChartPoint(cp.coords, moved[_WEIGHT_BLADE[obj.algebra.dim]])
        except WeightVanishes:
            if on_vanish == "raise":
                raise
            dropped += 1
            continue
        samples.append(TrajectorySample(float(t), moved, cp))
    return Trajectory(bv, obj, samples, dropped)

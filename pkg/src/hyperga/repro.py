"""Reproduction cases for the worked numeric examples (figures 1 to 7).

Every case carries an embedded scene with its inputs and a list of checks.  Each
check records the computed and expected value, a tolerance and a provenance tag:
PAPER (value printed in the source text), DERIVED (follows from it by an
independent route) or TRIVIAL (arithmetic identity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as ga
from . import geometry as geo
from . import measure, motions
from .errors import UnknownCase
from .oracle import rep_exp
from .parser import SceneDocument, parse_mv, parse_scene, serialize_mv

PROVENANCE = ("PAPER", "DERIVED", "TRIVIAL")


@dataclass(frozen=True)
class Check:
    quantity: str
    computed: str
    expected: str
    deviation: float
    tol: float
    provenance: str

    @property
    def passed(self) -> bool:
        return bool(self.deviation <= self.tol)


def scalar_check(quantity, computed: float, expected: float, tol: float, provenance: str) -> Check:
    dev = abs(computed - expected)
    if not math.isfinite(dev):
        dev = math.inf
    return Check(quantity, repr(float(computed)), repr(float(expected)), dev, tol, provenance)


def mv_check(quantity, computed: ga.Multivector, expected: ga.Multivector, tol: float, provenance: str) -> Check:
    dev = float(np.max(np.abs(computed.coeffs - expected.coeffs)))
    return Check(quantity, serialize_mv(computed), serialize_mv(expected), dev, tol, provenance)


def label_check(quantity, computed: str, expected: str, provenance: str) -> Check:
    return Check(quantity, computed, expected, 0.0 if computed == expected else math.inf, 0.0, provenance)


@dataclass(frozen=True)
class ReproCase:
    id: str
    title: str
    scene: str
    run: Callable[[SceneDocument], list[Check]]
    figure: Callable | None = None

    def document(self) -> SceneDocument:
        return parse_scene(self.scene)

    def checks(self) -> list[Check]:
        out = self.run(self.document())
        for c in out:
            if c.provenance not in PROVENANCE:
                raise ValueError(f"{self.id}: check {c.quantity!r} lacks a provenance tag")
        return out


def _lit(x: float) -> str:
    """Exact decimal literal for a double, accepted by the scene grammar."""
    return np.format_float_positional(x, unique=True, trim="-")


def _terms(*pairs) -> str:
    """Literal ``c1 b1 + c2 b2 ...`` with signs folded into the operators."""
    out = []
    for c, blade in pairs:
        mag = f"{_lit(abs(c))} {blade}"
        if not out:
            out.append(("-" if c < 0 else "") + mag)
        else:
            out.append(("- " if c < 0 else "+ ") + mag)
    return " ".join(out)


# ---------------------------------------------------------------------------
# H1


_H1_SCENE = f"""space: H1
# points at phi = 1 and phi = -1/2
a = {_terms((-math.sinh(1.0), "e0"), (math.cosh(1.0), "e1"))}
b = {_terms((math.sinh(0.5), "e0"), (math.cosh(0.5), "e1"))}
? distance a b
"""


def _h1(doc):
    a, b = doc.bindings["a"], doc.bindings["b"]
    r = measure.distance(a, b)
    moved = motions.apply(motions.translation_h1(1.5), b)
    return [
        scalar_check("distance r", r, 1.5, 1e-12, "PAPER"),
        scalar_check("a.b = cosh r", abs(ga.inner(a, b).scalar), math.cosh(1.5), 1e-12, "DERIVED"),
        scalar_check("chart x of a = tanh 1", geo.chart(a).coords[0], math.tanh(1.0), 1e-15, "PAPER"),
        scalar_check("(a.b)^2 - (a v b)^2", ga.inner(a, b).scalar ** 2 - ga.join(a, b).scalar ** 2, 1.0, 1e-12, "PAPER"),
        scalar_check("translation by 3/2 maps b to a", float(np.max(np.abs((moved - a).coeffs))), 0.0, 1e-12, "DERIVED"),
    ]


# ---------------------------------------------------------------------------
# H2


_FIG2A_SCENE = """space: H2
a = -3/2 e0 + 3 e1 + 1/2 e2
b = 1/2 e0 + e1 + 1/2 e2
? gap a b
? angle a b
"""


def _fig2a(doc):
    a, b = doc.bindings["a"], doc.bindings["b"]
    alg = a.algebra
    ab = ga.wedge(a, b)
    gap = measure.line_line_gap_h2(a, b)
    an, bn = ga.normalize(a), ga.normalize(b)
    cosh_r = abs(ga.inner(a, b).scalar) / (ga.pseudo_norm(a) * ga.pseudo_norm(b))
    r_feet = measure.distance(gap.P, gap.Q)
    return [
        mv_check("a ^ b", ab, parse_mv("e12 + e20 - 3e01", alg), 1e-12, "PAPER"),
        mv_check("c = (a ^ b) I^-1, normalized", gap.c, parse_mv("-1/3e0 + 1/3e1 - e2", alg), 1e-12, "PAPER"),
        label_check("class of a ^ b", geo.classify(ab).kind.value, "Improper", "PAPER"),
        scalar_check("cosh r vs distance of feet", cosh_r, math.cosh(r_feet), 1e-9, "DERIVED"),
        scalar_check("gap r vs distance of feet", gap.r, r_feet, 1e-9, "DERIVED"),
        scalar_check("c perpendicular to a", ga.inner(gap.c, an).scalar, 0.0, 1e-12, "PAPER"),
        scalar_check("c perpendicular to b", ga.inner(gap.c, bn).scalar, 0.0, 1e-12, "PAPER"),
    ]


_FIG3A_SCENE = """space: H2
a = -1/2 e0 + e1 + 1/2 e2
P = e12 - 1/2 e20 + 1/3 e01
? distance_point_line a P
? polar a
"""


def _fig3a(doc):
    a, P = doc.bindings["a"], doc.bindings["P"]
    alg = a.algebra
    r = measure.distance_point_line_h2(a, P)
    an, Pn = ga.normalize(a), ga.normalize(P)
    perp = ga.inner(a, P)
    return [
        scalar_check("sinh r", math.sinh(r), (5 / 6) / (math.sqrt(23) / 6), 1e-12, "PAPER"),
        scalar_check("a v P", ga.join(a, P).scalar, -5 / 6, 1e-12, "PAPER"),
        scalar_check("norm of P", ga.pseudo_norm(P), math.sqrt(23) / 6, 1e-12, "PAPER"),
        mv_check("polar a I", geo.polar(a), parse_mv("1/2e12 + e20 + 1/2e01", alg), 0.0, "PAPER"),
        scalar_check("perpendicular a.P passes through a I", ga.join(perp, geo.polar(a)).scalar, 0.0, 1e-12, "PAPER"),
        scalar_check("|a.P|^2 - |a v P|^2", ga.pseudo_norm(ga.inner(an, Pn)) ** 2 - ga.join(an, Pn).scalar ** 2, 1.0, 1e-12, "PAPER"),
    ]


_FIG4B_SCENE = """space: H2
T = 1/2 e12 - e20 - 1/2 e01
P = e12 + 1/3 e20 - 1/2 e01
? translate T 1 P
? classify T
"""


def _fig4b_points(doc):
    T = ga.normalize(doc.bindings["T"])
    alg = T.algebra
    cross = ga.commutator(T, alg.blade("e12"))
    n_plus = ga.grade((T + alg.scalar()) * cross, 2)
    n_minus = ga.grade((T - alg.scalar()) * cross, 2)
    return T, n_plus, n_minus


def _fig4b(doc):
    T, n_plus, n_minus = _fig4b_points(doc)
    P = doc.bindings["P"]
    axis = ga.undual(T)
    traj = motions.sample_trajectory(T, P, -20.0, 20.0, 401)
    first, last = traj.samples[0].chart.coords, traj.samples[-1].chart.coords
    cp, cm = geo.chart(n_plus).coords, geo.chart(n_minus).coords
    dists = [measure.distance_point_line_h2(axis, s.obj) for s in traj.samples[150:251]]
    s1 = motions.translation_h2(T, 1.0)
    moved_plus = motions.apply(s1, n_plus)
    foot = ga.wedge(axis, ga.inner(axis, P))  # foot of P on the axis
    moved_foot = motions.apply(s1, foot)
    return [
        scalar_check("T^2 (normalized)", (T * T).scalar, 1.0, 1e-12, "PAPER"),
        label_check("class of T", geo.classify(T).kind.value, "Improper", "PAPER"),
        label_check("class of N+", geo.classify(n_plus).kind.value, "Null", "PAPER"),
        scalar_check("orbit start vs N+ (chart gap, t=-20)", math.dist(first, cp), 0.0, 1e-3, "DERIVED"),
        scalar_check("orbit end vs N- (chart gap, t=+20)", math.dist(last, cm), 0.0, 1e-3, "DERIVED"),
        scalar_check("spread of distance to T I^-1 along orbit", max(dists) - min(dists), 0.0, 1e-9, "PAPER"),
        scalar_check("N+ fixed up to weight", float(np.max(np.abs(ga.wedge(
            ga.undual(moved_plus), ga.undual(n_plus)).coeffs))), 0.0, 1e-12, "PAPER"),
        scalar_check("axis invariant", float(np.max(np.abs(
            (motions.apply(s1, axis) - axis).coeffs))), 0.0, 1e-12, "PAPER"),
        scalar_check("point on axis stays on axis", ga.join(axis, moved_foot).scalar
                     / max(moved_foot.max_abs(), 1e-300), 0.0, 1e-12, "PAPER"),
    ]


_R_COEFFS = tuple(c / math.sqrt(11.0) for c in (4.0, -2.0, -1.0))
_FIG5A_SCENE = f"""space: H2
R = {_terms(*zip(_R_COEFFS, ("e12", "e20", "e01")))}
P = e12 + 1/3 e20 - 1/2 e01
? rotate R 1.5707963267948966 P
? distance R P
"""


def _fig5a(doc):
    R, P = doc.bindings["R"], doc.bindings["P"]
    traj = motions.sample_trajectory(R, P, 0.0, 2 * math.pi, 64)
    d0 = measure.distance(R, P)
    dists = [measure.distance(R, s.obj) for s in traj.samples]
    radii = [math.sqrt(s.chart.radius_squared) for s in traj.samples]
    full = motions.apply(motions.rotation_h2(R, 2 * math.pi), P)
    quarter = motions.apply(motions.rotation_h2(R, math.pi / 2), P)
    return [
        scalar_check("|R| (given normalized)", ga.pseudo_norm(R), 1.0, 1e-15, "PAPER"),
        scalar_check("R^2", (R * R).scalar, -1.0, 1e-15, "PAPER"),
        scalar_check("spread of distance to R over 64 samples", max(dists) - min(dists), 0.0, 1e-9, "PAPER"),
        scalar_check("quarter turn keeps distance to R", measure.distance(R, quarter), d0, 1e-12, "PAPER"),
        scalar_check("max chart radius of orbit < 1", float(max(radii) < 1.0), 1.0, 0.0, "PAPER"),
        scalar_check("full turn 2 pi returns P", float(np.max(np.abs((full - P).coeffs))), 0.0, 1e-12, "PAPER"),
        scalar_check("R fixed by the rotation", float(np.max(np.abs(
            (motions.apply(motions.rotation_h2(R, 1.0), R) - R).coeffs))), 0.0, 1e-12, "PAPER"),
        scalar_check("orbit closes (first vs last sample)", math.dist(
            traj.samples[0].chart.coords, traj.samples[-1].chart.coords), 0.0, 1e-12, "DERIVED"),
    ]


_A5 = (-1 / math.sqrt(5.0), 2 / math.sqrt(5.0))
_FIG5B_SCENE = f"""space: H2
a = {_terms((_A5[0], "e1"), (_A5[1], "e2"))}
N = {_terms((1.0, "e12"), (_A5[0], "e01"), (-_A5[1], "e20"))}
P = e12 + 1/3 e20 - 1/2 e01
? null_translate N 1 P
? classify N
"""


def _fig5b(doc):
    a, N, P = doc.bindings["a"], doc.bindings["N"], doc.bindings["P"]
    alg = a.algebra
    theta = 1.0
    built = alg.blade("e12") + ga.wedge(alg.blade("e0"), a)
    via_figure = ga.grade((a + alg.I) * ga.inner(a, alg.blade("e12")), 2)
    moved = motions.apply(motions.null_translation_h2(N, theta), P)
    closed = P + theta * ga.commutator(P, N) - 0.25 * theta ** 2 * (N * P * N)
    return [
        mv_check("N = e12 + e0 ^ a", N, built, 1e-15, "PAPER"),
        label_check("class of N", geo.classify(N).kind.value, "Null", "PAPER"),
        scalar_check("N^2", float(np.max(np.abs((N * N).coeffs))), 0.0, 1e-15, "PAPER"),
        mv_check("N via (a + I)(a . e12)", via_figure, N, 1e-12, "DERIVED"),
        mv_check("S P S^-1 vs P + theta PxN - theta^2/4 NPN", moved, closed, 1e-14, "PAPER"),
        mv_check("N invariant", motions.apply(motions.null_translation_h2(N, theta), N), N, 1e-14, "PAPER"),
        scalar_check("P moves (not invariant)", float(np.max(np.abs((moved - P).coeffs)) > 1e-3), 1.0, 0.0, "PAPER"),
    ]


# ---------------------------------------------------------------------------
# H3


_FIG6_SCENE = """space: H3
L = -3/2 e10 + e20 - 1/2 e30 - e23 - 5/2 e31 - 2 e12
K = e10 + 5/3 e20 - 2 e30 - e23 + 3 e31 + 2 e12
? skew_gap L K
? commutator L K
"""


def _fig6(doc):
    L, K = doc.bindings["L"], doc.bindings["K"]
    pl = lambda m: (m["e10"] * m["e23"] + m["e20"] * m["e31"] + m["e30"] * m["e12"])
    gap = measure.skew_lines_gap(L, K)
    f1, f2 = measure.skew_feet(L, K)
    ln, kn = ga.normalize(L), ga.normalize(K)
    u = ga.inner(ln, kn).scalar
    v = ga.join(ln, kn).scalar
    ax1, ax2 = gap.commutator_axes
    unit = lambda m: m / m.max_abs()
    return [
        scalar_check("Pluecker residual of L", pl(L), 0.0, 1e-12, "PAPER"),
        scalar_check("Pluecker residual of K", pl(K), 0.0, 1e-12, "PAPER"),
        label_check("class of L", geo.classify(L).kind.value, "Proper", "DERIVED"),
        label_check("class of K", geo.classify(K).kind.value, "Proper", "DERIVED"),
        scalar_check("r from the closed formula vs feet distance", gap.r, measure.distance(f1, f2), 1e-8, "DERIVED"),
        scalar_check("cos alpha = -u / cosh r", math.cos(gap.alpha), -u / math.cosh(gap.r), 1e-9, "PAPER"),
        scalar_check("|L v K| = sinh r sin alpha", abs(v), math.sinh(gap.r) * math.sin(gap.alpha), 1e-9, "PAPER"),
        scalar_check("proper axis meets L", ga.join(unit(ax1), ln).scalar, 0.0, 1e-9, "PAPER"),
        scalar_check("proper axis meets K", ga.join(unit(ax1), kn).scalar, 0.0, 1e-9, "PAPER"),
        scalar_check("improper axis meets L", ga.join(unit(ax2), ln).scalar, 0.0, 1e-9, "PAPER"),
        scalar_check("improper axis meets K", ga.join(unit(ax2), kn).scalar, 0.0, 1e-9, "PAPER"),
    ]


_FIG7_SCENE = """space: H3
P = e123 + e320
Q = e123 + e130 + 1/3 e210
C = e123 + 1/4 e320 - 1/5 e130 + 1/10 e210
? join P Q
? classify P
"""


def _fig7_line(doc):
    return ga.normalize(ga.join(doc.bindings["P"], doc.bindings["Q"]))


def _fig7(doc):
    P, Q, C = doc.bindings["P"], doc.bindings["Q"], doc.bindings["C"]
    L = _fig7_line(doc)
    I = L.algebra.I
    d0 = measure.distance_point_line_h3(L, C)
    rot = motions.sample_trajectory(L, C, -math.pi, math.pi, 65)
    trans = motions.sample_trajectory(L * I, C, -3.0, 3.0, 65)
    d_rot = [measure.distance_point_line_h3(L, s.obj) for s in rot.samples]
    d_tr = [measure.distance_point_line_h3(L, s.obj) for s in trans.samples]
    screw = motions.screw_h3(L, 0.7, 0.4)
    r = motions.rotation_h3(L, 0.7).value
    t = motions.translation_h3(L, 0.4).value
    full = motions.apply(motions.rotation_h3(L, 2 * math.pi), C)
    return [
        label_check("class of L = P v Q", geo.classify(L).kind.value, "Proper", "PAPER"),
        scalar_check("L passes through P", ga.join(L, P).scalar, 0.0, 1e-12, "PAPER"),
        scalar_check("L passes through Q", ga.join(L, Q).scalar, 0.0, 1e-12, "PAPER"),
        scalar_check("spread of distance to L, rotation orbit", max(d_rot) - min(d_rot), 0.0, 1e-9, "PAPER"),
        scalar_check("spread of distance to L, translation orbit", max(d_tr) - min(d_tr), 0.0, 1e-9, "PAPER"),
        scalar_check("screw keeps distance to L", measure.distance_point_line_h3(L, motions.apply(screw, C)), d0, 1e-9, "PAPER"),
        mv_check("screw = rotation * translation", screw.value, r * t, 1e-12, "PAPER"),
        mv_check("rotation and translation commute", r * t, t * r, 1e-12, "DERIVED"),
        mv_check("full turn 2 pi returns C", full, C, 1e-12, "PAPER"),
        mv_check("closed-form exp vs series oracle", ga.exp_bivector(screw.generator), rep_exp(screw.generator), 1e-12, "DERIVED"),
    ]


# ---------------------------------------------------------------------------
# registry


CASES: dict[str, ReproCase] = {}


def _register(case: ReproCase) -> None:
    CASES[case.id] = case


_register(ReproCase("h1-distance", "H1 distance between points at phi=1 and phi=-1/2", _H1_SCENE, _h1))
_register(ReproCase("h2-fig2a-gap", "Hyperparallel lines and their common perpendicular", _FIG2A_SCENE, _fig2a))
_register(ReproCase("h2-fig3a-pointline", "Distance from a point to a line, polar point", _FIG3A_SCENE, _fig3a))
_register(ReproCase("h2-fig4b-translation", "Translation generated by an improper point", _FIG4B_SCENE, _fig4b))
_register(ReproCase("h2-fig5a-rotation", "Rotation about a proper point", _FIG5A_SCENE, _fig5a))
_register(ReproCase("h2-fig5b-nulltrans", "Null translation anchored to a null point", _FIG5B_SCENE, _fig5b))
_register(ReproCase("h3-fig6-skew", "Skew lines: distance and angle via the commutator", _FIG6_SCENE, _fig6))
_register(ReproCase("h3-fig7-screw", "Rotation, translation and screw about a proper line", _FIG7_SCENE, _fig7))


def get_case(case_id: str) -> ReproCase:
    try:
        return CASES[case_id]
    except KeyError:
        raise UnknownCase(f"unknown repro case {case_id!r}; known: {', '.join(CASES)}") from None


def run_cases(selector: str) -> dict[str, list[Check]]:
    ids = list(CASES) if selector == "all" else [get_case(selector).id]
    return {cid: CASES[cid].checks() for cid in ids}

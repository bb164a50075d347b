import math

import numpy as np
import pytest

import randgeo
from hyperga import geometry as geo
from hyperga import measure
from hyperga.algebra import algebra, inner, join, normalize, pseudo_norm, wedge
from hyperga.errors import (
    DegenerateTriangle,
    LinesIntersect,
    MeetNotProper,
    NotHyperparallel,
    NotRightAngled,
    NullOrImproperInput,
    NullVertexAtP,
)
from hyperga.parser import parse_mv

H2, H3 = algebra(2), algebra(3)


# --- distances -----------------------------------------------------------------


def test_h1_distance():
    assert measure.distance(geo.point_h1(1.0), geo.point_h1(-0.5)) == pytest.approx(1.5, abs=1e-12)


def test_distance_to_self_and_origin():
    P = parse_mv("e12 + 1/3 e20 - 1/2 e01", "H2")
    assert measure.distance(P, P) == 0.0
    assert measure.distance(H2.blade("e12"), P) == pytest.approx(math.acosh(6 / math.sqrt(23)), abs=1e-12)


def test_distance_requires_proper():
    with pytest.raises(NullOrImproperInput):
        measure.distance(parse_mv("e12 + e20", "H2"), H2.blade("e12"))
    with pytest.raises(NullOrImproperInput):
        measure.distance(parse_mv("e12 + 2 e20", "H2"), H2.blade("e12"))


def test_point_line_distance_fig3a():
    a = parse_mv("-1/2 e0 + e1 + 1/2 e2", "H2")
    P = parse_mv("e12 - 1/2 e20 + 1/3 e01", "H2")
    r = measure.distance_point_line_h2(a, P)
    assert math.sinh(r) == pytest.approx((5 / 6) / (math.sqrt(23) / 6), abs=1e-12)


def test_origin_to_line():
    a = normalize(parse_mv("0.3 e0 + 2 e1 - e2", "H2"))
    assert measure.distance_point_line_h2(a, H2.blade("e12")) == pytest.approx(math.asinh(abs(a["e0"])), abs=1e-12)


def test_point_on_line_has_zero_distance():
    P, Q = geo.point((0.1, 0.4)), geo.point((-0.3, 0.2))
    assert measure.distance_point_line_h2(join(P, Q), P) == pytest.approx(0.0, abs=1e-12)
    P3, Q3, R3 = geo.point((0.1, 0, 0.2)), geo.point((0, 0.3, 0)), geo.point((0.2, 0.2, 0.2))
    assert measure.distance_point_line_h3(join(P3, Q3), P3) == pytest.approx(0.0, abs=1e-12)
    assert measure.distance_point_plane_h3(join(join(P3, Q3), R3), Q3) == pytest.approx(0.0, abs=1e-12)


def test_h3_point_distances_agree_with_feet():
    rng = np.random.default_rng(21)
    for _ in range(100):
        ln, P = randgeo.line_h3(rng), randgeo.point(rng, 3)
        # foot: the plane through P perpendicular to ln meets ln
        foot = wedge(inner(ln, P), ln)
        assert measure.distance_point_line_h3(ln, P) == pytest.approx(measure.distance(foot, P), abs=1e-9)
        pl = randgeo.plane_h3(rng)
        foot = wedge(pl, inner(pl, P))
        assert measure.distance_point_plane_h3(pl, P) == pytest.approx(measure.distance(foot, P), abs=1e-9)


def test_distance_to_dispatch():
    P = geo.point((0.1, 0.2))
    a = H2.blade("e1")
    assert measure.distance_to(a, P) == measure.distance_point_line_h2(a, P)
    assert measure.distance_to(H2.blade("e12"), P) == measure.distance(H2.blade("e12"), P)


# --- angles --------------------------------------------------------------------


def test_angle_self_and_perpendicular():
    a = parse_mv("-1/2 e0 + e1 + 1/2 e2", "H2")
    assert measure.angle(a, a) == 0.0
    P = geo.point((0.2, -0.6))
    assert measure.angle(a, inner(a, P)) == pytest.approx(math.pi / 2, abs=1e-12)


def test_angle_hyperparallel_raises():
    a = parse_mv("-3/2 e0 + 3 e1 + 1/2 e2", "H2")
    b = parse_mv("1/2 e0 + e1 + 1/2 e2", "H2")
    with pytest.raises(MeetNotProper):
        measure.angle(a, b)


def test_angle_through_origin_is_euclidean():
    a, b = H2.blade("e1"), normalize(H2.blade("e1") + H2.blade("e2"))
    assert measure.angle(a, b) == pytest.approx(math.pi / 4, abs=1e-15)


def test_angle_h3_planes_and_lines():
    x, y = H3.blade("e1"), H3.blade("e2")
    assert measure.angle(x, y) == pytest.approx(math.pi / 2)
    O = H3.blade("e123")
    l1 = join(O, geo.point((0.5, 0, 0)))
    l2 = join(O, geo.point((0.5, 0.5, 0)))
    assert measure.angle(l1, l2) == pytest.approx(math.pi / 4, abs=1e-12)
    assert measure.angle(x, l1) == pytest.approx(math.pi / 2, abs=1e-12)


def test_angle_skew_lines_raises():
    l1 = join(geo.point((0.1, 0, 0)), geo.point((0, 0.1, 0)))
    l2 = join(geo.point((0, 0, 0.3)), geo.point((0.2, 0.2, 0.4)))
    with pytest.raises(MeetNotProper):
        measure.angle(l1, l2)


# --- closest approach ----------------------------------------------------------


def test_gap_fig2a():
    a = parse_mv("-3/2 e0 + 3 e1 + 1/2 e2", "H2")
    b = parse_mv("1/2 e0 + e1 + 1/2 e2", "H2")
    gap = measure.line_line_gap_h2(a, b)
    assert gap.c.allclose(parse_mv("-1/3e0 + 1/3e1 - e2", "H2"), 1e-12)
    an, bn = normalize(a), normalize(b)
    assert math.cosh(gap.r) == pytest.approx(abs(inner(an, bn).scalar), abs=1e-12)
    assert abs(inner(gap.P, gap.Q).scalar) == pytest.approx(math.cosh(gap.r), abs=1e-9)


def test_gap_not_hyperparallel():
    a = H2.blade("e1")
    with pytest.raises(NotHyperparallel):
        measure.line_line_gap_h2(a, a)
    with pytest.raises(NotHyperparallel):
        measure.line_line_gap_h2(a, H2.blade("e2"))


def test_gap_random_pairs():
    rng = np.random.default_rng(31)
    done = 0
    while done < 100:
        a, b = randgeo.line_h2(rng), randgeo.line_h2(rng)
        if not geo.classify(wedge(a, b)).improper:
            continue
        gap = measure.line_line_gap_h2(a, b)
        assert gap.r == pytest.approx(math.asinh(pseudo_norm(wedge(a, b))), abs=1e-9)
        assert measure.distance(gap.P, gap.Q) == pytest.approx(gap.r, abs=1e-9)
        done += 1


def test_skew_gap_limit_and_intersecting():
    O = H3.blade("e123")
    l1 = join(O, geo.point((0.5, 0, 0)))
    l2 = join(O, geo.point((0, 0.5, 0)))
    with pytest.raises(LinesIntersect):
        measure.skew_lines_gap(l1, l2)
    # nearly coplanar hyperparallel pair: r tends to the planar gap, alpha to 0
    base = join(geo.point((0.0, 0.5, 0)), geo.point((0.5, 0.5, 0)))
    tilt = join(geo.point((0.0, -0.5, 1e-7)), geo.point((0.5, -0.5, 0)))
    gap = measure.skew_lines_gap(base, tilt)
    u = inner(normalize(base), normalize(tilt)).scalar
    assert math.cosh(gap.r) == pytest.approx(abs(u), rel=1e-6)
    assert gap.alpha == pytest.approx(0.0, abs=1e-5) or gap.alpha == pytest.approx(math.pi, abs=1e-5)


# --- triangles -------------------------------------------------------------------


def test_right_triangle_examples():
    O = H2.blade("e12")
    assert measure.right_triangle_area(O, geo.point((0.5, 0)), geo.point((0.5, 0))) == 0.0
    ideal = measure.right_triangle_area(O, parse_mv("e12 + e20", "H2"), parse_mv("e12 + e01", "H2"))
    assert ideal == pytest.approx(math.pi / 2, abs=1e-12)
    Q, R = geo.point((0.5, 0)), geo.point((0, 0.5))
    assert measure.right_triangle_area(O, Q, R) == pytest.approx(measure.general_triangle_area(O, Q, R), abs=1e-9)


def test_right_triangle_errors():
    O = H2.blade("e12")
    with pytest.raises(NotRightAngled):
        measure.right_triangle_area(O, geo.point((0.5, 0)), geo.point((0.3, 0.3)))
    with pytest.raises(NullVertexAtP):
        measure.right_triangle_area(parse_mv("e12 + e20", "H2"), O, geo.point((0, 0.5)))


def test_general_triangle_examples():
    tiny = [geo.point((0.01 * c, 0.01 * s)) for c, s in ((0, 0), (1, 0), (0.5, 0.8))]
    assert 0 < measure.general_triangle_area(*tiny) < 1e-4
    with pytest.raises(DegenerateTriangle):
        measure.general_triangle_area(geo.point((0, 0)), geo.point((0.1, 0)), geo.point((0.2, 0)))


def _ideal_deficit(radius):
    # equilateral triangle with vertices at chart radius `radius`
    rho = math.atanh(radius)
    cosh_side = math.cosh(rho) ** 2 + 0.5 * math.sinh(rho) ** 2
    angle = math.acos(cosh_side / (cosh_side + 1))
    return 3 * angle


def test_near_ideal_triangle_matches_closed_form():
    radius = 1 - 1e-6
    verts = [geo.point((radius * math.cos(t), radius * math.sin(t))) for t in (0, 2 * math.pi / 3, 4 * math.pi / 3)]
    area = measure.general_triangle_area(*verts)
    assert area == pytest.approx(math.pi - _ideal_deficit(radius), abs=1e-6)
    assert math.pi - area < 1e-2


def test_triangle_angles_sum():
    P, Q, R = geo.point((0.1, 0.1)), geo.point((0.6, -0.2)), geo.point((-0.3, 0.5))
    angles = measure.triangle_angles(P, Q, R)
    assert all(0 < x < math.pi for x in angles)
    assert math.pi - sum(angles) == pytest.approx(measure.general_triangle_area(P, Q, R), abs=1e-12)


def _law_of_cosines_area(P, Q, R):
    a, b, c = measure.distance(Q, R), measure.distance(P, R), measure.distance(P, Q)

    def ang(opp, s1, s2):
        return math.acos((math.cosh(s1) * math.cosh(s2) - math.cosh(opp)) / (math.sinh(s1) * math.sinh(s2)))

    return math.pi - ang(a, b, c) - ang(b, a, c) - ang(c, a, b)


def test_triangle_area_ignores_weight_sign_and_orientation():
    rng = np.random.default_rng(17)
    for _ in range(300):
        P, Q, R = (randgeo.point(rng, 2) for _ in range(3))  # random weight signs
        ref = _law_of_cosines_area(P, Q, R)
        assert measure.general_triangle_area(P, Q, R) == pytest.approx(ref, abs=1e-9)
        assert measure.general_triangle_area(-P, R, Q) == pytest.approx(ref, abs=1e-9)

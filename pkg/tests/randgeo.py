"""Seeded random objects for property and acceptance tests."""

from __future__ import annotations

import math

import numpy as np

from hyperga import geometry as geo
from hyperga import motions
from hyperga.algebra import Multivector, algebra, join, normalize


def unit_ball(rng, dim, rmax=0.9):
    v = rng.normal(size=dim)
    v /= np.linalg.norm(v)
    return v * rmax * rng.uniform() ** (1.0 / dim)


def point(rng, dim, rmax=0.9, weight=None):
    w = rng.uniform(0.3, 3.0) * rng.choice([-1, 1]) if weight is None else weight
    return geo.point(unit_ball(rng, dim, rmax), w)


def h1_point(rng, span=3.0):
    return geo.point_h1(rng.uniform(-span, span))


def line_h2(rng, rmax=0.9):
    while True:
        ln = join(point(rng, 2, rmax), point(rng, 2, rmax))
        if ln.max_abs() > 1e-3:
            return normalize(ln)


def plane_h3(rng, rmax=0.9):
    while True:
        pl = join(join(point(rng, 3, rmax), point(rng, 3, rmax)), point(rng, 3, rmax))
        if pl.max_abs() > 1e-3:
            return normalize(pl)


def line_h3(rng, rmax=0.9):
    while True:
        ln = join(point(rng, 3, rmax), point(rng, 3, rmax))
        if ln.max_abs() > 1e-3:
            return normalize(ln)


def multivector(rng, dim, scale=1.0):
    alg = algebra(dim)
    return Multivector(alg, rng.normal(scale=scale, size=alg.size))


def bivector(rng, dim, scale=1.0):
    alg = algebra(dim)
    c = np.zeros(alg.size)
    mask = np.array(alg.grades) == 2
    c[mask] = rng.normal(scale=scale, size=mask.sum())
    return Multivector(alg, c)


def spinor(rng, dim):
    """Random proper motion: a composition of two or three elementary motions."""
    if dim == 1:
        return motions.translation_h1(rng.uniform(-2, 2))
    if dim == 2:
        s = motions.rotation_h2(point(rng, 2), rng.uniform(-math.pi, math.pi))
        t = motions.translation_h2(geo.polar(line_h2(rng)), rng.uniform(-1.5, 1.5))
        return s * t
    a = motions.screw_h3(line_h3(rng), rng.uniform(-math.pi, math.pi), rng.uniform(-1.5, 1.5))
    b = motions.rotation_h3(line_h3(rng), rng.uniform(-math.pi, math.pi))
    return a * b

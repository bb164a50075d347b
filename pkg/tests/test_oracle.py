import math

import numpy as np
import pytest

from hyperga.algebra import Multivector, algebra, exp_bivector, product_observer, wedge
from hyperga.oracle import (
    ProductAudit,
    blade_table,
    homomorphism_defect,
    reduce_word,
    rep_exp,
    rep_graded_product,
    rep_product,
)
from hyperga.parser import parse_mv


def test_reduce_word_counts_transpositions_and_metric():
    metric = [-1, 1, 1, 1]
    assert reduce_word((0, 0), metric) == (-1, ())
    assert reduce_word((2, 1, 0), metric) == (-1, (0, 1, 2))
    assert reduce_word((1, 0, 1), metric) == (-1, (0,))


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_left_multiplication_is_a_homomorphism(dim):
    assert homomorphism_defect(dim) == 0.0


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_blade_table_matches_kernel_exactly(dim):
    assert np.array_equal(blade_table(dim), algebra(dim).gp_table)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_random_products_agree(dim):
    rng = np.random.default_rng(10 + dim)
    alg = algebra(dim)
    worst = 0.0
    for _ in range(300):
        a = Multivector(alg, rng.normal(size=alg.size))
        b = Multivector(alg, rng.normal(size=alg.size))
        worst = max(worst, float(np.abs((a * b).coeffs - rep_product(a, b).coeffs).max()))
    assert worst < 1e-12


def test_fig2a_wedge_through_oracle():
    a = parse_mv("-3/2 e0 + 3 e1 + 1/2 e2", "H2")
    b = parse_mv("1/2 e0 + e1 + 1/2 e2", "H2")
    assert rep_graded_product("wedge", a, b).allclose(parse_mv("e12 + e20 - 3e01", "H2"), 1e-12)


def test_rep_exp():
    alg = algebra(1)
    assert rep_exp(alg.zero()).allclose(alg.scalar())
    assert rep_exp(alg.blade("e01")).allclose(math.cosh(1) * alg.scalar() + math.sinh(1) * alg.blade("e01"), 1e-12)


def test_rep_exp_nonsimple_h3():
    rng = np.random.default_rng(3)
    alg = algebra(3)
    for _ in range(20):
        c = np.zeros(alg.size)
        c[alg.grades == 2] = rng.normal(size=6)
        b = Multivector(alg, c)
        assert exp_bivector(b).allclose(rep_exp(b), 1e-10)


def test_product_audit_sees_every_product_kind():
    audit = ProductAudit()
    token = product_observer.set(audit)
    try:
        a = parse_mv("e1 + e2", "H2")
        b = parse_mv("e0 - e12", "H2")
        _ = a * b
        _ = wedge(a, b)
        _ = a | b
    finally:
        product_observer.reset(token)
    assert audit.count == 3
    assert audit.max_deviation < 1e-15

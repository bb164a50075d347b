"""Brute-force matrix representation of Cl(d,1), independent of :mod:`hyperga.algebra`.

Blades here are sorted tuples of generator indices, and products are reduced
by bubble-sorting the concatenated generator word, counting transpositions
and contracting equal neighbours with the metric.  Nothing is shared with the
bitmask tables of the main kernel except the final coefficient ordering,
which both sides define as (grade, lexicographic indices).
"""

from __future__ import annotations

import functools
from itertools import combinations

import numpy as np

from .algebra import Multivector


def _metric(dim: int) -> list[int]:
    return [-1] + [1] * dim


def reduce_word(word, metric) -> tuple[int, tuple[int, ...]]:
    """Reduce a generator word to ``(sign, sorted blade tuple)`` by explicit transpositions."""
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(w) - 1:
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                sign = -sign
                changed = True
            elif w[i] == w[i + 1]:
                sign *= metric[w[i]]
                del w[i:i + 2]
                changed = True
                continue
            i += 1
    return sign, tuple(w)


@functools.cache
def basis(dim: int) -> tuple[tuple[int, ...], ...]:
    gens = range(dim + 1)
    return tuple(c for k in range(dim + 2) for c in combinations(gens, k))


@functools.cache
def left_mul(dim: int) -> np.ndarray:
    """``M[s]`` is the matrix of left multiplication by basis blade ``s``."""
    blades = basis(dim)
    pos = {b: i for i, b in enumerate(blades)}
    metric = _metric(dim)
    n = len(blades)
    mats = np.zeros((n, n, n))
    for s, bs in enumerate(blades):
        for t, bt in enumerate(blades):
            sign, out = reduce_word(bs + bt, metric)
            mats[s, pos[out], t] = sign
    mats.setflags(write=False)
    return mats


def matrix_of(a: Multivector) -> np.ndarray:
    return np.tensordot(a.coeffs, left_mul(a.algebra.dim), axes=1)


def rep_product(a: Multivector, b: Multivector) -> Multivector:
    if a.algebra is not b.algebra:
        raise ValueError("algebra mismatch")
    return Multivector(a.algebra, matrix_of(a) @ b.coeffs)


def rep_grade(a: Multivector, k: int) -> Multivector:
    keep = np.array([len(b) == k for b in basis(a.algebra.dim)])
    return Multivector(a.algebra, np.where(keep, a.coeffs, 0.0))


def rep_graded_product(kind: str, a: Multivector, b: Multivector) -> Multivector:
    """Oracle version of ``gp``, ``wedge`` (grade r+s part) or ``inner`` (grade |r-s| part)."""
    if kind == "gp":
        return rep_product(a, b)
    dim = a.algebra.dim
    total = np.zeros(a.algebra.size)
    for r in range(dim + 2):
        ar = rep_grade(a, r)
        if not ar.coeffs.any():
            continue
        for s in range(dim + 2):
            bs = rep_grade(b, s)
            if not bs.coeffs.any():
                continue
            k = r + s if kind == "wedge" else abs(r - s)
            total += rep_grade(rep_product(ar, bs), k).coeffs
    return Multivector(a.algebra, total)


def rep_exp(bv: Multivector, terms: int = 40) -> Multivector:
    """Truncated power series ``sum_k B^k / k!`` evaluated with the matrix representation."""
    m = matrix_of(bv)
    n = m.shape[0]
    vec = np.zeros(n)
    vec[0] = 1.0
    total = vec.copy()
    term = vec
    for k in range(1, terms):
        term = m @ term / k
        total = total + term
    return Multivector(bv.algebra, total)


def homomorphism_defect(dim: int) -> float:
    """Max deviation of ``M(e_s) M(e_t) - M(e_s e_t)`` over every blade pair."""
    mats = left_mul(dim)
    blades = basis(dim)
    pos = {b: i for i, b in enumerate(blades)}
    metric = _metric(dim)
    worst = 0.0
    for s, bs in enumerate(blades):
        for t, bt in enumerate(blades):
            sign, out = reduce_word(bs + bt, metric)
            worst = max(worst, float(np.abs(mats[s] @ mats[t] - sign * mats[pos[out]]).max()))
    return worst


def blade_table(dim: int) -> np.ndarray:
    """``T[s, t, u]`` = coefficient of blade ``u`` in ``e_s e_t``; same layout as the kernel's table."""
    return np.transpose(left_mul(dim), (0, 2, 1)).copy()


class ProductAudit:
    """Callable observer recording the worst oracle deviation seen across products."""

    def __init__(self):
        self.count = 0
        self.max_deviation = 0.0

    def __call__(self, kind: str, a: Multivector, b: Multivector, result: Multivector) -> None:
        ref = rep_graded_product(kind, a, b)
        self.count += 1
        dev = float(np.abs(ref.coeffs - result.coeffs).max())
        scale = max(1.0, a.max_abs() * b.max_abs())
        self.max_deviation = max(self.max_deviation, dev / scale)


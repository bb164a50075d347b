"""Dense multivector arithmetic for the hyperbolic Clifford algebras Cl(d,1), d = 1, 2, 3.

The generators are ``e0`` (squaring to -1) and ``e1 .. ed`` (squaring to +1).
Basis blades are bitmasks over the generators; bit ``i`` stands for ``e_i``.
Coefficients are stored densely in *canonical order*: blades sorted by grade,
then lexicographically by their generator indices.  For ``d = 2`` that is::

    1, e0, e1, e2, e01, e02, e12, e012

Text output uses the conventional names instead (``e20`` rather than ``e02``,
``e320`` for planes through the origin in H3, ...); see :attr:`Algebra.display`.
"""

from __future__ import annotations

import contextvars
import functools
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import AlgebraMismatch, GradeError, NotInvertible, NullObject

#: Relative threshold below which a pseudo-norm counts as zero.
NULL_TOL = 1e-9

# conventional blade names, in the order they are printed
_DISPLAY_NAMES = {
    1: ["", "e0", "e1", "e01"],
    2: ["", "e0", "e1", "e2", "e12", "e20", "e01", "e012"],
    3: ["", "e0", "e1", "e2", "e3",
        "e10", "e20", "e30", "e23", "e31", "e12",
        "e123", "e320", "e130", "e210", "e0123"],
}


def popcount(x: int) -> int:
    return bin(x).count("1")


def reorder_sign(a: int, b: int) -> int:
    """Sign from moving the generators of blade ``b`` past those of ``a`` into sorted order."""
    a >>= 1
    swaps = 0
    while a:
        swaps += popcount(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


def word_to_blade(indices) -> tuple[int, int]:
    """Reduce a word of distinct generator indices to ``(sign, bitmask)``."""
    sign, mask = 1, 0
    for i in indices:
        bit = 1 << i
        if mask & bit:
            raise ValueError(f"repeated generator e{i}")
        sign *= reorder_sign(mask, bit)
        mask |= bit
    return sign, mask


@dataclass(frozen=True, eq=False)
class Algebra:
    """Signature descriptor and precomputed product tables for Cl(dim,1)."""

    dim: int
    generator_squares: tuple[float, ...] = field(init=False)
    blades: tuple[int, ...] = field(init=False, repr=False)
    index: dict = field(init=False, repr=False)
    grades: np.ndarray = field(init=False, repr=False)
    gp_table: np.ndarray = field(init=False, repr=False)
    outer_table: np.ndarray = field(init=False, repr=False)
    inner_table: np.ndarray = field(init=False, repr=False)
    complement: np.ndarray = field(init=False, repr=False)
    complement_signs: np.ndarray = field(init=False, repr=False)
    display: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.dim}")
        n = self.dim + 1
        squares = (-1.0,) + (1.0,) * self.dim
        blades = tuple(
            sum(1 << i for i in combo)
            for k in range(n + 1)
            for combo in combinations(range(n), k)
        )
        index = {b: i for i, b in enumerate(blades)}
        size = len(blades)
        grades = np.array([popcount(b) for b in blades])

        gp = np.zeros((size, size, size))
        outer = np.zeros_like(gp)
        inner = np.zeros_like(gp)
        for i, a in enumerate(blades):
            for j, b in enumerate(blades):
                sign = reorder_sign(a, b)
                common = a & b
                for g in range(n):
                    if common >> g & 1:
                        sign *= squares[g]
                k = index[a ^ b]
                gp[i, j, k] = sign
                if not common:
                    outer[i, j, k] = sign
                if grades[k] == abs(grades[i] - grades[j]):
                    inner[i, j, k] = sign

        # right complement J: e_S ^ J(e_S) = I
        full = (1 << n) - 1
        comp = np.array([index[full ^ b] for b in blades])
        comp_signs = np.array([float(reorder_sign(b, full ^ b)) for b in blades])

        display = []
        for name in _DISPLAY_NAMES[self.dim]:
            sign, mask = word_to_blade(int(c) for c in name[1:])
            display.append((name, index[mask], float(sign)))

        set_ = object.__setattr__
        set_(self, "generator_squares", squares)
        set_(self, "blades", blades)
        set_(self, "index", index)
        set_(self, "grades", grades)
        for arr in (gp, outer, inner, comp, comp_signs):
            arr.setflags(write=False)
        set_(self, "gp_table", gp)
        set_(self, "outer_table", outer)
        set_(self, "inner_table", inner)
        set_(self, "complement", comp)
        set_(self, "complement_signs", comp_signs)
        set_(self, "display", tuple(display))

    @property
    def size(self) -> int:
        return len(self.blades)

    @property
    def name(self) -> str:
        return f"H{self.dim}"

    def __repr__(self):
        return f"Algebra(H{self.dim})"

    # constructors

    def scalar(self, value: float = 1.0) -> Multivector:
        c = np.zeros(self.size)
        c[0] = value
        return Multivector(self, c)

    def zero(self) -> Multivector:
        return Multivector(self, np.zeros(self.size))

    def blade(self, name: str) -> Multivector:
        """Basis blade by generator word, e.g. ``"e20"`` or ``"e320"`` (sign folded in)."""
        if not name.startswith("e") or not name[1:].isdigit():
            raise ValueError(f"not a blade name: {name!r}")
        idx = [int(ch) for ch in name[1:]]
        if max(idx) > self.dim:
            raise ValueError(f"{name} not in H{self.dim}")
        sign, mask = word_to_blade(idx)
        c = np.zeros(self.size)
        c[self.index[mask]] = sign
        return Multivector(self, c)

    def vector(self, *coeffs: float) -> Multivector:
        """``coeffs[0]*e0 + coeffs[1]*e1 + ...``"""
        if len(coeffs) != self.dim + 1:
            raise ValueError(f"need {self.dim + 1} coefficients")
        c = np.zeros(self.size)
        c[1:self.dim + 2] = coeffs
        return Multivector(self, c)

    @property
    def I(self) -> Multivector:  # noqa: E743
        return self._pseudoscalar()

    @functools.cache
    def _pseudoscalar(self) -> Multivector:
        c = np.zeros(self.size)
        c[-1] = 1.0
        return Multivector(self, c)

    def grade_mask(self, k: int) -> np.ndarray:
        return self.grades == k


@functools.cache
def algebra(dim: int) -> Algebra:
    """Shared :class:`Algebra` instance for ``H{dim}``."""
    return Algebra(dim)


def algebra_for(name: str) -> Algebra:
    key = name.strip().upper()
    if key not in ("H1", "H2", "H3"):
        raise ValueError(f"unknown space {name!r}; expected H1, H2 or H3")
    return algebra(int(key[1]))


# Optional per-context recorder used by the CLI's --oracle cross-check.
product_observer: contextvars.ContextVar = contextvars.ContextVar("product_observer", default=None)


class Multivector:
    """An immutable element of Cl(d,1) with dense coefficients in canonical blade order.

    Operators: ``*`` geometric product, ``^`` outer product, ``|`` inner product,
    ``&`` regressive product (join), ``~`` reverse.
    """

    __slots__ = ("algebra", "coeffs")
    __array_priority__ = 100  # keep numpy scalars from hijacking the operators

    def __init__(self, alg: Algebra, coeffs):
        arr = np.array(coeffs, dtype=float)
        if arr.shape != (alg.size,):
            raise ValueError(f"expected {alg.size} coefficients, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "algebra", alg)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, key, value):
        raise AttributeError("Multivector is immutable")

    # ---- helpers ----

    def _check(self, other: Multivector) -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"cannot combine {self.algebra.name} and {other.algebra.name}")

    def _new(self, coeffs) -> Multivector:
        return Multivector(self.algebra, coeffs)

    def _coerce(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self.algebra.scalar(float(other))
        return NotImplemented

    # ---- linear structure ----

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(self.coeffs - other.coeffs)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._new(other.coeffs - self.coeffs)

    def __neg__(self):
        return self._new(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return geometric_product(self, other)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._new(self.coeffs * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._new(self.coeffs * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return self._new(self.coeffs / float(other))
        if isinstance(other, Multivector):
            return self * inverse(other)
        return NotImplemented

    def __xor__(self, other):
        return wedge(self, other)

    def __or__(self, other):
        return inner(self, other)

    def __and__(self, other):
        return join(self, other)

    def __invert__(self):
        return reverse(self)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return other.algebra is self.algebra and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def __repr__(self):
        from .parser import serialize_mv

        return f"Multivector({self.algebra.name}: {serialize_mv(self)})"

    # ---- inspection ----

    def __getitem__(self, name: str) -> float:
        """Coefficient of a named blade, e.g. ``P["e20"]``; sign of the name is honoured."""
        b = self.algebra.blade(name)
        k = int(np.flatnonzero(b.coeffs)[0])
        return float(self.coeffs[k] * b.coeffs[k])

    @property
    def scalar(self) -> float:
        return float(self.coeffs[0])

    def grades_present(self, tol: float = 0.0) -> set[int]:
        nz = np.abs(self.coeffs) > tol
        return {int(g) for g in self.algebra.grades[nz]}

    def homogeneous_grade(self, tol: float = 1e-12) -> int:
        """The single grade carried by this multivector; raises :class:`GradeError` otherwise."""
        scale = max(float(np.max(np.abs(self.coeffs))), 1.0)
        present = self.grades_present(tol * scale)
        if len(present) != 1:
            raise GradeError(f"expected a homogeneous multivector, found grades {sorted(present)}")
        return present.pop()

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def allclose(self, other: Multivector, atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def to_scalar(self, tol: float = 1e-12) -> float:
        """Extract the grade-0 part, insisting the rest is negligible."""
        rest = np.abs(self.coeffs[1:])
        scale = max(1.0, self.max_abs())
        if rest.size and rest.max() > tol * scale:
            raise GradeError(f"expected a scalar, got {self!r}")
        return float(self.coeffs[0])


# ---------------------------------------------------------------------------
# products


def _bilinear(table: np.ndarray, a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    return a._new(np.einsum("i,j,ijk->k", a.coeffs, b.coeffs, table, optimize=False))


def _observed(kind: str, a: Multivector, b: Multivector, out: Multivector) -> Multivector:
    observer = product_observer.get()
    if observer is not None:
        observer(kind, a, b, out)
    return out


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return _observed("gp", a, b, _bilinear(a.algebra.gp_table, a, b))


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return _observed("wedge", a, b, _bilinear(a.algebra.outer_table, a, b))


def inner(a: Multivector, b: Multivector) -> Multivector:
    """Sum over grade pairs of ``<A_r B_s>_{|r-s|}``."""
    return _observed("inner", a, b, _bilinear(a.algebra.inner_table, a, b))


def _complement(a: Multivector) -> Multivector:
    alg = a.algebra
    c = np.zeros(alg.size)
    c[alg.complement] = a.coeffs * alg.complement_signs
    return a._new(c)


def _uncomplement(a: Multivector) -> Multivector:
    alg = a.algebra
    return a._new(a.coeffs[alg.complement] / alg.complement_signs)


def join(a: Multivector, b: Multivector) -> Multivector:
    """Regressive product ``J^-1(J(a) ^ J(b))``."""
    a._check(b)
    return _uncomplement(wedge(_complement(a), _complement(b)))


def reverse(a: Multivector) -> Multivector:
    g = a.algebra.grades
    signs = np.where((g * (g - 1) // 2) % 2 == 0, 1.0, -1.0)
    return a._new(a.coeffs * signs)


def grade(a: Multivector, k: int) -> Multivector:
    return a._new(np.where(a.algebra.grades == k, a.coeffs, 0.0))


def dual(a: Multivector) -> Multivector:
    """``a I`` -- the polar of ``a``."""
    return a * a.algebra.I


def undual(a: Multivector) -> Multivector:
    """``a I^-1``."""
    I = a.algebra.I
    return a * I * (1.0 / (I * I).scalar)


def commutator(a: Multivector, b: Multivector) -> Multivector:
    return 0.5 * (a * b - b * a)


def square_scalar(a: Multivector) -> float:
    """``<a a~>_0``; positive for proper objects of every geometric grade."""
    return float(np.dot(a.coeffs, reverse(a).coeffs @ _scalar_products(a.algebra)))


@functools.cache
def _scalar_products(alg: Algebra) -> np.ndarray:
    return np.ascontiguousarray(alg.gp_table[:, :, 0].T)


def pseudo_norm(a: Multivector) -> float:
    return math.sqrt(abs(square_scalar(a)))


def is_null(a: Multivector, tol: float = NULL_TOL) -> bool:
    scale = a.max_abs()
    return scale == 0.0 or abs(square_scalar(a)) <= tol * scale * scale


def normalize(a: Multivector, tol: float = NULL_TOL) -> Multivector:
    if is_null(a, tol):
        raise NullObject(f"cannot normalize a null object: {a!r}")
    return a / pseudo_norm(a)


def left_matrix(a: Multivector) -> np.ndarray:
    """Matrix ``L`` with ``(a*b).coeffs == L @ b.coeffs``."""
    return np.einsum("i,ijk->kj", a.coeffs, a.algebra.gp_table)


def inverse(a: Multivector, tol: float = 1e-12) -> Multivector:
    """Two-sided inverse. Blades and versors use ``a~ / <a a~>``; anything else solves the left-multiplication system."""
    r = reverse(a)
    aa = a * r
    scale = max(a.max_abs() ** 2, 1e-300)
    if np.max(np.abs(aa.coeffs[1:])) <= tol * scale:
        s = aa.coeffs[0]
        if abs(s) <= tol * scale:
            raise NotInvertible(f"{a!r} is not invertible")
        return r / s
    m = left_matrix(a)
    one = a.algebra.scalar().coeffs
    try:
        x = np.linalg.solve(m, one)
    except np.linalg.LinAlgError as exc:
        raise NotInvertible(f"{a!r} is not invertible") from exc
    if np.linalg.cond(m) > 1e12:
        raise NotInvertible(f"{a!r} is numerically singular")
    return a._new(x)


# ---------------------------------------------------------------------------
# bivector exponential


def split_bivector(bv: Multivector, tol: float = 1e-12) -> tuple[Multivector, Multivector]:
    """Split a bivector of H3 into commuting simple parts ``(L1, L2)`` with ``L1^2 < 0 < L2^2``.

    Simple (or numerically simple) input comes back as ``(bv, 0)``.
    """
    alg = bv.algebra
    if alg.dim != 3:
        return bv, alg.zero()
    scale = bv.max_abs() ** 2
    ww = wedge(bv, bv).coeffs[-1]  # bv ^ bv = ww * I
    if scale == 0.0 or abs(ww) <= tol * scale:
        return bv, alg.zero()
    dot = inner(bv, bv).scalar
    vee = join(bv, bv).scalar
    root = math.hypot(dot, vee)
    # roots of x^2 - dot*x - vee^2/4 = 0, taken without cancellation
    if dot >= 0.0:
        sq2 = 0.5 * (dot + root)
        sq1 = -0.25 * vee * vee / sq2
    else:
        sq1 = 0.5 * (dot - root)
        sq2 = -0.25 * vee * vee / sq1
    # L1 = bv / (1 + k I) with k = ww / (2 L1^2); (1 + kI)^-1 = (1 - kI) / (1 + k^2)
    k = 0.5 * ww / sq1
    l1 = (bv - k * (bv * alg.I)) / (1.0 + k * k)
    l1 = grade(l1, 2)
    l2 = bv - l1
    del sq2
    return l1, l2


def _simple_exp(bv: Multivector, tol: float) -> Multivector:
    s = (bv * bv).scalar
    scale = bv.max_abs() ** 2
    one = bv.algebra.scalar()
    if abs(s) <= tol * max(scale, 1e-300) or s == 0.0:
        return one + bv
    beta = math.sqrt(abs(s))
    if s < 0:
        return math.cos(beta) * one + (math.sin(beta) / beta) * bv
    return math.cosh(beta) * one + (math.sinh(beta) / beta) * bv


def exp_bivector(bv: Multivector, tol: float = 1e-14) -> Multivector:
    """Closed-form exponential of a bivector."""
    if bv.max_abs() == 0.0:
        return bv.algebra.scalar()
    if bv.grades_present() != {2}:
        raise GradeError("exp_bivector expects a pure bivector")
    if bv.algebra.dim == 3:
        l1, l2 = split_bivector(bv)
        if l2.max_abs() > 0.0:
            return _simple_exp(l1, tol) * _simple_exp(l2, tol)
    return _simple_exp(bv, tol)

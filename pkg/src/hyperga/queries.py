"""Named operations available to scene files, and their evaluation into JSON-ready records."""

from __future__ import annotations

import math
from typing import Any, Callable

from . import algebra as ga
from . import geometry as geo
from . import measure, motions
from .algebra import NULL_TOL, Multivector, product_observer
from .errors import GradeError, HyperGAError
from .parser import Query, SceneDocument, serialize_mv


def _motion(make: Callable) -> Callable:
    def run(gen, *rest, tol=NULL_TOL):
        *params, obj = rest
        return motions.apply(make(gen, *params), obj)

    return run


def _translate_h1(lam, a, tol=NULL_TOL):
    return motions.apply(motions.translation_h1(lam), a)


# name -> callable(*args, tol=...)
QUERY_OPS: dict[str, Callable[..., Any]] = {
    "distance": lambda p, q, tol=NULL_TOL: measure.distance(p, q, tol),
    "distance_point_line": lambda x, p, tol=NULL_TOL: (
        measure.distance_point_line_h2(x, p, tol) if x.algebra.dim == 2
        else measure.distance_point_line_h3(x, p, tol)),
    "distance_point_plane": lambda a, p, tol=NULL_TOL: measure.distance_point_plane_h3(a, p, tol),
    "distance_to": lambda x, p, tol=NULL_TOL: measure.distance_to(x, p, tol),
    "angle": lambda a, b, tol=NULL_TOL: measure.angle(a, b, tol),
    "gap": lambda a, b, tol=NULL_TOL: measure.line_line_gap_h2(a, b, tol),
    "skew_gap": lambda a, b, tol=NULL_TOL: measure.skew_lines_gap(a, b, tol),
    "right_triangle_area": lambda p, q, r, tol=NULL_TOL: measure.right_triangle_area(p, q, r, tol),
    "triangle_area": lambda p, q, r, tol=NULL_TOL: measure.general_triangle_area(p, q, r, tol),
    "classify": lambda a, tol=NULL_TOL: geo.classify(a, tol),
    "polar": lambda a, tol=NULL_TOL: geo.polar(a),
    "null_points": lambda a, tol=NULL_TOL: geo.null_points(a, tol),
    "project": lambda a, b, tol=NULL_TOL: geo.project(a, b, tol),
    "reject": lambda a, b, tol=NULL_TOL: geo.reject(a, b, tol),
    "reflect": lambda a, b, tol=NULL_TOL: geo.reflect(a, b, tol),
    "axes": lambda a, tol=NULL_TOL: geo.axes(a),
    "chart": lambda a, tol=NULL_TOL: geo.chart(a),
    "perpendicular": lambda a, b, tol=NULL_TOL: geo.is_perpendicular(a, b),
    "incident": lambda a, b, tol=NULL_TOL: geo.is_incident(a, b),
    "product": lambda a, b, tol=NULL_TOL: a * b,
    "wedge": lambda a, b, tol=NULL_TOL: ga.wedge(a, b),
    "inner": lambda a, b, tol=NULL_TOL: ga.inner(a, b),
    "join": lambda a, b, tol=NULL_TOL: ga.join(a, b),
    "commutator": lambda a, b, tol=NULL_TOL: ga.commutator(a, b),
    "dual": lambda a, tol=NULL_TOL: ga.dual(a),
    "undual": lambda a, tol=NULL_TOL: ga.undual(a),
    "reverse": lambda a, tol=NULL_TOL: ga.reverse(a),
    "normalize": lambda a, tol=NULL_TOL: ga.normalize(a, tol),
    "norm": lambda a, tol=NULL_TOL: ga.pseudo_norm(a),
    "exp": lambda a, tol=NULL_TOL: ga.exp_bivector(a),
    "translate_h1": _translate_h1,
    "translate": _motion(motions.translation_h2),
    "rotate": _motion(motions.rotation_h2),
    "null_translate": _motion(motions.null_translation_h2),
    "screw": _motion(motions.screw_h3),
    "null_translate_h3": _motion(motions.null_translation_h3),
}


def encode(value: Any) -> Any:
    """JSON-ready form of a query result."""
    if isinstance(value, Multivector):
        return {"mv": serialize_mv(value), "coeffs": [float(c) for c in value.coeffs]}
    if isinstance(value, geo.GeomClass):
        return {"kind": value.kind.value, "discriminant": value.discriminant, "tolerance": value.tolerance_used}
    if isinstance(value, geo.ChartPoint):
        return {"coords": list(value.coords), "weight": value.weight}
    if hasattr(value, "_asdict"):
        return {k: encode(v) for k, v in value._asdict().items()}
    if isinstance(value, (tuple, list)):
        return [encode(v) for v in value]
    if isinstance(value, float):
        return value
    return value


def classification_of(value: Any, tol: float) -> str | None:
    if isinstance(value, Multivector):
        try:
            return geo.classify(value, tol).kind.value
        except (GradeError, HyperGAError):
            return None
    return None


def evaluate_query(doc: SceneDocument, query: Query, tol: float = NULL_TOL, oracle: bool = False) -> dict:
    func = QUERY_OPS[query.op]
    args = [doc.bindings[a] if isinstance(a, str) else a for a in query.args]
    record: dict[str, Any] = {"query": query.text, "line": query.line}
    diagnostics: dict[str, Any] = {}
    for name in query.args:
        if isinstance(name, str):
            cls = classification_of(doc.bindings[name], tol)
            if cls is not None:
                diagnostics.setdefault("inputs", {})[name] = cls
    audit = None
    token = None
    if oracle:
        from .oracle import ProductAudit

        audit = ProductAudit()
        token = product_observer.set(audit)
    try:
        result = func(*args, tol=tol)
    except (HyperGAError, TypeError, ValueError, AttributeError, ArithmeticError) as exc:
        name = type(exc).__name__ if isinstance(exc, HyperGAError) else "BadArguments"
        record["error"] = {"type": name, "message": str(exc)}
        record["result"] = None
        record["classification"] = None
    else:
        record["result"] = encode(result)
        record["classification"] = classification_of(result, tol)
    finally:
        if token is not None:
            product_observer.reset(token)
    if audit is not None:
        diagnostics["oracle_products"] = audit.count
        diagnostics["oracle_max_deviation"] = audit.max_deviation
    if isinstance(record.get("result"), float) and not math.isfinite(record["result"]):
        diagnostics["non_finite"] = True
    record["diagnostics"] = diagnostics
    return record


def evaluate_scene(doc: SceneDocument, tol: float = NULL_TOL, oracle: bool = False) -> list[dict]:
    return [evaluate_query(doc, q, tol, oracle) for q in doc.queries]

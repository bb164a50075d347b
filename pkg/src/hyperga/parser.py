"""Multivector literals, scene files, and canonical text/JSON serialization.

Literal grammar (whitespace between tokens is ignored)::

    mv    := ['+'|'-'] term (('+'|'-') term)*
    term  := coef ['*'] atom | atom | coef
    atom  := blade | name            (names only inside scene files)
    blade := 'e' digit+              (generators in written order, sign folded in)
    coef  := decimal | int '/' int

Scene files are line oriented::

    space: H2
    a = -3/2 e0 + 3 e1 + 1/2 e2     # bindings may use earlier names
    ? distance a b
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import Algebra, Multivector, algebra_for, word_to_blade
from .errors import (
    DuplicateGeneratorInBlade,
    MVSyntaxError,
    UnboundName,
    UnknownGenerator,
    UnknownQueryOp,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\.\d*)?|\.\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/])
    """,
    re.VERBOSE,
)
_BLADE = re.compile(r"e\d+\Z")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _tokenize(text: str, offset: int = 0):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise MVSyntaxError(f"unexpected character {text[pos]!r}", offset + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), offset + pos))
        pos = m.end()
    out.append(("end", "", offset + len(text)))
    return out


class _Parser:
    def __init__(self, text: str, alg: Algebra, names, offset: int):
        self.toks = _tokenize(text, offset)
        self.i = 0
        self.alg = alg
        self.names = names

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Multivector:
        kind, val, pos = self.peek()
        if kind == "end":
            raise MVSyntaxError("empty expression", pos)
        total = np.zeros(self.alg.size)
        sign = 1.0
        if kind == "op" and val in "+-":
            self.take()
            sign = -1.0 if val == "-" else 1.0
        total += sign * self.term()
        while True:
            kind, val, pos = self.take()
            if kind == "end":
                break
            if kind == "op" and val in "+-":
                sign = -1.0 if val == "-" else 1.0
                total += sign * self.term()
            else:
                raise MVSyntaxError(f"expected '+' or '-', got {val!r}", pos)
        if not np.all(np.isfinite(total)):
            raise MVSyntaxError("coefficient overflow", self.toks[0][2])
        return Multivector(self.alg, total)

    def term(self) -> np.ndarray:
        kind, val, pos = self.peek()
        coef = 1.0
        if kind == "number":
            coef = self.coef()
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                kind, val, pos = self.peek()
                if kind != "ident":
                    raise MVSyntaxError("expected a blade or name after '*'", pos)
            if kind != "ident":
                return coef * self.alg.scalar().coeffs
        if kind != "ident":
            raise MVSyntaxError(f"expected a term, got {val or 'end of input'!r}", pos)
        self.take()
        return coef * self.atom(val, pos)

    def coef(self) -> float:
        _, val, pos = self.take()
        kind, nxt, _ = self.peek()
        if kind == "op" and nxt == "/":
            self.take()
            kind, den, dpos = self.take()
            if kind != "number" or "." in val or "." in den:
                raise MVSyntaxError("fractions must be int/int", dpos)
            if int(den) == 0:
                raise MVSyntaxError("zero denominator", dpos)
            return float(Fraction(int(val), int(den)))
        return float(val)

    def atom(self, val: str, pos: int) -> np.ndarray:
        if _BLADE.match(val):
            idx = [int(ch) for ch in val[1:]]
            for j, g in enumerate(idx):
                if g > self.alg.dim:
                    raise UnknownGenerator(f"e{g} is not a generator of H{self.alg.dim}", pos + 1 + j)
            if len(set(idx)) != len(idx):
                raise DuplicateGeneratorInBlade(f"repeated generator in {val}", pos)
            sign, mask = word_to_blade(idx)
            c = np.zeros(self.alg.size)
            c[self.alg.index[mask]] = sign
            return c
        if self.names is None:
            raise MVSyntaxError(f"unknown token {val!r}", pos)
        if val not in self.names:
            raise UnboundName(f"name {val!r} is not bound (yet)", pos)
        return self.names[val].coeffs


def parse_mv(text: str, alg: Algebra | str, names: dict | None = None, _offset: int = 0) -> Multivector:
    """Parse a multivector literal in the given algebra (``Algebra`` or ``"H1"/"H2"/"H3"``)."""
    if isinstance(alg, str):
        alg = algebra_for(alg)
    return _Parser(text, alg, names, _offset).parse()


# ---------------------------------------------------------------------------
# serialization


def format_coef(x: float) -> str:
    """Shortest exact text for a double: integer, small fraction, or positional decimal."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    frac = Fraction(x).limit_denominator(1000)
    if frac.denominator > 1 and float(frac) == x:
        return f"{frac.numerator}/{frac.denominator}"
    return np.format_float_positional(x, unique=True, trim="-")


def serialize_mv(a: Multivector, style: str = "canonical") -> str:
    if style == "json":
        return json.dumps({"space": a.algebra.name, "coeffs": [float(c) for c in a.coeffs]})
    if style != "canonical":
        raise ValueError(f"unknown style {style!r}")
    parts = []
    for name, idx, sign in a.algebra.display:
        c = a.coeffs[idx] * sign
        if c == 0.0:
            continue
        if not math.isfinite(c):
            raise ValueError("cannot serialize non-finite coefficients")
        mag = format_coef(abs(c))
        body = name if (name and mag == "1") else f"{mag}{name}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


def parse_json_mv(text: str) -> Multivector:
    obj = json.loads(text)
    return Multivector(algebra_for(obj["space"]), obj["coeffs"])


# ---------------------------------------------------------------------------
# scene documents


@dataclass
class Query:
    op: str
    args: list
    line: int
    text: str


@dataclass
class SceneDocument:
    algebra: Algebra
    bindings: dict[str, Multivector] = field(default_factory=dict)
    sources: dict[str, str] = field(default_factory=dict)
    queries: list[Query] = field(default_factory=list)


def _known_ops():
    from .queries import QUERY_OPS

    return QUERY_OPS


def parse_scene(text: str, ops=None) -> SceneDocument:
    """Parse and validate a scene file; raises a :class:`~hyperga.errors.ParseError` subclass."""
    ops = _known_ops() if ops is None else ops
    alg = None
    doc = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip("\r")
        if not line.strip():
            continue
        stripped = line.strip()
        lead = len(line) - len(line.lstrip())
        if stripped.lower().startswith("space:"):
            if doc is not None:
                raise MVSyntaxError("duplicate or late 'space:' header", lead, lineno)
            try:
                alg = algebra_for(stripped.split(":", 1)[1])
            except ValueError as exc:
                raise MVSyntaxError(str(exc), lead, lineno) from None
            doc = SceneDocument(alg)
            continue
        if doc is None:
            raise MVSyntaxError("scene must start with 'space: H1|H2|H3'", lead, lineno)
        try:
            if stripped.startswith("?"):
                doc.queries.append(_parse_query(stripped, doc, ops, lineno))
            elif "=" in line:
                name, expr = line.split("=", 1)
                name = name.strip()
                if not _NAME.match(name) or _BLADE.match(name):
                    raise MVSyntaxError(f"invalid binding name {name!r}", lead)
                if name in doc.bindings:
                    raise MVSyntaxError(f"name {name!r} bound twice", lead)
                offset = len(line) - len(expr)
                doc.bindings[name] = parse_mv(expr, alg, doc.bindings, _offset=offset)
                doc.sources[name] = expr.strip()
            else:
                raise MVSyntaxError("expected 'name = expr' or '? op args'", lead)
        except (MVSyntaxError, UnknownGenerator, DuplicateGeneratorInBlade, UnboundName, UnknownQueryOp) as exc:
            if exc.line is None:
                exc.line = lineno
                exc.args = (f"{exc.message} (line {lineno}, col {(exc.position or 0) + 1})",)
            raise
    return doc if doc is not None else SceneDocument(algebra_for("H2"))


def _parse_query(stripped: str, doc: SceneDocument, ops, lineno: int) -> Query:
    words = stripped[1:].split()
    if not words:
        raise MVSyntaxError("empty query", 0)
    op, args = words[0], words[1:]
    if op not in ops:
        raise UnknownQueryOp(f"unknown query op {op!r}", stripped.find(op))
    parsed = []
    for w in args:
        if w in doc.bindings:
            parsed.append(w)
        elif _NAME.match(w):
            raise UnboundName(f"name {w!r} is not bound", stripped.find(w))
        else:
            try:
                parsed.append(float(Fraction(w)))
            except (ValueError, ZeroDivisionError):
                raise MVSyntaxError(f"bad query argument {w!r}", stripped.find(w)) from None
    return Query(op, parsed, lineno, stripped)

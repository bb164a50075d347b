"""Klein-disk figures for H2 scenes and orbits, rendered to SVG or PNG with matplotlib.

Output is deterministic: the SVG id salt is fixed and no date metadata is written.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import algebra as ga  # noqa: E402
from . import geometry as geo  # noqa: E402
from . import motions  # noqa: E402
from .errors import HyperGAError  # noqa: E402


def new_disk(size: float = 5.0):
    fig, ax = plt.subplots(figsize=(size, size))
    t = np.linspace(0.0, 2 * math.pi, 361)
    ax.plot(np.cos(t), np.sin(t), "k--", lw=0.8)
    ax.set_aspect("equal")
    ax.set_xlim(-1.1, 1.1)
    ax.set_ylim(-1.1, 1.1)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    return fig, ax


def draw_point(ax, p: ga.Multivector, label: str | None = None, **kw) -> None:
    cp = geo.chart(p)
    ax.plot([cp.coords[0]], [cp.coords[1]], "o", ms=4, **kw)
    if label:
        ax.annotate(label, cp.coords, textcoords="offset points", xytext=(4, 4))


def draw_line(ax, line: ga.Multivector, label: str | None = None, **kw) -> None:
    """Chord of a proper (or null) H2 line between its null points."""
    n1, n2 = geo.null_points(line)
    c1, c2 = geo.chart(n1).coords, geo.chart(n2).coords
    ax.plot([c1[0], c2[0]], [c1[1], c2[1]], **({"lw": 1.0} | kw))
    if label:
        ax.annotate(label, ((c1[0] + c2[0]) / 2, (c1[1] + c2[1]) / 2), textcoords="offset points", xytext=(4, -10))


def draw_polyline(ax, xy, **kw) -> None:
    xy = np.asarray(xy, dtype=float)
    if len(xy):
        ax.plot(xy[:, 0], xy[:, 1], **({"lw": 1.0, "ls": ":"} | kw))


def save(fig, path: str | Path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".") or "svg"
    with plt.rc_context({"svg.hashsalt": "hyperga", "svg.fonttype": "none"}):
        meta = {"Date": None} if fmt == "svg" else {}
        fig.savefig(path, format=fmt, metadata=meta)
    plt.close(fig)
    return path


def orbit_figure(polylines, points=None, title: str | None = None):
    fig, ax = new_disk()
    for xy in polylines:
        draw_polyline(ax, xy)
    for p, label in points or ():
        draw_point(ax, p, label)
    if title:
        ax.set_title(title)
    return fig


def _orbit_xy(bv, obj, t0, t1, n):
    traj = motions.sample_trajectory(bv, obj, t0, t1, n, on_vanish="drop")
    return [s.chart.coords for s in traj.samples]


def case_figure(case_id: str, doc):
    """Figure for an H2 reproduction case, or ``None`` where no disk drawing applies."""
    b = doc.bindings
    if case_id == "h2-fig2a-gap":
        from .measure import line_line_gap_h2

        gap = line_line_gap_h2(b["a"], b["b"])
        fig, ax = new_disk()
        draw_line(ax, b["a"], "a")
        draw_line(ax, b["b"], "b")
        draw_line(ax, gap.c, "c", ls="--")
        draw_point(ax, gap.P, "P")
        draw_point(ax, gap.Q, "Q")
        return fig
    if case_id == "h2-fig3a-pointline":
        a, P = b["a"], b["P"]
        fig, ax = new_disk()
        draw_line(ax, a, "a")
        draw_line(ax, ga.inner(a, P), "a.P", ls="--")
        draw_point(ax, P, "P")
        draw_point(ax, geo.polar(a), "aI")
        return fig
    if case_id == "h2-fig4b-translation":
        T, P = b["T"], b["P"]
        fig = orbit_figure([_orbit_xy(T, P, -5, 5, 201)], [(P, "P")])
        ax = fig.axes[0]
        draw_line(ax, ga.undual(ga.normalize(T)), "T I^-1", ls="--")
        return fig
    if case_id == "h2-fig5a-rotation":
        R, P = b["R"], b["P"]
        return orbit_figure([_orbit_xy(R, P, 0, 2 * math.pi, 129)], [(R, "R"), (P, "P")])
    if case_id == "h2-fig5b-nulltrans":
        N, P = b["N"], b["P"]
        xy = [geo.chart(motions.apply(motions.null_translation_h2(N, t), P)).coords
              for t in np.linspace(-10, 10, 201)]
        return orbit_figure([xy], [(P, "P")])
    return None


def render_case(case_id: str, doc, out_dir: str | Path) -> Path | None:
    try:
        fig = case_figure(case_id, doc)
    except HyperGAError:
        return None
    if fig is None:
        return None
    return save(fig, Path(out_dir) / f"{case_id}.svg")

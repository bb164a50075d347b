"""Command-line front end: ``eval``, ``repro`` and ``orbit``.

Exit codes: 0 ok, 1 parse error, 2 evaluation error, 64 usage error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from pathlib import Path

from .algebra import NULL_TOL, algebra_for
from .errors import HyperGAError, ParseError, UnknownCase, WeightVanishes
from .parser import parse_mv, parse_scene, serialize_mv

EXIT_OK, EXIT_PARSE, EXIT_EVAL, EXIT_USAGE = 0, 1, 2, 64
MAX_SAMPLES = 10**6
CONFIG_KEYS = {"tolerance", "out_dir"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_config(path: str | None) -> dict:
    """Read a ``key=value`` file (``#`` comments); unknown keys are a usage error."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        cp.read_string("[hyperga]\n" + text)
    except configparser.Error as exc:
        raise UsageError(f"malformed config {path}: {exc}") from None
    out = dict(cp["hyperga"])
    unknown = set(out) - CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    if "tolerance" in out:
        try:
            out["tolerance"] = float(out["tolerance"])
        except ValueError:
            raise UsageError("config tolerance must be a number") from None
    return out


def _settings(args) -> tuple[float, str | None]:
    cfg = load_config(args.config)
    tol = args.tolerance if args.tolerance is not None else cfg.get("tolerance", NULL_TOL)
    out_dir = getattr(args, "out_dir", None) or cfg.get("out_dir")
    if not tol > 0:
        raise UsageError("tolerance must be positive")
    return tol, out_dir


# ---------------------------------------------------------------------------
# eval


def cmd_eval(args, out, err) -> int:
    from .queries import evaluate_scene

    tol, _ = _settings(args)
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except UnicodeDecodeError:
        err.write(f"parse error: {args.file} is not UTF-8\n")
        return EXIT_PARSE
    try:
        doc = parse_scene(text)
    except ParseError as exc:
        err.write(f"parse error: {type(exc).__name__}: {exc}\n")
        if args.json:
            out.write(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc),
                                            "line": exc.line, "position": exc.position}}) + "\n")
        return EXIT_PARSE
    records = evaluate_scene(doc, tol=tol, oracle=args.oracle)
    failed = [r for r in records if "error" in r]
    if args.json:
        report = {"space": doc.algebra.name, "records": records}
        if args.oracle:
            report["oracle"] = {
                "products": sum(r["diagnostics"].get("oracle_products", 0) for r in records),
                "max_deviation": max((r["diagnostics"].get("oracle_max_deviation", 0.0) for r in records), default=0.0),
            }
        out.write(json.dumps(report, indent=2) + "\n")
    else:
        for r in records:
            if "error" in r:
                out.write(f"{r['query']}\terror\t{r['error']['type']}: {r['error']['message']}\n")
            else:
                cls = f"\t[{r['classification']}]" if r["classification"] else ""
                out.write(f"{r['query']}\t{_plain(r['result'])}{cls}\n")
                if args.oracle:
                    d = r["diagnostics"]
                    out.write(f"  oracle: {d['oracle_products']} products, max deviation {d['oracle_max_deviation']:.3g}\n")
    for r in failed:
        err.write(f"line {r['line']}: {r['error']['type']}: {r['error']['message']}\n")
    return EXIT_EVAL if failed else EXIT_OK


def _plain(value) -> str:
    if isinstance(value, dict) and "mv" in value:
        return value["mv"]
    if isinstance(value, dict):
        return ", ".join(f"{k}={_plain(v)}" for k, v in value.items())
    if isinstance(value, list):
        return "(" + ", ".join(_plain(v) for v in value) + ")"
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ---------------------------------------------------------------------------
# repro

REPRO_COLUMNS = ("case", "quantity", "computed", "expected", "deviation", "tolerance", "provenance", "status")


def cmd_repro(args, out, err) -> int:
    from .repro import CASES, run_cases

    _, out_dir = _settings(args)
    try:
        results = run_cases(args.case)
    except UnknownCase as exc:
        raise UsageError(str(exc.args[0])) from None
    rows = []
    for cid, checks in results.items():
        for c in checks:
            rows.append((cid, c.quantity, c.computed, c.expected, f"{c.deviation:.3g}", f"{c.tol:g}",
                         c.provenance, "PASS" if c.passed else "FAIL"))
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter="\t", lineterminator="\n")
    writer.writerow(REPRO_COLUMNS)
    writer.writerows(rows)
    out.write(buf.getvalue())
    n_fail = sum(r[-1] == "FAIL" for r in rows)
    out.write(f"# {len(rows) - n_fail}/{len(rows)} checks passed across {len(results)} case(s)\n")
    if out_dir:
        from .plotting import render_case

        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        with open(d / "repro.csv", "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REPRO_COLUMNS)
            w.writerows(rows)
        written = [d / "repro.csv"]
        for cid in results:
            fig = render_case(cid, CASES[cid].document(), d)
            if fig is not None:
                written.append(fig)
        err.write("wrote " + ", ".join(str(p) for p in written) + "\n")
    return EXIT_OK if n_fail == 0 else EXIT_EVAL


# ---------------------------------------------------------------------------
# orbit


def _parse_range(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise UsageError(f"--range expects a:b, got {text!r}") from None


def _fmt(x: float) -> str:
    return "%.17g" % (x + 0.0)


def cmd_orbit(args, out, err) -> int:
    from .motions import sample_trajectory

    tol, out_dir = _settings(args)
    t0, t1 = _parse_range(args.range)
    if not 1 <= args.n <= MAX_SAMPLES:
        raise UsageError(f"--n must be between 1 and {MAX_SAMPLES}")
    alg = algebra_for(args.space)
    if args.format == "svg" and alg.dim != 2:
        raise UsageError("SVG output is available for H2 orbits only; use csv or json")
    try:
        gen = parse_mv(args.generator, alg)
        obj = parse_mv(args.object, alg)
    except ParseError as exc:
        err.write(f"parse error: {type(exc).__name__}: {exc}\n")
        return EXIT_PARSE
    try:
        traj = sample_trajectory(gen, obj, t0, t1, args.n, on_vanish="drop")
    except (HyperGAError, ValueError) as exc:
        err.write(f"evaluation error: {type(exc).__name__}: {exc}\n")
        return EXIT_EVAL
    if traj.dropped:
        err.write(f"warning: {traj.dropped} sample(s) dropped ({WeightVanishes.__name__})\n")
    if traj.samples and traj.samples[0].chart is None:
        err.write("evaluation error: GradeError: orbits are charted for points only\n")
        return EXIT_EVAL

    axes = ("x", "y", "z")[: alg.dim]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("t", *axes, "weight"))
        for s in traj.samples:
            w.writerow((_fmt(s.t), *(_fmt(c) for c in s.chart.coords), _fmt(s.chart.weight)))
        payload = buf.getvalue()
    elif args.format == "json":
        payload = json.dumps({
            "space": alg.name,
            "generator": serialize_mv(gen),
            "object": serialize_mv(obj),
            "range": [t0, t1],
            "dropped": traj.dropped,
            "samples": [{"t": s.t, "coords": list(s.chart.coords), "weight": s.chart.weight,
                         "mv": serialize_mv(s.obj)} for s in traj.samples],
        }, indent=1) + "\n"
    else:
        from .plotting import orbit_figure, save

        if not args.out:
            raise UsageError("--format svg needs --out")
        fig = orbit_figure([[s.chart.coords for s in traj.samples]])
        save(fig, _out_path(args.out, out_dir))
        return EXIT_OK
    if args.out:
        _out_path(args.out, out_dir).write_text(payload, encoding="utf-8")
    else:
        out.write(payload)
    return EXIT_OK


def _out_path(path: str, out_dir: str | None) -> Path:
    p = Path(path)
    if out_dir and not p.is_absolute():
        p = Path(out_dir) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file (tolerance, out_dir); flags take precedence")
    common.add_argument("--tolerance", type=float, help="relative null band for classification")

    p = _Parser(prog="hyperga", description="Hyperbolic geometry in Cl(d,1): scene evaluation, "
                "worked-example reproduction and orbit sampling.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate the queries of a scene file")
    e.add_argument("file")
    e.add_argument("--oracle", action="store_true", help="cross-check every product against the matrix oracle")
    e.add_argument("--json", action="store_true", help="emit a JSON report")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser("repro", parents=[common], help="reproduce a worked example (or 'all')")
    r.add_argument("case")
    r.add_argument("--out", dest="out_dir", help="directory for repro.csv and figures")
    r.set_defaults(func=cmd_repro)

    o = sub.add_parser("orbit", parents=[common], help="sample the orbit of a point under exp(-t B / 2)",
                       epilog="Values starting with '-' need the = form, e.g. --range=-20:20.")
    o.add_argument("--space", required=True, choices=("H1", "H2", "H3"))
    o.add_argument("--generator", required=True, help="bivector literal B")
    o.add_argument("--object", required=True, help="point literal")
    o.add_argument("--range", required=True, help="parameter range a:b")
    o.add_argument("--n", type=int, default=100)
    o.add_argument("--format", choices=("csv", "svg", "json"), default="csv")
    o.add_argument("--out", help="output file (stdout if omitted for csv/json)")
    o.set_defaults(func=cmd_orbit)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"hyperga: error: {exc}\n")
        return EXIT_USAGE


def main_exit() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()

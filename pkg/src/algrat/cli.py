"""Command line front end: ``algrat <subcommand> [options]``.

Exit codes: 0 on success, 1 when a computation raises an
:class:`~algrat.errors.AlgratError` (the message names the error class), 2 on
usage errors and on refusing to overwrite an existing output file.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field

from . import experiments as ex
from .algfun import parse_defining, parse_initial, parse_rational, standard_initial
from .errors import AlgratError
from .loci import DEFAULT_GAP_TOL, DEFAULT_MAX_DEPTH, DEFAULT_SIGMA_TOL, LocusSet, compute_loci
from .numcore import exact, poly_roots
from .output import (locus_rows, loci_svg, point_row, pole_rows, rows_to_csv, to_json,
                     write_text, zero_rows)
from .poles import cauchy_reconstruct, classify_poles, poles_and_residues, spurious_count
from .recursion import eval_ratio, generate_exact, ratio_function
from .spectrum import DEFAULT_TOL, fitted_rate, limit_g, spectral_numbers

COMMANDS = ("approx", "ratio", "loci", "poles", "slowgrowth", "rate", "threeconj",
            "figure1", "figure3")
# options whose values may start with '-' (negative numbers)
_SIGNED = ("--window", "--z", "--C")


@dataclass
class Result:
    """What a subcommand produced: text for the terminal plus file payloads."""

    summary: dict
    lines: list = field(default_factory=list)
    rows: list | None = None
    svg: str | None = None
    ok: bool = True


class UsageError(Exception):
    pass


def _floats(text: str, count: int, name: str):
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"{name} expects {count} comma-separated numbers") from None
    if len(vals) != count:
        raise UsageError(f"{name} expects {count} comma-separated numbers")
    return vals


def _point(text: str):
    """A constant such as ``6``, ``-1/2`` or ``1+2*I``, kept exact."""
    r = parse_rational(text)
    if r.num.degree > 0 or r.den.degree > 0:
        raise UsageError(f"--z must be a constant, got {text!r}")
    return r(exact(0))


def _complex_text(z) -> str:
    z = complex(z)
    return f"{z.real + 0.0:.15g}{z.imag + 0.0:+.15g}i"


def _defn_init(args):
    if not args.eq:
        raise UsageError("--eq is required")
    defn = parse_defining(args.eq)
    init = parse_initial(args.init) if args.init else standard_initial(defn.k)
    return defn, init


def _window(args):
    return tuple(_floats(args.window, 4, "--window"))


def _grid(args):
    g = _floats(args.grid, 2, "--grid")
    if any(v < 2 or v != int(v) for v in g):
        raise UsageError("--grid expects two integers >= 2")
    return tuple(int(v) for v in g)


def _loci(args, defn, init, trace=True):
    return compute_loci(defn, init, _window(args), _grid(args), args.gap_tol, args.sigma_tol,
                        args.spec_tol, args.max_depth, trace=trace)


# ---------------------------------------------------------------------------
# subcommands


def cmd_approx(args) -> Result:
    defn, init = _defn_init(args)
    if args.z is None:
        raise UsageError("--z is required")
    z = _point(args.z)
    val = eval_ratio(defn, init, z, args.n)
    summary = {"command": "approx", "z": complex(z), "n": args.n, "r_n": val,
               "tolerances": {"iteration": "unit sup-norm rescaling"}}
    return Result(summary, [f"r_{args.n}({_complex_text(z)}) = {_complex_text(val)}"])


def cmd_ratio(args) -> Result:
    defn, init = _defn_init(args)
    seq = generate_exact(defn, init, args.n)
    r = ratio_function(seq, args.n)
    lines = [f"r_{args.n} = {r.to_text()}"]
    summary = {"command": "ratio", "n": args.n, "numerator_degree": r.num.degree,
               "denominator_degree": r.den.degree, "r_n": r.to_text(), "tolerances": {"exact": True}}
    if args.z is not None:
        z = _point(args.z)
        v = r(z)
        lines.append(f"r_{args.n}({_complex_text(z)}) = {_complex_text(v)}")
        summary["value"] = complex(v)
    return Result(summary, lines)


def cmd_loci(args) -> Result:
    defn, init = _defn_init(args)
    loci = _loci(args, defn, init)
    summary = {
        "command": "loci", "window": _window(args), "grid": _grid(args),
        "sigma_count": loci.sigma_cardinality, "sigma": [z for z, _ in loci.sigma],
        "xi_segments": len(loci.xi_segments), "xi_isolated": len(loci.xi_isolated),
        "branching_points": loci.delta_T, "pole_locus": loci.upsilon,
        "slow_growth_candidates": len(loci.candidates_S),
        "tolerances": dict(loci.tolerances),
    }
    lines = [f"sigma count: {loci.sigma_cardinality}",
             f"xi segments: {len(loci.xi_segments)}",
             f"branching points: {len(loci.delta_T)}",
             f"pole locus points: {len(loci.upsilon)}"]
    return Result(summary, lines, locus_rows(loci), loci_svg(loci, _window(args), title="loci"))


def cmd_poles(args) -> Result:
    defn, init = _defn_init(args)
    seq = generate_exact(defn, init, args.n)
    rep = poles_and_residues(ratio_function(seq, args.n), args.n)
    loci = _loci(args, defn, init)
    rep = classify_poles(rep, loci, args.eps)
    resid = cauchy_reconstruct(rep)
    counts = {}
    for p in rep.poles:
        counts[p.cls.value] = counts.get(p.cls.value, 0) + p.order
    summary = {"command": "poles", "n": args.n, "total_order": rep.total_order,
               "classes": dict(sorted(counts.items())), "spurious_count": spurious_count(rep),
               "reconstruction_residual": resid,
               "tolerances": {**loci.tolerances, "eps": rep.eps}}
    lines = [f"poles of r_{args.n}: {rep.total_order} (with multiplicity)"]
    lines += [f"  {k}: {v}" for k, v in sorted(counts.items())]
    lines.append(f"reconstruction residual: {resid:.3g}")
    rows = pole_rows(rep) + locus_rows(loci)
    return Result(summary, lines, rows, loci_svg(loci, _window(args), rep, title=f"poles of r_{args.n}"))


def cmd_slowgrowth(args) -> Result:
    defn, init = _defn_init(args)
    loci = _loci(args, defn, init, trace=False)
    lines = [f"S = {loci.S_poly.to_text() if loci.S_poly is not None else '1'}",
             f"sigma count: {loci.sigma_cardinality}"]
    lines += [f"  sigma: {_complex_text(s.z)} mult {s.mult} (value {s.value:.3g})"
              for s in loci.sigma_details]
    lines += [f"  rejected: {_complex_text(z)} mult {m} ({why})" for z, m, why in loci.sigma_rejected]
    summary = {"command": "slowgrowth", "S": loci.S_poly.to_text() if loci.S_poly is not None else "1",
               "sigma": [(s.z, s.mult) for s in loci.sigma_details],
               "rejected": [(z, m, why) for z, m, why in loci.sigma_rejected],
               "sigma_count": loci.sigma_cardinality, "tolerances": dict(loci.tolerances)}
    if args.z is not None:
        g = limit_g(defn, init, _point(args.z), args.spec_tol)
        lines.append(f"g({args.z}) = {_complex_text(g)}")
        summary["g"] = g
    rows = [r for r in locus_rows(loci) if r[0] in ("S", "sigma", "upsilon", "delta_T")]
    return Result(summary, lines, rows)


def cmd_rate(args) -> Result:
    defn, init = _defn_init(args)
    if args.z is None:
        raise UsageError("--z is required")
    z = _point(args.z)
    rep = spectral_numbers(defn, z, args.spec_tol)
    lines = [f"class: {rep.kind.value}"]
    lines += [f"  tau = {_complex_text(t)} (mult {m}, |tau| = {abs(t):.15g})" for t, m in rep.taus]
    summary = {"command": "rate", "z": complex(z), "class": rep.kind.value, "taus": list(rep.taus),
               "theoretical_rate": rep.theoretical_rate, "tolerances": {"spectrum_tol": args.spec_tol}}
    if rep.is_dominant:
        fit = fitted_rate(defn, init, z, args.n_lo, args.n, args.spec_tol)
        lines.append(f"theoretical rate: {rep.theoretical_rate:.15g}")
        lines.append(f"fitted rate over n in [{args.n_lo}, {args.n}]: {fit.rate:.15g}")
        summary.update(fitted_rate=fit.rate, bound_constant=fit.bound_constant, n_range=[args.n_lo, args.n])
    return Result(summary, lines)


def cmd_threeconj(args) -> Result:
    if args.C is None:
        raise UsageError("--C is required")
    C = float(args.C) if re.fullmatch(r"[-+0-9.eE]+", args.C) else None
    if C is None:
        raise UsageError("--C expects a real number")
    if C == int(C):
        C = int(C)
    checks = args.check or ["all"]
    if "all" in checks:
        checks = ["real-zeros", "interlacing", "discriminant", "degenerate"]
    n = args.n
    summary = {"command": "threeconj", "C": C, "n": n, "regime": ex.regime(C),
               "branch_points": ex.branching_points(C),
               "discriminant_value": str(ex.discriminant_formula(C)),
               "checks": {}, "tolerances": {"real_tol": ex.REAL_TOL}}
    lines = [f"C = {C} (regime {ex.regime(C)})",
             "branching points: " + ", ".join(_complex_text(z) for z in ex.branching_points(C))]
    ok = True
    zeros = []
    if "real-zeros" in checks:
        all_real, wit = ex.real_zero_check(C, n)
        summary["checks"]["real_zeros"] = {"all_real": all_real, "nonreal": len(wit)}
        lines.append(f"all_real={str(all_real).lower()} (nonreal zeros: {len(wit)})")
        p = ex.three_term_sequence(C, n)[n]
        zeros = sorted((z for z, m in poly_roots(p, precise=True) for _ in range(m)),
                       key=lambda z: (z.real, z.imag))
    if "interlacing" in checks:
        inter = ex.real_interlacing(C, n - 1) if ex.real_zero_check(C, n)[0] else False
        summary["checks"]["interlacing"] = {"ok": inter, "label": "EXPERIMENTAL",
                                            "pair": [n - 1, n]}
        lines.append(f"interlacing p_{n - 1}, p_{n}: {str(inter).lower()} [EXPERIMENTAL]")
    if "discriminant" in checks:
        holds, const = ex.branching_discriminant_identity()
        summary["checks"]["discriminant"] = {"holds": holds, "constant": str(const)}
        lines.append(f"discriminant identity: {str(holds).lower()} (constant {const})")
        ok &= holds
    if "degenerate" in checks:
        pts = ex.degenerate_points()
        summary["checks"]["degenerate"] = [{"C": d.C, "z": d.z, "tau": d.tau} for d in pts]
        lines.append("degenerate C: " + ", ".join(f"{d.C:.12g} (z={_complex_text(d.z)}, tau={_complex_text(d.tau)})"
                                                  for d in pts))
    rows = zero_rows(zeros, "zero", n) + [point_row("delta_T", z) for z in ex.branching_points(C)]
    return Result(summary, lines, rows, ok=ok)


def cmd_figure1(args) -> Result:
    window = _window(args) if args.window_given else (-5, 3, -4.5, 3.5)
    run = ex.reproduce_figure1(args.triple, args.n, window, _grid(args))
    lines = [f"triple: {args.triple}", f"sigma count: {run.loci.sigma_cardinality}",
             f"spurious poles of r_{args.n}: {run.summary['spurious_count']}",
             "pole classes: " + ", ".join(f"{k}={v}" for k, v in run.summary["pole_classes"].items())]
    summary = {"command": "figure1", **run.summary,
               "tolerances": {**run.loci.tolerances, "eps": run.report.eps}}
    rows = pole_rows(run.report) + locus_rows(run.loci)
    svg = loci_svg(run.loci, window, run.report, title=f"r_{args.n}, {args.triple} triple")
    return Result(summary, lines, rows, svg)


def cmd_figure3(args) -> Result:
    window = _window(args) if args.window_given else (-5, 5, -5, 5)
    params = (args.projection_radius, args.exclusion_radius)
    defn, init, trace, res, zeros = ex.reproduce_figure3(args.n, window, _grid(args), params)
    n = args.n
    ok_text = "indeterminate" if res.ok is None else str(res.ok).lower()
    lines = [f"interlacing of zeros of p_{n}, p_{n + 1} along Xi: {ok_text} [EXPERIMENTAL]",
             f"segments checked: {res.segments_checked}, projected zeros: {res.projected}"]
    summary = {"command": "figure3", "n": n, "interlacing": res.ok, "label": res.label,
               "per_segment": res.per_segment, "xi_segments": len(trace.segments),
               "tolerances": {"projection_radius": params[0], "exclusion_radius": params[1],
                              "gap_tol": args.gap_tol, "max_depth": args.max_depth}}
    shell = LocusSet(trace.segments, trace.isolated, [], [], [], [], trace=trace)
    rows = zero_rows(zeros[n], "zero", n) + zero_rows(zeros[n + 1], "zero", n + 1) + locus_rows(shell)
    svg = loci_svg(shell, window, zeros=[zeros[n], zeros[n + 1]], title=f"zeros of p_{n}, p_{n + 1}")
    return Result(summary, lines, rows, svg)


HANDLERS = {name: globals()["cmd_" + name] for name in COMMANDS}


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="algrat", description=(
        "Ratio asymptotics of sequences generated by algebraic functions."))
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eq", help="defining equation, e.g. 'y^2 - y - z'")
    common.add_argument("--init", help="comma-separated initial entries q_0, ..., q_{k-1}")
    common.add_argument("--z", help="evaluation point, e.g. 6 or 1+2*I")
    common.add_argument("--window", default="-3,3,-3,3", help="xmin,xmax,ymin,ymax")
    common.add_argument("--grid", default="256,256", help="nx,ny")
    common.add_argument("--gap-tol", type=float, default=DEFAULT_GAP_TOL)
    common.add_argument("--sigma-tol", type=float, default=DEFAULT_SIGMA_TOL)
    common.add_argument("--spec-tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    common.add_argument("--eps", type=float, default=None, help="pole classification radius")
    common.add_argument("--out", help="directory for CSV/SVG/JSON files")
    common.add_argument("--force", action="store_true", help="overwrite existing files")
    common.add_argument("--json", action="store_true", help="print the JSON summary")
    common.add_argument("--format", choices=("csv", "json", "svg"),
                        help="print this format to stdout instead of text")
    helps = {
        "approx": "numeric r_n(z)", "ratio": "exact r_n", "loci": "all loci",
        "poles": "poles of r_n with classification", "slowgrowth": "slow-growth set",
        "rate": "spectral numbers and convergence rate at z",
        "threeconj": "checks for the four-term family p_n = z p_{n-1} - C p_{n-2} - p_{n-3}",
        "figure1": "pole overlay for the cubic example", "figure3": "zero interlacing example",
    }
    default_n = {"approx": 40, "ratio": 10, "poles": 31, "rate": 40, "threeconj": 41,
                 "figure1": 31, "figure3": 40}
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        p.add_argument("--n", type=int, default=default_n.get(name, 31))
        if name == "rate":
            p.add_argument("--n-lo", type=int, default=10)
        if name == "threeconj":
            p.add_argument("--C")
            p.add_argument("--check", action="append",
                           choices=("real-zeros", "interlacing", "discriminant", "degenerate", "all"))
        if name == "figure1":
            p.add_argument("--triple", choices=sorted(ex.FIG1_TRIPLES), default="paper")
        if name == "figure3":
            p.add_argument("--projection-radius", type=float, default=0.15)
            p.add_argument("--exclusion-radius", type=float, default=0.1)
    return parser


def _join_signed(argv):
    """Turn ``--window -3,3,-3,3`` into ``--window=-3,3,-3,3``."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _SIGNED and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def _emit(args, res: Result, out, err) -> int:
    name = args.command
    if args.out:
        write_text(f"{args.out}/{name}.json", to_json(res.summary), args.force)
        if res.rows is not None:
            write_text(f"{args.out}/{name}.csv", rows_to_csv(res.rows), args.force)
        if res.svg is not None:
            write_text(f"{args.out}/{name}.svg", res.svg, args.force)
    if args.format == "csv":
        if res.rows is None:
            raise UsageError(f"{name} has no CSV output")
        out.write(rows_to_csv(res.rows))
    elif args.format == "svg":
        if res.svg is None:
            raise UsageError(f"{name} has no SVG output")
        out.write(res.svg)
    elif args.format == "json" or args.json:
        out.write(to_json(res.summary))
    else:
        for line in res.lines:
            out.write(line + "\n")
    return 0 if res.ok else 1


def run(argv=None, out=None, err=None) -> int:
    """Run one subcommand and return its exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = _join_signed(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.window_given = any(a == "--window" or a.startswith("--window=") for a in argv)
    try:
        res = HANDLERS[args.command](args)
        return _emit(args, res, out, err)
    except UsageError as exc:
        err.write(f"algrat {args.command}: usage error: {exc}\n")
        return 2
    except FileExistsError as exc:
        err.write(f"algrat {args.command}: {exc}\n")
        return 2
    except AlgratError as exc:
        err.write(f"algrat {args.command}: {type(exc).__name__}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "COMMANDS"]

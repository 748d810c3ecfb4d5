"""Command-line driver. Every subcommand prints a JSON report and exits 0 (pass), 1 (fail) or 2 (usage).

Negative numbers passed to ``--a`` need the ``--a=-0.3,0.2`` form.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

import numpy as np

from . import __version__
from .config import DEFAULT_GRID_SIZE, DEFAULT_SEED, DEFAULT_TOLERANCES
from .conjugation import conjugation_matrix, symmetry_residual
from .inner import BlaschkeProduct, InnerSpecError, SingularInner, inner_to_json, parse_inner, parse_measure
from .linalg import RankDecisionError
from .modelspace import build_model_space, reproducing_kernel
from .moebius import crofoot_report
from .sampling import complex_gaussian, random_disc_points, random_operator
from .singular_limits import (build_sequence, pointwise_limit_check, ratio_limit_check, uniform_bound_check,
                              weak_convergence_check)
from .tto import (ModelOperator, build_tto_space, divisor_symmetry_residuals, membership_distance,
                  sarason_residual, theorem_check, tto_from_symbol, zero_submultisets)

CSV_HELP = (
    "lemma5 --csv columns: n, mass, arc_mass, pointwise_max, ratio_max, uniform_stat, weak_norm, "
    "weak_pointwise_max; sarason --csv columns: trial, kind, sarason_residual, membership_distance"
)


class UsageError(Exception):
    pass


def _cx(z) -> dict:
    return {"re": float(np.real(z)), "im": float(np.imag(z))}


def _parse_complex(text: str) -> complex:
    try:
        re, im = (float(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"expected 're,im', got {text!r}") from None
    return complex(re, im)


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc})") from None


def _blaschke_arg(text: str) -> BlaschkeProduct:
    u = parse_inner(_load_json(text, "--u"))
    if not isinstance(u, BlaschkeProduct):
        raise UsageError("--u: this subcommand needs a Blaschke product")
    return u


def _tolerances(args):
    tol = DEFAULT_TOLERANCES
    if args.tol is not None:
        tol = replace(tol, rank=args.tol)
    if args.identity_tol is not None:
        tol = replace(tol, identity=args.identity_tol)
    return tol


def _meta(args, tol) -> dict:
    return {"grid_size": args.grid_size, "seed": args.seed, "tolerances": tol.as_dict(), "version": __version__}


# subcommands -------------------------------------------------------------------

def cmd_basis(args, tol):
    u = _blaschke_arg(args.u)
    space = build_model_space(u, args.grid_size)
    G = space.coordinates(space.samples)
    gram_err = float(np.linalg.norm(G - np.eye(space.dim)))
    z = space.grid.nodes
    us = space.u_samples()
    orth = max(float(np.max(np.abs(space.coordinates(us * z**k)))) for k in range(space.dim))
    rng = np.random.default_rng(args.seed)
    kernel_err = 0.0
    for w in random_disc_points(rng, 5, 0.8):
        f = space.vector(complex_gaussian(rng, space.dim))
        kernel_err = max(kernel_err, abs(f.inner(reproducing_kernel(space, w)) - f(w)))
    passed = gram_err < tol.identity and orth < tol.identity and kernel_err < 1e-9
    return {"u": inner_to_json(u), "dim": space.dim, "gram_error": gram_err,
            "orthogonality_to_uH2": orth, "kernel_reproduction_error": float(kernel_err), "passed": passed}


def _symbol_samples(spec, nodes):
    coeffs = spec.get("coeffs") if isinstance(spec, dict) else None
    if not isinstance(coeffs, list):
        raise UsageError("--symbol: expected {\"coeffs\": [{\"k\": int, \"re\": x, \"im\": y}, ...]}")
    phi = np.zeros(nodes.shape, dtype=complex)
    for i, c in enumerate(coeffs):
        try:
            phi += complex(float(c["re"]), float(c["im"])) * nodes ** int(c["k"])
        except (KeyError, TypeError, ValueError):
            raise UsageError(f"--symbol: coeffs[{i}] needs integer 'k' and numeric 're', 'im'") from None
    return phi


def cmd_tto(args, tol):
    u = _blaschke_arg(args.u)
    space = build_model_space(u, args.grid_size)
    T = build_tto_space(space, tol.rank)
    J = conjugation_matrix(space)
    sar = max(sarason_residual(A) for A in T.span)
    sym = max(symmetry_residual(A.matrix, J) for A in T.span)
    report = {"u": inner_to_json(u), "dim_T": T.dim, "expected_dim": 2 * space.dim - 1,
              "span_sarason_max_residual": sar, "span_symmetry_max_residual": sym}
    passed = T.dim == 2 * space.dim - 1 and sar < tol.sarason and sym < tol.identity
    if args.symbol:
        A = tto_from_symbol(space, _symbol_samples(_load_json(args.symbol, "--symbol"), space.grid.nodes))
        report["matrix"] = [[_cx(x) for x in row] for row in A.matrix]
        report["membership_distance"] = membership_distance(A, T)
        report["sarason_residual"] = sarason_residual(A)
        passed = passed and report["membership_distance"] < tol.membership
    report["passed"] = bool(passed)
    return report


def cmd_sarason(args, tol):
    u = _blaschke_arg(args.u)
    space = build_model_space(u, args.grid_size)
    T = build_tto_space(space, tol.rank)
    rng = np.random.default_rng(args.seed)
    rows = []
    for trial in range(args.random_trials):
        member = T.element(complex_gaussian(rng, T.dim))
        other = ModelOperator(random_operator(rng, space.dim), space)
        for kind, A in (("member", member), ("random", other)):
            rows.append({"trial": trial, "kind": kind, "sarason_residual": sarason_residual(A),
                         "membership_distance": membership_distance(A, T)})
    in_T = [r for r in rows if r["membership_distance"] < tol.membership]
    out_T = [r for r in rows if r["membership_distance"] >= tol.membership]
    agree = all((r["sarason_residual"] < tol.sarason) == (r["membership_distance"] < tol.membership) for r in rows)
    worst_in = max((r["sarason_residual"] for r in in_T), default=0.0)
    best_out = min((r["sarason_residual"] for r in out_T), default=float("inf"))
    gap = best_out / worst_in if worst_in > 0 else float("inf")
    args._csv_rows = rows
    return {"u": inner_to_json(u), "trials": rows, "members": len(in_T), "non_members": len(out_T),
            "classification_agrees": agree, "max_member_residual": worst_in,
            "min_non_member_residual": None if not out_T else best_out,
            "gap": None if not np.isfinite(gap) else gap, "passed": bool(agree and gap >= 1e3)}


def cmd_theorem(args, tol):
    u = _blaschke_arg(args.u)
    space = build_model_space(u, args.grid_size)
    zeros = [_parse_complex(args.a)] if args.a else list(dict.fromkeys(u.zeros))
    reports = []
    for a in zeros:
        try:
            r = theorem_check(space, a, tol)
        except ValueError as exc:
            raise UsageError(f"--a: {exc}") from None
        passed = r.passed(tol)
        if args.degree_check:
            passed = passed and r.dim_S == r.dim_T == 2 * space.dim - 1
        reports.append({"u": inner_to_json(u), "a": _cx(a), "dim_S": r.dim_S, "dim_T": r.dim_T,
                        "projector_distance": r.projector_distance,
                        "sarason_max_residual": r.sarason_max_residual,
                        "tto_symmetry_max_residual": r.symmetry_max_residual,
                        "grid_size": args.grid_size, "seed": args.seed, "passed": bool(passed)})
    if len(reports) == 1:
        return reports[0]
    return {"u": inner_to_json(u), "reports": reports, "passed": all(r["passed"] for r in reports)}


def cmd_divisors(args, tol):
    u = _blaschke_arg(args.u)
    space = build_model_space(u, args.grid_size)
    if args.all:
        if u.degree > 5:
            raise UsageError("--all enumerates divisors only for degree <= 5")
        divisors = zero_submultisets(u)
    elif args.v:
        divisors = [_blaschke_arg(v) for v in args.v]
    else:
        raise UsageError("give --all or at least one --v")
    T = build_tto_space(space, tol.rank)
    A = T.element(complex_gaussian(np.random.default_rng(args.seed), T.dim))
    try:
        results = divisor_symmetry_residuals(A, divisors)
    except ValueError as exc:
        raise UsageError(f"--v: {exc}") from None
    rows = [{"v": inner_to_json(v), "degree": v.degree, "symmetry_residual": r} for v, r in results]
    worst = max(r for _, r in results)
    return {"u": inner_to_json(u), "divisors": rows, "max_residual": worst, "passed": bool(worst < tol.symmetry)}


def cmd_crofoot(args, tol):
    u = _blaschke_arg(args.u)
    a = _parse_complex(args.a)
    if not abs(a) < 1:
        raise UsageError("--a: need |a| < 1")
    r = crofoot_report(build_model_space(u, args.grid_size), a, tol.rank)
    out = {"u": inner_to_json(u), "a": _cx(a), **r.as_dict()}
    out["passed"] = bool(max(r.unitarity, r.intertwining, r.transport) < tol.moebius and r.dim_source == r.dim_target)
    return out


def cmd_lemma5(args, tol):
    nu = parse_measure(_load_json(args.nu, "--nu"))
    try:
        seq = build_sequence(nu, args.eta, args.max_n)
    except ValueError as exc:
        raise UsageError(f"--eta: {exc}") from None
    if args.g_pole:
        p = _parse_complex(args.g_pole)
        g = lambda z: 1 / (1 - np.conj(p) * z)  # noqa: E731
    else:
        g = np.ones_like
    pw = pointwise_limit_check(seq)
    ra = ratio_limit_check(seq)
    ub = uniform_bound_check(seq, nu)
    wk = weak_convergence_check(seq, g, nu, M=args.grid_size)

    def block(rep):
        return {k: v for k, v in vars(rep).items() if not isinstance(v, np.ndarray)}

    args._csv_rows = [
        {"n": int(item.n), "mass": item.mass, "arc_mass": item.arc_mass,
         "pointwise_max": float(pw.errors[i].max()), "ratio_max": float(ra.errors[i].max()),
         "uniform_stat": float(ub.per_n[i]), "weak_norm": float(wk.norms[i]),
         "weak_pointwise_max": float(wk.pointwise_errors[i].max())}
        for i, item in enumerate(seq)
    ]
    return {"nu": inner_to_json(SingularInner(nu)),
            "eta": args.eta, "max_n": args.max_n, "final_mass": seq[-1].mass,
            "pointwise_limit": block(pw), "ratio_limit": block(ra), "uniform_bound": block(ub),
            "weak_convergence": block(wk),
            "passed": bool(pw.passed and ra.passed and ub.passed and wk.passed)}


COMMANDS = {
    "basis": cmd_basis, "tto": cmd_tto, "sarason": cmd_sarason, "theorem": cmd_theorem,
    "divisors": cmd_divisors, "crofoot": cmd_crofoot, "lemma5": cmd_lemma5,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-size", type=int, default=DEFAULT_GRID_SIZE, help="boundary quadrature nodes (power of 2)")
    common.add_argument("--tol", type=float, default=None, help="rank threshold (default 1e-8)")
    common.add_argument("--identity-tol", type=float, default=None, help="identity tolerance (default 1e-10)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--csv", metavar="PATH", help="per-trial / per-n traces (sarason, lemma5)")

    parser = argparse.ArgumentParser(prog="ttosym", description=__doc__, epilog=CSV_HELP)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="model-space basis diagnostics")
    p.add_argument("--u", required=True)
    p = sub.add_parser("tto", parents=[common], help="space of truncated Toeplitz operators", epilog=CSV_HELP)
    p.add_argument("--u", required=True)
    p.add_argument("--symbol", help='trigonometric polynomial {"coeffs":[{"k":1,"re":1,"im":0}]}')
    p = sub.add_parser("sarason", parents=[common], help="Sarason criterion vs membership oracle", epilog=CSV_HELP)
    p.add_argument("--u", required=True)
    p.add_argument("--random-trials", type=int, default=20)
    p = sub.add_parser("theorem", parents=[common], help="two-symmetry characterization check")
    p.add_argument("--u", required=True)
    p.add_argument("--a", help="distinguished zero 're,im' (default: every zero)")
    p.add_argument("--degree-check", action="store_true", help="also require dimensions 2n-1")
    p = sub.add_parser("divisors", parents=[common], help="divisor compressions of a random TTO")
    p.add_argument("--u", required=True)
    p.add_argument("--all", action="store_true", help="every zero sub-multiset (degree <= 5)")
    p.add_argument("--v", action="append", help="divisor as Blaschke JSON; repeatable")
    p = sub.add_parser("crofoot", parents=[common], help="unitary omega_a residuals")
    p.add_argument("--u", required=True)
    p.add_argument("--a", required=True, help="'re,im'")
    p = sub.add_parser("lemma5", parents=[common], help="arc-sequence limit diagnostics", epilog=CSV_HELP)
    p.add_argument("--nu", required=True)
    p.add_argument("--eta", type=float, required=True, help="angle of an atom of nu")
    p.add_argument("--max-n", type=int, default=400)
    p.add_argument("--g-pole", help="use g(z) = 1/(1 - conj(p) z) with p 're,im' (default g = 1)")
    return parser


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if np.isfinite(x) else str(x)
    return obj


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    args._csv_rows = None
    tol = _tolerances(args)
    try:
        if args.grid_size < 1 or args.grid_size & (args.grid_size - 1):
            raise UsageError("--grid-size must be a power of two")
        report = COMMANDS[args.command](args, tol)
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"ttosym {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except RankDecisionError as exc:
        print(f"ttosym {args.command}: {exc}", file=sys.stderr)
        return 1
    report = _sanitize({**report, "meta": _meta(args, tol)})
    text = json.dumps(report, sort_keys=True, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.csv and args._csv_rows:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(args._csv_rows[0]))
            writer.writeheader()
            writer.writerows(args._csv_rows)
    return 0 if report["passed"] else 1

"""Command-line front end.

Subcommands: exponents, solve, transform, stability, audit, verify-theorems.
Human-readable output goes to stdout; data artifacts are written only to
paths given by flags. Every run that writes files appends one record to an
append-only JSONL manifest. Exit codes: 0 success, 1 numeric failure,
2 usage, 3 domain error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import List, Optional

import numpy as np

from . import __version__, acceptance
from .cutoffs import CutoffFamily
from .errors import (
    DomainError,
    PlaplabError,
    RangeError,
    SupportError,
)
from .exponents import (
    ProblemParams,
    classify_regime,
    decay_exponent,
    exponent_report,
)
from .nonlinearity import Nonlinearity
from .profile import (
    RadialProfile,
    read_profile_csv,
    read_profile_sidecar,
    write_profile_csv,
    write_profile_sidecar,
    SCHEMA_VERSION,
)
from .solver import SolverConfig, solve_ivp
from .stability import morse_index_estimate
from .transform import (
    flux_residual_grid,
    pull_back,
    push_forward,
    transformed_problem,
)
from . import estimates

EXIT_NUMERIC = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

_DOMAIN_ERRORS = (DomainError, RangeError, SupportError)


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if hasattr(obj, "value"):  # enums
        return obj.value
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _dump_json(payload: dict, path: Optional[str]) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=_json_default)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _append_manifest(args, outputs: List[str], started: float) -> None:
    if not outputs:
        return
    path = getattr(args, "manifest", None) or "plaplab_manifest.jsonl"
    resolved = {k: v for k, v in vars(args).items() if k != "func"}
    digest = hashlib.sha256(
        json.dumps(resolved, sort_keys=True, default=str).encode()
    ).hexdigest()
    record = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "options": resolved,
        "config_digest": digest,
        "outputs": outputs,
        "wall_time_s": time.time() - started,
        "version": __version__,
    }
    with open(path, "a") as fh:
        fh.write(json.dumps(record, sort_keys=True, default=str) + "\n")


def _params_from(args) -> ProblemParams:
    return ProblemParams(p=args.p, alpha=args.alpha, n=args.n)


def _nonlinearity_from(args, parser) -> Nonlinearity:
    tag = args.nl
    if tag == "gelfand":
        return Nonlinearity.gelfand()
    if tag == "lane-emden":
        if args.q is None:
            parser.error("--nl lane-emden requires --q")
        if args.q == args.p - 1.0:
            parser.error(
                f"--q {args.q} equals p-1: the threshold denominator q-p+1 vanishes"
            )
        return Nonlinearity.lane_emden(args.q)
    if tag == "negative-exponent":
        if args.q is None:
            parser.error("--nl negative-exponent requires --q")
        return Nonlinearity.negative_exponent(args.q)
    parser.error(f"unknown nonlinearity {tag!r}")


def _parse_span(text: str, what: str, parser) -> tuple:
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError:
        parser.error(f"{what} must look like lo:hi, got {text!r}")
    return lo, hi


def _load_profile(args, parser) -> RadialProfile:
    params = _params_from(args)
    return read_profile_csv(args.profile, params)


# --------------------------------------------------------------------------


def cmd_exponents(args, parser) -> int:
    params = _params_from(args)
    if args.q is not None and args.q == args.p - 1.0:
        parser.error(
            f"--q {args.q} equals p-1: the threshold denominator q-p+1 vanishes"
        )
    started = time.time()
    report = exponent_report(params, q=args.q)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "params": {"p": params.p, "alpha": params.alpha, "n": params.n},
        "fractional_dimension": report.fractional_dimension,
        "decay_exponent": report.decay_exponent,
        "gelfand_upper": report.gelfand_upper,
        "q_star": report.q_star,
        "q_sharp": report.q_sharp,
        "q_plus": report.q_plus,
        "q_minus": report.q_minus,
    }
    if args.nl is not None:
        nl = _nonlinearity_from(args, parser)
        regime = classify_regime(params, nl)
        payload["verdict"] = regime.verdict.value
        payload["window"] = [regime.window_lower, regime.window_upper]
        payload["theorem_tag"] = regime.theorem_tag

    outputs = []
    if args.sweep_n:
        try:
            lo, hi, step = (float(v) for v in args.sweep_n.split(":"))
        except ValueError:
            parser.error(f"--sweep-n must look like lo:hi:step, got {args.sweep_n!r}")
        if args.csv is None:
            parser.error("--sweep-n requires --csv for the output table")
        nl = _nonlinearity_from(args, parser) if args.nl else Nonlinearity.gelfand()
        rows = []
        n = lo
        while n <= hi + 1e-12:
            row_params = ProblemParams(params.p, params.alpha, float(n))
            try:
                npa = f"{decay_exponent(row_params):.17g}"
            except PlaplabError:
                npa = "nan"
            try:
                verdict = classify_regime(row_params, nl).verdict.value
            except PlaplabError:
                verdict = "outside-theorems"
            rows.append(f"{n:.17g},{npa},{verdict}")
            n += step
        with open(args.csv, "w") as fh:
            fh.write("n,N_p_alpha,verdict\n")
            fh.write("\n".join(rows) + "\n")
        outputs.append(args.csv)

    _dump_json(payload, args.out)
    if args.out:
        outputs.append(args.out)
    _append_manifest(args, outputs, started)
    return 0


def cmd_solve(args, parser) -> int:
    params = _params_from(args)
    nl = _nonlinearity_from(args, parser)
    started = time.time()
    cfg = SolverConfig(
        r_max=args.rmax,
        r_start=args.rstart,
        rel_tol=args.rtol,
        abs_tol=args.atol,
        series_order=args.series_order,
    )
    profile = solve_ivp(params, nl, a=args.a, config=cfg)
    write_profile_csv(args.out, profile)
    sidecar = args.sidecar or _default_sidecar(args.out)
    write_profile_sidecar(sidecar, profile)
    print(
        f"solved to r={profile.r_max:g} ({len(profile.r)} nodes, "
        f"stop: {profile.meta['stop_reason']}); wrote {args.out}"
    )
    _append_manifest(args, [args.out, sidecar], started)
    return 0


def _default_sidecar(csv_path: str) -> str:
    return (csv_path[:-4] if csv_path.endswith(".csv") else csv_path) + ".json"


def cmd_transform(args, parser) -> int:
    params = _params_from(args)
    started = time.time()
    profile = _load_profile(args, parser)
    if args.nl is not None:
        nl = _nonlinearity_from(args, parser)
    else:
        try:
            side = read_profile_sidecar(_default_sidecar(args.profile))
            desc = side["nonlinearity"]
            args.q = desc.get("q")
            args.nl = desc["tag"]
            nl = _nonlinearity_from(args, parser)
        except (OSError, KeyError):
            parser.error(
                "--nl not given and no readable sidecar next to the profile"
            )
    if args.direction == "push":
        moved = push_forward(profile, params)
        tp = transformed_problem(params)
        resid_nl = nl.scaled(tp.scale)
        target = tp.target
    else:
        moved = pull_back(profile, params)
        resid_nl = nl
        target = params
    write_profile_csv(args.out, moved)
    moved_sidecar = _default_sidecar(args.out)
    write_profile_sidecar(moved_sidecar, moved)
    _, resid = flux_residual_grid(moved, resid_nl)
    report = {
        "schema_version": SCHEMA_VERSION,
        "direction": args.direction,
        "source": {"p": params.p, "alpha": params.alpha, "n": params.n},
        "target": {"p": target.p, "alpha": target.alpha, "n": target.n},
        "scale": transformed_problem(params).scale,
        "max_residual": float(resid.max()),
    }
    _dump_json(report, args.report)
    outputs = [args.out, moved_sidecar] + ([args.report] if args.report else [])
    _append_manifest(args, outputs, started)
    return 0


def cmd_stability(args, parser) -> int:
    nl = _nonlinearity_from(args, parser)
    started = time.time()
    profile = _load_profile(args, parser)
    interval = _parse_span(args.interval, "--interval", parser)
    report = morse_index_estimate(profile, nl, interval, args.grid)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "interval": list(report.interval),
        "grid_size": report.grid_size,
        "eigenvalues": report.eigenvalues,
        "negative_count": report.negative_count,
        "min_rayleigh": report.min_rayleigh,
        "regularization": report.regularization,
    }
    _dump_json(payload, args.out)
    outputs = [args.out] if args.out else []
    if args.eigs_csv:
        with open(args.eigs_csv, "w") as fh:
            fh.write("index,eigenvalue\n")
            for i, v in enumerate(report.eigenvalues):
                fh.write(f"{i},{v:.17g}\n")
        outputs.append(args.eigs_csv)
    _append_manifest(args, outputs, started)
    return 0


def _audit_to_payload(aud: estimates.EstimateAudit) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "name": aud.name,
        "lhs": aud.lhs,
        "rhs": aud.rhs,
        "constant_used": aud.constant_used,
        "params_t": aud.params_t,
        "satisfied": aud.satisfied,
        "slope_fit": aud.slope_fit,
        "details": aud.details,
    }


def _cut_from(args, parser) -> CutoffFamily:
    if args.R is None:
        parser.error("this audit needs --R")
    if args.R0 is not None:
        return CutoffFamily.annulus(args.R, args.R0, m=args.m)
    return CutoffFamily.ball(args.R, m=args.m)


def cmd_audit(args, parser) -> int:
    started = time.time()
    profile = _load_profile(args, parser)
    sweep = None
    if args.sweep:
        sweep = tuple(float(v) for v in args.sweep.split(","))

    lemma = args.lemma
    if lemma == "3.1":
        if args.s is None or args.S is None:
            parser.error("audit 3.1 needs --s and --S")
        target = profile if profile.params.alpha == 0.0 else push_forward(profile)
        aud = estimates.inverse_gradient_integral_audit(target, args.s, args.S)
        payload = _audit_to_payload(aud)
    elif lemma == "3.2":
        if args.gamma is None or args.r is None:
            parser.error("audit 3.2 needs --gamma and --r")
        aud = estimates.pointwise_gap_audit(profile, args.gamma, args.r)
        payload = _audit_to_payload(aud)
    elif lemma == "3.4":
        if args.q is None or args.t is None:
            parser.error("audit 3.4 needs --q and --t")
        cut = _cut_from(args, parser)
        aud = estimates.caccioppoli_power_audit(
            profile, args.q, args.t, cut, args.which,
            calibration_R=args.calibrate_at, sweep=sweep,
        )
        payload = _audit_to_payload(aud)
    elif lemma == "3.5":
        if args.t is None:
            parser.error("audit 3.5 needs --t")
        cut = _cut_from(args, parser)
        aud = estimates.gelfand_estimate_audit(
            profile, args.t, cut, args.which,
            calibration_R=args.calibrate_at, sweep=sweep,
        )
        payload = _audit_to_payload(aud)
    elif lemma == "pohozaev":
        if args.q is None or args.R is None:
            parser.error("audit pohozaev needs --q and --R")
        aud = estimates.pohozaev_audit(profile, args.q, args.R, gate=args.gate)
        payload = _audit_to_payload(aud)
    elif lemma == "decay":
        if args.window is None:
            parser.error("audit decay needs --window r1:r2")
        window = _parse_span(args.window, "--window", parser)
        slope, lower = estimates.decay_fit(profile, window, u_inf=args.u_inf)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "name": "decay",
            "fitted_slope": slope,
            "lower_bound": lower,
            "satisfied": slope >= lower - args.fit_tol,
            "window": list(window),
        }
    elif lemma == "remark3.3":
        if args.q is None or args.t is None or args.M is None:
            parser.error("audit remark3.3 needs --q, --t and --M")
        cut = _cut_from(args, parser)
        nl = Nonlinearity.lane_emden(args.q) if args.q > 0 else \
            Nonlinearity.negative_exponent(args.q)
        aud = estimates.strict_weight_comparison(
            profile.params, nl, profile, args.t, cut, args.M
        )
        payload = _audit_to_payload(aud)
    else:  # unreachable behind argparse choices
        parser.error(f"unknown audit {lemma!r}")

    _dump_json(payload, args.out)
    outputs = [args.out] if args.out else []
    if args.sweep_csv and sweep is not None and "details" in payload:
        radii = payload["details"].get("sweep_radii")
        values = payload["details"].get("sweep_rhs")
        if radii:
            with open(args.sweep_csv, "w") as fh:
                fh.write("R,rhs\n")
                for rr, vv in zip(radii, values):
                    fh.write(f"{rr:.17g},{vv:.17g}\n")
            outputs.append(args.sweep_csv)
    _append_manifest(args, outputs, started)
    return 0


def cmd_verify_theorems(args, parser) -> int:
    started = time.time()
    results = acceptance.run_all(only=args.only, jobs=args.jobs)
    if not results:
        parser.error(f"--only {args.only!r} matches no criterion")
    width = max(len(r.key) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.key:<{width}}  ({r.runtime_s:6.2f}s)  {r.description}")
        if not r.passed:
            print(f"      measured: {json.dumps(r.measured, default=_json_default)}")
    all_passed = all(r.passed for r in results)
    print(f"{'all criteria passed' if all_passed else 'FAILURES present'} "
          f"({len(results)} run, {time.time() - started:.1f}s)")
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "all_passed": all_passed,
            "results": [
                {
                    "key": r.key,
                    "description": r.description,
                    "passed": r.passed,
                    "measured": r.measured,
                    "runtime_s": r.runtime_s,
                }
                for r in results
            ],
        }
        _dump_json(payload, args.json)
        _append_manifest(args, [args.json], started)
    return 0 if all_passed else EXIT_NUMERIC


# --------------------------------------------------------------------------


def _add_params(sub, n_required: bool = True):
    sub.add_argument("--p", type=float, required=True, help="p-Laplacian exponent")
    sub.add_argument("--alpha", type=float, required=True, help="weight power")
    sub.add_argument("--n", type=float, required=n_required,
                     help="space dimension (may be fractional)")


def _add_nl(sub, required: bool = False):
    sub.add_argument(
        "--nl", choices=["gelfand", "lane-emden", "negative-exponent"],
        required=required, help="nonlinearity tag",
    )
    sub.add_argument("--q", type=float, default=None, help="power-law exponent")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plaplab",
        description="numerical laboratory for radial stability of weighted "
                    "p-Laplace equations",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("exponents", help="closed-form exponents and regime verdict")
    _add_params(sp)
    _add_nl(sp)
    sp.add_argument("--sweep-n", default=None, help="lo:hi:step sweep over n")
    sp.add_argument("--out", default=None, help="JSON output path (default stdout)")
    sp.add_argument("--csv", default=None, help="CSV path for the n-sweep")
    sp.add_argument("--manifest", default=None)
    sp.set_defaults(func=cmd_exponents)

    sp = subs.add_parser("solve", help="radial shooting solve")
    _add_params(sp)
    _add_nl(sp, required=True)
    sp.add_argument("--a", type=float, required=True, help="center value u(0)")
    sp.add_argument("--rmax", type=float, default=100.0)
    sp.add_argument("--rstart", type=float, default=None)
    sp.add_argument("--rtol", type=float, default=1e-10)
    sp.add_argument("--atol", type=float, default=1e-12)
    sp.add_argument("--series-order", type=int, default=2)
    sp.add_argument("--out", required=True, help="profile CSV path")
    sp.add_argument("--sidecar", default=None, help="JSON sidecar path")
    sp.add_argument("--manifest", default=None)
    sp.set_defaults(func=cmd_solve)

    sp = subs.add_parser("transform", help="de-weighting change of variables")
    _add_params(sp)
    _add_nl(sp)
    sp.add_argument("--profile", required=True, help="input profile CSV")
    sp.add_argument("--direction", choices=["push", "pull"], default="push")
    sp.add_argument("--out", required=True, help="transformed profile CSV")
    sp.add_argument("--report", default=None, help="JSON residual report path")
    sp.add_argument("--manifest", default=None)
    sp.set_defaults(func=cmd_transform)

    sp = subs.add_parser("stability", help="Morse-index lower bound on a truncation")
    _add_params(sp)
    _add_nl(sp, required=True)
    sp.add_argument("--profile", required=True)
    sp.add_argument("--interval", required=True, help="r_a:r_b")
    sp.add_argument("--grid", type=int, default=2000)
    sp.add_argument("--out", default=None, help="SpectralReport JSON path")
    sp.add_argument("--eigs-csv", default=None)
    sp.add_argument("--manifest", default=None)
    sp.set_defaults(func=cmd_stability)

    sp = subs.add_parser("audit", help="estimate and identity audits")
    _add_params(sp)
    sp.add_argument(
        "--lemma", required=True,
        choices=["3.1", "3.2", "3.4", "3.5", "pohozaev", "decay", "remark3.3"],
    )
    sp.add_argument("--profile", required=True)
    sp.add_argument("--s", type=float, default=None)
    sp.add_argument("--S", type=float, default=None)
    sp.add_argument("--gamma", type=float, default=None)
    sp.add_argument("--r", type=float, default=None)
    sp.add_argument("--q", type=float, default=None)
    sp.add_argument("--t", type=float, default=None)
    sp.add_argument("--R", type=float, default=None)
    sp.add_argument("--R0", type=float, default=None)
    sp.add_argument("--m", type=int, default=2, help="cutoff power")
    sp.add_argument("--which", choices=["grad-p", "grad-2"], default="grad-p")
    sp.add_argument("--calibrate-at", type=float, default=None)
    sp.add_argument("--sweep", default=None, help="comma-separated radii")
    sp.add_argument("--gate", type=float, default=1e-4)
    sp.add_argument("--window", default=None, help="r1:r2 for decay fits")
    sp.add_argument("--u-inf", type=float, default=None)
    sp.add_argument("--fit-tol", type=float, default=0.05)
    sp.add_argument("--M", type=float, default=None)
    sp.add_argument("--out", default=None, help="audit JSON path")
    sp.add_argument("--sweep-csv", default=None)
    sp.add_argument("--manifest", default=None)
    sp.set_defaults(func=cmd_audit)

    sp = subs.add_parser("verify-theorems", help="run the acceptance suite")
    sp.add_argument("--only", default=None, help="substring filter on criteria")
    sp.add_argument("--json", default=None, help="machine-readable summary path")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_verify_theorems)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except _DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except PlaplabError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

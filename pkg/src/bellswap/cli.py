"""Command-line surface.

Subcommands:

- decompose: print the double Bell coefficients of the rotated two-singlet
  state, closed form next to the brute-force decomposition.
- verify-qm: sweep random plus special-phase settings and check every exact
  prediction; JSON report on stdout.
- simulate: sample Bell/polarization coincidences to CSV.
- refute: build the two-setting contradiction for a sector and certify it
  unsatisfiable ("--fig2" compiles the same settings for the double Bell
  arrangement instead, which is satisfiable).
- compile: turn an angle-settings file into a constraint-system JSON file.
- solve: decide a constraint-system JSON file and verify the answer.

Exit codes: 0 = checks passed / expected result, 1 = violation or unexpected
result, 2 = usage error.  Angles are radians unless --degrees is given.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .correlations import (
    DEFAULT_ANGLE_TOL,
    classify_zeta,
    perfect_correlation_report,
    rotated_vw_state,
    sample_events,
)
from .lhv import (
    HiddenContext,
    apply_factorization,
    compile_bell_polarization,
    compile_double_bell,
    contradiction_instance,
    contradiction_settings,
)
from .quantum import (
    BELL_ORDER,
    AngleSettings,
    bell_bell_amplitudes_closed_form,
    bell_bell_amplitudes_numeric,
    compute_phases,
)
from .serialize import (
    FORMAT_VERSION,
    dump_constraint_set,
    load_constraint_set,
    solve_result_to_dict,
    write_events_csv,
)
from .solver import SolveStatus, enumerate_solve, gf2_solve, verify_certificate
from .verification import CLOSED_FORM_TOL, run_qm_verification

_METHODS = {"enumerate": enumerate_solve, "gf2": gf2_solve}


def _to_radians(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _angles_from_args(args: argparse.Namespace) -> AngleSettings:
    return AngleSettings(
        _to_radians(args.phi1, args.degrees),
        _to_radians(args.phi2, args.degrees),
        _to_radians(args.phi3, args.degrees),
        _to_radians(args.phi4, args.degrees),
    )


def _print_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


def _print_bell_matrix(title: str, matrix: np.ndarray) -> None:
    print(title)
    print("          " + "".join(f"{b.value:>10}" for b in BELL_ORDER))
    for i, bell in enumerate(BELL_ORDER):
        cells = "".join(f"{matrix[i, j].real:>10.6f}" for j in range(4))
        print(f"  {bell.value:<8}{cells}")


def cmd_decompose(args: argparse.Namespace) -> int:
    angles = _angles_from_args(args)
    phases = compute_phases(angles)
    closed = bell_bell_amplitudes_closed_form(angles)
    numeric = bell_bell_amplitudes_numeric(rotated_vw_state(angles))
    deviation = float(np.max(np.abs(closed.coeffs - numeric.coeffs)))
    correlations = perfect_correlation_report(angles, tol=args.tol)
    if args.json:
        _print_json(
            {
                "format_version": FORMAT_VERSION,
                "command": "decompose",
                "angles": list(angles.as_tuple()),
                "xi": phases.xi,
                "eta": phases.eta,
                "closed_form": closed.coeffs.real.tolist(),
                "numeric": numeric.coeffs.real.tolist(),
                "max_abs_deviation": deviation,
                "joint_bell_probabilities": numeric.probabilities().tolist(),
                "perfect_correlations": correlations.to_dict(),
            }
        )
    else:
        print(f"angles (rad): {angles.as_tuple()}")
        print(f"xi  = {phases.xi!r}")
        print(f"eta = {phases.eta!r}")
        _print_bell_matrix("closed-form coefficients (rows bc, cols ad):", closed.coeffs)
        _print_bell_matrix("numeric coefficients:", numeric.coeffs)
        print(f"max |closed - numeric| = {deviation:.3e}")
        _print_bell_matrix("joint Bell probabilities:", numeric.probabilities().astype(complex))
        for sector in correlations.sectors:
            if sector.predicted_product is None:
                verdict = "no perfect correlation at this setting"
            else:
                verdict = (
                    f"product a*F*d = {sector.predicted_product:+d} with certainty"
                    f" (residual {sector.violation_probability:.1e})"
                )
            print(f"sector kappa={sector.kappa:+d}: zeta = {sector.zeta!r}: {verdict}")
    return 0 if deviation < CLOSED_FORM_TOL else 1


def cmd_verify_qm(args: argparse.Namespace) -> int:
    report = run_qm_verification(grid=args.grid, tol=args.tol, seed=args.seed)
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text + "\n")
    print(text)
    return 0 if report["passed"] else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    angles = _angles_from_args(args)
    events = sample_events(angles, args.events, args.seed)
    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        write_events_csv(fp, events)
    violations = 0
    predicted = {
        kappa: classify_zeta(angles, kappa, args.tol).predicted_product for kappa in (+1, -1)
    }
    for event in events:
        expected = predicted[event.kappa]
        if expected is not None and event.product != expected:
            violations += 1
    print(f"wrote {len(events)} events to {args.out}; sector-product violations: {violations}")
    return 0 if violations == 0 else 1


def cmd_refute(args: argparse.Namespace) -> int:
    alpha = _to_radians(args.alpha, args.degrees)
    beta = _to_radians(args.beta, args.degrees)
    if args.fig2:
        settings = list(contradiction_settings(alpha, beta, args.kappa))
        context = HiddenContext(kappa=args.kappa, label="double-bell variant")
        cs = compile_double_bell(settings, context)
        expected = SolveStatus.SAT
        arrangement = "double-bell"
    else:
        cs = contradiction_instance(alpha, beta, args.kappa)
        expected = SolveStatus.UNSAT
        arrangement = "bell-polarization-factored"
    result = _METHODS[args.method](cs)
    verified = verify_certificate(cs, result)
    doc = {
        "format_version": FORMAT_VERSION,
        "command": "refute",
        "alpha": alpha,
        "beta": beta,
        "kappa": args.kappa,
        "arrangement": arrangement,
        "method": args.method,
    }
    doc.update(solve_result_to_dict(cs, result, verified))
    _print_json(doc)
    return 0 if (result.status is expected and verified) else 1


def _load_settings_file(path: str, degrees: bool) -> list[AngleSettings]:
    with open(path, "r", encoding="utf-8") as fp:
        doc = json.load(fp)
    raw = doc["settings"] if isinstance(doc, dict) else doc
    settings = []
    for entry in raw:
        values = [float(x) for x in entry]
        if len(values) != 4:
            raise ValueError(f"each setting needs 4 angles, got {entry!r}")
        if degrees:
            values = [math.radians(v) for v in values]
        settings.append(AngleSettings(*values))
    return settings


def cmd_compile(args: argparse.Namespace) -> int:
    try:
        settings = _load_settings_file(args.settings, args.degrees)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot read settings file: {exc}", file=sys.stderr)
        return 2
    context = HiddenContext(kappa=args.kappa, label=args.label)
    if args.fig == 1:
        cs = compile_bell_polarization(settings, context, tol=args.tol)
    else:
        cs = compile_double_bell(settings, context, tol=args.tol)
    if args.factorize:
        cs = apply_factorization(cs)
    with open(args.out, "w", encoding="utf-8") as fp:
        dump_constraint_set(cs, fp)
    print(
        f"compiled {len(settings)} settings (fig {args.fig}, kappa {args.kappa:+d})"
        f" -> {cs.n_variables} variables, {len(cs.constraints)} constraints: {args.out}"
    )
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        with open(args.infile, "r", encoding="utf-8") as fp:
            cs = load_constraint_set(fp)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot read constraint file: {exc}", file=sys.stderr)
        return 2
    result = _METHODS[args.method](cs)
    verified = verify_certificate(cs, result)
    doc = {
        "format_version": FORMAT_VERSION,
        "command": "solve",
        "method": args.method,
        "context": {"kappa": cs.context.kappa, "label": cs.context.label},
        "n_variables": cs.n_variables,
        "n_constraints": len(cs.constraints),
    }
    doc.update(solve_result_to_dict(cs, result, verified))
    _print_json(doc)
    if not verified:
        return 1
    if args.expect is not None and args.expect != result.status.value:
        return 1
    return 0


def _add_angle_flags(parser: argparse.ArgumentParser) -> None:
    for name in ("phi1", "phi2", "phi3", "phi4"):
        parser.add_argument(f"--{name}", type=float, default=0.0, help=f"rotation angle {name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellswap",
        description="Entanglement-swapping correlation simulator and local-model refuter.",
        epilog="exit codes: 0 ok, 1 violation/unexpected result, 2 usage error",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="double Bell coefficients of the rotated state")
    _add_angle_flags(p)
    p.add_argument("--degrees", action="store_true", help="angles are degrees")
    p.add_argument("--tol", type=float, default=DEFAULT_ANGLE_TOL, help="phase tolerance (rad)")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--table", action="store_true", help="table output (default)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify-qm", help="check all exact predictions over a sweep")
    p.add_argument("--grid", type=_positive_int, default=4, help="random sweep size is grid**4")
    p.add_argument("--tol", type=float, default=DEFAULT_ANGLE_TOL, help="phase tolerance (rad)")
    p.add_argument("--seed", type=int, default=12345, help="sweep RNG seed")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify_qm)

    p = sub.add_parser("simulate", help="sample Bell/polarization events to CSV")
    _add_angle_flags(p)
    p.add_argument("--degrees", action="store_true", help="angles are degrees")
    p.add_argument("--events", type=_nonnegative_int, default=1000, help="number of events")
    p.add_argument("--seed", type=int, default=42, help="sampler seed")
    p.add_argument("--tol", type=float, default=DEFAULT_ANGLE_TOL, help="phase tolerance (rad)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("refute", help="certify the two-setting contradiction")
    p.add_argument("--alpha", type=float, default=0.0, help="base angle for photon a's side")
    p.add_argument("--beta", type=float, default=0.0, help="base angle for photon d's side")
    p.add_argument("--kappa", type=int, choices=(-1, 1), default=1, help="sector parity")
    p.add_argument("--method", choices=sorted(_METHODS), default="enumerate")
    p.add_argument("--degrees", action="store_true", help="angles are degrees")
    p.add_argument(
        "--fig2",
        action="store_true",
        help="compile the double Bell arrangement instead (satisfiable)",
    )
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("compile", help="compile settings into a constraint system")
    p.add_argument("--settings", required=True, help="JSON file with angle settings")
    p.add_argument("--kappa", type=int, choices=(-1, 1), required=True, help="sector parity")
    p.add_argument(
        "--fig",
        type=int,
        choices=(1, 2),
        default=1,
        help="arrangement: 1 = Bell analyzer on (b,c) plus polarizers on a and d,"
        " 2 = Bell analyzers on both pairs",
    )
    p.add_argument("--factorize", action="store_true", help="adjoin F = A*D constraints")
    p.add_argument("--tol", type=float, default=DEFAULT_ANGLE_TOL, help="phase tolerance (rad)")
    p.add_argument("--degrees", action="store_true", help="settings file is in degrees")
    p.add_argument("--label", default="", help="context label")
    p.add_argument("--out", required=True, help="output JSON path")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("solve", help="decide a constraint-system file")
    p.add_argument("--in", dest="infile", required=True, help="constraint-system JSON")
    p.add_argument("--method", choices=sorted(_METHODS), default="enumerate")
    p.add_argument("--expect", choices=("sat", "unsat"), help="fail unless this status")
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

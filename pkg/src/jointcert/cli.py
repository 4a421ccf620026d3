"""Command-line interface.

Subcommands:

 - certify: evaluate a behavior file against an inequality, print the report
   as JSON; exit 0 when not violated, 10 when violated, 2 on bad input.
 - sweep: tabulate the quantum model over a sharpness range as CSV, one row
   per p with correlator averages, statistic, post-selected CHSH/visibility,
   and the certification-gap flags.
 - optimize: run the seeded classical-strategy ascent and write report and
   strategy JSON; byte-identical outputs for identical flags.
 - validate-povm: build the noisy Bell-measurement elements at a given
   sharpness (any float, so invalid ones are constructible) and check them.
 - gen: write a behavior file for one of the built-in families
   (quantum, closed-form, saturation).

The violation verdict from the library is strict; certify applies --tol
(default 1e-9) on top of the bound before choosing its exit code, so
rounding-level excesses are not reported as violations.  The correlator
columns of sweep come from the exact closed form of the quantum model, the
post-selection columns from density-matrix simulation.
"""
import argparse
import csv
import sys

import numpy as np

from .behavior import InvalidBehaviorError, ScenarioShape, load_behavior, save_behavior
from .classical import optimize_classical, saturation_strategy, save_strategy, strategy_to_behavior
from .inequalities import evaluate_chain, evaluate_mn, report_to_json
from .postselect import gap_report
from .quantum import _bsm_elements, closed_form_behavior, quantum_behavior, validate_povm

EXIT_OK = 0
EXIT_VIOLATED = 10
EXIT_INVALID = 2

SWEEP_COLUMNS = (
    "p",
    "component0",
    "component1",
    "statistic",
    "chsh_max",
    "werner_visibility",
    "jointly_nonclassical",
    "postselected_lhv_simulable",
    "gap_witness",
)


def _fail(message):
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INVALID


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return "%.17g" % value


def cmd_certify(args):
    try:
        behavior = load_behavior(args.behavior, strict=True)
    except (OSError, InvalidBehaviorError) as exc:
        return _fail(str(exc))
    mode = args.mode
    if mode is None:
        mode = "mn" if (behavior.shape.n, behavior.shape.k) == (2, 2) else "chain"
    try:
        evaluator = evaluate_mn if mode == "mn" else evaluate_chain
        report = evaluator(behavior)
    except ValueError as exc:
        return _fail(str(exc))
    print(report_to_json(report))
    return EXIT_VIOLATED if report.statistic > report.bound + args.tol else EXIT_OK


def cmd_sweep(args):
    if not 0.0 <= args.pmin <= args.pmax <= 1.0:
        return _fail(f"need 0 <= pmin <= pmax <= 1, got {args.pmin}, {args.pmax}")
    if args.steps < 2:
        return _fail(f"need at least 2 steps, got {args.steps}")
    try:
        fh = open(args.out, "w", newline="")
    except OSError as exc:
        return _fail(str(exc))
    with fh:
        writer = csv.writer(fh)
        writer.writerow(SWEEP_COLUMNS)
        for p in np.linspace(args.pmin, args.pmax, args.steps):
            exact = evaluate_mn(closed_form_behavior(p))
            gap = gap_report(p, tol=args.tol)
            writer.writerow(
                [
                    _fmt(p),
                    _fmt(exact.components[0]),
                    _fmt(exact.components[1]),
                    _fmt(exact.statistic),
                    _fmt(gap.chsh_max),
                    _fmt(gap.werner_visibility),
                    _fmt(gap.jointly_nonclassical),
                    _fmt(gap.postselected_lhv_simulable),
                    _fmt(gap.gap_witness),
                ]
            )
    return EXIT_OK


def cmd_optimize(args):
    try:
        shape = ScenarioShape(args.n, args.k)
        report, strategy = optimize_classical(
            shape,
            hidden_alphabet=args.alphabet,
            restarts=args.restarts,
            seed=args.seed,
            iterations=args.iterations,
        )
    except ValueError as exc:
        return _fail(str(exc))
    text = report_to_json(report)
    print(text)
    if args.report_out:
        with open(args.report_out, "w") as fh:
            fh.write(text + "\n")
    if args.strategy_out:
        save_strategy(strategy, args.strategy_out)
    return EXIT_OK


def cmd_validate_povm(args):
    elements = _bsm_elements(args.p)
    floor = min(np.linalg.eigvalsh(el).min() for el in elements)
    residual = np.abs(sum(elements) - np.eye(4)).max()
    projective = all(np.abs(el @ el - el).max() <= 1e-10 for el in elements)
    problems = validate_povm(elements)
    print("eigenvalue floor: %.17g" % floor)
    print("completeness residual: %.17g" % residual)
    print("projective: %s" % ("true" if projective else "false"))
    print("valid: %s" % ("false" if problems else "true"))
    for item in problems:
        print(f"problem: {item}", file=sys.stderr)
    return EXIT_INVALID if problems else EXIT_OK


def cmd_gen(args):
    try:
        if args.family == "quantum":
            behavior = quantum_behavior(args.p)
        elif args.family == "closed-form":
            behavior = closed_form_behavior(args.p)
        else:
            behavior = strategy_to_behavior(saturation_strategy(args.r))
    except ValueError as exc:
        return _fail(str(exc))
    try:
        save_behavior(behavior, args.out)
    except OSError as exc:
        return _fail(str(exc))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jointcert",
        description="Certify non-classicality of a joint measurement from behavior files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cert = sub.add_parser("certify", help="evaluate a behavior file")
    p_cert.add_argument("behavior", help="path to a behavior JSON file")
    p_cert.add_argument(
        "--mode",
        choices=("mn", "chain"),
        default=None,
        help="statistic to evaluate (default: mn when n=k=2, else chain)",
    )
    p_cert.add_argument("--tol", type=float, default=1e-9, help="violation tolerance")
    p_cert.set_defaults(func=cmd_certify)

    p_sweep = sub.add_parser("sweep", help="tabulate the quantum model over p")
    p_sweep.add_argument("--pmin", type=float, default=0.0)
    p_sweep.add_argument("--pmax", type=float, default=1.0)
    p_sweep.add_argument("--steps", type=int, default=11)
    p_sweep.add_argument("--tol", type=float, default=1e-9, help="violation tolerance")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_opt = sub.add_parser("optimize", help="ascent over classical strategies")
    p_opt.add_argument("--n", type=int, default=2, help="number of parties")
    p_opt.add_argument("--k", type=int, default=2, help="settings per party")
    p_opt.add_argument("--alphabet", type=int, default=2, help="hidden alphabet size")
    p_opt.add_argument("--restarts", type=int, default=20)
    p_opt.add_argument("--seed", type=int, default=0)
    p_opt.add_argument("--iterations", type=int, default=500)
    p_opt.add_argument("--report-out", help="also write the report JSON here")
    p_opt.add_argument("--strategy-out", help="write the best strategy JSON here")
    p_opt.set_defaults(func=cmd_optimize)

    p_val = sub.add_parser("validate-povm", help="check the noisy Bell measurement")
    p_val.add_argument("--p", type=float, required=True, help="sharpness (any float)")
    p_val.set_defaults(func=cmd_validate_povm)

    p_gen = sub.add_parser("gen", help="write a built-in behavior file")
    p_gen.add_argument("family", choices=("quantum", "closed-form", "saturation"))
    p_gen.add_argument("--p", type=float, default=1.0, help="sharpness for the quantum families")
    p_gen.add_argument("--r", type=float, default=0.5, help="parameter for the saturation family")
    p_gen.add_argument("--out", required=True, help="output JSON path")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

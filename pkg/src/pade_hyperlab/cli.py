"""Command-line entry point.

    pade-hyperlab pade solve --spec problem.json --route brute
    pade-hyperlab identities riemann --bracket elliptic --trials 10 --seed 1

Output is JSON on stdout (or ``--out``).  Exit codes: 0 all checks pass,
2 a check failed, 3 degenerate input, 4 malformed spec, bad usage or I/O.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Optional

from . import trials as T
from .errors import CheckFailed, ExactUnsupported, InputError, SingularCoreMinor, SpecError
from .numerics import RATIONAL, complex_field
from .pade import specio
from .pade.bench import bench
from .pade.problem import check_genericity
from .pade.universal import Route
from .pade.verify import crosscheck, solve, verify_solution
from .sampling import BRACKETS, standard_bracket

EXIT_OK = 0
EXIT_CHECK = 2
EXIT_INPUT = 3
EXIT_SPEC = 4

PROG = "pade-hyperlab"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _precision(text: str) -> int:
    value = int(text)
    if value < 53:
        raise argparse.ArgumentTypeError(f"precision must be at least 53 bits, got {text}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be nonnegative, got {text}")
    return value


GLOBAL_DEFAULTS = {
    "scalar": None,
    "precision_bits": 256,
    "rel_tol": None,
    "seed": 0,
    "trials": 10,
    "out": None,
}


def _global_flags(top: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before and after the subcommand; on the
    # leaves they only override when given
    p = argparse.ArgumentParser(add_help=False)
    kw = {} if top else {"default": argparse.SUPPRESS}
    p.add_argument("--scalar", choices=["rational", "complex"], **kw)
    p.add_argument("--precision-bits", type=_precision, **kw)
    p.add_argument("--rel-tol", type=_tolerance, **kw)
    p.add_argument("--seed", type=int, **kw)
    p.add_argument("--trials", type=_positive, **kw)
    p.add_argument("--out", **kw)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=PROG, parents=[_global_flags(True)], description="Pade interpolation and determinant identity checks.")
    parser.set_defaults(**GLOBAL_DEFAULTS)
    leaf = _global_flags(False)
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    pade = groups.add_parser("pade", help="solve and verify interpolation problems")
    pcmd = pade.add_subparsers(dest="command", required=True, parser_class=_Parser)
    routes = [r.value for r in Route]

    p = pcmd.add_parser("solve", parents=[leaf], help="solve a problem by one route")
    p.add_argument("--spec", required=True)
    p.add_argument("--route", choices=routes, default="brute")
    p.add_argument("--no-prefactors", action="store_true", help="return the bare determinant expansion")
    p.set_defaults(handler=cmd_solve)

    p = pcmd.add_parser("verify", parents=[leaf], help="check a solution at every node")
    p.add_argument("--spec", required=True)
    p.add_argument("--solution", required=True)
    p.set_defaults(handler=cmd_verify)

    p = pcmd.add_parser("crosscheck", parents=[leaf], help="compare routes pairwise")
    p.add_argument("--spec", required=True)
    p.add_argument("--routes", default="all", help="'all' or a comma-separated list of routes")
    p.set_defaults(handler=cmd_crosscheck)

    p = pcmd.add_parser("bench", parents=[leaf], help="time brute force against condensation")
    p.add_argument("--m", type=_nonnegative, required=True)
    p.add_argument("--n", type=_nonnegative, required=True)
    p.set_defaults(handler=cmd_bench)

    p = pcmd.add_parser("validate", parents=[leaf], help="check every genericity minor")
    p.add_argument("--spec", required=True)
    p.set_defaults(handler=cmd_validate)

    ident = groups.add_parser("identities", help="random trials of determinant and summation identities")
    icmd = ident.add_subparsers(dest="command", required=True, parser_class=_Parser)
    brackets = list(BRACKETS)

    p = icmd.add_parser("condense", parents=[leaf], help="condensation identities on random matrices")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--r", type=_positive, default=None, help="split; all splits when omitted")
    p.set_defaults(handler=cmd_condense)

    p = icmd.add_parser("saalschutz", parents=[leaf], help="balanced terminating 3F2 sum")
    p.add_argument("--max-n", type=_nonnegative, default=8)
    p.set_defaults(handler=cmd_saalschutz)

    p = icmd.add_parser("frenkel-turaev", parents=[leaf], help="terminating very-well-poised sum")
    p.add_argument("--bracket", choices=brackets, default="rational")
    p.add_argument("--max-n", type=_nonnegative, default=5)
    p.set_defaults(handler=cmd_frenkel_turaev)

    p = icmd.add_parser("riemann", parents=[leaf], help="three-term bracket relation")
    p.add_argument("--bracket", choices=brackets, default="rational")
    p.set_defaults(handler=cmd_riemann)

    p = icmd.add_parser("krattenthaler", parents=[leaf], help="determinant of products of linear ratios")
    p.add_argument("--m", type=_nonnegative, required=True)
    p.set_defaults(handler=cmd_krattenthaler)

    p = icmd.add_parser("warnaar", parents=[leaf], help="determinant of products of bracket ratios")
    p.add_argument("--m", type=_nonnegative, required=True)
    p.add_argument("--bracket", choices=brackets, default="rational")
    p.set_defaults(handler=cmd_warnaar)

    p = icmd.add_parser("abstract", parents=[leaf], help="factorized determinant and tau relation")
    p.add_argument("--m", type=_nonnegative, required=True)
    p.add_argument("--bracket", choices=["linear"] + brackets, default="linear")
    p.set_defaults(handler=cmd_abstract)
    return parser


# helpers


def _field(args, bracket: Optional[str] = None):
    """Rationals unless complex is asked for or the bracket needs it."""
    needs_complex = bracket not in (None, "linear", "rational")
    if args.scalar == "rational" and needs_complex:
        raise ExactUnsupported(f"the {bracket} bracket needs --scalar complex")
    if args.scalar == "complex" or needs_complex:
        return complex_field(args.precision_bits)
    return RATIONAL


def _load_problem(path: str):
    return specio.problem_from_json(specio.load_json(path))


def _emit(args, obj) -> None:
    text = specio.dumps(obj)
    if args.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise SpecError(f"cannot write {args.out}: {exc.strerror}") from None


def _identity_run(args, trial: Callable) -> int:
    results = T.run_trials(trial, args.seed, args.trials)
    records = []
    for i, reports in enumerate(results):
        for rep in reports:
            records.append({"trial": i, **rep.to_json()})
    _emit(args, records)
    return EXIT_OK if all(r["holds"] for r in records) else EXIT_CHECK


# pade commands


def cmd_solve(args) -> int:
    prob = _load_problem(args.spec)
    sol = solve(prob, args.route, with_prefactors=not args.no_prefactors)
    _emit(args, specio.solution_to_json(sol, prob.field))
    return EXIT_OK


def cmd_verify(args) -> int:
    prob = _load_problem(args.spec)
    sol = specio.solution_from_json(specio.load_json(args.solution), prob.field)
    if len(sol.p) != prob.m + 1 or len(sol.q) != prob.n + 1:
        raise SpecError(
            f"solution has {len(sol.p)} + {len(sol.q)} coefficients, the problem needs {prob.m + 1} + {prob.n + 1}"
        )
    report = verify_solution(prob, sol, T.policy_for(prob.field, args.rel_tol), args.seed)
    _emit(args, report.to_json(prob.field))
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_crosscheck(args) -> int:
    prob = _load_problem(args.spec)
    if args.routes == "all":
        routes = None
    else:
        try:
            routes = [Route(r.strip()) for r in args.routes.split(",") if r.strip()]
        except ValueError as exc:
            raise _UsageError(f"{PROG}: {exc}") from None
    report = crosscheck(prob, routes, T.policy_for(prob.field, args.rel_tol), args.seed)
    _emit(args, report.to_json(prob.field))
    return EXIT_OK if report.passed else EXIT_CHECK


def cmd_bench(args) -> int:
    report = bench(args.m, args.n, args.trials, args.seed)
    _emit(args, report)
    return EXIT_OK if report["passed"] else EXIT_CHECK


def cmd_validate(args) -> int:
    prob = _load_problem(args.spec)
    try:
        check_genericity(prob)
    except SingularCoreMinor as exc:
        _emit(args, {"generic": False, "reason": str(exc), "window": list(exc.window or ())})
        return EXIT_CHECK
    _emit(args, {"generic": True, "m": prob.m, "n": prob.n})
    return EXIT_OK


# identity commands


def cmd_condense(args) -> int:
    if args.r is not None and args.r >= args.n:
        raise _UsageError(f"{PROG}: --r must be below --n")
    field = _field(args)
    policy = T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.condense_trial(rng, args.n, args.r, field, policy))


def cmd_saalschutz(args) -> int:
    field = _field(args)
    policy = T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.saalschutz_trial(rng, field, policy, args.max_n))


def cmd_frenkel_turaev(args) -> int:
    field = _field(args, args.bracket)
    kind, policy = standard_bracket(args.bracket), T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.frenkel_turaev_trial(rng, kind, field, policy, args.max_n))


def cmd_riemann(args) -> int:
    field = _field(args, args.bracket)
    kind = standard_bracket(args.bracket)
    bound = None if field.exact else (args.rel_tol if args.rel_tol is not None else T.RIEMANN_REL_BOUND)
    return _identity_run(args, lambda rng: T.riemann_trial(rng, kind, field, bound))


def cmd_krattenthaler(args) -> int:
    field = _field(args)
    policy = T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.krattenthaler_trial(rng, args.m, field, policy))


def cmd_warnaar(args) -> int:
    field = _field(args, args.bracket)
    kind, policy = standard_bracket(args.bracket), T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.warnaar_trial(rng, kind, args.m, field, policy))


def cmd_abstract(args) -> int:
    field = _field(args, args.bracket)
    kind = None if args.bracket == "linear" else standard_bracket(args.bracket)
    policy = T.policy_for(field, args.rel_tol)
    return _identity_run(args, lambda rng: T.abstract_trial(rng, kind, args.m, field, policy))


def run(argv=None) -> int:
    """Parse ``argv``, run the command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_SPEC
    except SpecError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    except CheckFailed as exc:
        print(f"{PROG}: check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except InputError as exc:
        print(f"{PROG}: degenerate input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

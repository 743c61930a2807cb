"""Command-line front end: analyze, solve, verify, pr-polys, special."""

import argparse
import random
import sys

from .critical import critical_family, existence_check
from .errors import (NOT_INVERTIBLE, ConstraintViolation, DerogatoryInput, NotCriticalError,
                     PivotFailure, Unsupported, XaaxError)
from .inverse import (Dim3Params, InverseSpec, SquareParams, dim3_family, reduce_inverse,
                      square_family)
from .io import (dumps, family_to_json, matrix_from_json, matrix_to_json, read_documents,
                 read_params, read_problems)
from .jordan import generalized_eigenspaces, jordan_structure
from .matrix import diag
from .regular import chain_partition, compute_Pr, solve_regular
from .scalar import format_scalar, parse_scalar, scalar_to_json
from .series import log_coeffs
from .verify import verify_direct, verify_inverse, verify_mixed

EXIT_OK, EXIT_INVALID, EXIT_VERIFY, EXIT_SOLVER = 0, 1, 2, 3

# errors that mean "valid input, but the solver cannot or may not proceed"
SOLVER_ERRORS = (ConstraintViolation, PivotFailure, DerogatoryInput, NotCriticalError, Unsupported)


class VerificationFailed(XaaxError):
    def __init__(self, report):
        self.report = report
        super().__init__("instance failed verification: " + ", ".join(
            (["residual"] if not report.residual_zero else []) + report.failed()))


def direct_spec(problem):
    """The direct-equation spec of a problem, or ``NOT_INVERTIBLE``."""
    if problem.mode == "direct":
        return problem.spec.truncated(max(problem.A.n - 1, 1))
    return reduce_inverse(problem.spec, problem.A.n)


def build_family(problem):
    spec = direct_spec(problem)
    if spec is NOT_INVERTIBLE:
        raise Unsupported("f'(0) = 0 in inverse mode: only the closed-form families "
                          "of the 'special' command are available")
    if spec.coeff(1):
        return solve_regular(problem.A, spec, problem.eigenvalues)
    return critical_family(problem.A, spec, problem.eigenvalues)


def check_instance(problem, X):
    if problem.mode == "direct":
        return verify_direct(problem.A, X, problem.spec, problem.eigenvalues)
    return verify_inverse(problem.A, X, problem.spec)


def _yes(flag):
    return "yes" if flag else "no"


def cmd_analyze(problem):
    """Text lines and a JSON document describing the problem."""
    A, eigs = problem.A, problem.eigenvalues
    doc = {"line": problem.line, "mode": problem.mode}
    lines = [f"mode: {problem.mode}"]
    spec = direct_spec(problem)
    if spec is NOT_INVERTIBLE:
        lines.append("case: inverse with f'(0) = 0 (closed-form families only)")
        doc["case"] = "inverse-special"
        return lines, doc
    c1 = spec.coeff(1)
    case = "regular" if c1 else "critical"
    multiset = generalized_eigenspaces(A, eigs).multiset()
    verdict = existence_check(multiset, spec)
    js = jordan_structure(A, eigs)
    lines += [f"alpha: {format_scalar(spec.alpha)}", f"f'(alpha): {format_scalar(c1)}",
              f"case: {case}"]
    if verdict.nontrivial:
        lam, mu = verdict.witness
        lines.append(f"nontrivial: yes, witness ({format_scalar(lam)},{format_scalar(mu)})")
    else:
        lines.append("nontrivial: no")
    lines.append(f"non-derogatory: {_yes(js.non_derogatory)}")
    doc.update({
        "alpha": scalar_to_json(spec.alpha),
        "derivative": scalar_to_json(c1),
        "case": case,
        "nontrivial": verdict.nontrivial,
        "witness": None if not verdict.nontrivial else [scalar_to_json(x) for x in verdict.witness],
        "non_derogatory": js.non_derogatory,
    })
    summary = [case, "non-derogatory" if js.non_derogatory else "derogatory"]
    if c1:
        chains = chain_partition([lam / c1 for lam in multiset])
        text = ", ".join("{" + ", ".join(format_scalar(v * c1) for v in ch.values()) + "}"
                         for ch in chains)
        lines.append(f"chains: {text}")
        doc["chains"] = [[scalar_to_json(v * c1) for v in ch.values()] for ch in chains]
    try:
        count = build_family(problem).parameter_count
    except SOLVER_ERRORS as exc:
        lines.append(f"parameters: unsupported ({exc})")
        doc["parameters"] = None
    else:
        lines.append(f"parameters: {count}")
        doc["parameters"] = count
        summary.append(f"{count} parameters")
    lines.append("summary: " + ", ".join(summary))
    return lines, doc


def cmd_solve(problem, values=None, seed=None, magnitude=10):
    """Family metadata plus, if ``values`` or ``seed`` is given, a verified instance."""
    family = build_family(problem)
    doc = {"line": problem.line, "family": family_to_json(family)}
    if values is None and seed is None:
        return doc
    rejections = 0
    if values is None:
        values, rejections = family.sample(random.Random(seed), magnitude)
    X = family.instantiate(values)
    report = check_instance(problem, X)
    if not report.all_pass:
        raise VerificationFailed(report)
    doc.update({
        "params": [scalar_to_json(v) for v in values],
        "rejections": rejections,
        "instance": matrix_to_json(X),
        "report": report.to_json(),
    })
    return doc


def cmd_verify(problem, X):
    return check_instance(problem, X)


def cmd_pr_polys(r_max, subst=None):
    if r_max < 2:
        raise ValueError("R_MAX must be at least 2")
    lines = []
    values = {f"α_{s}": c for s, c in enumerate(log_coeffs(r_max), start=1)}
    for r in range(2, r_max + 1):
        P = compute_Pr(r)
        line = f"P_{r} = {P.to_text()}"
        if subst == "log":
            line += "\t" + format_scalar(P.substitute({v: values[v] for v in P.variables}))
        lines.append(line)
    return lines


def cmd_special(family, params):
    if family == "dim3":
        if len(params) != 5:
            raise ValueError("dim3 needs u,v,w,q,r")
        p = Dim3Params(*params)
        A, X = diag(p.u, p.v, p.w), dim3_family(p)
        report = verify_inverse(A, X, InverseSpec.square())
    else:
        if len(params) != 5:
            raise ValueError("square needs u,v,a,b,c")
        p = SquareParams(*params)
        A, X = diag(p.u, p.v), square_family(p)
        report = verify_mixed(A, X, (0, 0, 1), (0, 0, 1))
    doc = {"family": family, "A": matrix_to_json(A), "X": matrix_to_json(X),
           "report": report.to_json()}
    if not report.all_pass:
        raise VerificationFailed(report)
    return doc


# -- argument handling -------------------------------------------------------

def _emit(lines, out):
    text = "".join(line + "\n" for line in lines)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_analyze(args):
    docs = []
    for problem in read_problems(args.problem):
        lines, doc = cmd_analyze(problem)
        print("\n".join(lines))
        docs.append(dumps(doc))
    if args.out:
        _emit(docs, args.out)
    return EXIT_OK


def _run_solve(args):
    values = read_params(args.params) if args.params else None
    out = [dumps(cmd_solve(p, values, args.random_seed, args.range))
           for p in read_problems(args.problem)]
    _emit(out, args.out)
    return EXIT_OK


def _run_verify(args):
    problems = read_problems(args.problem)
    with open(args.solution, encoding="utf-8") as fh:
        sols = read_documents(fh.read())
    if len(sols) != len(problems):
        raise ValueError(f"{len(problems)} problem(s) but {len(sols)} solution(s)")
    out, ok = [], True
    for problem, (line, doc) in zip(problems, sols):
        if isinstance(doc, dict) and "instance" in doc:
            doc = doc["instance"]
        report = cmd_verify(problem, matrix_from_json(doc))
        ok = ok and report.all_pass
        out.append(dumps(report.to_json()))
    _emit(out, args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def _run_pr_polys(args):
    _emit(cmd_pr_polys(args.r_max, args.subst), args.out)
    return EXIT_OK


def _run_special(args):
    params = [parse_scalar(t) for t in args.params.split(",")]
    _emit([dumps(cmd_special(args.family, params))], args.out)
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="xaax", description="Exact solver for XA - AX = f(X) and f(XA - AX) = X.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="classify a problem and decide existence")
    p.add_argument("--problem", required=True)
    p.add_argument("--out")
    p.set_defaults(run=_run_analyze)

    p = sub.add_parser("solve", help="solution family and optional instance")
    p.add_argument("--problem", required=True)
    p.add_argument("--params", help="JSON file {\"values\": [...]}")
    p.add_argument("--random-seed", type=int)
    p.add_argument("--range", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(run=_run_solve)

    p = sub.add_parser("verify", help="check a candidate solution exactly")
    p.add_argument("--problem", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--out")
    p.set_defaults(run=_run_verify)

    p = sub.add_parser("pr-polys", help="print P_2 .. P_R_MAX")
    p.add_argument("r_max", type=int, metavar="R_MAX")
    p.add_argument("--subst", choices=["log"])
    p.add_argument("--out")
    p.set_defaults(run=_run_pr_polys)

    p = sub.add_parser("special", help="closed-form inverse-equation families")
    p.add_argument("--family", choices=["dim3", "square"], required=True)
    p.add_argument("--params", required=True, help="u,v,w,q,r (dim3) or u,v,a,b,c (square)")
    p.add_argument("--out")
    p.set_defaults(run=_run_special)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.run(args)
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except SOLVER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (XaaxError, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

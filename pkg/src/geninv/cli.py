"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 the requested inverse does not
exist (``compute``) or the theorem hypotheses are not met (``theorem``),
3 bad input or configuration.
"""

import argparse
import json
import sys

from .core import compute as compute_plain
from .equations import InverseKind, check_membership, parse_tags
from .errors import GenInvError, InverseNotExists
from .ids import SIGNATURE, parse_theorem
from .io import dumps, matrix_to_json, read_matrix, write_json
from .suite import SuiteConfig, exit_code, run_suite
from .theorems import Verdict, verify_theorem
from .weighted import (Reason, WeightPolicy, WeightedProblem, m_weighted_core, n_weighted_dual_core,
                       one_3m, one_4n, weighted_mp)

EXIT_OK, EXIT_FAIL, EXIT_MISSING, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(obj, out):
    text = dumps(obj)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _policy(text):
    return WeightPolicy.ALLOW_NON_HERMITIAN if text == "allow" else WeightPolicy.REQUIRE_HERMITIAN


def _opt_matrix(path):
    return None if path is None else read_matrix(path)


# ---------------------------------------------------------------------------


def _compute(kind, A, M, N, W, policy):
    """(witness, reason) for one inverse kind."""
    if kind in (InverseKind.M_CORE, InverseKind.N_DUAL_CORE, InverseKind.WEIGHTED_MP):
        problem = WeightedProblem(A, M=M, N=N, policy=policy)
        fn = {InverseKind.M_CORE: m_weighted_core, InverseKind.N_DUAL_CORE: n_weighted_dual_core,
              InverseKind.WEIGHTED_MP: weighted_mp}[kind]
        out = fn(problem)
        return out.witness, None if out.exists else out.reason.value
    if kind in (InverseKind.ONE_3M, InverseKind.ONE_4N):
        problem = WeightedProblem(A, M=M, N=N, policy=policy)
        if kind is InverseKind.ONE_3M:
            X = one_3m(A, problem.need("M"), problem.hermitian)
        else:
            X = one_4n(A, problem.need("N"), problem.hermitian)
        return X, None if X is not None else Reason.FEASIBILITY_EMPTY.value
    if kind is InverseKind.W_CORE_EP and W is None:
        raise UsageError("--kind w-core-ep needs --weight-w")
    X = compute_plain(kind, A, W)
    return X, None if X is not None else Reason.INDEX_TOO_HIGH.value


def cmd_compute(args):
    kind = InverseKind(args.kind)
    A = read_matrix(args.matrix)
    X, reason = _compute(kind, A, _opt_matrix(args.weight_m), _opt_matrix(args.weight_n),
                         _opt_matrix(args.weight_w), _policy(args.weight_policy))
    if X is None:
        _emit({"status": "NotExists", "kind": kind.value, "reason": reason}, args.out)
        return EXIT_MISSING
    _emit(matrix_to_json(X), args.out)
    return EXIT_OK


def cmd_verify(args):
    A, X = read_matrix(args.matrix), read_matrix(args.candidate)
    tags = parse_tags(args.tags)
    res = check_membership(A, X, tags, M=_opt_matrix(args.weight_m), N=_opt_matrix(args.weight_n),
                           k=args.k, mode=args.mode, tolerance=args.tolerance)
    for c in res.checks:
        if args.mode == "float":
            line = "%-4s %s  max|residual| = %.3g" % (c.tag.value, "ok" if c.holds else "FAIL", c.norm)
        else:
            line = "%-4s %s" % (c.tag.value, "ok" if c.holds else "FAIL  residual %s" % (c.residual,))
        print(line)
    return EXIT_OK if res.holds else EXIT_FAIL


def cmd_theorem(args):
    tid = parse_theorem(args.id)
    names = {"A": args.matrix, "B": args.matrix_b, "M": args.weight_m, "N": args.weight_n,
             "X": args.candidate}
    inputs = {k: read_matrix(p) for k, p in names.items() if p is not None and (k in SIGNATURE[tid] or k == "X")}
    report = verify_theorem(tid, inputs, mode=args.mode, tolerance=args.tolerance)
    if args.out:
        write_json(args.out, report.to_dict())
    print("%s %s  %s" % (tid.value, report.verdict.value, report.instance_digest[:16]))
    for c in report.clauses:
        print("  [%s] %-10s %s%s" % ("x" if c.holds else " ", c.role, c.name,
                                     ("  (%s)" % c.detail) if c.detail else ""))
    for note in report.notes:
        print("  note: %s" % note)
    return {Verdict.FAIL: EXIT_FAIL, Verdict.HYPOTHESIS_NOT_MET: EXIT_MISSING}.get(report.verdict, EXIT_OK)


def cmd_suite(args):
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg = SuiteConfig.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("cannot read config: %s" % exc) from exc
    else:
        cfg = SuiteConfig(theorems=[])
    if args.theorems is not None:
        cfg.theorems = [t for t in args.theorems.split(",") if t.strip()]
    if args.sizes:
        lo, _, hi = args.sizes.partition("..")
        try:
            cfg.sizes = (int(lo), int(hi or lo))
        except ValueError as exc:
            raise UsageError("--sizes expects LO..HI") from exc
    for attr, val in (("samples_per_size", args.samples), ("seed", args.seed), ("jobs", args.jobs),
                      ("tolerance", args.tolerance), ("report_path", args.report)):
        if val is not None:
            setattr(cfg, attr, val)
    if args.mode:
        cfg.mode = args.mode
    if args.weight_policy:
        cfg.weight_policy = _policy(args.weight_policy)
    if args.no_fixtures:
        cfg.fixtures = False
    cfg.with_env().validate()
    report = run_suite(cfg)
    _emit(report, cfg.report_path)
    for t in report["theorems"]:
        print("%-9s instances %4d  hit %4d  pass %4d  notes %3d  fail %3d" % (
            t["theorem"], t["instances"], t["hypothesisHit"], t["passes"], t["interpretationNotes"],
            t["failCount"]), file=sys.stderr)
    return exit_code(report)


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="geninv", description="Exact weighted core inverses and theorem checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def weights(sp):
        sp.add_argument("--weight-m", help="MatrixFile with the left weight M")
        sp.add_argument("--weight-n", help="MatrixFile with the right weight N")

    def modes(sp):
        sp.add_argument("--mode", choices=["exact", "float"], default=None)
        sp.add_argument("--tolerance", type=float, default=None)

    c = sub.add_parser("compute", help="compute one generalized inverse")
    c.add_argument("--kind", required=True, choices=[k.value for k in InverseKind])
    c.add_argument("--matrix", required=True)
    weights(c)
    c.add_argument("--weight-w", help="MatrixFile with W (w-core-ep)")
    c.add_argument("--weight-policy", choices=["require", "allow"], default="require",
                   help="allow non-Hermitian weights (raw equations only)")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", help="check a candidate against equations")
    v.add_argument("--matrix", required=True)
    v.add_argument("--candidate", required=True)
    v.add_argument("--tags", required=True, help="comma list such as 1,2,3M,4N")
    v.add_argument("--k", type=int)
    weights(v)
    modes(v)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("theorem", help="verify one theorem on given inputs")
    t.add_argument("--id", required=True)
    t.add_argument("--matrix", required=True)
    t.add_argument("--matrix-b")
    t.add_argument("--candidate", help="explicit X for the single-matrix propositions")
    weights(t)
    modes(t)
    t.add_argument("--out")
    t.set_defaults(func=cmd_theorem)

    s = sub.add_parser("suite", help="run theorem suites on seeded random corpora")
    s.add_argument("--config", help="JSON SuiteConfig")
    s.add_argument("--theorems", help="comma list of theorem ids")
    s.add_argument("--sizes", help="LO..HI")
    s.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--jobs", type=int)
    s.add_argument("--weight-policy", choices=["require", "allow"])
    s.add_argument("--report")
    s.add_argument("--no-fixtures", action="store_true")
    modes(s)
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command in ("verify", "theorem"):
            args.mode = args.mode or "exact"
            if args.tolerance is not None and args.mode == "exact":
                raise UsageError("--tolerance is only valid with --mode float")
        return args.func(args)
    except UsageError as exc:
        print("geninv: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except InverseNotExists as exc:
        print("geninv: %s" % exc, file=sys.stderr)
        return EXIT_MISSING
    except (GenInvError, ValueError, KeyError, OSError) as exc:
        print("geninv: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: run verification suites and print determinants."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .errors import NonInvertibleError, ParseError, ResourceLimitError, UnknownIdentityError
from .ncalg import DEFAULT_BUDGET
from .report import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
BUDGET_ENV = "QMAT_BUDGET"
MIN_BUDGET = 10 ** 4
RESIDUAL_CAP = 400


class UsageError(Exception):
    pass


class Outcome:
    """Named results plus check reports produced by one command."""

    def __init__(self):
        self.results = []
        self.reports = []
        self.elapsed = None

    def result(self, name, value):
        self.results.append((name, str(value)))

    def report(self, rep: CheckReport):
        self.reports.append(rep)
        return rep

    def records(self):
        recs = [r for rep in self.reports for r in rep.records]
        return sorted(recs, key=lambda r: (r.check, tuple(map(str, r.indices))))

    @property
    def all_hold(self):
        return all(rep.all_hold for rep in self.reports)


# -- commands -----------------------------------------------------------------


def _ctx(args, pivot=False):
    if args.mode == "multiparam":
        from .multiparam import MPContext
        return MPContext(args.n, pivot, budget=args.budget)
    from .qmatrix import QContext
    return QContext(args.n, pivot, budget=args.budget)


def cmd_relations_check(args, out):
    ctx = _ctx(args, args.n > 1 and args.matrix == "reduced")
    M = ctx.row_reduce() if args.matrix == "reduced" else ctx.generic_matrix()
    out.result("instances", len(ctx.instances))
    out.report(ctx.relations_check(M))


def cmd_qdet(args, out):
    ctx = _ctx(args)
    out.result("det", ctx.det(ctx.generic_matrix()))


def cmd_mpdet(args, out):
    args.mode = "multiparam"
    cmd_qdet(args, out)


def cmd_row_reduce(args, out):
    ctx = _ctx(args, args.n > 1)
    R = ctx.row_reduce()
    for i in range(1, R.size + 1):
        for j in range(1, R.size + 1):
            out.result("reduced[%d,%d]" % (i, j), R[i, j])


def cmd_laplace(args, out):
    from .qmatrix import QContext, laplace_expand, qdet
    if args.n < 2:
        raise UsageError("laplace needs --n >= 2")
    ctx = QContext(args.n, budget=args.budget)
    Z = ctx.generic_matrix()
    d = qdet(Z)
    rep = out.report(CheckReport("laplace"))
    axes = [args.axis] if args.axis else ["row", "column"]
    for axis in axes:
        for k in ([args.index] if args.index else range(1, args.n + 1)):
            if not 1 <= k <= args.n:
                raise UsageError("--index must lie in 1..n")
            e = laplace_expand(Z, axis, k)
            out.result("%s %d" % (axis, k), e)
            res = ctx.nf(e - d)
            rep.add("%s %d expansion - qdet" % (axis, k), res.is_zero(), res, (k,), family=axis)


def cmd_cofactor(args, out):
    from .qmatrix import QContext, cofactor_matrix
    ctx = QContext(args.n, budget=args.budget)
    C = cofactor_matrix(ctx.generic_matrix())
    for i in range(1, C.size + 1):
        for j in range(1, C.size + 1):
            out.result("cofactor[%d,%d]" % (i, j), C[i, j])
    from .qmatrix import verify_identity
    out.report(verify_identity("cofactor", args.n, args.budget))


def cmd_wedge_det(args, out):
    from .grassmann import wedge_det
    from .qmatrix import QContext, qdet
    ctx = QContext(args.n, budget=args.budget)
    Z = ctx.generic_matrix()
    w = wedge_det(Z)
    out.result("wedge_det", w)
    rep = out.report(CheckReport("wedge-det"))
    res = ctx.nf(w - qdet(Z))
    rep.add("wedge_det - qdet", res.is_zero(), res)


def cmd_verify(args, out):
    from .qmatrix import verify_identity
    out.report(verify_identity(args.id, args.n, args.budget))


def cmd_mp_verify(args, out):
    from .multiparam import mp_verify_identity
    out.report(mp_verify_identity(args.id, args.n, args.budget))


def cmd_twist_check(args, out):
    from .multiparam import specialization_check, twist_equivalence_check
    out.report(twist_equivalence_check(args.n))
    out.report(specialization_check(args.n, args.budget))


def cmd_pivot_chain(args, out):
    from .dieudonne import corollary_check, pivot_chain
    chain = pivot_chain(args.n, args.budget)
    for lv in chain.levels:
        out.result("pivot %d" % lv.level, lv.expanded_pivot)
    out.report(corollary_check(args.n, args.budget, chain))


def cmd_counterexample(args, out):
    from .dieudonne import transpose_counterexample_check
    out.report(transpose_counterexample_check(args.budget))


def _random_matrix(n, rng):
    from .dieudonne import RATIONAL_FUNCTIONS_Q as R
    q = R.parse("q")
    rows = []
    for _ in range(n):
        row = []
        for _ in range(n):
            num = sum(rng.randint(-3, 3) * q ** k for k in range(3))
            den = R.one + rng.randint(0, 2) * q
            row.append(R.mul(num, R.invert(den)) if rng.random() < 0.8 else R.zero)
        rows.append(row)
    return rows


def cmd_bruhat(args, out):
    from .dieudonne import (RATIONAL_FUNCTIONS_Q as R, bruhat_decompose, classical_det,
                            delta_epsilon_tau, matrices_equal, permutation_sign, read_matrix)
    if args.file:
        try:
            with open(args.file) as fh:
                A = read_matrix(fh.read(), R)
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (args.file, exc))
    else:
        if not args.random:
            raise UsageError("bruhat needs a matrix file or --random SIZE")
        A = _random_matrix(args.random, random.Random(args.seed))
        for i, row in enumerate(A, 1):
            out.result("A[%d]" % i, ", ".join(map(str, row)))
    rep = out.report(CheckReport("bruhat"))
    try:
        decs = {s: bruhat_decompose(A, R, s) for s in ("rows", "columns")}
    except NonInvertibleError:
        out.result("delta_epsilon_tau", 0)
        rep.add("singular input has delta_epsilon_tau = 0", R.is_zero(delta_epsilon_tau(A, R)))
        return
    dec = decs[args.strategy]
    out.result("sigma", " ".join(str(s + 1) for s in dec.sigma))
    out.result("sign", permutation_sign(dec.sigma))
    out.result("U", ", ".join(map(str, dec.U)))
    d = delta_epsilon_tau(A, R, args.strategy)
    out.result("delta_epsilon_tau", d)
    for s, dd in decs.items():
        rep.add("recomposition (%s)" % s, matrices_equal(R, dd.recompose(), A), family="bruhat")
    same = decs["rows"].sigma == decs["columns"].sigma and all(
        R.is_zero(R.sub(a, b)) for a, b in zip(decs["rows"].U, decs["columns"].U))
    rep.add("(U, sigma) independent of strategy", same, family="bruhat")
    rep.add("delta_epsilon_tau = classical det", R.is_zero(R.sub(d, classical_det(A, R))),
            family="bruhat")


COMMANDS = {
    "relations-check": cmd_relations_check,
    "qdet": cmd_qdet,
    "mpdet": cmd_mpdet,
    "row-reduce": cmd_row_reduce,
    "laplace": cmd_laplace,
    "cofactor": cmd_cofactor,
    "wedge-det": cmd_wedge_det,
    "verify": cmd_verify,
    "mp-verify": cmd_mp_verify,
    "twist-check": cmd_twist_check,
    "pivot-chain": cmd_pivot_chain,
    "bruhat": cmd_bruhat,
    "counterexample": cmd_counterexample,
}


# -- argument parsing -----------------------------------------------------------


def _budget_default():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        return -1   # rejected by the range check below


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="matrix dimension (default 2)")
    common.add_argument("--mode", choices=("q", "multiparam"), default="q")
    common.add_argument("--output", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None,
                        help="live-monomial cap (default $%s or %d)" % (BUDGET_ENV, DEFAULT_BUDGET))
    common.add_argument("--timing", action="store_true",
                        help="record wall time (structured output is then not reproducible)")

    parser = argparse.ArgumentParser(prog="qdieudonne", description=__doc__)
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "relations-check":
            p.add_argument("--matrix", choices=("generic", "reduced"), default="reduced")
        elif name == "laplace":
            p.add_argument("--axis", choices=("row", "column"))
            p.add_argument("--index", type=int)
        elif name == "verify":
            p.add_argument("--id", required=True)
        elif name == "mp-verify":
            p.add_argument("--id", required=True)
        elif name == "bruhat":
            p.add_argument("file", nargs="?")
            p.add_argument("--random", type=int, metavar="SIZE")
            p.add_argument("--strategy", choices=("rows", "columns"), default="rows")
    return parser


def _command_echo(args):
    skip = {"output", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _residual(r):
    return r.residual_text(RESIDUAL_CAP) or None


def render_structured(args, out: Outcome, status):
    lines = [{"record": "header", "tool": "qdieudonne", "version": __version__,
              "command": _command_echo(args)}]
    for name, value in out.results:
        lines.append({"record": "result", "name": name, "value": value})
    wall = round(out.elapsed, 6) if args.timing and out.elapsed is not None else None
    recs = out.records()
    for r in recs:
        lines.append({"record": "check", "id": r.check, "indices": [int(i) for i in r.indices],
                      "family": r.family, "holds": r.holds, "residual": _residual(r),
                      "detail": r.detail, "wall_time": wall})
    passed = sum(r.holds for r in recs)
    lines.append({"record": "summary", "passed": passed, "failed": len(recs) - passed,
                  "total": len(recs), "exit_status": status, "wall_time": wall})
    return "\n".join(json.dumps(l, sort_keys=False) for l in lines) + "\n"


def render_text(args, out: Outcome, status):
    lines = []
    for name, value in out.results:
        lines.append(value if name == "det" else "%s: %s" % (name, value))
    for rep in out.reports:
        lines.append(str(rep))
    recs = out.records()
    if recs:
        passed = sum(r.holds for r in recs)
        lines.append("%s: %d/%d checks hold" % ("PASS" if status == EXIT_OK else "FAIL",
                                                passed, len(recs)))
    if args.timing and out.elapsed is not None:
        lines.append("wall time: %.3fs" % out.elapsed)
    return "\n".join(lines) + "\n"


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.budget is None:
        args.budget = _budget_default()
    try:
        if args.n < 1:
            raise UsageError("--n must be >= 1")
        if args.budget < MIN_BUDGET:
            raise UsageError("budget must be >= %d" % MIN_BUDGET)
        out = Outcome()
        start = time.perf_counter()
        COMMANDS[args.command](args, out)
        out.elapsed = time.perf_counter() - start
    except (UsageError, UnknownIdentityError, ParseError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print("qdieudonne %s: error: %s" % (args.command, msg), file=stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print("qdieudonne %s: resource limit: %s" % (args.command, exc), file=stderr)
        return EXIT_RESOURCE
    status = EXIT_OK if out.all_hold else EXIT_FAIL
    render = render_structured if args.output == "structured" else render_text
    stdout.write(render(args, out, status))
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

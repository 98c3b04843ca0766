"""Command-line front end.

Output is JSON lines: a ``{"config": ...}`` header followed by one record per
result.  ``--csv`` switches to CSV with the config as a leading comment.
Exit codes: 0 ok, 1 invalid input, 2 infeasible scale, 3 invariant violation
or failed verification.
"""

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from qspace import audit, search, verify
from qspace import subspace as sp
from qspace.errors import InfeasibleScale, InvariantViolation, QSpaceError, ValidationError
from qspace.family import (
    build_F_X_k,
    build_F_star_X_k,
    covering_number,
    read_family,
    write_family,
)
from qspace.gfq import field_new
from qspace.qbinom import gauss_binom, intersection_count
from qspace.simplex import (
    count_simplices,
    lemma23_step_counts,
    lower_bound_log_exponent,
    n_trk_lower_bound,
    n_trk_result,
)

EXIT_OK, EXIT_INVALID, EXIT_SCALE, EXIT_INVARIANT = 0, 1, 2, 3

# run-environment options that cannot change results; kept out of the echo
_NOT_ECHOED = {"workers", "out", "func"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ValidationError(message, param="argv")


class VerificationFailed(Exception):
    pass


def _params(p, *names):
    for name in names:
        p.add_argument(f"--{name}", type=int, required=True)


def _family_arg(p):
    p.add_argument("--family", required=True, help="family file (header 'q= n= k=' then one subspace per line)")


def build_parser():
    parser = _Parser(prog="qspace", description="Exact subspace combinatorics over GF(q).")
    common = _Parser(add_help=False)
    common.add_argument("--out", help="write records here instead of stdout")
    common.add_argument("--csv", action="store_true", help="CSV instead of JSON lines")
    common.add_argument("--workers", type=int, default=None, help="process count (default: $QSPACE_WORKERS or 1)")
    common.add_argument("--guard-limit", type=float, default=1.0, help="scale the feasibility guards")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("qbinom", parents=[common], help="Gaussian binomial [a, b]_q")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("enum", parents=[common], help="list every k-subspace of GF(q)^n")
    _params(p, "n", "k", "q")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("lemma1", parents=[common], help="count j-subspaces meeting A in dimension ell")
    _params(p, "n", "q", "j", "ell")
    p.add_argument("--a", required=True, help="subspace A as 'row;row' of comma-separated codes")
    p.set_defaults(func=cmd_lemma1)

    p = sub.add_parser("count", parents=[common], help="count simplices in a family file")
    _family_arg(p)
    _params(p, "r", "t")
    p.add_argument("--waive", action="store_true", help="allow non-intersecting families")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("ntrk", parents=[common], help="exact simplex count of F_{X,k}, dim X = r+t")
    _params(p, "n", "k", "q", "r", "t")
    p.set_defaults(func=cmd_ntrk)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--kind", choices=("lower", "cross", "size"), default="lower")
    _params(p, "n", "k", "q", "t")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--ell", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--form", choices=audit.FORMS, default="stated")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("steps", parents=[common], help="stage counts of the simplex construction")
    _params(p, "n", "k", "q", "r", "t")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_steps)

    p = sub.add_parser("tau", parents=[common], help="t-covering number and minimum covers")
    _family_arg(p)
    _params(p, "t")
    p.add_argument("--mode", choices=("pruned", "exhaustive"), default="pruned")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("build", parents=[common], help="construct F_{X,k} or F*_{X,k}")
    _params(p, "n", "k", "q")
    p.add_argument("--x", help="subspace X; default is the first --m coordinates")
    p.add_argument("--m", type=int, help="dimension of the coordinate subspace X")
    p.add_argument("--star", action="store_true", help="only members meeting X in dim X - 1")
    p.add_argument("--family-out", help="write the family file here")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("audit", parents=[common], help="exact evaluation of the upper-bound chains")
    _params(p, "n", "k", "r", "t", "q")
    p.add_argument("--form", choices=audit.FORMS, default="stated")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("search", parents=[common], help="maximal families and simplex maximizers")
    _params(p, "n", "k", "q", "r", "t")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=10)
    p.add_argument("--witness-dir", help="write each maximizer as a family file here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    for name in ("q", "n", "k", "m"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


# -- commands (each returns a list of records) ------------------------------------


def cmd_qbinom(args):
    return gauss_binom(args.a, args.b, field_new(args.q).q)


def cmd_enum(args):
    field = field_new(args.q)
    recs = [{"subspace": s.encode()} for s in sp.enumerate_subspaces(field, args.n, args.k)]
    recs.append({"total": str(len(recs)), "expected": str(gauss_binom(args.n, args.k, args.q))})
    return recs


def cmd_lemma1(args):
    field = field_new(args.q)
    a = sp.decode(field, args.n, args.a)
    built = list(sp.enumerate_with_intersection(a, args.j, args.ell))
    want = intersection_count(args.n, a.dim, args.j, args.ell, args.q)
    if len(set(built)) != want:
        raise InvariantViolation(f"constructed {len(set(built))} subspaces, formula gives {want}", param="ell")
    return [{"a": a.encode(), "i": a.dim, "j": args.j, "ell": args.ell, "count": str(len(built)), "formula": str(want)}]


def cmd_count(args):
    fam = read_family(args.family)
    res = count_simplices(fam, args.r, args.t, waive=args.waive, workers=args.workers, guard_limit=args.guard_limit)
    return [res.to_record()]


def cmd_ntrk(args):
    res = n_trk_result(args.n, args.k, args.q, args.r, args.t, workers=args.workers, guard_limit=args.guard_limit)
    return [res.to_record()]


def cmd_bound(args):
    field_new(args.q)
    if args.kind == "lower":
        value = n_trk_lower_bound(args.n, args.k, args.q, args.r, args.t)
        rec = {"kind": "lower", "value": str(value), "log_q_exponent": lower_bound_log_exponent(args.n, args.k, args.r, args.t)}
    elif args.kind == "size":
        value = audit.family_size_bound(args.k, args.r, args.t, args.n, args.q, form=args.form)
        rec = {"kind": "size", "form": args.form, "value": str(value)}
    else:
        if args.ell is None or args.s is None:
            raise ValidationError("cross bound needs --ell and --s", param="ell" if args.ell is None else "s")
        value = audit.cross_intersecting_bound(args.k, args.ell, args.s, args.t, args.n, args.q, form=args.form)
        rec = {"kind": "cross", "form": args.form, "value": str(value)}
    return [rec]


def cmd_steps(args):
    rep = lemma23_step_counts(args.n, args.k, args.q, args.r, args.t, samples=args.samples, seed=args.seed,
                              workers=args.workers, guard_limit=args.guard_limit)
    if not rep.ok:
        raise InvariantViolation(f"stage checks failed: {[k for k, v in rep.checks.items() if not v]}", param="n")
    return [rep.to_record()]


def cmd_tau(args):
    rep = covering_number(read_family(args.family), args.t, mode=args.mode)
    return [rep.to_record()]


def cmd_build(args):
    field = field_new(args.q)
    if args.x is not None:
        x = sp.decode(field, args.n, args.x)
    elif args.m is not None:
        x = sp.coordinate(field, args.n, range(args.m))
    else:
        raise ValidationError("build needs --x or --m", param="x")
    fam = build_F_star_X_k(x, args.k) if args.star else build_F_X_k(x, args.k)
    if args.family_out:
        write_family(fam, args.family_out)
    return [{"x": x.encode(), "star": args.star, "size": len(fam)}]


def cmd_audit(args):
    recs = [r.to_record() for r in audit.threshold_audit(args.n, args.k, args.r, args.t, args.q, form=args.form)]
    try:
        recs.append(audit.family_size_report(args.n, args.k, args.r, args.t, args.q).to_record())
    except ValidationError:
        pass  # size bound undefined at these parameters
    return recs


def cmd_search(args):
    res = search.extremal_report(args.n, args.k, args.q, args.r, args.t, mode=args.mode, seed=args.seed,
                                 iterations=args.iterations, workers=args.workers, guard_limit=args.guard_limit)
    if args.witness_dir:
        out = Path(args.witness_dir)
        out.mkdir(parents=True, exist_ok=True)
        for i, fam in enumerate(res.witnesses):
            write_family(fam, out / f"witness_{i:03d}.fam")
    return [res.to_record()]


def cmd_verify(args):
    # field checks every supported q unless one is named; other suites default to q=2
    args.q = args.q if args.q is not None or args.suite == "field" else 2
    q = args.q
    return verify.run_suite(args.suite, q=q, n=args.n, k=args.k, r=args.r, t=args.t, m=args.m,
                            workers=args.workers, seed=args.seed, guard_limit=args.guard_limit)


# -- output ---------------------------------------------------------------------


def _config(args):
    cfg = {"subcommand": args.command}
    for key, val in sorted(vars(args).items()):
        if key not in _NOT_ECHOED and key != "command":
            cfg[key] = val
    return cfg


def _cell(v):
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else v


def render(config, records, as_csv):
    buf = io.StringIO()
    if as_csv:
        buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
        cols = []
        for rec in records:
            cols.extend(c for c in rec if c not in cols)
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow({c: _cell(rec.get(c)) for c in cols})
    else:
        buf.write(json.dumps({"config": config}, sort_keys=True) + "\n")
        for rec in records:
            buf.write(json.dumps(rec, sort_keys=True) + "\n")
    return buf.getvalue()


def _resolve_workers(value):
    if value is None:
        env = os.environ.get("QSPACE_WORKERS", "")
        try:
            value = int(env) if env else 1
        except ValueError:
            raise ValidationError(f"QSPACE_WORKERS={env!r} is not an integer", param="workers") from None
    if value < 1:
        raise ValidationError(f"workers={value} must be >= 1", param="workers")
    return value


def _fail(code, exc, param=None):
    err = {"error": type(exc).__name__, "param": getattr(exc, "param", param), "message": str(exc)}
    sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
    return code


def run(argv=None):
    """Execute one command line and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        args.workers = _resolve_workers(args.workers)
        if args.guard_limit <= 0:
            raise ValidationError("guard-limit must be positive", param="guard_limit")
        result = args.func(args)
    except ValidationError as exc:
        return _fail(EXIT_INVALID, exc)
    except InfeasibleScale as exc:
        return _fail(EXIT_SCALE, exc)
    except (InvariantViolation, QSpaceError) as exc:
        return _fail(EXIT_INVARIANT, exc)

    if args.command == "qbinom":
        text = f"{result}\n"
    else:
        text = render(_config(args), result, args.csv)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not all(r.get("ok", True) for r in result):
        return _fail(EXIT_INVARIANT, VerificationFailed("one or more checks failed"), param="suite")
    return EXIT_OK


def main(argv=None):
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

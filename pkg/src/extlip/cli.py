"""Command-line front end.

Every subcommand prints one JSON report on stdout and a short summary on
stderr.  Exit status: 0 when all checks pass, 1 when a check fails, 2 on
bad input.
"""

import argparse
import math
import sys

from . import corpus as corpus_mod
from . import io, tolerance
from .dual import adjoint, adjoint_norm, dual_distance, dual_distance_oracle, lambda_norm
from .errors import ExtlipError
from .extbound import de_distance, e_constant
from .metric import PointMap, VectorMap, validate_space
from .moduli import lip_at, lip_const, norm_Lx, omega, omega_at, sampled_lip_quantities, sup_omega_ratio
from .report import AnalysisReport
from .sequences import SequencePoint, dilate, dilation_certificates, dp_distance, parse_p
from .suite import PROPERTIES, SuiteConfig, run_suite
from .transfer import transfer_compose, vanishing_check

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """A problem with the command-line input (exit status 2)."""


def _tol(args):
    return tolerance.resolve(args.tol)


def _new_report(argv, **inputs):
    return AnalysisReport(list(argv), AnalysisReport.digest(inputs))


def cmd_check_space(args, argv):
    space = io.load_space(args.file)
    metric = io.as_metric(space)
    rep = _new_report(argv, file=args.file)
    violations = validate_space(metric, _tol(args))
    rep.result("points", metric.n)
    rep.result("violations", [v.as_dict() for v in violations])
    if violations:
        rep.notes.append(f"{len(violations)} metric axiom violation(s)")
        return rep, EXIT_INPUT
    return rep, None


def _require_valid(space, tol):
    v = validate_space(io.as_metric(space), tol)
    if v:
        raise InputError(f"not a metric space: {v[0]}")


def cmd_analyze(args, argv):
    tol = _tol(args)
    if args.sample:
        extra = {"n": args.n} if args.n is not None else {}
        sample = io.load_sample(args.sample, **extra)
        rep = _new_report(argv, sample=args.sample, n=args.n)
        q = sampled_lip_quantities(sample, tol)
        rep.result("e_const", q.e_const if q.in_E else None, q.e_witness, "sampled")
        rep.result("lip_est", q.lip_est, q.lip_witness, "sampled")
        rep.result("in_E", q.in_E, None, "sampled")
        rep.notes.append("lip_est is a lower bound on the Lipschitz constant")
        return rep, None
    if not args.map:
        raise InputError("analyze needs --map or --sample")
    f, src = io.load_map(args.map)
    _require_valid(src, tol)
    rep = _new_report(argv, map=args.map, at=args.at, t=args.t)
    L = lip_const(f)
    rep.result("lip_const", L.value, L.witness)
    e = e_constant(f, tol, strict=False)
    if e.base_ok:
        rep.result("e_constant", e.value, e.witness)
        rep.check("e_constant<=lip_const", e.value <= L.value + tol, e.value, L.value, tol)
    else:
        rep.result("e_constant", None)
        rep.notes.append("map moves the base point: not extensively bounded")
    for t in args.t or ():
        w = omega(f, t)
        rep.result(f"omega[t={t:g}]", w.value, w.witness)
    if args.at is not None:
        x0 = f.src.index(args.at)
        la = lip_at(f, x0)
        so = sup_omega_ratio(f, x0)
        rep.result("lip_at", la.value, la.witness)
        rep.result("sup_omega_ratio", so.value, so.witness)
        rep.check("sup_omega_ratio==lip_at", so.value == la.value, so.value, la.value, 0.0)
        for t in args.t or ():
            w = omega_at(f, x0, t)
            rep.result(f"omega_at[t={t:g}]", w.value, w.witness)
        if isinstance(f, VectorMap):
            rep.result("norm_Lx", norm_Lx(f, x0))
    return rep, None


def cmd_de(args, argv):
    tol = _tol(args)
    T, _ = io.load_map(args.map)
    S, _ = io.load_map(args.map2)
    rep = _new_report(argv, map=args.map, map2=args.map2)
    ts, st = de_distance(T, S, tol), de_distance(S, T, tol)
    rep.result("d_e", ts)
    rep.check("symmetry", ts == st, ts, st, 0.0)
    return rep, None


def _space_arg(ref, tol):
    space = io.as_metric(io.load_space(ref))
    _require_valid(space, tol)
    return space


def cmd_dp(args, argv):
    tol = _tol(args)
    space = _space_arg(args.space, tol)
    s, t = io.parse_sequence(args.s, space), io.parse_sequence(args.t, space)
    p = parse_p(args.p)
    rep = _new_report(argv, space=args.space, s=s.labels(), t=t.labels(), p=args.p)
    res = dp_distance(p, s, t)
    rep.result("d_p", res.value, {"functional": res.witness.full}, "oracle")
    if math.isinf(p):
        rep.result("d_inf_closed_form", res.closed_form)
        rep.check("closed_form==oracle", abs(res.closed_form - res.value) <= tol, res.closed_form, res.value, tol)
    return rep, None


def cmd_dual(args, argv):
    tol = _tol(args)
    space = _space_arg(args.space, tol)
    x, y = space.index(args.x), space.index(args.y)
    rep = _new_report(argv, space=args.space, x=args.x, y=args.y)
    closed = dual_distance(space, x, y)
    rep.result("dual_distance", closed)
    if space.n - 1 <= args.cap:
        orc = dual_distance_oracle(space, x, y, args.cap)
        rep.result("dual_distance_oracle", orc.value, {"functional": orc.witness.full}, "oracle")
        rep.check("closed_form==oracle", abs(closed - orc.value) <= tol, closed, orc.value, tol)
    rep.check("dual_distance>=d", closed >= space.dist[x, y] - tol, closed, float(space.dist[x, y]), tol)
    return rep, None


def cmd_adjoint(args, argv):
    tol = _tol(args)
    T, _ = io.load_map(args.map)
    if not isinstance(T, PointMap):
        raise InputError("adjoint needs a point map")
    rep = _new_report(argv, map=args.map)
    rep.result("matrix", adjoint(T).matrix)
    res = adjoint_norm(T, args.cap)
    rep.result("adjoint_norm", res.closed_form)
    e = e_constant(T, tol).value
    rep.check("closed_form==e_constant", abs(res.closed_form - e) <= tol, res.closed_form, e, tol)
    if res.oracle is None:
        rep.notes.append("vertex oracle skipped: cap exceeded")
    else:
        rep.result("adjoint_norm_oracle", res.oracle, {"functional": res.witness.full}, "oracle")
        rep.check("closed_form==oracle", abs(res.closed_form - res.oracle) <= tol, res.closed_form, res.oracle, tol)
    return rep, None


def cmd_dilate(args, argv):
    tol = _tol(args)
    T, _ = io.load_map(args.map)
    if not isinstance(T, PointMap):
        raise InputError("dilate needs a point map")
    s = io.parse_sequence(args.s, T.src)
    p = parse_p(args.p)
    rep = _new_report(argv, map=args.map, s=s.labels(), t=args.t, p=args.p)
    rep.result("image", dilate(T, s).labels())
    pairs = [(s, io.parse_sequence(args.t, T.src) if args.t is not None else SequencePoint(T.src, ()))]
    cert = dilation_certificates(p, T, pairs, tol)
    rep.result("e_constant", cert.e_const)
    rep.result("singleton_ratio_max", cert.singleton_max, None, "oracle")
    rep.result("worst_pair_ratio", cert.worst_ratio, None, "oracle")
    rep.check("lipschitz_bound", cert.lip_ok, cert.worst_ratio, cert.e_const, tol)
    rep.check("singleton_max==e_constant", cert.singleton_ok, cert.singleton_max, cert.e_const, tol)
    rep.check("sandwich", cert.sandwich_ok, cert.lip_hat_est, cert.e_const, tol, witness=cert.violations or None)
    return rep, None


def cmd_transfer(args, argv):
    tol = _tol(args)
    f, src = io.load_map(args.map)
    if not isinstance(f, VectorMap):
        raise InputError("transfer needs a vector map")
    rep = _new_report(argv, map=args.map, x1=args.x1, x2=args.x2)
    res = transfer_compose(args.x1, args.x2, f)
    rep.result("composed", {lab: row for lab, row in zip(f.src.labels, res.composed.values.tolist())})
    rep.result("closed_form", {lab: row for lab, row in zip(f.src.labels, res.closed_form.values.tolist())})
    scale = max(1.0, float(abs(res.closed_form.values).max()))
    rep.check("composed==closed_form", res.max_gap <= tol * scale, res.max_gap, 0.0, tol * scale)
    if not isinstance(src, VectorMap) and hasattr(src, "coords"):
        v = vanishing_check(f, src, args.x1, args.x2, tol)
        rep.result("is_fixed_point", v.is_fixed_point)
        rep.result("vanishing_holds", v.vanishing_holds, v.violations)
        rep.check("fixed_point_implies_vanishing", v.passed, v.is_fixed_point, v.vanishing_holds, tol,
                  witness=v.violations or None)
    else:
        rep.notes.append("vanishing check skipped: domain has no coordinates")
    return rep, None


def _parse_counts(items):
    counts = {}
    for item in items or ():
        name, _, num = item.partition("=")
        if name not in PROPERTIES or not num.isdigit():
            raise InputError(f"bad --count {item!r}; expected PROPERTY=N")
        counts[name] = int(num)
    return counts


def cmd_suite(args, argv):
    try:
        cfg = SuiteConfig(
            seed=args.seed, counts=_parse_counts(args.count), tol=args.tol,
            mutation=args.mutate, properties=tuple(args.property) if args.property else None,
            max_points=args.max_points, max_seq_len=args.max_seq_len, max_k=args.max_k,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return run_suite(cfg, list(argv)), None


def cmd_corpus(args, argv):
    rep = _new_report(argv, names=args.name)
    for fx in corpus_mod.corpus():
        if args.name and fx.name not in args.name:
            continue
        if fx.kind == "mutation":
            r = run_suite(SuiteConfig(mutation=io.read_json(corpus_mod.path_of(fx))["target"],
                                      properties=("transfer.phi_isometry",)))
            caught = len(r.failures())
            rep.result(f"{fx.name}:isometry_failures", caught)
            rep.check(f"{fx.name}:detected", caught > 0, caught, 0, 0.0)
            continue
        for e, actual, ok in corpus_mod.evaluate(fx):
            rep.check(f"{fx.name}:{e.quantity}", ok, actual, [e.lo, e.hi], 0.0, witness=e.provenance)
        rep.notes.extend(f"{fx.name}: {n}" for n in fx.notes)
        if fx.name == "xsinx":
            rep.result("xsinx:oscillation", corpus_mod.xsinx_oscillation(), None, "sampled")
            rep.result("xsinx:lip_est_by_radius", corpus_mod.xsinx_lip_growth(), None, "sampled")
    return rep, None


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="absolute tolerance (default: $EXTLIP_TOL or 1e-9)")
    ap = argparse.ArgumentParser(prog="extlip", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-space", parents=[common], help="validate the metric axioms of a space file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_check_space)

    p = sub.add_parser("analyze", parents=[common], help="Lipschitz, modulus and e-constant quantities of a map or sample")
    p.add_argument("--map")
    p.add_argument("--sample")
    p.add_argument("--n", type=int, help="exponent override for power samples")
    p.add_argument("--at", help="base point label for pointwise quantities")
    p.add_argument("--t", type=float, action="append", help="radius for the modulus of continuity")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("de", parents=[common], help="d_e distance between two maps")
    p.add_argument("--map", required=True)
    p.add_argument("--map2", required=True)
    p.set_defaults(func=cmd_de)

    p = sub.add_parser("dp", parents=[common], help="d_p distance between two finite sequences")
    p.add_argument("--p", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--s", required=True, help="comma-separated labels")
    p.add_argument("--t", default="", help="comma-separated labels (default: zero sequence)")
    p.set_defaults(func=cmd_dp)

    p = sub.add_parser("dual", parents=[common], help="distance between evaluation functionals")
    p.add_argument("--space", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--cap", type=int, default=20)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("adjoint", parents=[common], help="adjoint matrix and its operator norm")
    p.add_argument("--map", required=True)
    p.add_argument("--cap", type=int, default=20)
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("dilate", parents=[common], help="apply a map to a sequence and certify the dilation bounds")
    p.add_argument("--map", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--t", default=None)
    p.add_argument("--p", default="1")
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("transfer", parents=[common], help="move the base point of a vector map")
    p.add_argument("--map", required=True)
    p.add_argument("--x1", required=True)
    p.add_argument("--x2", required=True)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("suite", parents=[common], help="run the randomized property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mutate", choices=sorted(corpus_mod.MUTATIONS))
    p.add_argument("--property", action="append", choices=list(PROPERTIES))
    p.add_argument("--count", action="append", metavar="PROPERTY=N")
    p.add_argument("--max-points", type=int, default=10)
    p.add_argument("--max-seq-len", type=int, default=6)
    p.add_argument("--max-k", type=int, default=4)
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("corpus", parents=[common], help="reproduce the expected values of the shipped fixtures")
    p.add_argument("name", nargs="*")
    p.set_defaults(func=cmd_corpus)
    return ap


def run_command(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        rep, code = args.func(args, list(argv))
    except (ExtlipError, InputError, ValueError, KeyError) as exc:
        print(f"extlip {args.command}: error: {exc}", file=stderr)
        return EXIT_INPUT
    stdout.write(rep.to_json() + "\n")
    print(rep.summary(), file=stderr)
    if code is not None:
        return code
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()

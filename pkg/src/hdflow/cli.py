"""Command-line interface: ``hdflow <command> [flags]``.

Results go to stdout as JSON (or DOT for ``graph --format dot``).  Exit status:
0 success / conjecture holds, 1 conjecture fails, 2 bad parameters,
3 indeterminate.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import conjectures as cj
from .dynamics import export_graph, functional_graph, orbit
from .ecurve import (
    Curve,
    CurvePoint,
    ec_mul,
    factorization_check,
    lift_x,
    point_order,
    x_coord,
    xp_via_determinant,
)
from .errors import HdflowError
from .ff import FieldCtx, node_name, parse_node
from .selfmap import SelfMapCtx, selfmap_eval

EXIT = {"holds": 0, "fails": 1, "indeterminate": 3}


class BadParams(Exception):
    pass


def _field(args) -> FieldCtx:
    if args.preset:
        if args.p is not None or args.modulus is not None:
            raise BadParams("--preset cannot be combined with --p/--modulus")
        return FieldCtx.preset(args.preset)
    if args.p is None:
        raise BadParams("give --preset or --p")
    modulus = None
    if args.modulus is not None:
        modulus = [int(t) for t in args.modulus.split(",")]
        f = len(modulus) - 1
        if args.f is not None and args.f != f:
            raise BadParams(f"--f {args.f} disagrees with a modulus of degree {f}")
    else:
        f = args.f or 1
    return FieldCtx(args.p, f, modulus)


def _lam(args, ctx: FieldCtx):
    if args.lam is None:
        raise BadParams("--lambda is required")
    if not 0 <= args.lam < ctx.q:
        raise BadParams(f"--lambda must be an encoding in [0, {ctx.q})")
    lam = ctx(args.lam)
    if lam == 0 or lam == 1:
        raise BadParams("--lambda must avoid 0 and 1")
    return lam


def _point_arg(ctx: FieldCtx, token: str | None, flag: str):
    if token is None:
        raise BadParams(f"{flag} is required")
    try:
        return parse_node(ctx, token)
    except ValueError:
        raise BadParams(f"{flag} must be an encoding in [0, {ctx.q}) or 'inf', got {token!r}") from None


def _emit(obj, out: str | None) -> None:
    text = obj if isinstance(obj, str) else json.dumps(obj, separators=(",", ":"))
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --- commands ----------------------------------------------------------------------------------


def cmd_selfmap(args) -> int:
    ctx = _field(args)
    sm = SelfMapCtx(ctx, _lam(args, ctx))
    z = _point_arg(ctx, args.z, "--z")
    _emit({"phi": node_name(selfmap_eval(sm, z))}, args.out)
    return 0


def cmd_orbit(args) -> int:
    ctx = _field(args)
    sm = SelfMapCtx(ctx, _lam(args, ctx))
    start = _point_arg(ctx, args.start, "--start")
    tail, cycle = orbit(sm, start)
    _emit({"tail": [node_name(x) for x in tail], "cycle": [node_name(x) for x in cycle]}, args.out)
    return 0


def cmd_graph(args) -> int:
    ctx = _field(args)
    sm = SelfMapCtx(ctx, _lam(args, ctx))
    g = functional_graph(sm, jobs=args.jobs)
    _emit(export_graph(g, args.format).decode(), args.out)
    return 0


def _curve_point(args, ctx: FieldCtx, curve: Curve, rng: random.Random):
    """The point named by --z (and optionally --y), lifting to the quadratic extension if needed."""
    if args.z is None:
        while True:
            a = ctx.random(rng)
            if a != 0 and a != 1 and a != curve.lam:
                break
    else:
        a = _point_arg(ctx, args.z, "--z")
        if node_name(a) == "inf":
            raise BadParams("--z must be finite for curve commands")
    if args.y is not None:
        P = CurvePoint(a, ctx(args.y))
        if not curve.contains(P):
            raise BadParams(f"({a.n}, {args.y}) is not on the curve")
        return curve, P
    c2, pts = lift_x(curve, a)
    return c2, pts[0]


def cmd_ec(args) -> int:
    ctx = _field(args)
    curve = Curve(ctx, _lam(args, ctx))
    rng = random.Random(args.seed)
    c2, P = _curve_point(args, ctx, curve, rng)
    base = {"x": P.x.n, "y": P.y.n, "over_extension": c2 is not curve}
    if c2 is not curve:
        base["extension_modulus"] = list(c2.ctx.modulus)
    if args.ec_cmd == "mulp":
        by_add = x_coord(ec_mul(c2, ctx.p, P))
        if P.x in (0, 1) or P.x == c2.lam:
            by_det = None
        else:
            by_det = xp_via_determinant(c2, P.x)
        out = {
            **base,
            "xp_double_and_add": node_name(by_add),
            "xp_determinant": None if by_det is None else node_name(by_det),
            "agree": by_det is not None and node_name(by_det) == node_name(by_add),
        }
    elif args.ec_cmd == "order":
        out = {**base, "order": point_order(c2, P)}
    else:
        v = factorization_check(c2, P)
        out = {
            **base,
            "a_p": node_name(v.a_p),
            "f": [c.n for c in v.f.coeffs],
            "g": [c.n for c in v.g.coeffs],
            "residual": str(v.residual) if v.residual else "0",
            "ok": v.ok,
        }
    _emit(out, args.out)
    return 0


def cmd_conj(args) -> int:
    which = args.conj_cmd
    if which == "var":
        p = args.p if args.p is not None else (args.preset and FieldCtx.preset(args.preset).p)
        if not p:
            raise BadParams("conj var needs --p (or --preset)")
        rep = cj.check_var_conj(p, args.mode or "symbolic", args.trials, args.seed)
    else:
        ctx = _field(args)
        lam = _lam(args, ctx)
        if which == "commute":
            rep = cj.check_commutativity(ctx, lam, args.mode or "exhaustive", args.trials, args.seed)
        elif which == "equ-main":
            rep = cj.check_equ_main(ctx, lam, args.mode or "exhaustive", args.trials, args.seed)
        elif which == "torsion":
            g = functional_graph(SelfMapCtx(ctx, lam), jobs=args.jobs)
            rep = cj.check_torsion_periodicity(ctx, lam, g)
        else:
            a = _point_arg(ctx, args.z, "--z")
            if node_name(a) == "inf" or not a:
                raise BadParams("conj symmetry needs a nonzero finite --z")
            rep = cj.check_symmetries(ctx, lam, a)
    _emit(rep.to_json(), args.out)
    return EXIT[rep.verdict]


# --- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("field and map")
    g.add_argument("--p", type=int)
    g.add_argument("--f", type=int)
    g.add_argument("--modulus", help="comma-separated c_0,...,c_f of a monic irreducible")
    g.add_argument("--preset", choices=["paper-f81"])
    g.add_argument("--lambda", dest="lam", type=int, help="encoded lambda")
    g.add_argument("--z", help="encoded point or 'inf'")
    g.add_argument("--y", type=int, help="encoded y-coordinate for curve commands")
    g.add_argument("--start", help="orbit start point")
    g.add_argument("--format", choices=["json", "dot"], default="json")
    g.add_argument("--mode", choices=["symbolic", "grid", "random", "exhaustive", "sample"])
    g.add_argument("--trials", type=int, default=20)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--jobs", type=int, default=1)
    g.add_argument("--out")

    parser = argparse.ArgumentParser(prog="hdflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)
    sub.add_parser("selfmap", parents=[common], help="evaluate phi at --z").set_defaults(fn=cmd_selfmap)
    sub.add_parser("orbit", parents=[common], help="tail and cycle of --start").set_defaults(fn=cmd_orbit)
    sub.add_parser("graph", parents=[common], help="full functional graph").set_defaults(fn=cmd_graph)

    ec = sub.add_parser("ec", help="Legendre-curve operations")
    ec_sub = ec.add_subparsers(dest="ec_cmd", required=True)
    for name in ("mulp", "order", "check-fact"):
        ec_sub.add_parser(name, parents=[common]).set_defaults(fn=cmd_ec)

    conj = sub.add_parser("conj", help="conjecture checks")
    conj_sub = conj.add_subparsers(dest="conj_cmd", required=True)
    for name in ("var", "commute", "equ-main", "torsion", "symmetry"):
        conj_sub.add_parser(name, parents=[common]).set_defaults(fn=cmd_conj)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except (BadParams, HdflowError, ValueError) as exc:
        sys.stdout.write(json.dumps({"error": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())

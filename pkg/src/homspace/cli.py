"""Command-line front end.

Every subcommand builds an envelope ``{"command", "args", "status",
"result"}`` and renders it as text, JSON or LaTeX.  Exit codes: 0 success,
1 mathematical signal (the status names the exception), 2 usage error.
"""

import argparse
import json
import sys

from . import embeddings as emb
from . import fq_oracle as fq
from . import homogeneous as hom
from .errors import MathSignal, UsageError
from .exactalg import IntPoly, format_poly, series_expand
from .grammar import parse_group_spec
from .weylcore import (f_series, flag_poly, load_generator_file, molien_series,
                       weyl_enumerate)

COMMANDS = ("degrees", "fseries", "flagpoly", "molien", "qpoly", "poincare", "epoly",
            "count", "zpoly", "verify1", "chain", "embed-total", "embed-r",
            "embed-verify", "oracle-order", "oracle-count", "fixtures")


class CheckFailed(MathSignal):
    pass


def _ints(p):
    return [str(c) for c in p.coeffs]


def _ratfunc(f):
    return {"num": _ints(f.num), "den": _ints(f.den)}


def _poly(strs):
    return IntPoly(int(c) for c in strs)


# -- argument handling --

def _subgroup(args):
    if getattr(args, "h_weyl", None):
        if args.h_u is None:
            raise UsageError("--h-weyl needs --h-u")
        w = load_generator_file(args.h_weyl)
        return hom.DisconnectedSubgroup(w, args.h_u, args.h_unipotent or 0, label=args.h_weyl)
    if not getattr(args, "h", None):
        raise UsageError("give --h SPEC or --h-weyl FILE --h-u N")
    return parse_group_spec(args.h)


def _pair(args):
    return hom.HomogeneousPair(parse_group_spec(args.g), _subgroup(args))


def _poset(args):
    if args.fixture and args.file:
        raise UsageError("give either --fixture or --file")
    if args.fixture:
        return emb.fixture(args.fixture)
    if args.file:
        return emb.load_poset(args.file)
    raise UsageError("give --fixture NAME or --file PATH")


# -- commands: each returns a result dict --

def cmd_degrees(args):
    g = parse_group_spec(args.g)
    t = g.reductive
    return {"group": str(g), "degrees": [str(d) for d in t.degrees], "rank": str(g.r),
            "u": str(g.u), "dim": str(g.dim), "weyl_order": str(t.weyl_order)}


def cmd_fseries(args):
    g = parse_group_spec(args.g)
    f = f_series(g.reductive)
    out = {"group": str(g), "ratfunc": _ratfunc(f)}
    if args.order is not None:
        out["series"] = [str(c) for c in series_expand(f, args.order)]
    return out


def cmd_flagpoly(args):
    g = parse_group_spec(args.g)
    return {"group": str(g), "poly": _ints(flag_poly(g.reductive))}


def cmd_molien(args):
    if args.weyl:
        w = load_generator_file(args.weyl)
        return {"source": args.weyl, "order": str(w.order), "ratfunc": _ratfunc(molien_series(w))}
    if not args.g:
        raise UsageError("give --g SPEC or --weyl FILE")
    g = parse_group_spec(args.g)
    w = weyl_enumerate(g.reductive)
    m = molien_series(w)
    return {"source": str(g), "order": str(w.order), "ratfunc": _ratfunc(m),
            "matches_fseries": m == f_series(g.reductive)}


def cmd_qpoly(args):
    p = _pair(args)
    return {"pair": str(p), "q": _ints(hom.q_poly(p))}


def cmd_poincare(args):
    p = _pair(args)
    return {"pair": str(p), "p": _ints(hom.half_poincare(p))}


def cmd_epoly(args):
    p = _pair(args)
    poly = hom.half_poincare(p)
    return {"pair": str(p), "p": _ints(poly),
            "monomials": [[str(c), str(k)] for c, k in hom.e_monomials(poly)]}


def cmd_count(args):
    p = _pair(args)
    return {"pair": str(p), "q": str(args.q), "count": str(hom.point_count(p, args.q))}


def cmd_zpoly(args):
    p = _pair(args)
    return {"pair": str(p), "z_poly": _ints(hom.z_poincare(p)),
            "duality": hom.z_duality_holds(p)}


def cmd_verify1(args):
    rep = hom.verify_theorem1(_pair(args))
    return {"report": rep.to_dict()}


def cmd_chain(args):
    g, h, k = (parse_group_spec(s) for s in (args.g, args.h, args.k))
    q_gk = hom.q_poly(hom.HomogeneousPair(g, k))
    q_gh = hom.q_poly(hom.HomogeneousPair(g, h))
    q_hk = hom.q_poly(hom.HomogeneousPair(h, k))
    return {"chain": f"{k} < {h} < {g}", "q_gk": _ints(q_gk), "q_gh": _ints(q_gh),
            "q_hk": _ints(q_hk), "holds": q_gk == q_gh * q_hk}


def cmd_embed_total(args):
    x = _poset(args)
    return {"poset": emb.poset_to_dict(x), "total": _ints(emb.total_half_poincare(x))}


def cmd_embed_r(args):
    x = _poset(args)
    return {"name": x.name, "total": _ints(emb.total_half_poincare(x)),
            "q_open": _ints(emb.q_open(x)), "r": _ints(emb.r_poly(x))}


def cmd_embed_verify(args):
    x = _poset(args)
    rep = emb.orbit_divisibility(x)
    try:
        emb.r_poly(x)
        rep.add("Q_open divides P_X", True)
    except MathSignal as exc:
        rep.add("Q_open divides P_X", False, f"{type(exc).__name__}: {exc}")
    t = parse_group_spec(args.group).reductive if args.group else emb.GROUP_COMPLETIONS.get(
        args.fixture or "")
    if t is not None:
        try:
            quot = emb.group_completion_quotient(t, x)
            rep.add(f"flag polynomial of {t} divides P_X", True, f"quotient {quot}")
        except MathSignal as exc:
            rep.add(f"flag polynomial of {t} divides P_X", False, str(exc))
    return {"report": rep.to_dict()}


def cmd_oracle_order(args):
    if args.g:
        eq = fq.realize_group(parse_group_spec(args.g))
    elif args.kind:
        eq = fq.MatrixGroupEquations(args.kind, args.n, ambient=args.ambient)
    else:
        raise UsageError("give --g SPEC or --kind KIND --n N")
    order = fq.enumerate_order(eq, args.p)
    t = eq.reductive_type()
    formula = fq.order_formula(t, 0, args.p)
    return {"group": str(eq), "type": str(t), "p": str(args.p), "order": str(order),
            "formula": str(formula), "agree": order == formula}


def cmd_oracle_count(args):
    p = _pair(args)
    got = fq.homogeneous_count(p, args.p)
    want = hom.point_count(p, args.p)
    return {"pair": str(p), "p": str(args.p), "enumerated": str(got),
            "predicted": str(want), "agree": got == want}


def cmd_fixtures(args):
    if args.show:
        x = emb.fixture(args.show)
        return {"name": args.show, "text": emb.format_poset(x), "poset": emb.poset_to_dict(x)}
    return {"fixtures": list(emb.FIXTURES)}


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


def _failure_status(command, result):
    """Status for results that computed fine but report a failed check."""
    if "report" in result and not result["report"]["passed"]:
        return "CheckFailed"
    if result.get("holds") is False or result.get("agree") is False:
        return "CheckFailed"
    if result.get("matches_fseries") is False:
        return "CheckFailed"
    return "ok"


def run(argv):
    """Parse argv, execute, and return (envelope, exit code, format)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        fmt = "json" if "json" in argv else "text"
        env = {"command": None, "args": {"argv": list(argv)}, "status": "UsageError",
               "result": None, "error": str(exc)}
        return env, 2, fmt
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "format")}
    env = {"command": args.command, "args": echo, "status": "ok", "result": None}
    try:
        result = HANDLERS[args.command](args)
    except MathSignal as exc:
        env.update(status=type(exc).__name__, error=str(exc))
        return env, 1, args.format
    except (UsageError, ValueError, OSError) as exc:
        env.update(status=type(exc).__name__, error=str(exc))
        return env, 2, args.format
    except Exception as exc:  # the contract is an envelope, never a traceback
        env.update(status=type(exc).__name__, error=str(exc))
        return env, 1, args.format
    env["result"] = result
    env["status"] = _failure_status(args.command, result)
    return env, (0 if env["status"] == "ok" else 1), args.format


# -- rendering --

def _t(strs, latex=False):
    return format_poly(_poly(strs).coeffs, "t", 2, latex=latex)


def _z(strs, latex=False):
    return format_poly(_poly(strs).coeffs, "z", 1, latex=latex)


def _report_text(rep):
    lines = []
    for item in rep["items"]:
        mark = "PASS" if item["passed"] else "FAIL"
        lines.append(f"[{mark}] {item['name']}" + (f": {item['detail']}" if item["detail"] else ""))
    bad = sum(not i["passed"] for i in rep["items"])
    lines.append("all checks passed" if not bad else f"{bad} check(s) failed")
    return "\n".join(lines)


def _rf_text(rf, latex=False):
    num = format_poly(_poly(rf["num"]).coeffs, "t", 1, latex)
    den = format_poly(_poly(rf["den"]).coeffs, "t", 1, latex)
    if den == "1":
        return num
    if latex:
        return f"\\frac{{{num}}}{{{den}}}"
    return f"{num} / ({den})" if "+" not in num and "-" not in num[1:] else f"({num}) / ({den})"


def render(env, fmt="text"):
    if fmt == "json":
        return json.dumps(env, indent=2, sort_keys=True)
    latex = fmt == "latex"
    if env["status"] not in ("ok", "CheckFailed") or env["result"] is None:
        return f"status: {env['status']}\n{env.get('error', '')}"
    cmd, r = env["command"], env["result"]
    show_z = env["args"].get("z", False)
    lines = []

    def poly_line(name, strs):
        lines.append(f"{name}(t) = {_t(strs, latex)}")
        if show_z:
            lines.append(f"{name} in z = t^2: {_z(strs, latex)}")

    if cmd == "degrees":
        lines.append(f"{r['group']}: degrees {', '.join(r['degrees'])}; rank {r['rank']}, "
                     f"u {r['u']}, dim {r['dim']}, |W| = {r['weyl_order']}")
    elif cmd in ("fseries", "molien"):
        lines.append(f"F(t) = {_rf_text(r['ratfunc'], latex)}")
        if "series" in r:
            lines.append("series: " + ", ".join(r["series"]))
        if "order" in r:
            lines.append(f"|W| = {r['order']}")
        if "matches_fseries" in r:
            lines.append(f"matches degree table: {r['matches_fseries']}")
    elif cmd == "flagpoly":
        poly_line("P_F", r["poly"])
    elif cmd == "qpoly":
        poly_line("Q", r["q"])
    elif cmd == "poincare":
        poly_line("P", r["p"])
    elif cmd == "epoly":
        p = _poly(r["p"])
        lines.append(f"E(s,t) = {hom.e_render(p, latex)}")
    elif cmd == "count":
        lines.append(f"|(G/H)(F_{r['q']})| = {r['count']}")
    elif cmd == "zpoly":
        poly_line("P_Z", r["z_poly"])
        lines.append(f"duality: {r['duality']}")
    elif cmd in ("verify1", "embed-verify"):
        lines.append(_report_text(r["report"]))
    elif cmd == "chain":
        lines.append(f"{r['chain']}: Q_G/K = ({_t(r['q_gk'], latex)}), Q_G/H * Q_H/K = "
                     f"({_t(r['q_gh'], latex)}) * ({_t(r['q_hk'], latex)}); holds: {r['holds']}")
    elif cmd == "embed-total":
        poly_line("P_X", r["total"])
    elif cmd == "embed-r":
        poly_line("P_X", r["total"])
        poly_line("Q", r["q_open"])
        poly_line("R", r["r"])
    elif cmd == "oracle-order":
        lines.append(f"|{r['group']}(F_{r['p']})| = {r['order']} (formula for {r['type']}: "
                     f"{r['formula']}); agree: {r['agree']}")
    elif cmd == "oracle-count":
        lines.append(f"{r['pair']} over F_{r['p']}: enumerated {r['enumerated']}, "
                     f"predicted {r['predicted']}; agree: {r['agree']}")
    elif cmd == "fixtures":
        lines.append(r["text"].rstrip() if "text" in r else "\n".join(r["fixtures"]))
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--z", action="store_true", help="also show polynomials in z = t^2")

    pair_args = argparse.ArgumentParser(add_help=False)
    pair_args.add_argument("--g", required=True, help="group spec, e.g. 'SO(6)' or 'B2xT1+U4'")
    pair_args.add_argument("--h", help="connected subgroup spec")
    pair_args.add_argument("--h-weyl", help="generator file for a disconnected subgroup's Weyl data")
    pair_args.add_argument("--h-u", type=int, help="positive-root count of the identity component")
    pair_args.add_argument("--h-unipotent", type=int, default=0)

    poset_args = argparse.ArgumentParser(add_help=False)
    poset_args.add_argument("--fixture")
    poset_args.add_argument("--file")

    parser = _Parser(prog="homspace",
                     description="Virtual Poincare polynomials of homogeneous spaces and their embeddings.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("degrees", "flagpoly"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--g", required=True)
    sp = sub.add_parser("fseries", parents=[common])
    sp.add_argument("--g", required=True)
    sp.add_argument("--order", type=int)
    sp = sub.add_parser("molien", parents=[common])
    sp.add_argument("--g")
    sp.add_argument("--weyl")
    for name in ("qpoly", "poincare", "epoly", "zpoly", "verify1"):
        sub.add_parser(name, parents=[common, pair_args])
    sp = sub.add_parser("count", parents=[common, pair_args])
    sp.add_argument("--q", type=int, required=True)
    sp = sub.add_parser("chain", parents=[common])
    for flag in ("--g", "--h", "--k"):
        sp.add_argument(flag, required=True)
    for name in ("embed-total", "embed-r"):
        sub.add_parser(name, parents=[common, poset_args])
    sp = sub.add_parser("embed-verify", parents=[common, poset_args])
    sp.add_argument("--group", help="group type when X is a completion of a group")
    sp = sub.add_parser("oracle-order", parents=[common])
    sp.add_argument("--g")
    sp.add_argument("--kind", choices=("GL", "SL", "SO", "Sp", "torus"))
    sp.add_argument("--n", type=int)
    sp.add_argument("--ambient")
    sp.add_argument("--p", type=int, required=True)
    sp = sub.add_parser("oracle-count", parents=[common, pair_args])
    sp.add_argument("--p", type=int, required=True)
    sp = sub.add_parser("fixtures", parents=[common])
    sp.add_argument("--show")
    return parser


def main(argv=None):
    env, code, fmt = run(sys.argv[1:] if argv is None else argv)
    print(render(env, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())

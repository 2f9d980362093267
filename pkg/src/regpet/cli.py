"""Command-line front end.

Every number printed here is computed by a library call; the CLI only parses
arguments, orchestrates, and serializes.  Floats are emitted with 17
significant digits; deterministic mode gives byte-identical output across
runs and thread counts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__, acceptance, cache, cmtraces, cocycle, kloosterman, \
    lseries, qseries, regprod, specfun, weil

SCHEMA_VERSION = 1


def _fmt(x):
    """17-significant-digit round-trippable float formatting."""
    if isinstance(x, float):
        return float(format(x, ".17g"))
    if isinstance(x, complex):
        return {"re": _fmt(x.real), "im": _fmt(x.imag)}
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def _emit(payload: dict, out: str | None) -> None:
    payload = {"schema": SCHEMA_VERSION, "version": __version__, **payload}
    text = json.dumps(_fmt(payload), indent=2, sort_keys=True)
    if out:
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _form(selector: str, order: int) -> qseries.QSeries:
    """Form selectors: f1, f2, fm:3, j, J, E4, E6, Delta, eta24, wh:k:m."""
    s = selector
    if s in ("E4", "E6", "Delta", "eta24", "j"):
        return qseries.classical_form(s, order)
    if s == "J":
        return qseries.classical_form("j", order) - 744
    if s.startswith("f") and s[1:].isdigit():
        return qseries.faber_basis(int(s[1:]), order)
    if s.startswith("fm:"):
        return qseries.faber_basis(int(s.split(":")[1]), order)
    if s.startswith("wh:"):
        _, k, m = s.split(":")
        return qseries.wh_basis(int(k), int(m), order)
    raise SystemExit(f"unknown form selector {selector!r}")


def cmd_basis(args) -> int:
    f = qseries.classical_form(args.family, args.order, m=args.m, k=args.k)
    _emit({"command": "basis", "label": f.label,
           "series": f.to_json_dict()}, args.out)
    return 0


def cmd_specfun(args) -> int:
    z = complex(args.z)
    phi = args.phi
    if args.fn == "E":
        v = specfun.exp_integral(Fraction(args.r).limit_denominator(2), z, phi=phi)
    elif args.fn == "Gamma":
        v = specfun.gamma_upper(Fraction(args.r).limit_denominator(2), z, phi=phi)
    elif args.fn == "W":
        v = specfun.w_k(Fraction(args.r).limit_denominator(2), z)
    elif args.fn == "F":
        v = specfun.bessel_F(z.real)
    elif args.fn == "digamma":
        v = specfun.digamma(z)
    else:
        raise SystemExit(f"unknown function {args.fn!r}")
    _emit({"command": "specfun", "fn": args.fn, "r": args.r, "z": str(z),
           "phi": phi, "value": complex(v.value), "abs_err": v.abs_err},
          args.out)
    return 0


def cmd_weil(args) -> int:
    factors = []
    for part in args.factors.split(","):
        n, r = part.split(":")
        factors.append((int(n), Fraction(r)))
    A = weil.fqm_create(factors)
    T, S = weil.rho_matrices(A, dual=args.dual)
    _emit({"command": "weil", "module": A.to_json_dict(),
           "rho_T": [[complex(x) for x in row] for row in T],
           "rho_S": [[complex(x) for x in row] for row in S]}, args.out)
    return 0


def cmd_kloosterman(args) -> int:
    val = kloosterman.kloosterman_sum(args.m, args.n, args.c)
    _emit({"command": "kloosterman", "m": args.m, "n": args.n, "c": args.c,
           "value": val}, args.out)
    return 0


def cmd_traces(args) -> int:
    order = args.order
    f = _form(args.f, order)
    rows = []
    if args.disc < 0:
        t = cmtraces.cm_trace(f, args.disc)
    else:
        t = cmtraces.cycle_trace(f, args.disc)
    rows.append([t.disc, t.value, t.est_err])
    if args.csv:
        cache.write_rows(args.csv, ["disc", "value", "err"], rows)
    _emit({"command": "traces", "f": args.f, "disc": args.disc,
           "kind": t.kind, "value": t.value, "err": t.est_err}, args.out)
    return 0


def cmd_g1(args) -> int:
    coeffs = cmtraces.g1_coefficients(args.nmax)
    rows = [[n, v, 0.0] for n, v in sorted(coeffs.items())]
    if args.csv:
        cache.write_rows(args.csv, ["disc", "value", "err"], rows)
    _emit({"command": "g1", "nmax": args.nmax,
           "coefficients": {str(n): v for n, v in sorted(coeffs.items())}},
          args.out)
    return 0


def cmd_inner_product(args) -> int:
    if args.threads:
        kloosterman.set_threads(args.threads)
    routes = {}
    forms = {}
    for side in (args.left, args.right):
        if not (side.startswith("f") and side[1:].isdigit()):
            raise SystemExit("inner-product operates on the weight-0 basis "
                             "forms f1, f2, ... (use --left f1 --right f2)")
        forms[side] = int(side[1:])
    m, n = forms[args.left], forms[args.right]
    want = args.route
    if want in ("kloosterman", "all"):
        est = kloosterman.product_route_A(m, n, args.cmax,
                                          deterministic=args.deterministic)
        routes["kloosterman"] = {"value": est.value, "err": est.tail_estimate,
                                 "c_max": est.c_max}
        if args.csv:
            cache.write_rows(args.csv, ["c", "partial_sum"],
                             [[c, format(v, ".17g")]
                              for c, v in est.partial_sums])
    if want in ("quadrature", "all"):
        fa = qseries.faber_basis(m, args.order)
        fb = qseries.faber_basis(n, args.order)
        rb = regprod.product_route_B_scalar(fa, fb, 0, quad_tol=args.tol)
        routes["quadrature"] = {"value": rb.value, "err": rb.err}
    if want in ("pairing", "all"):
        # Thm 4.2 route: <f_m, f_n> = {f_m, 4 pi F_n}; the only surviving
        # cross term is -4 pi L_{n,m}, whose value comes from the same
        # Kloosterman-Bessel series the harmonic coefficients are built from
        est = kloosterman.dit_coefficient(n, m, args.cmax,
                                          deterministic=args.deterministic)
        fa = qseries.faber_basis(m, args.order)
        val = regprod.product_route_C(fa, {m: -4 * math.pi * est.value})
        routes["pairing"] = {"value": val, "err": 4 * math.pi * est.tail_estimate}
    vals = [complex(r["value"]).real for r in routes.values()]
    dev = max(vals) - min(vals) if len(vals) > 1 else 0.0
    payload = {"command": "inner-product", "left": args.left,
               "right": args.right, "routes": routes,
               "max_route_deviation": dev,
               "parameters": {"cmax": args.cmax, "order": args.order,
                              "tol": args.tol,
                              "deterministic": args.deterministic}}
    _emit(payload, args.out)
    if len(vals) > 1 and dev > max(1e-2 * max(abs(v) for v in vals), 0.5):
        return 1
    return 0


def cmd_lvalue(args) -> int:
    g = _form(args.g, args.order)
    lv = lseries.lstar(g, Fraction(args.s).limit_denominator(2), args.t0,
                       constant_mode=args.constant_mode)
    _emit({"command": "lvalue", "g": args.g, "s": args.s, "t0": args.t0,
           "constant_mode": args.constant_mode,
           "value": complex(lv.value), "err": lv.err}, args.out)
    return 0


def cmd_theorem13(args) -> int:
    horo, horo_vec, herr = lseries.horocycle_theorem13()
    f1 = qseries.faber_basis(1, 48)
    lv = lseries.lstar(f1, 0, args.t0)
    l_route = 3 / (4 * math.pi) * complex(lv.value).real
    g1 = cmtraces.g1_vector_form(args.nmax)
    rb = regprod.product_route_B_vector(g1, g1)
    quad_route = 1.5 * rb.value.real
    vals = [horo, l_route, quad_route]
    dev = max(abs(a - b) / max(abs(a), abs(b))
              for i, a in enumerate(vals) for b in vals[i + 1:])
    _emit({"command": "theorem13", "horocycle": horo,
           "lvalue_route": l_route, "quadrature_route": quad_route,
           "vector_normalized": horo_vec, "max_pairwise_dev": dev},
          args.out)
    return 0 if dev < 1e-4 else 1


def cmd_taylor_check(args) -> int:
    f = (qseries.eisenstein(4, 40) * qseries.eisenstein(6, 40)) \
        / qseries.delta(40) if args.k == -2 else None
    if f is None:
        raise SystemExit("taylor-check ships the weight -2 case (--k -2)")
    lhs, rhs, info = lseries.taylor_check(f, args.n, dps=args.dps, h=args.h)
    _emit({"command": "taylor-check", "k": args.k, "n": args.n,
           "lhs": lhs, "rhs": rhs, **info}, args.out)
    return 0 if info["rel_err"] < 1e-5 else 1


def cmd_cocycle_check(args) -> int:
    f = _form(args.f, args.order)
    if f.weight is not None and int(f.weight) != args.k:
        raise SystemExit(f"form {args.f} has weight {f.weight}, not {args.k}")
    ev = cocycle.CocycleEvaluator(f)
    if args.points:
        with open(args.points) as fh:
            pts = [complex(p[0], p[1]) for p in json.load(fh)]
    else:
        pts = [0.4 + 0.9j, -0.3 + 1.5j, 0.25 + 0.7j]
    res = cocycle.period_residuals(ev, pts)
    fs_dev = max(abs(cocycle.f_s_eval(ev, t).value - cocycle.f_s_from_g(ev, t))
                 for t in pts)
    rel = max(cocycle.eichler_relation_check(ev, t)
              for t in pts if t.real > 0)
    payload = {"command": "cocycle-check", "f": args.f,
               "points": [[t.real, t.imag] for t in pts],
               "residuals": {**res, "F_S_two_route": fs_dev,
                             "boundary_identity": rel}}
    _emit(payload, args.out)
    worst = max(res.values()) if res else 1.0
    return 0 if worst < 1e-7 and fs_dev < 1e-7 and rel < 1e-6 else 1


def cmd_reproduce_all(args) -> int:
    results = acceptance.run_all(only=args.only, c_max=args.cmax, dps=args.dps)
    board = acceptance.scoreboard(results)
    print(board)
    if args.out:
        os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
        with open(args.out, "w") as fh:
            json.dump(_fmt({"schema": SCHEMA_VERSION, "results": results}),
                      fh, indent=2, sort_keys=True)
            fh.write("\n")
        with open(os.path.splitext(args.out)[0] + ".md", "w") as fh:
            fh.write("```\n" + board + "\n```\n")
    return 0 if all(r["passed"] for r in results) else 1


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="regpet",
        description="Regularized Petersson inner products of weakly "
                    "holomorphic modular forms, cross-validated.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON result here as well")
        sp.add_argument("--order", type=int, default=64,
                        help="q-expansion truncation order")

    sp = sub.add_parser("basis", help="emit an exact classical-form expansion")
    sp.add_argument("--family", required=True,
                    choices=["E4", "E6", "Delta", "eta24", "j", "faber",
                             "wh_basis", "weight2_basis"])
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--k", type=int, default=0)
    common(sp)
    sp.set_defaults(handler=cmd_basis)

    sp = sub.add_parser("specfun", help="evaluate a special function")
    sp.add_argument("fn", choices=["E", "Gamma", "W", "F", "digamma"])
    sp.add_argument("--r", type=float, default=1.0, help="(half-integer) order")
    sp.add_argument("--z", default="1", help="argument, python complex syntax")
    sp.add_argument("--phi", type=float, default=None, help="branch angle")
    common(sp)
    sp.set_defaults(handler=cmd_specfun)

    sp = sub.add_parser("weil", help="finite quadratic module report")
    sp.add_argument("--factors", default="2:1/4",
                    help="cyclic factors n:r meaning Q(x) = r x^2, comma-separated")
    sp.add_argument("--dual", action="store_true")
    common(sp)
    sp.set_defaults(handler=cmd_weil)

    sp = sub.add_parser("kloosterman", help="a single Kloosterman sum")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    common(sp)
    sp.set_defaults(handler=cmd_kloosterman)

    sp = sub.add_parser("traces", help="CM or cycle trace of a modular function")
    sp.add_argument("--f", default="J", help="form selector (J, f1, fm:3, j)")
    sp.add_argument("--disc", type=int, required=True)
    sp.add_argument("--csv", help="also write disc,value,err rows here")
    common(sp)
    sp.set_defaults(handler=cmd_traces)

    sp = sub.add_parser("g1", help="integer coefficients of the weight-3/2 form")
    sp.add_argument("--nmax", type=int, default=40)
    sp.add_argument("--csv", help="also write disc,value,err rows here")
    common(sp)
    sp.set_defaults(handler=cmd_g1)

    sp = sub.add_parser("inner-product", help="cross-route inner product")
    sp.add_argument("--left", default="f1")
    sp.add_argument("--right", default="f2")
    sp.add_argument("--route", default="all",
                    choices=["kloosterman", "quadrature", "pairing", "all"])
    sp.add_argument("--cmax", type=int, default=100_000)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--threads", type=int, default=None)
    sp.add_argument("--deterministic", action="store_true", default=True)
    sp.add_argument("--csv", help="write the Kloosterman block partial sums here")
    common(sp)
    sp.set_defaults(handler=cmd_inner_product)

    sp = sub.add_parser("lvalue", help="completed L-function value")
    sp.add_argument("--g", default="f1")
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--t0", type=float, default=1.0)
    sp.add_argument("--constant-mode", default="limit",
                    choices=["limit", "drop"])
    common(sp)
    sp.set_defaults(handler=cmd_lvalue)

    sp = sub.add_parser("theorem13", help="three-way <g1,g1> comparison")
    sp.add_argument("--t0", type=float, default=1.0)
    sp.add_argument("--nmax", type=int, default=48)
    common(sp)
    sp.set_defaults(handler=cmd_theorem13)

    sp = sub.add_parser("taylor-check", help="Taylor-coefficient L-value identity")
    sp.add_argument("--k", type=int, default=-2)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--dps", type=int, default=40)
    sp.add_argument("--h", type=float, default=0.02)
    common(sp)
    sp.set_defaults(handler=cmd_taylor_check)

    sp = sub.add_parser("cocycle-check", help="error-of-modularity residuals")
    sp.add_argument("--f", default="f1")
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--points", help="JSON file of [re, im] sample points")
    common(sp)
    sp.set_defaults(handler=cmd_cocycle_check)

    sp = sub.add_parser("reproduce-all", help="run the acceptance scoreboard")
    sp.add_argument("--only", nargs="*", help="criterion ids, e.g. A1 A4")
    sp.add_argument("--cmax", type=int, default=100_000)
    sp.add_argument("--dps", type=int, default=40)
    sp.add_argument("--out", help="write JSON results (and a .md scoreboard)")
    sp.set_defaults(handler=cmd_reproduce_all)
    return p


def main(argv=None) -> int:
    if os.environ.get("REGPET_THREADS"):
        kloosterman.set_threads()
    args = make_parser().parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())

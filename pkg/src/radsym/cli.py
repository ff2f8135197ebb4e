"""Command-line front end: ``radsym``.

Subcommands
    sum      classical Dedekind sum s(a, c)
    symbol   Dedekind / Rademacher symbols on modular groups
    period   periods of canonical cuspidal differentials
    torsion  Manin-Drinfeld torsion certificates for cuspidal divisors
    cusps    cusp representatives, widths, stabilizers
    cosets   coset representatives of a congruence subgroup in SL2(Z)
    verify   built-in consistency suites

Exit codes: 0 success, 1 domain error, 2 precision or reconstruction
failure (partial output still emitted).  The environment variable
RADSYM_DIGITS overrides the default working precision.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import random
import sys
from fractions import Fraction

from .dedekind import (
    cocycle_defect,
    dedekind_sum,
    phi_classical,
    psi_classical,
)
from .modgroup import (
    Cusp,
    Family,
    GroupElement,
    GroupId,
    T,
    classify,
    cosets,
    cusp_stabilizer_generator,
    cusps,
    parse_matrix,
    schreier_generators,
)
from .periods import (
    Divisor,
    divisor_period,
    period_numeric,
    torsion_certificate,
    x0_period_exact,
)
from .symbols import (
    PrecisionCtx,
    SymbolValue,
    lift_coset_sum,
    phi_general,
    psi_gamma,
    psi_general,
)

_FAMILIES = {
    "sl2z": lambda n: GroupId.sl2z(),
    "gamma": GroupId.gamma,
    "gamma0": GroupId.gamma0,
    "gamma1": GroupId.gamma1,
    "gamma0+": GroupId.gamma0_plus,
}


def _group_from_args(args) -> GroupId:
    fam = args.group
    if fam not in _FAMILIES:
        raise ValueError(f"unknown group family '{fam}'")
    if fam == "sl2z":
        return GroupId.sl2z()
    level = getattr(args, "level", None)
    if not level:
        raise ValueError(f"group family '{fam}' needs --level")
    return _FAMILIES[fam](level)


def _parse_divisor(text: str, G: GroupId) -> Divisor:
    coeffs = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        cu, _, mult = part.rpartition(":")
        if not cu:
            raise ValueError(f"divisor term '{part}' is not cusp:multiplicity")
        coeffs[cu] = coeffs.get(cu, 0) + int(mult)
    return Divisor.from_dict(G, coeffs)


def _ctx_from_args(args) -> PrecisionCtx:
    digits = getattr(args, "digits", None)
    if digits is None:
        digits = int(os.environ.get("RADSYM_DIGITS", "60"))
    return PrecisionCtx(digits=digits)


def _value_json(v: SymbolValue):
    if v.is_rational:
        return str(v.rational)
    return {"approx": v.approx, "err": v.error}


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_sum(args) -> int:
    v = dedekind_sum(args.a, args.c)
    _emit(args, {"value": str(v), "a": args.a, "c": args.c}, str(v))
    return 0


def _method_name(G: GroupId, v: SymbolValue) -> str:
    fam = {
        Family.SL2Z: "classical",
        Family.GAMMA_N: "principal-level",
        Family.GAMMA0_N: "hecke-level",
        Family.GAMMA1_N: "hecke-level-1",
        Family.GAMMA0N_PLUS: "fricke-extended",
    }[G.family]
    return f"{fam}/{v.kind}"


def _symbol_one(G: GroupId, cusp: Cusp, g: GroupElement,
                ctx: PrecisionCtx, want_phi: bool) -> SymbolValue:
    fn = phi_general if want_phi else psi_general
    return fn(G, cusp, g, ctx)


def _cmd_symbol(args) -> int:
    G = _group_from_args(args)
    cusp = Cusp.from_str(args.cusp)
    ctx = _ctx_from_args(args)
    matrices = []
    if args.matrix:
        matrices.append(parse_matrix(args.matrix))
    if args.input:
        with open(args.input) as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    matrices.append(parse_matrix(line))
    if not matrices:
        raise ValueError("no matrix given (--matrix or --input)")

    def work(g):
        return _symbol_one(G, cusp, g, ctx, args.phi)

    if args.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(args.workers) as pool:
            values = list(pool.map(work, matrices))
    else:
        values = [work(g) for g in matrices]

    status = 0
    rows = []
    for g, v in zip(matrices, values):
        rows.append((g, v))
        if not v.is_rational:
            status = 2
    if args.csv:
        print("matrix,value,method")
        for g, v in rows:
            val = str(v.rational) if v.is_rational else f"~{v.approx}"
            print(f"\"{g}\",{val},{_method_name(G, v)}")
        return status
    for g, v in rows:
        payload = {
            "group": str(G),
            "cusp": str(cusp),
            "matrix": str(g),
            "symbol": "phi" if args.phi else "psi",
            "value": _value_json(v),
            "method": _method_name(G, v),
            "trace_class": str(classify(g)),
        }
        _emit(args, payload, str(v))
    return status


def _cmd_period(args) -> int:
    g = parse_matrix(args.matrix)
    if args.divisor is not None:
        G = _group_from_args(args)
        D = _parse_divisor(args.divisor, G)
        v = divisor_period(D, g, _ctx_from_args(args))
        _emit(args, {"group": str(G), "divisor": str(D), "matrix": str(g),
                     "value": _value_json(v)}, str(v))
        return 0 if v.is_rational else 2
    if args.numeric:
        v = period_numeric(g, args.tol)
        _emit(args, {"matrix": str(g), "value": _value_json(v),
                     "method": "eisenstein-quadrature"},
              f"{v.approx:.12g}")
        return 0
    if args.level:
        v = x0_period_exact(args.level, g)
        _emit(args, {"matrix": str(g), "level": args.level,
                     "value": str(v), "method": "x0-exact"}, str(v))
        return 0
    raise ValueError("period needs --numeric, --level N, or --divisor")


def _cmd_torsion(args) -> int:
    G = _group_from_args(args)
    D = _parse_divisor(args.divisor, G)
    cert = torsion_certificate(G, D, _ctx_from_args(args))
    payload = {
        "group": str(G),
        "divisor": str(D),
        "order": cert.order,
        "status": cert.status,
        "generators": [str(g) for g in cert.generators],
        "periods": [_value_json(p.value) for p in cert.periods],
    }
    _emit(args, payload, str(cert))
    return 0 if cert.order is not None else 2


def _cmd_cusps(args) -> int:
    G = _group_from_args(args)
    out = []
    for cu, w, _s in cusps(G):
        gen = cusp_stabilizer_generator(G, cu)
        out.append({"cusp": str(cu), "width": str(w), "stabilizer": str(gen)})
    if getattr(args, "json", False):
        print(json.dumps({"group": str(G), "cusps": out}, sort_keys=True))
    else:
        for row in out:
            print(f"{row['cusp']}\twidth {row['width']}\tstabilizer {row['stabilizer']}")
    return 0


def _cmd_cosets(args) -> int:
    G = _group_from_args(args)
    reps = cosets(G, GroupId.sl2z())
    if getattr(args, "json", False):
        print(json.dumps({"group": str(G), "index": len(reps),
                          "representatives": [str(r) for r in reps]},
                         sort_keys=True))
    else:
        print(f"index {len(reps)}")
        for r in reps:
            print(str(r))
    return 0


# ---------------------------------------------------------------------------
# verify suites


def _rand_sl2z(rng, steps=8) -> GroupElement:
    S = GroupElement(0, -1, 1, 0)
    g = GroupElement.identity()
    for _ in range(rng.randint(2, steps)):
        g = g * T ** rng.randint(-3, 3) * S
    return g


def _rand_subgroup(rng, G: GroupId, steps=6) -> GroupElement:
    n = G.level
    A = T ** n
    B = GroupElement(1, 0, n, 1)
    g = GroupElement.identity()
    for _ in range(rng.randint(2, steps)):
        g = g * (A if rng.random() < 0.5 else B) ** (rng.randint(-2, 2) or 1)
    return g


def _suite_reciprocity(args):
    from math import gcd
    failures = []
    for c in range(1, args.count + 1):
        for a in range(1, c):
            if gcd(a, c) != 1:
                continue
            lhs = dedekind_sum(a, c) + dedekind_sum(c, a)
            rhs = Fraction(-1, 4) + (Fraction(a, c) + Fraction(c, a)
                                     + Fraction(1, a * c)) / 12
            if lhs != rhs:
                failures.append((a, c))
    return failures


def _suite_cocycle(args):
    rng = random.Random(args.seed)
    G = GroupId.sl2z()
    inf = Cusp.infinity()
    failures = []
    for _ in range(args.count):
        g1, g2 = _rand_sl2z(rng), _rand_sl2z(rng)
        d = cocycle_defect(G, inf, g1, g2, phi_classical(g1),
                           phi_classical(g2), phi_classical(g1 * g2))
        if d != 0:
            failures.append((g1, g2, d))
    return failures


def _suite_coset_sum(args):
    rng = random.Random(args.seed)
    n = args.level or 2
    G1 = GroupId.gamma(n)
    ctx = _ctx_from_args(args)
    failures = []
    trials = 0
    while trials < max(5, args.count // 50):
        g = _rand_subgroup(rng, G1)
        if abs(g.trace) <= 2:
            continue
        trials += 1
        if g.trace < 0:
            g = -g
        lifted = lift_coset_sum(G1, GroupId.sl2z(),
                                lambda x: psi_gamma(n, Cusp.infinity(), x, ctx),
                                g)
        target = psi_classical(g)
        if lifted.is_rational:
            ok = lifted.as_fraction() == target
        else:
            ok = abs(lifted.approx - float(target)) < 1e-20
        if not ok:
            failures.append((g, str(lifted), target))
    return failures


def _suite_lemma(args):
    rng = random.Random(args.seed)
    failures = []
    checked = 0
    while checked < max(10, args.count // 100):
        g = _rand_sl2z(rng)
        if abs(g.trace) <= 2 or g.c == 0:
            continue
        checked += 1
        if g.trace < 0:
            g = -g
        p = period_numeric(g, args.tol)
        if abs(p.approx - float(psi_classical(g))) > args.tol:
            failures.append((g, p.approx, psi_classical(g)))
    return failures


def _suite_oracle_consistency(args):
    ctx = _ctx_from_args(args)
    failures = []
    levels = [args.level] if args.level else [2, 3, 5, 7, 11]
    for n in levels:
        G = GroupId.gamma0(n)
        zero, inf = Cusp(0, 1), Cusp.infinity()
        for g in schreier_generators(G):
            if g.canonical().is_identity():
                continue
            lhs = (psi_general(G, zero, g, ctx).as_fraction()
                   - psi_general(G, inf, g, ctx).as_fraction()) * (n - 1)
            rhs = x0_period_exact(n, g)
            if lhs != rhs:
                failures.append((n, g, lhs, rhs))
    return failures


_SUITES = {
    "reciprocity": _suite_reciprocity,
    "cocycle": _suite_cocycle,
    "coset-sum": _suite_coset_sum,
    "lemma": _suite_lemma,
    "oracle-consistency": _suite_oracle_consistency,
}


def _cmd_verify(args) -> int:
    if args.suite not in _SUITES:
        raise ValueError(f"unknown suite '{args.suite}' "
                         f"(choose from {', '.join(sorted(_SUITES))})")
    failures = _SUITES[args.suite](args)
    status = "PASS" if not failures else "FAIL"
    if getattr(args, "json", False):
        print(json.dumps({"suite": args.suite, "status": status,
                          "failures": [repr(f) for f in failures[:20]]},
                         sort_keys=True))
    else:
        print(f"{args.suite}: {status}")
        for f in failures[:20]:
            print(f"  counterexample: {f!r}")
    return 0 if not failures else 1


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="radsym",
        description="Dedekind sums, Rademacher symbols on modular groups, "
                    "cuspidal periods and torsion certificates.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_group_opts(sp, default_group=None):
        sp.add_argument("--group", default=default_group,
                        choices=sorted(_FAMILIES),
                        required=default_group is None)
        sp.add_argument("--level", type=int, default=None)

    def add_common(sp):
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--digits", type=int, default=None,
                        help="working precision (default $RADSYM_DIGITS or 60)")

    sp = sub.add_parser("sum", help="classical Dedekind sum s(a, c)")
    sp.add_argument("a", type=int)
    sp.add_argument("c", type=int)
    add_common(sp)
    sp.set_defaults(fn=_cmd_sum)

    sp = sub.add_parser("symbol", help="Rademacher/Dedekind symbol of a matrix")
    add_group_opts(sp)
    sp.add_argument("--cusp", default="inf")
    sp.add_argument("--matrix", default=None, help='entries "a,b,c,d[;e]"')
    sp.add_argument("--input", default=None, help="file with one matrix per line")
    sp.add_argument("--phi", action="store_true",
                    help="Dedekind symbol Phi instead of Rademacher Psi")
    sp.add_argument("--csv", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    add_common(sp)
    sp.set_defaults(fn=_cmd_symbol)

    sp = sub.add_parser("period", help="periods of cuspidal differentials")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--numeric", action="store_true",
                    help="Eisenstein quadrature along the geodesic axis")
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--group", default="gamma0", choices=sorted(_FAMILIES))
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--divisor", default=None,
                    help='degree-zero divisor "cusp:mult,..."')
    add_common(sp)
    sp.set_defaults(fn=_cmd_period)

    sp = sub.add_parser("torsion", help="Manin-Drinfeld torsion certificate")
    add_group_opts(sp, default_group="gamma0")
    sp.add_argument("--divisor", required=True,
                    help='degree-zero divisor "cusp:mult,...", e.g. "0:-1,inf:1"')
    add_common(sp)
    sp.set_defaults(fn=_cmd_torsion)

    sp = sub.add_parser("cusps", help="cusp representatives of a group")
    add_group_opts(sp)
    add_common(sp)
    sp.set_defaults(fn=_cmd_cusps)

    sp = sub.add_parser("cosets", help="coset representatives in SL2(Z)")
    add_group_opts(sp)
    add_common(sp)
    sp.set_defaults(fn=_cmd_cosets)

    sp = sub.add_parser("verify", help="run a built-in consistency suite")
    sp.add_argument("suite", choices=sorted(_SUITES))
    sp.add_argument("--level", type=int, default=None)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--seed", type=int, default=20260101)
    sp.add_argument("--count", type=int, default=500)
    add_common(sp)
    sp.set_defaults(fn=_cmd_verify)

    return p


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()

"""Command-line front end.

Every subcommand prints one JSON document.  Exit status: 0 on success,
1 when a verification fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .cartier import from_shuffle, to_shuffle
from .coeff import L, ParseError, Poly, parse_poly
from .freebax import ShuffleElement, UnboundGenerator, WeightMismatch, shuffle_plus
from .hopf import AXIOMS, DPElement, antipode_table, basis, dp_antipode, dp_delta, dp_mul, dp_verify
from .instances import INSTANCES, check_baxter, make_instance
from .series import SeriesError, parse_series
from .standard import spitzer_sides, std_embed, waring_check
from .umbral import (
    PolySeq,
    bernoulli_poly,
    divided_power_basis,
    dual_basis,
    lambda_binomial_check,
    phi_poly,
)


class UsageError(Exception):
    pass


def _weight(text: Optional[str], default=L) -> Poly:
    if text is None:
        return Poly.coerce(default)
    w = parse_poly(text)
    if not (w.is_constant() or w == L):
        raise UsageError(f"--lambda must be L or a rational, got {text!r}")
    return w


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


def _dp(text: str) -> DPElement:
    """``"e0 + 2*L*e3"``: a combination of basis symbols ``e<n>``."""
    p = parse_poly(text)
    out = {}
    for mono, c in p.items():
        idx = [(name, e) for name, e in mono if name.startswith("e") and name[1:].isdigit()]
        if len(idx) != 1 or idx[0][1] != 1:
            raise UsageError(f"{text!r}: every term needs exactly one basis symbol e<n>")
        rest = Poly({tuple(v for v in mono if v != idx[0]): c})
        n = int(idx[0][0][1:])
        out[n] = out.get(n, Poly()) + rest
    return DPElement(out)


def _dp_arg(args, name: str) -> DPElement:
    text = getattr(args, name)
    if text is not None:
        return _dp(text)
    if name == "x" and args.n is not None:
        return basis(args.n)
    raise UsageError(f"--{name} is required")


# handlers -------------------------------------------------------------


def cmd_shuffle(args):
    lam = _weight(args.lam)
    _need(args, "x")
    x = ShuffleElement.parse(args.x, lam)
    if args.op == "P":
        return x.P().to_json(), 0
    _need(args, "y")
    y = ShuffleElement.parse(args.y, lam)
    if args.op == "prod":
        return (x * y).to_json(), 0
    # mul: the mixable shuffle product of the words themselves
    out = ShuffleElement.zero(lam)
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            out = out + ShuffleElement(shuffle_plus(u, v, lam), lam).scale(cu * cv)
    return out.to_json(), 0


def cmd_cartier(args):
    lam = _weight(args.lam)
    _need(args, "x")
    x = from_shuffle(ShuffleElement.parse(args.x, lam))
    if args.op == "mul":
        _need(args, "y")
        return (x * from_shuffle(ShuffleElement.parse(args.y, lam))).to_json(), 0
    if args.op == "P":
        return x.P().to_json(), 0
    return to_shuffle(x).to_json(), 0


def cmd_hopf(args):
    lam = _weight(args.lam)
    if args.op == "verify":
        axioms = AXIOMS if args.axiom in (None, "all") else [args.axiom]
        if any(a not in AXIOMS for a in axioms):
            raise UsageError(f"unknown axiom {args.axiom!r}; choose from all, {', '.join(AXIOMS)}")
        N = 10 if args.max_n is None else args.max_n
        results = {a: dp_verify(a, N, lam) for a in axioms}
        ok = all(results.values())
        return {"max_n": N, "lambda": str(lam), "axioms": results, "pass": ok}, 0 if ok else 1
    if args.op == "antipode" and args.table:
        N = 10 if args.max_n is None else args.max_n
        return antipode_table(N, lam), 0
    x = _dp_arg(args, "x")
    if args.op == "delta":
        return dp_delta(x, lam).to_json(), 0
    if args.op == "antipode":
        return dp_antipode(x, lam).to_json(), 0
    return dp_mul(x, _dp_arg(args, "y"), lam).to_json(), 0


def cmd_std(args):
    if args.op == "embed":
        _need(args, "x")
        lam = _weight(args.lam, default=1)
        N = 4 if args.order is None else args.order
        a = ShuffleElement.parse(args.x)
        return std_embed(a, N, lam).to_json(), 0
    if args.op == "spitzer":
        N = 4 if args.order is None else args.order
        if N < 1:
            raise UsageError("--order must be at least 1")
        lhs, rhs = spitzer_sides(N)
        coeffs = [{"n": n, "lhs": str(a), "rhs": str(b)} for n, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs))]
        ok = lhs == rhs
        return {"order": N, "pass": ok, "coefficients": coeffs}, 0 if ok else 1
    m = 3 if args.m is None else args.m
    deg = 5 if args.order is None else args.order
    if m < 1 or deg < 1:
        raise UsageError("--m and --order must be at least 1")
    ok = waring_check(m, deg)
    return {"m": m, "order": deg, "pass": ok}, 0 if ok else 1


def _series_arg(args):
    _need(args, "f")
    N = 4 if args.order is None else args.order
    return parse_series(args.f, N)


def cmd_umbral(args):
    lam = _weight(args.lam)
    if args.op == "dual":
        return dual_basis(_series_arg(args), lam).to_json(), 0
    if args.op == "basis":
        f = _series_arg(args)
        return {str(n): str(d.to_poly()) for n, d in enumerate(divided_power_basis(f, lam))}, 0
    if args.seq is not None:
        seq = PolySeq([parse_poly(p) for p in args.seq.split(",")])
        source = "seq"
    else:
        seq = dual_basis(_series_arg(args), lam)
        source = "dual"
    ok = lambda_binomial_check(seq, lam)
    return {"source": source, "lambda": str(lam), "pass": ok}, 0 if ok else 1


def cmd_bernoulli(args):
    _need(args, "n")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    return {"n": args.n, "B": str(bernoulli_poly(args.n)), "Phi": str(phi_poly(args.n))}, 0


def cmd_verify(args):
    lam = None if args.lam is None else _weight(args.lam)
    alg = make_instance(args.instance, lam)
    trials = 200 if args.trials is None else args.trials
    report = check_baxter(alg, trials, args.seed)
    return report.to_json(), 0 if report.passed else 1


# parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="freebaxter", description="Free Baxter algebras, exactly.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, ops, handler, *flags):
        sp = sub.add_parser(name)
        if ops:
            sp.add_argument("op", choices=ops)
        sp.add_argument("--lambda", dest="lam", metavar="L|RATIONAL")
        for flag in flags:
            flag(sp)
        sp.set_defaults(handler=handler)
        return sp

    x = lambda sp: sp.add_argument("--x")
    y = lambda sp: sp.add_argument("--y")
    order = lambda sp: sp.add_argument("--order", type=int)
    n = lambda sp: sp.add_argument("--n", type=int)
    f = lambda sp: sp.add_argument("--f")

    add("shuffle", ["mul", "prod", "P"], cmd_shuffle, x, y)
    add("cartier", ["mul", "P", "to-shuffle"], cmd_cartier, x, y)
    add(
        "hopf",
        ["delta", "antipode", "mul", "verify"],
        cmd_hopf,
        x,
        y,
        n,
        lambda sp: sp.add_argument("--axiom"),
        lambda sp: sp.add_argument("--max-n", dest="max_n", type=int),
        lambda sp: sp.add_argument("--table", action="store_true"),
    )
    add("std", ["embed", "spitzer", "waring"], cmd_std, x, order, lambda sp: sp.add_argument("--m", type=int))
    add(
        "umbral",
        ["dual", "basis", "check-binomial"],
        cmd_umbral,
        f,
        order,
        lambda sp: sp.add_argument("--seq", help="comma-separated polynomials in x"),
    )
    add("bernoulli", None, cmd_bernoulli, n)
    add(
        "verify",
        ["baxter"],
        cmd_verify,
        lambda sp: sp.add_argument("--instance", required=True, choices=list(INSTANCES)),
        lambda sp: sp.add_argument("--trials", type=int),
        lambda sp: sp.add_argument("--seed", type=int, default=0),
    )
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, code = args.handler(args)
    except (UsageError, ParseError, SeriesError, WeightMismatch, ValueError) as exc:
        err.write(f"freebaxter: error: {exc}\n")
        return 2
    except UnboundGenerator as exc:
        err.write(f"freebaxter: error: unbound generator {exc}\n")
        return 2
    out.write(json.dumps(payload, indent=2) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

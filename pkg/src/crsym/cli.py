"""Command line front end.

Exit codes: 0 success, 1 bad input, 2 internal inconsistency (a computed
result contradicts an expected structural fact or profile).
"""
from __future__ import annotations

import argparse
import json
import sys

from .algebra import MixedPoly
from .catalog import DEFAULT_GRID, ModelSpec, build_model, check_instance, sweep_table
from .chains import (
    ChainPair,
    PurePairParams,
    chain_sum,
    pure_chain_sum_closed_form,
    pure_pair,
    verify_xpair,
)
from .errors import InputError, InternalInconsistency, InvalidParams
from .parser import parse_field, parse_polynomial
from .report import analyze
from .tangency import is_symmetry

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_params(text: str | None) -> dict:
    """``k=1,m=2`` -> ``{"k": 1, "m": 2}``; non-integer values are parsed as
    polynomials (constants such as ``tau=1+i``)."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InvalidParams(f"expected name=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        try:
            out[k] = int(v)
        except ValueError:
            out[k] = parse_polynomial(v)
    return out


def _int_values(text: str) -> list:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",") if x.strip()]


def parse_grid(text: str) -> dict:
    """Lines ``ROW name=lo..hi name=v1,v2``; ``#`` starts a comment."""
    grid = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        row, *items = line.split()
        g = grid.setdefault(row, {})
        for item in items:
            if "=" not in item:
                raise InvalidParams(f"grid line {lineno}: expected name=values, got {item!r}")
            k, v = item.split("=", 1)
            try:
                g[k] = _int_values(v)
            except ValueError:
                raise InvalidParams(f"grid line {lineno}: bad values {v!r}") from None
    return grid


def _constant(p):
    if isinstance(p, int):
        return p
    if any(m != (0,) * 6 for m in p.monomials()):
        raise InvalidParams(f"{p} is not a constant")
    return p.coeff((0,) * 6)


def cmd_analyze(args) -> int:
    P = parse_polynomial(args.poly)
    rep = analyze(P, args.strip_pluriharmonic, args.max_denominator)
    print(rep.to_json() if args.json else rep.to_text())
    return EXIT_OK


def cmd_catalog(args) -> int:
    params = parse_params(args.params)
    if args.Q:
        params["Q"] = parse_polynomial(args.Q)
    spec = ModelSpec(args.row, params)
    if not args.verify:
        print(build_model(spec))
        return EXIT_OK
    res = check_instance(spec)
    print(res.to_json())
    if res.ok:
        return EXIT_OK
    return EXIT_INPUT if res.row is None and res.error else EXIT_INTERNAL


def cmd_table_check(args) -> int:
    grid = DEFAULT_GRID
    if args.grid:
        with open(args.grid, encoding="utf-8") as fh:
            grid = parse_grid(fh.read())
    results = sweep_table(grid)
    for r in results:
        print(r.to_json())
    passed = sum(r.ok for r in results)
    print(json.dumps({"summary": {"instances": len(results), "passed": passed}}))
    return EXIT_OK if passed == len(results) else EXIT_INTERNAL


def _load_chains(path: str) -> ChainPair:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, list):
        U = V = [parse_polynomial(s) for s in data]
    elif isinstance(data, dict) and "U" in data:
        U = [parse_polynomial(s) for s in data["U"]]
        V = [parse_polynomial(s) for s in data.get("V", data["U"])]
    else:
        raise InvalidParams("chains file must be a JSON array or an object with U (and V)")
    return ChainPair(tuple(U), tuple(V))


def cmd_chains_verify(args) -> int:
    P = parse_polynomial(args.poly)
    X = parse_field(args.field)
    pair = _load_chains(args.chains)
    chk = verify_xpair(X, pair)
    s = chain_sum(pair)
    out = {
        "xpair": chk.ok,
        "failure": chk.failure,
        "A": [str(a) for a in chk.A],
        "B": [str(b) for b in chk.B],
        "chain_sum": str(s),
        "chain_sum_equals_poly": s == P,
        "field_is_symmetry": is_symmetry(X, P),
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK if chk.ok and s == P and out["field_is_symmetry"] else EXIT_INPUT


def cmd_chains_build(args) -> int:
    raw = parse_params(args.params)
    need = ("p", "q", "alpha", "beta", "K", "N", "m")
    missing = [k for k in need if k not in raw]
    if missing:
        raise InvalidParams(f"missing parameters: {', '.join(missing)}")
    extra = set(raw) - set(need) - {"tau"}
    if extra:
        raise InvalidParams(f"unknown parameters: {', '.join(sorted(extra))}")
    ints = {k: raw[k] for k in need}
    if not all(isinstance(v, int) for v in ints.values()):
        raise InvalidParams("p, q, alpha, beta, K, N, m must be integers")
    params = PurePairParams(**ints, tau=_constant(raw.get("tau", 1)))
    pair = pure_pair(params)
    s, closed = chain_sum(pair), pure_chain_sum_closed_form(params)
    X = params.field()
    out = {
        "field": str(X),
        "U": [str(u) for u in pair.U],
        "V": [str(v) for v in pair.V],
        "constant": str(params.kappa),
        "chain_sum": str(s),
        "closed_form": str(closed),
        "closed_form_matches": s == closed,
        "field_is_symmetry": is_symmetry(X, s),
    }
    print(json.dumps(out, indent=2))
    if not (out["closed_form_matches"] and out["field_is_symmetry"]):
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crsym", description="Infinitesimal CR symmetries of models Im w = P(z, conj z) in C^3.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="compute and classify the symmetry algebra of a model")
    a.add_argument("--poly", required=True, help='model polynomial, e.g. "Re(Z1*z2^2)"')
    a.add_argument("--json", action="store_true", help="emit the JSON report")
    a.add_argument("--strip-pluriharmonic", action="store_true", help="drop pluriharmonic terms first")
    a.add_argument("--max-denominator", type=int, default=64, help="bound for the brute-force weight check")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("catalog", help="build a catalog model")
    c.add_argument("--row", required=True, help="T1..T9, GN10, GN9, QUADRIC_M, EX_S5, EX_TH2")
    c.add_argument("--params", help="comma separated name=value list, e.g. k=1,m=2")
    c.add_argument("--Q", help="perturbation polynomial for T5 / T9")
    c.add_argument("--verify", action="store_true", help="compare the computed profile with the expected one")
    c.set_defaults(func=cmd_catalog)

    t = sub.add_parser("table-check", help="sweep catalog instances against expected profiles")
    t.add_argument("--grid", help="grid file with lines like 'T2 k=1..2 m=2..3'")
    t.set_defaults(func=cmd_table_check)

    ch = sub.add_parser("chains", help="X-pairs of chains")
    chs = ch.add_subparsers(dest="chains_command", required=True, parser_class=_Parser)
    v = chs.add_parser("verify", help="verify an X-pair and its chain sum")
    v.add_argument("--poly", required=True)
    v.add_argument("--field", required=True)
    v.add_argument("--chains", required=True, help="JSON array of polynomials (V = U) or {\"U\": [...], \"V\": [...]}")
    v.set_defaults(func=cmd_chains_verify)
    b = chs.add_parser("build", help="build a pure X-pair")
    b.add_argument("--params", required=True, help="p=1,q=1,alpha=1,beta=0,K=2,N=0,m=1,tau=1")
    b.set_defaults(func=cmd_chains_build)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

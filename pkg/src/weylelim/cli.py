"""Command-line front end.

Exit codes: 0 success, 1 usage/parse/invalid input, 2 verification failure,
3 budget exhausted.  Every computing subcommand checks its own certificate
before printing anything.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb
from typing import List, Optional

from .eliminate import EliminationResult, NoKernelWithinBudget, counting_bound, eliminate
from .parser import ParseError, parse
from .reduce import (
    AnnihilatorPair,
    InvalidSystemError,
    ReducedForm,
    claim_gap_demo,
    make_system,
    reduce_full,
    reduce_step,
)
from .verify import CATALOG_NAMES, check_annihilates, check_certificate, sample_system

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_BUDGET = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(payload: dict, text_lines: List[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _system(args) -> AnnihilatorPair:
    return make_system(parse(args.A), parse(args.B))


def _verdict(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def cmd_reduce(args) -> int:
    sys_ = _system(args)
    fn = reduce_step if args.step else reduce_full
    red = fn(sys_, args.alpha, args.beta)
    rep = check_certificate(sys_, red)
    payload = {"system": sys_.to_json(), "reduced": red.to_json(), "check": rep.to_json()}
    lines = [
        f"L = {sys_.L}   m = {sys_.m}   n = {sys_.n}   d = {sys_.d}",
        f"L^{red.l_power} * Dx^{red.alpha} * Dy^{red.beta} = R + U*A + V*B   (k = {red.k})",
        f"R = {red.remainder}",
        f"U = {red.cofactor_a}",
        f"V = {red.cofactor_b}",
        f"certificate: {_verdict(rep.passed)}",
    ]
    _emit(payload, lines, args.json)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def _run_elimination(sys_, mode, n_max, dump_path) -> EliminationResult:
    hook = (lambda mat: mat.dump_csv(dump_path)) if dump_path else None
    return eliminate(sys_, mode, n_max, matrix_hook=hook)


def cmd_eliminate(args) -> int:
    sys_ = _system(args)
    res = _run_elimination(sys_, args.mode, args.n_max, args.matrix_dump)
    rep = check_certificate(sys_, res)
    payload = res.to_json()
    payload["check"] = rep.to_json()
    lines = [
        f"L = {sys_.L}   m = {sys_.m}   n = {sys_.n}   d = {sys_.d}",
        f"N = {res.N}   kernel dimension = {res.kernel_dim}   matrix {res.matrix_shape[0]}x{res.matrix_shape[1]}",
        f"S = {res.S}",
        f"L^{res.N} * S = U*A + V*B",
        f"U = {res.cofactor_a}",
        f"V = {res.cofactor_b}",
        f"certificate: {_verdict(rep.passed)}",
    ]
    _emit(payload, lines, args.json)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_verify(args) -> int:
    sample = sample_system(args.system)
    sol = sample.solution(args.order)
    checks = [
        ("A annihilates f", check_annihilates(sample.pair.A, sol)),
        ("B annihilates f", check_annihilates(sample.pair.B, sol)),
    ]
    res = _run_elimination(sample.pair, "search", args.n_max, args.matrix_dump)
    checks.append(("certificate", check_certificate(sample.pair, res)))
    checks.append(("S annihilates f", check_annihilates(res.S, sol)))
    ok = all(rep.passed for _, rep in checks)
    payload = {
        "system": args.system,
        "order": args.order,
        "N": res.N,
        "S": res.S.to_json(),
        "S_text": str(res.S),
        "checks": [dict(rep.to_json(), name=name) for name, rep in checks],
        "pass": ok,
    }
    lines = [f"{sample.name}: {sample.description}", f"N = {res.N}   S = {res.S}"]
    for name, rep in checks:
        extra = f" (confirmed to order {rep.confirmed_order})" if rep.confirmed_order is not None else ""
        lines.append(f"  {name}: {_verdict(rep.passed)}{extra}")
    _emit(payload, lines, args.json)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_gap_demo(args) -> int:
    rep = claim_gap_demo(parse(args.A))
    chk = check_certificate(None, rep)
    payload = rep.to_json()
    payload["check"] = chk.to_json()
    lines = [
        f"A = {rep.A}   L = {rep.L}   m = {rep.m}   dL/dy = {rep.L_y}",
        f"L*Dx^{rep.m}*Dy = {rep.single_remainder}  +  ({rep.single_cofactor})*A",
        f"  term of Dx-order >= m left over: {'yes: ' + str(rep.obstruction_terms) if rep.obstruction else 'no'}",
        f"L^2*Dx^{rep.m}*Dy = {rep.squared_remainder}  +  ({rep.squared_cofactor})*A",
        f"  fully reduced (Dx-order < m, Dy-order <= 1): {'yes' if rep.squared_reduced else 'no'}",
        f"certificates: {_verdict(chk.passed)}",
    ]
    _emit(payload, lines, args.json)
    return EXIT_OK if chk.passed else EXIT_VERIFY


def cmd_bound(args) -> int:
    sys_ = _system(args)
    cb = counting_bound(sys_)
    table = []
    for N in range(1, cb + 1):
        v = comb(N + 3, 3)
        w = sys_.m * sys_.n * comb(N * (sys_.d + 1) + 2, 2)
        table.append({"N": N, "V": v, "W": w, "V>W": v > w})
    payload = {"system": sys_.to_json(), "counting_bound": cb, "table": table}
    lines = [f"m = {sys_.m}   n = {sys_.n}   d = {sys_.d}", "   N    |V_N|    |W_N|"]
    lines += [f"{r['N']:4d} {r['V']:8d} {r['W']:8d}{'  <-' if r['V>W'] else ''}" for r in table]
    lines.append(f"counting bound N = {cb}")
    _emit(payload, lines, args.json)
    return EXIT_OK


def cmd_check(args) -> int:
    """Re-verify a JSON certificate written by ``reduce`` or ``eliminate``."""
    try:
        with open(args.path) as fh:
            data = json.load(fh)
        if "reduced" in data:
            sys_ = AnnihilatorPair.from_json(data["system"])
            rep = check_certificate(sys_, ReducedForm.from_json(data["reduced"]))
        elif "kernel" in data:
            res = EliminationResult.from_json(data)
            rep = check_certificate(res.sys, res)
        else:
            raise _UsageError("file holds neither a reduced form nor an elimination result")
    except (OSError, KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read certificate: {exc}") from exc
    _emit({"check": rep.to_json()}, [f"{rep.check}: {_verdict(rep.passed)}"], args.json)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--matrix-dump", metavar="PATH", help="write the final reduction matrix as CSV")

    ab = argparse.ArgumentParser(add_help=False)
    ab.add_argument("--A", required=True, help="operator in Dx only, e.g. '(1-x-y)*Dx - 1'")
    ab.add_argument("--B", required=True, help="operator in Dy only")

    p = _Parser(prog="weylelim", description="Elimination in the Weyl algebra Q[x,y]<Dx,Dy>")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("reduce", parents=[common, ab], help="reduce L^k Dx^alpha Dy^beta")
    r.add_argument("--alpha", type=int, required=True)
    r.add_argument("--beta", type=int, required=True)
    r.add_argument("--step", action="store_true", help="single pass only")
    r.set_defaults(func=cmd_reduce)

    e = sub.add_parser("eliminate", parents=[common, ab], help="find a y-free operator in <A, B>")
    e.add_argument("--mode", choices=("search", "bound"), default="search")
    e.add_argument("--n-max", type=int, default=None)
    e.set_defaults(func=cmd_eliminate)

    v = sub.add_parser("verify", parents=[common], help="round trip on a catalog system")
    v.add_argument("--system", required=True, choices=CATALOG_NAMES)
    v.add_argument("--order", type=int, default=20)
    v.add_argument("--n-max", type=int, default=None)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gap-demo", parents=[common], help="one factor L versus L^2")
    g.add_argument("--A", required=True)
    g.set_defaults(func=cmd_gap_demo)

    b = sub.add_parser("bound", parents=[common, ab], help="counting bound and family sizes")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("check", parents=[common], help="re-verify a JSON certificate")
    c.add_argument("path")
    c.set_defaults(func=cmd_check)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidSystemError, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoKernelWithinBudget as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

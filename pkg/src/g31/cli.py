"""Command-line front end.

Subcommands::

    g31 params    --n N
    g31 construct --regime {1,2,3} --n N [--l L] [--c C] [--emit-set PATH] [--verify]
    g31 bounds    --n N --l L [--alpha-mode {exact,asymptotic}] [--regime {1,2,3,4}]
    g31 oracle    min-edges --n N --l L [--budget S]
    g31 oracle    alpha --n N [--search] | --regenerate PATH [--max-n 12]
    g31 oracle    enumerate --n N [--min-size K]
    g31 sweep     --regime R (--n-list 100,1000 | --n-geom 1000:100000:10) --l-expr "n^1.5"
    g31 decompose --set PATH [--n N]

Single queries print one JSON object; ``sweep`` prints CSV.  Exit codes:
0 success, 1 invalid arguments or undefined construction, 2 a predicted
count disagreed with a direct count.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import bounds, constructions, independence, oracle
from .errors import (ConstructionUndefinedError, DecompositionError, G31Error,
                     InvalidParameterError, InvariantViolation)
from .graph import make_params, read_set_file, write_set_file

SWEEP_COLUMNS = ["n", "l", "regime", "size_actual", "edges_formula", "edges_actual",
                 "lb_turan", "lb_regime4", "target", "ratio"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def fmt(x: float) -> str:
    return format(x, ".6g")


def _sig(x):
    if isinstance(x, float):
        return float(fmt(x)) if math.isfinite(x) else None
    if isinstance(x, dict):
        return {k: _sig(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_sig(v) for v in x]
    return x


def emit_json(obj: dict, out) -> None:
    out.write(json.dumps(_sig(obj), separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# l expressions
# ---------------------------------------------------------------------------

_L_EXPR = re.compile(r"^\s*(?:(?P<coef>[^*\s]+)\s*\*\s*)?n\s*\^\s*(?P<exp>[0-9./]+)\s*$")


def _iroot(x: int, b: int) -> int:
    """floor(x ** (1/b)) for x >= 0."""
    if x < 2:
        return x
    r = int(round(x ** (1.0 / b))) if x < 2**1000 else 1 << (x.bit_length() // b + 1)
    while r**b > x:
        r -= 1
    while (r + 1) ** b <= x:
        r += 1
    return r


def parse_l_expr(expr: str, coef: float | None = None):
    """Compile ``"n^1.5"``, ``"0.05*n^2"`` or ``"c*n^3"`` to ``n -> l``.

    The value is ``floor(coef * n^exp)`` computed exactly for rational
    coefficients and exponents; a literal ``c`` takes its value from
    ``coef``.
    """
    m = _L_EXPR.match(expr)
    if not m:
        raise InvalidParameterError(f"cannot parse l expression {expr!r}")
    raw = m.group("coef")
    if raw is None:
        c = Fraction(1)
    elif raw == "c":
        if coef is None:
            raise InvalidParameterError("l expression uses c but --coef is missing")
        c = Fraction(str(coef))
    else:
        try:
            c = Fraction(raw)
        except ValueError:
            raise InvalidParameterError(f"bad coefficient {raw!r}") from None
    try:
        e = Fraction(m.group("exp"))
    except (ValueError, ZeroDivisionError):
        raise InvalidParameterError(f"bad exponent in {expr!r}") from None
    if c < 0 or e < 0:
        raise InvalidParameterError("coefficient and exponent must be nonnegative")

    def l_of(n: int) -> int:
        # floor(c n^(p/q)) = floor((c^q n^p)^(1/q))
        x = c**e.denominator * Fraction(n) ** e.numerator
        return _iroot(math.floor(x), e.denominator)

    return l_of


def parse_n_schedule(n_list: str | None, n_geom: str | None) -> list[int]:
    if n_list:
        try:
            return [int(tok) for tok in n_list.split(",") if tok.strip()]
        except ValueError:
            raise InvalidParameterError(f"bad --n-list {n_list!r}") from None
    try:
        start, stop, factor = n_geom.split(":")
        start, stop, factor = int(start), int(stop), float(factor)
    except (AttributeError, ValueError):
        raise InvalidParameterError(f"bad --n-geom {n_geom!r}; use START:STOP:FACTOR") from None
    if start < 3 or factor <= 1:
        raise InvalidParameterError("--n-geom needs START >= 3 and FACTOR > 1")
    out, n = [], float(start)
    while round(n) <= stop:
        if not out or round(n) != out[-1]:
            out.append(round(n))
        n *= factor
    return out


# ---------------------------------------------------------------------------
# sweep rows
# ---------------------------------------------------------------------------

def sweep_row(regime: int, n: int, l: int, alpha_mode: str, max_materialize: int,
              verify: bool, coef_c: float | None = None) -> dict:
    rep = constructions.build(regime, n, l=l, c=coef_c,
                              materialize=verify, max_materialize=max_materialize)
    if verify:
        rep.check()
    params = make_params(n)
    alpha = independence.alpha_reference(n, alpha_mode).value
    lb4 = bounds.regime4_lb(params, l, alpha, alpha_mode).lower_bound
    size = rep.size_actual if rep.size_actual is not None else rep.size_predicted
    return {
        "n": n,
        "l": l,
        "regime": regime,
        "size_actual": size,
        "edges_formula": rep.edges_predicted,
        "edges_actual": "" if rep.edges_actual is None else rep.edges_actual,
        "lb_turan": bounds.turan_lb(l, alpha),
        "lb_regime4": lb4,
        "target": fmt(rep.target),
        "ratio": fmt(rep.target_ratio),
    }


def _sweep_job(args):
    try:
        return sweep_row(*args), None
    except (ConstructionUndefinedError, InvalidParameterError) as exc:
        return None, f"n={args[1]} l={args[2]}: {exc}"


def _threads(value: int | None) -> int:
    if value is not None:
        return max(1, value)
    env = os.environ.get("G31_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_params(args, out) -> int:
    emit_json(make_params(args.n).as_dict(), out)
    return 0


def cmd_construct(args, out) -> int:
    if args.regime in (1, 3) and args.l is None:
        raise InvalidParameterError(f"regime {args.regime} needs --l")
    rep = constructions.build(args.regime, args.n, l=args.l, c=args.c,
                              materialize=True, max_materialize=args.max_materialize)
    if args.emit_set:
        if rep.vertex_set is None:
            raise InvalidParameterError("set too large to materialise; raise --max-materialize")
        write_set_file(args.emit_set, rep.vertex_set)
    d = rep.as_dict()
    if not args.verify:
        emit_json(d, out)
        return 0
    if rep.edges_actual is None:
        print("warning: set not materialised, nothing to verify", file=sys.stderr)
    try:
        rep.check()
    except InvariantViolation:
        d["verified"] = False
        emit_json(d, out)
        raise
    d["verified"] = rep.edges_actual is not None
    emit_json(d, out)
    return 0


def cmd_bounds(args, out) -> int:
    regimes = [args.regime] if args.regime else [1, 2, 3, 4]
    reports = []
    for r in regimes:
        if r == 3 and args.l < 1:
            continue
        reports.append(bounds.bound_report(args.n, args.l, r, args.alpha_mode).as_dict())
    targets = bounds.asymptotic_targets(args.n, args.l).as_dict()
    if args.regime:
        emit_json({**reports[0], "targets": targets}, out)
    else:
        emit_json({"n": args.n, "l": args.l, "reports": reports, "targets": targets}, out)
    return 0


def cmd_oracle(args, out) -> int:
    if args.oracle_cmd == "min-edges":
        params = make_params(args.n)
        res = oracle.exact_min_edges(params, args.l, budget=args.budget)
        print(f"elapsed {res.elapsed:.3f}s, {res.nodes_explored} nodes", file=sys.stderr)
        d = {"n": args.n, "l": args.l, **res.as_dict()}
        d.pop("elapsed")
        emit_json(d, out)
        return 0
    if args.oracle_cmd == "alpha":
        if args.regenerate:
            table = independence.regenerate_alpha_table(range(3, args.max_n + 1),
                                                        args.regenerate, args.budget)
            emit_json({"path": args.regenerate, "alpha": {str(k): v for k, v in table.items()}}, out)
            return 0
        if args.n is None:
            raise InvalidParameterError("oracle alpha needs --n or --regenerate")
        if args.search:
            res = independence.max_independent_set(make_params(args.n), args.budget)
            emit_json({"n": args.n, "alpha": res.value, "status": res.status,
                       "witness": [list(v) for v in res.witness]}, out)
        else:
            ref = independence.alpha_reference(args.n, args.alpha_mode)
            emit_json({"n": args.n, "alpha": ref.value, "mode": ref.mode}, out)
        return 0
    if args.oracle_cmd == "enumerate":
        sets = oracle.enumerate_independent_sets(make_params(args.n), args.min_size)
        emit_json({"n": args.n, "min_size": args.min_size, "count": len(sets),
                   "sets": [[list(v) for v in s] for s in sets]}, out)
        return 0
    raise InvalidParameterError("oracle needs a subcommand: min-edges, alpha, enumerate")


def cmd_sweep(args, out) -> int:
    l_of = parse_l_expr(args.l_expr, args.coef)
    jobs = []
    for n in parse_n_schedule(args.n_list, args.n_geom):
        jobs.append((args.regime, n, l_of(n), args.alpha_mode, args.max_materialize,
                     args.verify, args.c))
    threads = _threads(args.threads)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_sweep_job, jobs))
    else:
        results = [_sweep_job(j) for j in jobs]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row, err in results:
        if err:
            print(f"skipped {err}", file=sys.stderr)
        else:
            writer.writerow(row)
    out.write(buf.getvalue())
    return 0


def cmd_decompose(args, out) -> int:
    W = read_set_file(args.set, args.n)
    dec = independence.decompose_independent(W)
    emit_json(dec.as_dict(), out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="g31", description="Induced edge counts in the distance graph G(n,3,1).")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    sp = sub.add_parser("params", help="vertex count, degree and edge count")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("construct", help="build an explicit low-edge vertex set")
    sp.add_argument("--regime", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--l", type=int)
    sp.add_argument("--c", type=float, help="regime-2 parameter in (0, 4)")
    sp.add_argument("--emit-set", metavar="PATH")
    sp.add_argument("--verify", action="store_true",
                    help="exit 2 if a closed form disagrees with the direct count")
    sp.add_argument("--max-materialize", type=int,
                    default=constructions.DEFAULT_MAX_MATERIALIZE)

    sp = sub.add_parser("bounds", help="lower bounds and asymptotic targets")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--alpha-mode", choices=("exact", "asymptotic"), default="asymptotic")
    sp.add_argument("--regime", type=int, choices=(1, 2, 3, 4))

    sp = sub.add_parser("oracle", help="exact searches at small n")
    osub = sp.add_subparsers(dest="oracle_cmd", required=True, parser_class=_Parser)
    op = osub.add_parser("min-edges")
    op.add_argument("--n", type=int, required=True)
    op.add_argument("--l", type=int, required=True)
    op.add_argument("--budget", type=float, help="time limit in seconds")
    op = osub.add_parser("alpha")
    op.add_argument("--n", type=int)
    op.add_argument("--alpha-mode", choices=("exact", "asymptotic"), default="exact")
    op.add_argument("--search", action="store_true", help="run the exact search")
    op.add_argument("--regenerate", metavar="PATH", help="rewrite the alpha TSV")
    op.add_argument("--max-n", type=int, default=12)
    op.add_argument("--budget", type=float)
    op = osub.add_parser("enumerate")
    op.add_argument("--n", type=int, required=True)
    op.add_argument("--min-size", type=int, default=1)

    sp = sub.add_parser("sweep", help="CSV of construction counts against targets")
    sp.add_argument("--regime", type=int, choices=(1, 2, 3), required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--n-list")
    grp.add_argument("--n-geom", metavar="START:STOP:FACTOR")
    sp.add_argument("--l-expr", required=True)
    sp.add_argument("--coef", type=float, help="value of c in --l-expr")
    sp.add_argument("--c", type=float, help="fixed regime-2 parameter")
    sp.add_argument("--alpha-mode", choices=("exact", "asymptotic"), default="asymptotic")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--max-materialize", type=int,
                    default=constructions.DEFAULT_MAX_MATERIALIZE)
    sp.add_argument("--threads", type=int)

    sp = sub.add_parser("decompose", help="split an independent set into type-1/2/3 blocks")
    sp.add_argument("--set", required=True, metavar="PATH")
    sp.add_argument("--n", type=int)
    return p


COMMANDS = {
    "params": cmd_params,
    "construct": cmd_construct,
    "bounds": cmd_bounds,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
    "decompose": cmd_decompose,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.cmd](args, out)
    except (InvariantViolation, DecompositionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (G31Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

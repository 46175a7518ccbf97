"""Command-line interface: ``polylcm <subcommand> [options]``.

Exit codes: 0 ok, 1 invalid input, 2 resource limit, 3 failed assertion.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import re
import sys
import time

from . import analytic
from .congruence import ResourceLimit
from .factor import FactorizationError
from .mertens import drift_series, lambda_weighted_varsigma_sum, root_count_vs_li
from .poly import InvalidInput, Polynomial, Verdict, check_irreducible
from .report import RunReport, cache_dir, load_table, store_table
from .valuations import (
    build_factor_table,
    decompose,
    default_l0,
    greatest_prime_divisor_stats,
    log_L,
    log_Q,
    log_rad_L,
    restrict,
)
from .verify import run_checks

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_ASSERT = 0, 1, 2, 3


# -- polynomial parsing ---------------------------------------------------------


class ParseError(InvalidInput):
    def __init__(self, msg: str, offset: int):
        super().__init__(f"{msg} at byte offset {offset}")
        self.offset = offset


_COMMA_FORM = re.compile(r"^\s*[+-]?\d+(\s*,\s*[+-]?\d+)+\s*$")
_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|(x)|(\^|\*\*)|([-+*()]))")


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


class _Parser:
    # expr := term (('+'|'-') term)*; term := factor ('*'? factor)*
    # factor := ('+'|'-')? base ('^' natural)?; base := int | 'x' | '(' expr ')'

    def __init__(self, text: str):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {text[i]!r}", self._off(i))
            start = m.start(m.lastindex)
            if m.group(1):
                raise ParseError("non-integer coefficient", self._off(start))
            self.toks.append((m.group(m.lastindex), start))
            i = m.end()
        self.pos = 0

    def _off(self, i):
        return len(self.text[:i].encode())

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def where(self):
        if self.pos < len(self.toks):
            return self._off(self.toks[self.pos][1])
        return len(self.text.encode())

    def parse(self):
        out = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}", self.where())
        return out

    def expr(self):
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = _padd(acc, t if op == "+" else [-c for c in t])
        return acc

    def term(self):
        acc = self.factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
            elif tok is None or not (tok == "x" or tok == "(" or tok.isdigit()):
                return acc
            acc = _pmul(acc, self.factor())

    def factor(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take()[0] == "-":
                sign = -sign
        base = self.base()
        if self.peek() in ("^", "**"):
            self.take()
            tok = self.peek()
            if tok is None or not tok.isdigit():
                raise ParseError("exponent must be a natural number", self.where())
            e = int(self.take()[0])
            out = [1]
            for _ in range(e):
                out = _pmul(out, base)
            base = out
        return [sign * c for c in base]

    def base(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.where())
        if tok.isdigit():
            return [int(self.take()[0])]
        if tok == "x":
            self.take()
            return [0, 1]
        if tok == "(":
            self.take()
            inner = self.expr()
            if self.peek() != ")":
                raise ParseError("expected ')'", self.where())
            self.take()
            return inner
        raise ParseError(f"unexpected {tok!r}", self.where())


def parse_polynomial(text: str) -> Polynomial:
    """Parse ``"1,0,1"`` (ascending coefficients) or ``"x^2+1"``."""
    if _COMMA_FORM.match(text):
        coeffs = [int(c) for c in text.split(",")]
    else:
        coeffs = _Parser(text.replace("−", "-")).parse()
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise InvalidInput("polynomial has degree 0")
    return Polynomial(tuple(coeffs))


# -- helpers --------------------------------------------------------------------


def _checkpoints(text: str | None, x: int | None) -> list[int]:
    if text:
        return sorted({int(float(v)) for v in text.split(",")})
    if x is None:
        raise InvalidInput("need --x or --checkpoints")
    xs = [10**k for k in range(1, 20) if 10**k < x] + [x]
    return xs


def _poly_from_args(args) -> Polynomial:
    if not args.poly:
        raise InvalidInput("--poly is required")
    f = parse_polynomial(args.poly)
    verdict = check_irreducible(f)
    if verdict is Verdict.REJECTED:
        raise InvalidInput(f"{f} is reducible over Q")
    if verdict is Verdict.INCONCLUSIVE and not args.assume_irreducible:
        raise InvalidInput(
            f"could not certify that {f} is irreducible; pass --assume-irreducible to proceed"
        )
    args._verdict = verdict.value
    return f


def _table(args, f, x):
    l0 = args.l0 or default_l0(x)
    arguments = getattr(args, "args", "primes")
    cdir = cache_dir(args.cache)
    if cdir is not None:
        tab = load_table(cdir, f, x, l0, arguments)
        if tab is not None:
            return tab
    tab = build_factor_table(f, x, l0=l0, threads=args.threads, arguments=arguments)
    if cdir is not None:
        store_table(cdir, tab)
    return tab


def _base_config(args) -> dict:
    return {
        "assume_irreducible": bool(args.assume_irreducible),
        "irreducibility": getattr(args, "_verdict", None),
    }


def _resolve_delta(args, d: int) -> tuple[float, str]:
    if args.eh_delta is not None:
        return analytic.solve_delta(d, eh_delta=args.eh_delta), "conditional-on-EH"
    if args.delta is not None:
        return float(args.delta), "user"
    return analytic.solve_delta(d, args.mode), args.mode


# -- subcommands ---------------------------------------------------------------


def _constants_row(d: int, mode: str, eh_delta) -> dict:
    sched = analytic.default_schedule(d)
    eps = analytic.epsilon_of_degree(d)
    delta_paper = analytic.solve_delta(d, "paper")
    delta_exact = analytic.solve_delta(d, "exact")
    delta = analytic.solve_delta(d, mode, eh_delta=eh_delta)
    in_support = sched.lo <= delta < sched.hi or (sched.closed_right and delta == sched.hi)
    row = {
        "degree": d,
        "schedule": sched.name,
        "epsilon": eps,
        "one_minus_epsilon": 1 - eps,
        "table1": analytic.truncate(1 - eps),
        "delta_paper": delta_paper,
        "delta_exact": delta_exact,
        "delta": delta,
        "integral_constant": analytic.integral_bound_constant(d),
        "integral_at_delta": analytic.integrate_c(sched, 0.5, delta) if in_support else None,
        "integral_at_delta_quadrature": (
            analytic.integrate_c(sched, 0.5, delta, "quadrature") if in_support else None
        ),
        "main_bound_coefficient": (
            analytic.main_bound_coefficient(d, delta) if in_support else None
        ),
    }
    return row


def cmd_constants(args) -> RunReport:
    degrees = [args.degree] if args.degree else list(range(1, 9))
    rows = [_constants_row(d, args.mode, args.eh_delta) for d in degrees]
    cfg = {"mode": args.mode, "eh": args.eh_delta is not None}
    if args.eh_delta is not None:
        cfg["eh_delta"] = args.eh_delta
    return RunReport("constants", config=cfg, outputs={"rows": rows})


def cmd_lcm_growth(args) -> RunReport:
    f = _poly_from_args(args)
    xs = _checkpoints(args.checkpoints, args.x)
    table = _table(args, f, xs[-1])
    rows = []
    for x in xs:
        t = restrict(table, x)
        lq, ll = log_Q(t), log_L(t)
        rows.append({
            "x": x,
            "arguments": t.n_arguments,
            "records": len(t.records),
            "log_Q": lq,
            "log_L": ll,
            "log_rad_L": log_rad_L(t),
            "log_L_over_x": ll / x,
            "log_Q_over_x": lq / x,
        })
    cfg = _base_config(args) | {"args": args.args, "l0": table.l0}
    return RunReport(
        "lcm-growth", f.canonical(), xs[-1], cfg, {"rows": rows},
        "deterministic" if table.certified else "probabilistic",
    )


def cmd_decompose(args) -> RunReport:
    f = _poly_from_args(args)
    d = f.degree
    delta, delta_mode = _resolve_delta(args, d)
    table = _table(args, f, args.x)
    dec = decompose(table, args.B, delta)
    lq = log_Q(table)
    sched = analytic.default_schedule(d)
    in_support = sched.lo <= delta < sched.hi or (sched.closed_right and delta == sched.hi)
    small_exact = (
        lambda_weighted_varsigma_sum(f, args.x, dec.x_b) if 2 <= dec.x_b <= args.x else 0.0
    )
    outputs = {
        "log_Q": lq,
        "log_L": log_L(table),
        "log_rad_L": log_rad_L(table),
        "x_b": dec.x_b,
        "decomposition": {
            "log_Q_S": dec.small,
            "log_Q_M": dec.medium,
            "log_Q_L": dec.large,
            "log_Q_VL": dec.very_large,
        },
        "partition_residual": dec.total() - lq,
        "lambda_weighted_varsigma_sum": small_exact,
        "log_Q_VL_over_x": dec.very_large / args.x,
        "main_bound_coefficient": analytic.main_bound_coefficient(d, delta) if in_support else None,
    }
    cfg = _base_config(args) | {
        "B": args.B, "delta": delta, "delta_mode": delta_mode, "l0": table.l0,
        "eh": args.eh_delta is not None,
    }
    return RunReport(
        "decompose", f.canonical(), args.x, cfg, outputs,
        "deterministic" if table.certified else "probabilistic",
    )


def cmd_density(args) -> RunReport:
    f = _poly_from_args(args)
    e = args.exponent if args.exponent is not None else 1 - analytic.epsilon_of_degree(f.degree)
    table = _table(args, f, args.x)
    st = greatest_prime_divisor_stats(table, e, args.against)
    outputs = {"N": st.N, "arguments": st.total, "fraction": st.fraction}
    if args.format == "csv":
        outputs["flags"] = [
            {"q": r.q, "largest_prime": r.largest_prime, "exceeds": flag}
            for r, (_, flag) in zip(table.records, st.flags)
        ]
    cfg = _base_config(args) | {"exponent": e, "against": args.against, "l0": table.l0}
    return RunReport(
        "density", f.canonical(), args.x, cfg, outputs,
        "deterministic" if table.certified else "probabilistic",
    )


def cmd_mertens(args) -> RunReport:
    f = _poly_from_args(args)
    xs = _checkpoints(args.checkpoints, args.x)
    series = drift_series(f, xs)
    cmp = root_count_vs_li(f, xs[-1]) if xs[-1] >= 3 else None
    outputs = {
        "checkpoints": [{"x": c.x, "S": c.S, "drift": c.drift} for c in series.checkpoints],
        "R_empirical_estimate": series.R_estimate,
        "root_count_vs_li": None if cmp is None else {
            "x": cmp.x, "sum_rho": cmp.sum_rho, "li": cmp.li, "ratio": cmp.ratio,
            "li_lower_limit": 2,
        },
    }
    return RunReport("mertens", f.canonical(), xs[-1], _base_config(args), outputs)


def cmd_verify(args) -> RunReport:
    f = _poly_from_args(args)
    results = run_checks(f, args.x, args.m_max)
    outputs = {
        "checks": [{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "all_passed": all(r.passed for r in results),
    }
    cfg = _base_config(args) | {"m_max": args.m_max}
    return RunReport("verify", f.canonical(), args.x, cfg, outputs)


# -- output -----------------------------------------------------------------------

CSV_COLUMNS = {
    "constants": ["degree", "schedule", "epsilon", "one_minus_epsilon", "table1", "delta_paper",
                  "delta_exact", "delta", "integral_constant", "integral_at_delta",
                  "integral_at_delta_quadrature", "main_bound_coefficient"],
    "lcm-growth": ["x", "arguments", "records", "log_Q", "log_L", "log_rad_L", "log_L_over_x",
                   "log_Q_over_x"],
    "decompose": ["x", "B", "delta", "x_b", "log_Q", "log_Q_S", "log_Q_M", "log_Q_L", "log_Q_VL"],
    "density": ["q", "largest_prime", "exceeds"],
    "mertens": ["x", "S", "drift"],
    "verify": ["check", "passed", "detail"],
}


def to_csv(rep: RunReport) -> str:
    cols = CSV_COLUMNS[rep.command]
    o = rep.outputs
    if rep.command in ("constants", "lcm-growth"):
        rows = o["rows"]
    elif rep.command == "decompose":
        rows = [{"x": rep.x, "B": rep.config["B"], "delta": rep.config["delta"], "x_b": o["x_b"],
                 "log_Q": o["log_Q"], **o["decomposition"]}]
    elif rep.command == "density":
        rows = o["flags"]
    elif rep.command == "mertens":
        rows = o["checkpoints"]
    else:
        rows = o["checks"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polylcm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--cache", help="factor-table cache directory (else $POLYLCM_CACHE)")

    def poly_parser(name, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("--poly", required=True, help='e.g. "x^2+1" or "1,0,1"')
        sp.add_argument("--assume-irreducible", action="store_true")
        sp.add_argument("--l0", type=int, default=None, help="small-prime sieve bound")
        return sp

    sp = sub.add_parser("constants", parents=[common], help="analytic constants and Table 1")
    sp.add_argument("--degree", type=int, default=None)
    sp.add_argument("--mode", choices=("paper", "exact"), default="paper")
    sp.add_argument("--eh-delta", type=float, default=None,
                    help="take delta freely (conditional on Elliott-Halberstam)")
    sp.set_defaults(func=cmd_constants)

    sp = poly_parser("lcm-growth", "log Q, log L and log rad L")
    sp.add_argument("--x", type=lambda s: int(float(s)), default=None)
    sp.add_argument("--checkpoints", default=None, help="comma-separated x values")
    sp.add_argument("--args", choices=("primes", "integers"), default="primes")
    sp.set_defaults(func=cmd_lcm_growth)

    sp = poly_parser("decompose", "split log Q(x) by prime size")
    sp.add_argument("--x", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--B", type=float, default=6.0)
    sp.add_argument("--delta", type=float, default=None)
    sp.add_argument("--mode", choices=("paper", "exact"), default="paper")
    sp.add_argument("--eh-delta", type=float, default=None)
    sp.set_defaults(func=cmd_decompose)

    sp = poly_parser("density", "primes q with a large prime factor of f(q)")
    sp.add_argument("--x", type=lambda s: int(float(s)), required=True)
    sp.add_argument("--exponent", type=float, default=None)
    sp.add_argument("--against", choices=("q", "x"), default="q")
    sp.set_defaults(func=cmd_density)

    sp = poly_parser("mertens", "drift of sum rho(p) log p/(p-1) - log x")
    sp.add_argument("--x", type=lambda s: int(float(s)), default=None)
    sp.add_argument("--checkpoints", default=None)
    sp.set_defaults(func=cmd_mertens)

    sp = poly_parser("verify", "run the invariant suite")
    sp.add_argument("--x", type=lambda s: int(float(s)), default=10**4)
    sp.add_argument("--m-max", type=int, default=2000)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> tuple[RunReport | None, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, EXIT_INVALID if exc.code else EXIT_OK
    if args.threads < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return None, EXIT_INVALID
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except (InvalidInput, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_INVALID
    except (ResourceLimit, FactorizationError, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return None, EXIT_RESOURCE
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return None, EXIT_ASSERT
    if not args.no_timing:
        rep.timing = {"seconds": time.perf_counter() - t0}
    text = rep.to_json() if args.format == "json" else to_csv(rep)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    code = EXIT_OK
    if rep.command == "verify" and not rep.outputs["all_passed"]:
        code = EXIT_ASSERT
    if rep.command == "decompose":
        lq = rep.outputs["log_Q"]
        if abs(rep.outputs["partition_residual"]) > 1e-9 * max(lq, 1.0):
            code = EXIT_ASSERT
    return rep, code


def main(argv=None) -> int:
    return run(argv)[1]


if __name__ == "__main__":
    sys.exit(main())

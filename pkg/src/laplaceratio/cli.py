"""Command-line surface: batch transforms, ratio expansions, coefficient
recovery, convolution-identity checks, and the auction pipeline.

Exit codes: 0 success, 1 computation error (typed message on stderr),
2 usage or parse error.  Every command is deterministic given its flags,
so reruns produce byte-identical primary outputs.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from math import factorial

import numpy as np

from . import fileformats as ff
from .algebra import Poly
from .auction import (
    Exponential,
    McConfig,
    auction_identify,
    h_from_k,
    k_analytic_exponential,
    k_from_h,
    k_monte_carlo,
    k_quadrature,
    memoryless_check,
    simulate_bids,
)
from .errors import FormatError, LaplaceRatioError
from .identify import RatioSpec, identify, pivot_value, verify_identity
from .transforms import (
    PiecewisePoly,
    convolution_residual,
    delay,
    laplace_piecewise,
    laplace_poly,
    ratio_eval_piecewise,
    ratio_expansion,
    shift_vanishing,
    sin_closed_form,
    sin_ratio_check,
    step_example,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laplaceratio",
        description="Ratios of Laplace transforms of powers of a function: "
        "transforms, expansions, coefficient recovery, and the auction pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help_text, handler):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument(
            "--pretty", action="store_true", help="aligned human-readable tables"
        )
        return p

    def add_function_source(p):
        p.add_argument(
            "--input",
            action="append",
            default=[],
            help="function description JSON (repeat for commands taking two functions)",
        )
        p.add_argument(
            "--builtin",
            choices=["sin", "step_example"],
            help="use a built-in function instead of --input",
        )
        p.add_argument(
            "--n-max", type=int, default=10, help="steps kept in the step_example builtin"
        )

    def add_lambda_flags(p):
        p.add_argument(
            "--lambda",
            dest="lambdas",
            action="append",
            type=float,
            metavar="LAMBDA",
            help="evaluation point, repeatable",
        )
        p.add_argument(
            "--lambda-grid",
            metavar="START:STOP:COUNT",
            help="log-spaced evaluation grid",
        )

    def add_exponents(p):
        p.add_argument("--n", type=int, required=True, help="numerator exponent")
        p.add_argument("--m", type=int, required=True, help="denominator exponent")

    p = add("transform", "Laplace transform of a function", cmd_transform)
    add_function_source(p)
    add_lambda_flags(p)
    p.add_argument("--order", type=int, help="series truncation order (polynomial input)")

    p = add("ratio", "power ratio L{f^n}/L{f^m}", cmd_ratio)
    add_function_source(p)
    add_lambda_flags(p)
    add_exponents(p)
    p.add_argument("--order", type=int, help="expansion order (polynomial input)")

    p = add("identify", "recover Taylor coefficients from a ratio expansion", cmd_identify)
    p.add_argument("--input", action="append", required=True, help="ratio expansion JSON")
    add_exponents(p)
    p.add_argument("--target-degree", type=int, required=True)

    p = add("verify", "exact convolution-identity check for two functions", cmd_verify)
    p.add_argument(
        "--input",
        action="append",
        required=True,
        help="function description JSON; give twice (f then g)",
    )
    add_exponents(p)

    p = add("auction-k", "top-two transform ratio K for a bid model", cmd_auction_k)
    p.add_argument("--model", required=True, help="auction model JSON")
    add_lambda_flags(p)
    p.add_argument("--tol", type=float, default=1e-10, help="quadrature tolerance")

    p = add("auction-sim", "simulate top-two bids to CSV", cmd_auction_sim)
    p.add_argument("--model", required=True, help="auction model JSON")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chunk", type=int, default=100_000)

    p = add("auction-identify", "recover the bid-distribution germ from K data", cmd_auction_identify)
    p.add_argument("--input", action="append", required=True, help="ratio expansion JSON")
    p.add_argument("--n", type=int, required=True, help="number of bidders N")
    p.add_argument("--target-degree", type=int, required=True)

    p = add("selftest", "run the built-in acceptance checks", cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except FormatError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LaplaceRatioError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


# ---------------------------------------------------------------- helpers


def _emit_text(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, doc) -> None:
    _emit_text(args, json.dumps(doc, indent=2) + "\n")


def _emit_rows(args, header: list[str], rows: list[list]) -> None:
    cells = [[_format_value(v) for v in row] for row in rows]
    if args.pretty:
        widths = [
            max(len(header[i]), *(len(r[i]) for r in cells)) if cells else len(header[i])
            for i in range(len(header))
        ]
        lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
        lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
        _emit_text(args, "\n".join(lines) + "\n")
    else:
        lines = [",".join(header)] + [",".join(row) for row in cells]
        _emit_text(args, "\n".join(lines) + "\n")


def _format_value(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _lambda_grid(args) -> list[float]:
    points = list(args.lambdas or [])
    if args.lambda_grid:
        try:
            start_s, stop_s, count_s = args.lambda_grid.split(":")
            start, stop, count = float(start_s), float(stop_s), int(count_s)
        except ValueError:
            raise FormatError(
                f"--lambda-grid: expected START:STOP:COUNT, got {args.lambda_grid!r}"
            ) from None
        if start <= 0 or stop <= 0 or count < 1:
            raise FormatError("--lambda-grid: needs positive start/stop and count >= 1")
        points.extend(float(x) for x in np.geomspace(start, stop, count))
    if any(lam <= 0 for lam in points):
        raise FormatError("--lambda: evaluation points must be positive")
    return points


def _load_functions(args, count: int = 1):
    """Resolve --input/--builtin into exactly `count` functions."""
    fns = [ff.function_from_document(ff.load_json(path), where=path) for path in args.input]
    if getattr(args, "builtin", None):
        if args.builtin == "sin":
            order = getattr(args, "order", None)
            if order is None:
                raise FormatError("--builtin sin needs --order (Maclaurin degree context)")
            # for ratio output at tail order `order`, degree order+1 keeps
            # every reported coefficient exact
            degree = order + 1 if args.command == "ratio" else order
            fns.append(ff.function_from_document(
                {"kind": "builtin", "name": "sin", "order": degree}
            ))
        else:
            fns.append(step_example(args.n_max))
    if len(fns) != count:
        raise FormatError(
            f"{args.command} needs exactly {count} function(s); got {len(fns)}"
        )
    return fns if count > 1 else fns[0]


def _transform_value_poly(p: Poly, lam: float) -> float:
    return sum(factorial(i) * float(c) / lam ** (i + 1) for i, c in enumerate(p.coeffs))


# ---------------------------------------------------------------- commands


def cmd_transform(args) -> int:
    fn = _load_functions(args)
    lams = _lambda_grid(args)
    if lams:
        if isinstance(fn, Poly):
            rows = [[lam, _transform_value_poly(fn, lam)] for lam in lams]
        else:
            rows = [[lam, laplace_piecewise(fn, lam)] for lam in lams]
        _emit_rows(args, ["lambda", "value"], rows)
        return 0
    if not isinstance(fn, Poly):
        raise FormatError("piecewise transforms need --lambda or --lambda-grid")
    series = laplace_poly(fn, args.order if args.order is not None else None)
    _emit_json(
        args,
        {
            "kind": "series",
            "variable": "1/lambda",
            "order": series.order,
            "coeffs": [ff.format_rational(c) for c in series.coeffs],
        },
    )
    return 0


def cmd_ratio(args) -> int:
    fn = _load_functions(args)
    lams = _lambda_grid(args)
    if isinstance(fn, Poly) and not lams:
        if args.order is None:
            raise FormatError("polynomial ratio expansion needs --order")
        H = ratio_expansion(fn, args.n, args.m, args.order)
        _emit_json(args, ff.ratio_expansion_to_document(H))
        return 0
    if not lams:
        raise FormatError("piecewise ratios need --lambda or --lambda-grid")
    if isinstance(fn, Poly):
        fn = PiecewisePoly([0], [fn], allow_polynomial_tail=True)
    rows = [[lam, ratio_eval_piecewise(fn, args.n, args.m, lam)] for lam in lams]
    _emit_rows(args, ["lambda", "h"], rows)
    return 0


def cmd_identify(args) -> int:
    if len(args.input) != 1:
        raise FormatError("identify takes exactly one --input")
    doc = ff.load_json(args.input[0])
    H = ff.ratio_expansion_from_document(doc, where=args.input[0])
    result = identify(H, RatioSpec(args.n, args.m), args.target_degree)
    _emit_json(args, ff.identify_result_to_document(result))
    return 0


def cmd_verify(args) -> int:
    if len(args.input) != 2:
        raise FormatError("verify takes --input twice: f then g")
    f, g = (ff.function_from_document(ff.load_json(p), where=p) for p in args.input)
    if not isinstance(f, Poly) or not isinstance(g, Poly):
        raise FormatError("verify compares polynomial functions")
    equal = verify_identity(f, g, RatioSpec(args.n, args.m))
    _emit_json(args, {"equal": equal, "n": args.n, "m": args.m})
    return 0


def cmd_auction_k(args) -> int:
    model = ff.model_from_document(ff.load_json(args.model), where=args.model)
    lams = _lambda_grid(args)
    if not lams:
        raise FormatError("auction-k needs --lambda or --lambda-grid")
    rows = []
    for lam in lams:
        if isinstance(model.idiosyncratic, Exponential):
            k = k_analytic_exponential(model.idiosyncratic.theta, lam)
        else:
            k = k_quadrature(model, lam, tol=args.tol)
        rows.append([lam, k])
    _emit_rows(args, ["lambda", "k"], rows)
    return 0


def cmd_auction_sim(args) -> int:
    model = ff.model_from_document(ff.load_json(args.model), where=args.model)
    cfg = McConfig(samples=args.samples, seed=args.seed, chunk=args.chunk)
    table = simulate_bids(model, cfg)
    if args.output:
        ff.save_samples(args.output, table)
    else:
        _emit_rows(args, ["top", "second"], [[float(a), float(b)] for a, b in table])
    return 0


def cmd_auction_identify(args) -> int:
    if len(args.input) != 1:
        raise FormatError("auction-identify takes exactly one --input")
    doc = ff.load_json(args.input[0])
    H = ff.ratio_expansion_from_document(doc, where=args.input[0])
    result = auction_identify(H, args.n, args.target_degree)
    _emit_json(args, ff.identify_result_to_document(result))
    return 0


def cmd_selftest(args) -> int:
    checks: list[tuple[str, bool]] = []

    def check(name, ok):
        checks.append((name, bool(ok)))
        print(f"{'PASS' if ok else 'FAIL'}  {name}")

    check("sin power-ratio identity, exact through order 7", sin_ratio_check(8))
    check(
        "sin expansion matches the closed form at order 12",
        ratio_expansion(ff.function_from_document(
            {"kind": "builtin", "name": "sin", "order": 17}
        ), 2, 1, 12) == sin_closed_form().expansion(12),
    )

    f = Poly([1, 1])
    got = identify(ratio_expansion(f, 2, 1, 8), RatioSpec(2, 1), 3)
    check("round trip recovers 1+x with exponents (2,1)", got.poly == f)
    got = identify(ratio_expansion(-f, 3, 1, 10), RatioSpec(3, 1), 1)
    check(
        "round trip canonicalizes -(1+x) with exponents (3,1)",
        got.poly == f and got.ambiguous_sign,
    )

    pivots_ok = all(
        pivot_value(k, l, RatioSpec(n, m)) != 0
        for k in range(0, 7)
        for l in range(k + 1, k + 7)
        for n in range(1, 6)
        for m in range(1, 6)
        if n != m
    )
    check("pivot values nonzero on a small sweep", pivots_ok)

    pp = delay(step_example(8), Fraction(1, 4))
    back = shift_vanishing(pp, Fraction(1, 4))
    shift_ok = all(
        math.isclose(
            ratio_eval_piecewise(pp, n, m, lam),
            ratio_eval_piecewise(back, n, m, lam),
            rel_tol=1e-10,
        )
        for lam in (0.5, 1.0, 5.0)
        for n, m in ((2, 1), (3, 2))
    )
    check("translation invariance of the piecewise ratio", shift_ok)

    step = step_example(5)
    check(
        "convolution residual vanishes for identical functions",
        all(convolution_residual(step, step, 2, 1, t) == 0.0 for t in (0.5, 1.0, 2.0)),
    )

    kh_ok = all(
        math.isclose(h_from_k(k_from_h(h, N), N), h, rel_tol=1e-12, abs_tol=1e-12)
        for h in (0.0, 0.3, 1.0, 17.5)
        for N in (2, 5, 10)
    )
    check("K and power-ratio conversions invert each other", kh_ok)

    from .auction import AuctionModel, PointMass

    model = AuctionModel(PointMass(0.0), Exponential(1.0), 5)
    check(
        "quadrature matches the exponential closed form",
        abs(k_quadrature(model, 1.0, tol=1e-10) - 0.5) <= 1e-10,
    )

    cfg = McConfig(20_000, seed=7)
    crit = 1.63 * math.sqrt(2 / cfg.samples)
    check(
        "memoryless identity accepted and control rejected",
        memoryless_check(1.0, 3, cfg) < crit < memoryless_check(1.0, 3, cfg, control=True),
    )

    table = simulate_bids(model, McConfig(200_000, seed=13))
    est, se = k_monte_carlo(table, 1.0)
    check("Monte Carlo K within 4 standard errors of 1/2", abs(est - 0.5) < 4 * se)

    failed = [name for name, ok in checks if not ok]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

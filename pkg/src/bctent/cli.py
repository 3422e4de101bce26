"""Command-line front end.

Exit codes: 0 success, 1 parameter error, 2 resource error, 3 refuted
convexity verdict, 4 integrity / internal-consistency error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .cache import CACHE_DIR_ENV, cache_load, cache_path, cache_store
from .cdf import f_lower, f_upper
from .convexity import REFUTED, check_interval, check_point, scan
from .density import rychlik_bounds, sup_density_pipeline, minimal_admissible_n
from .envelope import (
    DEFAULT_RHO,
    build_envelope,
    invariance_mc,
)
from .errors import (
    IntegrityError,
    InternalConsistencyError,
    ParameterError,
    ResourceError,
)
from .presets import PRESET_NAMES, preset_lambda
from .tables import (
    DEFAULT_MEMORY_CAP,
    brute_force_count,
    build_half_sum_table,
    count_le,
)

EXIT_OK = 0
EXIT_PARAMETER = 1
EXIT_RESOURCE = 2
EXIT_REFUTED = 3
EXIT_INTERNAL = 4


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_csv(path: Path | None, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_json(obj: dict, path: Path | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
        sys.stdout.write(text)


def _resolve_lambda(args) -> float:
    if args.lambda_preset is not None:
        if args.lam is not None:
            raise ParameterError("give either --lambda or --lambda-preset, not both")
        return preset_lambda(args.lambda_preset)
    if args.lam is None:
        raise ParameterError("missing --lambda (or --lambda-preset)")
    return args.lam


def _cache_dir(args) -> Path | None:
    if getattr(args, "no_cache", False):
        return None
    if args.cache_dir is not None:
        return Path(args.cache_dir)
    env = os.environ.get(CACHE_DIR_ENV)
    return Path(env) if env else None


def _get_table(args, lam: float, depth: int):
    cache_dir = _cache_dir(args)
    eta = args.eta
    cap = args.memory_cap
    if cache_dir is not None:
        try:
            return cache_load(lam, depth, cache_dir, eta)
        except FileNotFoundError:
            pass
    table = build_half_sum_table(lam, depth, eta, memory_cap=cap)
    if cache_dir is not None:
        cache_store(table, cache_dir)
    return table


def _add_common(p: argparse.ArgumentParser, grid_default: int = 50) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="contraction ratio as a decimal")
    p.add_argument("--lambda-preset", choices=PRESET_NAMES, default=None,
                   help="named algebraic parameter")
    p.add_argument("--depth", type=int, default=40, metavar="L",
                   help="digit depth L (even), default 40")
    p.add_argument("--grid", type=int, default=grid_default, metavar="M",
                   help=f"grid resolution M, default {grid_default}")
    p.add_argument("--eta", type=float, default=None,
                   help="floating-point slack, default L*2^-46")
    p.add_argument("--rho", type=float, default=DEFAULT_RHO,
                   help="bisection resolution, default 2^-20")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads, default all cores")
    p.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP,
                   help="table memory budget in bytes")
    p.add_argument("--cache-dir", type=Path, default=None,
                   help=f"table cache directory (or ${CACHE_DIR_ENV})")
    p.add_argument("--no-cache", action="store_true", help="disable the cache")
    p.add_argument("--out", type=Path, default=None, help="output file")
    p.add_argument("--plot", type=Path, default=None,
                   help="also render a figure to this path")


def _validate_common(args) -> None:
    for name in ("depth", "grid", "threads"):
        if getattr(args, name) <= 0:
            raise ParameterError(f"--{name} must be positive")
    if args.rho <= 0.0:
        raise ParameterError("--rho must be positive")
    if args.eta is not None and args.eta < 0.0:
        raise ParameterError("--eta must be >= 0")


def cmd_cdf(args) -> int:
    _validate_common(args)
    lam = _resolve_lambda(args)
    table = _get_table(args, lam, args.depth)
    xs = np.arange(args.grid + 1) / args.grid
    rows = [
        (_fmt(x), f_lower(table, x).count, f_upper(table, x).count, table.depth)
        for x in xs
    ]
    _write_csv(args.out, ["x", "f_lower_num", "f_upper_num", "denom_log2"], rows)
    if args.plot is not None:
        from .plots import plot_cdf

        lo = [f_lower(table, x).value for x in xs]
        hi = [f_upper(table, x).value for x in xs]
        plot_cdf(xs, lo, hi, lam, table.depth, args.plot)
    return EXIT_OK


def cmd_envelope(args) -> int:
    _validate_common(args)
    lam = _resolve_lambda(args)
    table = _get_table(args, lam, args.depth)
    env = build_envelope(
        lam, args.eps, args.depth, args.grid,
        eta=args.eta, rho=args.rho, threads=args.threads, table=table,
    )
    xs, lo, hi = env.full_grid()
    rows = zip(map(float, xs), map(float, lo), map(float, hi))
    _write_csv(args.out, ["x", "phi_lower", "phi_upper"], rows)
    if args.plot is not None:
        from .plots import plot_envelope

        plot_envelope(env, args.plot)
    return EXIT_OK


def _certify_common(args, eps: float) -> int:
    _validate_common(args)
    lam = _resolve_lambda(args)
    table = _get_table(args, lam, args.depth)
    if eps == 0.0:
        cert = check_point(lam, args.depth, args.grid, args.eta, args.rho,
                           threads=args.threads, table=table)
    else:
        cert = check_interval(lam, eps, args.depth, args.grid, args.eta,
                              args.rho, threads=args.threads, table=table)
    _emit_json(cert.to_dict(), args.out)
    if args.plot is not None:
        from .plots import plot_envelope

        env = build_envelope(lam, eps, args.depth, args.grid, args.eta,
                             args.rho, threads=args.threads, table=table)
        plot_envelope(env, args.plot)
    return EXIT_REFUTED if cert.status == REFUTED else EXIT_OK


def cmd_certify(args) -> int:
    return _certify_common(args, 0.0)


def cmd_certify_interval(args) -> int:
    if args.eps < 0.0:
        raise ParameterError("--eps must be >= 0")
    return _certify_common(args, args.eps)


def cmd_scan(args) -> int:
    _validate_common(args)
    certs = scan(args.lam_from, args.lam_to, args.step, args.depth,
                 args.grid, args.eta, args.rho, threads=args.threads)
    rows = [
        (
            _fmt(c.lam0),
            c.status,
            _fmt(c.scale),
            "" if c.witness_x is None else _fmt(c.witness_x),
            _fmt(c.min_margin),
        )
        for c in certs
    ]
    _write_csv(args.out, ["lambda", "status", "scale", "witness_x", "min_margin"], rows)
    if args.plot is not None:
        from .plots import plot_scan

        plot_scan(certs, args.plot)
    return EXIT_REFUTED if any(c.status == REFUTED for c in certs) else EXIT_OK


def cmd_rychlik(args) -> int:
    _validate_common(args)
    lam = _resolve_lambda(args)
    if args.min_cyl is not None:
        n = args.n if args.n is not None else minimal_admissible_n(lam)
        bound = rychlik_bounds(lam, n, args.min_cyl)
    else:
        bound = sup_density_pipeline(lam, args.depth, args.n, args.eta, args.rho)
    _emit_json(bound.to_dict(), args.out)
    return EXIT_OK


def cmd_invariance(args) -> int:
    _validate_common(args)
    if args.samples <= 0:
        raise ParameterError("--samples must be positive")
    lam = _resolve_lambda(args)
    table = _get_table(args, lam, args.depth)
    env = build_envelope(lam, 0.0, args.depth, args.grid, args.eta,
                         args.rho, threads=args.threads, table=table)
    stat = invariance_mc(table, env, args.sample_depth, args.samples, args.seed)
    tolerance = env.max_width() + 3.0 / args.samples ** 0.5
    _emit_json(
        {
            "lambda": lam,
            "depth": args.depth,
            "grid": args.grid,
            "samples": args.samples,
            "sample_depth": args.sample_depth,
            "seed": args.seed,
            "statistic": stat,
            "max_envelope_width": env.max_width(),
            "tolerance": tolerance,
            "within_tolerance": stat <= tolerance,
        },
        args.out,
    )
    return EXIT_OK if stat <= tolerance else EXIT_INTERNAL


def cmd_oracle_check(args) -> int:
    _validate_common(args)
    rng = np.random.default_rng(args.seed)
    lams = [0.6, 0.7, 0.75, 0.8, 0.9]
    mismatches = 0
    checks = 0
    for lam in lams:
        for depth in range(2, min(args.depth, 16) + 1, 2):
            table = build_half_sum_table(lam, depth, args.eta)
            sums = np.sort(
                table.norm
                * (table.halves[:, None] + table.combine_scale * table.halves[None, :]),
                axis=None,
            )
            for _ in range(args.trials):
                x = float(rng.uniform(-0.1, 1.1))
                gap = float(np.min(np.abs(sums - x)))
                if gap < 2.0 * table.eta:
                    continue  # tie-adjacent threshold, excluded by contract
                checks += 1
                if count_le(table, x) != brute_force_count(lam, depth, x):
                    mismatches += 1
                    print(f"MISMATCH lambda={lam} L={depth} x={_fmt(x)}")
    print(f"oracle-check: {checks} comparisons, {mismatches} mismatches")
    if mismatches:
        raise InternalConsistencyError("count_le disagrees with brute force")
    return EXIT_OK


def cmd_bench(args) -> int:
    _validate_common(args)
    lam = _resolve_lambda(args)
    cache_dir = _cache_dir(args)
    if cache_dir is None:
        raise ParameterError("bench needs a cache directory (--cache-dir)")
    t0 = time.perf_counter()
    table = build_half_sum_table(lam, args.depth, args.eta,
                                 memory_cap=args.memory_cap)
    build_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    cache_store(table, cache_dir)
    store_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    loaded = cache_load(lam, args.depth, cache_dir, args.eta)
    load_s = time.perf_counter() - t0
    identical = bool(np.array_equal(table.halves, loaded.halves))
    _emit_json(
        {
            "lambda": lam,
            "depth": args.depth,
            "entries": table.size,
            "build_seconds": build_s,
            "store_seconds": store_s,
            "load_seconds": load_s,
            "roundtrip_bit_exact": identical,
            "path": str(cache_path(cache_dir, lam, args.depth)),
        },
        args.out,
    )
    return EXIT_OK if identical else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bctent",
        description="Certified bounds for Bernoulli-convolution tent maps",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cdf", help="dyadic CDF bounds on a grid")
    _add_common(p)
    p.set_defaults(func=cmd_cdf)

    p = sub.add_parser("envelope", help="tent-map envelope CSV")
    _add_common(p)
    p.add_argument("--eps", type=float, default=0.0,
                   help="lambda-interval radius, default 0 (point mode)")
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("certify", help="point-mode convexity certificate")
    _add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("certify-interval",
                       help="convexity certificate over a lambda interval")
    _add_common(p)
    p.add_argument("--eps", type=float, required=True,
                   help="lambda-interval radius")
    p.set_defaults(func=cmd_certify_interval)

    p = sub.add_parser("scan", help="batch point-mode certificates")
    _add_common(p)
    p.add_argument("--from", dest="lam_from", type=float, required=True)
    p.add_argument("--to", dest="lam_to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("rychlik", help="variation/sup density bounds")
    _add_common(p)
    p.add_argument("--n", type=int, default=None,
                   help="iterate depth, default minimal admissible")
    p.add_argument("--min-cyl", type=float, default=None,
                   help="skip preimage search and use this cylinder bound")
    p.set_defaults(func=cmd_rychlik)

    p = sub.add_parser("invariance", help="Monte-Carlo invariance statistic")
    _add_common(p)
    p.add_argument("--samples", type=int, default=10 ** 6)
    p.add_argument("--sample-depth", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("oracle-check",
                       help="compare the pair counter against brute force")
    _add_common(p, grid_default=50)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="table build vs cache load timings")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (IntegrityError, InternalConsistencyError) as exc:
        print(f"integrity error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

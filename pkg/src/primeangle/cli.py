"""Command-line interface.

Every subcommand emits one JSON document on stdout (or to --out); sweeps
can emit CSV instead.  Human-oriented progress lines go to stderr so the
machine-readable stream stays clean.  A fixed configuration, precision and
seed reproduce output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .acceptance import CRITERIA
from .alpha import build_angle_oracle, cf_terms, convergents, parse_alpha
from .config import (
    DEFAULT_SEED,
    ExperimentConfig,
    check_admissible,
    config_from_dict,
    parse_precision,
    select_q,
)
from .experiments import (
    attach_envelope,
    build_sum_context,
    run_bound_suite,
    run_prime_count,
    run_smoothed_sum,
    sweep,
)
from .expsum import MinSumInstance, min_sum, standard_estimate_bound
from .report import report_to_json, reports_to_csv
from .sieve import mangoldt_sum_interval, sieve_interval, small_tables
from .vaughan import VaughanParams, t1_sum, t2_bound_chain, t2_sum, vaughan_pieces

Q_POLICY_ALIASES = {
    "strict": "strict-window",
    "nearest": "nearest-convergent",
    "strict-window": "strict-window",
    "nearest-convergent": "nearest-convergent",
}


def _common_options(parser):
    parser.add_argument("--x", type=int, help="right endpoint X of the window (X-Y, X]")
    parser.add_argument("--y", type=int, help="window length Y")
    parser.add_argument("--delta", type=float, help="angle threshold in (0, 1/2]")
    parser.add_argument("--eps", type=float, help="exponent margin epsilon")
    parser.add_argument("--alpha", type=str,
                        help="alpha spec: sqrt:<d> | surd:<a>,<b>,<c>,<d> | cf:<a0>;<pre>;<period>")
    parser.add_argument("--precision", type=str, default=None,
                        help="certified angle error target, e.g. 2^-40")
    parser.add_argument("--q-policy", choices=sorted(Q_POLICY_ALIASES), default=None)
    parser.add_argument("--budget", type=float, default=None, help="operation budget")
    parser.add_argument("--seed", type=int, default=None, help="seed recorded in reports")
    parser.add_argument("--format", choices=["json", "csv"], default=None)
    parser.add_argument("--out", type=str, default=None, help="write output to this path")
    parser.add_argument("--config", type=str, default=None,
                        help="JSON config file; explicit flags override it")
    parser.add_argument("--force", action="store_true",
                        help="run even if the configuration is inadmissible")


def _build_config(args) -> ExperimentConfig:
    data = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("--config must hold a single JSON object")
    overrides = {
        "X": args.x,
        "Y": args.y,
        "delta": args.delta,
        "eps": args.eps,
        "alpha": args.alpha,
        "err_target": parse_precision(args.precision) if args.precision else None,
        "q_policy": Q_POLICY_ALIASES[args.q_policy] if args.q_policy else None,
        "budget": args.budget,
        "seed": args.seed,
        "format": args.format,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    return config_from_dict(data)


def _emit(args, payload, rows_for_csv=None) -> None:
    fmt = args.format or "json"
    if fmt == "csv":
        text = reports_to_csv(rows_for_csv if rows_for_csv is not None else [payload])
    else:
        text = report_to_json(payload) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_convergents(args):
    alpha = parse_alpha(args.alpha)
    convs = convergents(alpha, args.count)
    _emit(args, {
        "alpha": alpha.canonical(),
        "terms": cf_terms(alpha, args.count),
        "convergents": [{"n": c.n, "p": str(c.p), "q": str(c.q)} for c in convs],
    })
    return 0


def cmd_angle(args):
    alpha = parse_alpha(args.alpha)
    n_max = args.n_max or args.n
    err = parse_precision(args.precision) if args.precision else 2.0 ** -40
    oracle = build_angle_oracle(alpha, n_max=n_max, err_target=err)
    value, ebound = oracle.dist(args.n)
    _emit(args, {
        "alpha": alpha.canonical(),
        "n": args.n,
        "angle": value,
        "certified_error": ebound,
        "anchor_q_digits": len(str(oracle.anchor.q)),
    })
    return 0


def cmd_sieve(args):
    s = sieve_interval(args.lo, args.hi)
    primes = s.primes()
    _emit(args, {
        "lo": args.lo,
        "hi": args.hi,
        "prime_count": int(s.prime_count()),
        "first_primes": [int(p) for p in primes[:20]],
        "higher_prime_powers": [[n, p, k] for n, p, k in s.higher_powers],
    })
    return 0


def cmd_psi(args):
    if args.x is None or args.y is None:
        raise ValueError("psi needs --x and --y")
    value = mangoldt_sum_interval(args.x, args.y)
    _emit(args, {
        "X": args.x,
        "Y": args.y,
        "psi_window": value,
        "ratio_to_Y": value / args.y,
    })
    return 0


def cmd_count(args):
    config = _build_config(args)
    report = run_prime_count(config, force=args.force)
    _emit(args, attach_envelope(report, config))
    return 0


def cmd_ssum(args):
    config = _build_config(args)
    report = run_smoothed_sum(config, force=args.force)
    _emit(args, attach_envelope(report, config))
    return 0


def cmd_vaughan_check(args):
    limit = max(args.n_hi, 16)
    tables = small_tables(limit)
    params = VaughanParams(U=args.u, V=args.v, X=limit)
    rows = []
    worst = 0.0
    for n in range(max(args.n_lo, int(args.u) + 1), args.n_hi + 1):
        a1, a2, a3 = vaughan_pieces(n, params, tables)
        residual = abs(tables.mangoldt(n) - (a1 - a2 - a3))
        worst = max(worst, residual)
        if args.verbose_rows:
            rows.append({"n": n, "A1": a1, "A2": a2, "A3": a3, "residual": residual})
    payload = {"U": args.u, "V": args.v, "n_lo": args.n_lo, "n_hi": args.n_hi,
               "max_residual": worst, "ok": worst <= 1e-9}
    if rows:
        payload["rows"] = rows
    _emit(args, payload)
    return 0


def cmd_minsum(args):
    alpha = parse_alpha(args.alpha)
    oracle = build_angle_oracle(alpha, n_max=args.m)
    inst = MinSumInstance(M=args.m, N=args.cap, oracle=oracle, q=args.q)
    res = min_sum(inst)
    branch, bound = standard_estimate_bound(args.m, args.cap, args.q)
    _emit(args, {
        "alpha": alpha.canonical(),
        "M": args.m,
        "N": args.cap,
        "q": args.q,
        "min_sum": res.value,
        "switch_flags": res.switch_flags,
        "branch": branch,
        "standard_bound": bound,
        "ratio": res.value / bound,
    })
    return 0


def cmd_t1(args):
    config = _build_config(args)
    ctx = build_sum_context(config)
    conv, in_window = select_q(config)
    report = t1_sum(args.h, ctx, conv.q)
    report.q_window = config.q_window()
    report.q_in_window = in_window
    _emit(args, attach_envelope(report, config))
    return 0


def cmd_t2(args):
    config = _build_config(args)
    ctx = build_sum_context(config)
    conv, in_window = select_q(config)
    report = t2_sum(args.h, args.m_block, ctx)
    report.q_used = conv.q
    report.q_window = config.q_window()
    report.q_in_window = in_window
    doc = attach_envelope(report, config)
    doc["chain"] = t2_bound_chain(args.h, args.m_block, config.X, config.Y,
                                  config.delta, config.eps, conv.q)
    _emit(args, doc)
    return 0


def cmd_bounds(args):
    config = _build_config(args)
    result = run_bound_suite(config, force=args.force)
    _emit(args, attach_envelope(result, config))
    return 0


def cmd_admissible(args):
    if args.alpha is None:
        args.alpha = "sqrt:2"  # admissibility does not depend on alpha
    config = _build_config(args)
    report = check_admissible(config)
    _emit(args, {"config": config.as_dict(), **report.as_dict()})
    return 0


def cmd_sweep(args):
    with open(args.points, "r", encoding="utf-8") as fh:
        points = json.load(fh)
    if not isinstance(points, list):
        raise ValueError("sweep file must hold a JSON list of config objects")
    runs = tuple(args.runs.split(",")) if args.runs else ("prime_count", "smoothed_sum")
    rows = sweep(points, runs=runs, force=args.force)
    _emit(args, rows, rows_for_csv=rows)
    return 0


def cmd_verify(args):
    if args.criteria:
        wanted = sorted({int(tok) for tok in args.criteria.split(",")})
        bad = [k for k in wanted if k not in CRITERIA]
        if bad:
            raise ValueError(f"unknown criteria: {bad}")
    else:
        wanted = sorted(CRITERIA)
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    results = []
    for k in wanted:
        t0 = time.perf_counter()
        record = CRITERIA[k](seed)
        elapsed = time.perf_counter() - t0
        status = "PASS" if record["passed"] else "FAIL"
        print(f"[{status}] criterion {k:2d}: {record['name']} ({elapsed:.2f}s)",
              file=sys.stderr)
        results.append(record)
    payload = {"seed": seed, "criteria": results,
               "all_passed": all(r["passed"] for r in results)}
    _emit(args, payload)
    return 0 if payload["all_passed"] else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primeangle",
        description="Desk-scale laboratory for primes p with ||p*alpha|| small "
                    "in short intervals (X-Y, X]")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        _common_options(p)
        p.set_defaults(fn=fn)
        return p

    p = add("convergents", cmd_convergents, "continued-fraction terms and convergents")
    p.add_argument("--count", type=int, default=10)

    p = add("angle", cmd_angle, "certified ||n*alpha||")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--n-max", type=int, default=None)

    p = add("sieve", cmd_sieve, "primes and prime powers in (lo, hi]")
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)

    p = add("psi", cmd_psi, "sum of Lambda(n) over the window (X-Y, X]")

    add("count", cmd_count, "count primes with ||p*alpha|| < delta in the window")
    add("ssum", cmd_ssum, "smoothed sum of Lambda(n) F(n*alpha) vs delta*Y")

    p = add("vaughan-check", cmd_vaughan_check, "decomposition identity residuals")
    p.add_argument("--u", type=float, default=4.0)
    p.add_argument("--v", type=float, default=4.0)
    p.add_argument("--n-lo", type=int, default=5)
    p.add_argument("--n-hi", type=int, default=200)
    p.add_argument("--verbose-rows", action="store_true")

    p = add("minsum", cmd_minsum, "min-sum vs the standard estimate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=float, required=True, help="the cap N")
    p.add_argument("--q", type=int, required=True)

    p = add("t1", cmd_t1, "dyadic type I sum with comparator chain")
    p.add_argument("--h", type=float, required=True)

    p = add("t2", cmd_t2, "bilinear type II block with bound chain")
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--m-block", type=int, required=True)

    add("bounds", cmd_bounds, "full dyadic bound suite")
    add("admissible", cmd_admissible, "hypothesis checks and the q window")

    p = add("sweep", cmd_sweep, "run a list of config points, JSON or CSV out")
    p.add_argument("--points", type=str, required=True,
                   help="JSON file holding a list of config objects")
    p.add_argument("--runs", type=str, default=None,
                   help="comma list from: prime_count,smoothed_sum,bound_suite")

    p = add("verify", cmd_verify, "run the acceptance suite")
    p.add_argument("--criteria", type=str, default=None,
                   help="comma list of criterion numbers (default: all)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BrokenPipeError:
        return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

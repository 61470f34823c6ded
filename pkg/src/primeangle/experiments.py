"""End-to-end experiment runners: smoothed sums, prime counts, bound suites, sweeps.

Each runner resolves a configuration into a SumReport whose main term comes
from the closed-form prediction (delta * Y for the smoothed von Mangoldt
sum, 2 delta Y / log X for the prime count) and records the denominator q,
its search window, condition flags, and the bound-chain diagnostics.  All
runners are deterministic for a fixed configuration; sweeps preserve input
order and isolate per-point failures as error codes.
"""

from __future__ import annotations

import math

from .alpha import build_angle_oracle
from .config import (
    AdmissibilityReport,
    ExperimentConfig,
    InadmissibleConfig,
    check_admissible,
    select_q,
)
from .report import SumReport
from .sieve import primes_with_small_angle, sieve_interval, small_tables
from .smoothing import f_direct, kernel_for_experiment
from .vaughan import (
    BudgetExceeded,
    SumContext,
    dyadic_h_blocks,
    dyadic_m_blocks,
    gamma_counts,
    iroot,
    s1_type_i,
    t1_sum,
    t2_bound_chain,
    t2_sum,
    t3_t4_t5_split,
)

__all__ = [
    "run_smoothed_sum",
    "run_prime_count",
    "run_bound_suite",
    "sweep",
    "build_sum_context",
    "attach_envelope",
]

GAMMA_SAMPLE_OFFSETS = (0, -1, 1, -2, 3)


def _gate(config: ExperimentConfig, force: bool) -> AdmissibilityReport:
    adm = check_admissible(config)
    if not adm.ok and not force:
        raise InadmissibleConfig(
            "config violates: " + "; ".join(adm.violations()))
    return adm


def _q_flags(config, adm, in_window) -> list:
    flags = []
    if not in_window:
        flags.append("q-out-of-window")
    if not adm.ok:
        flags.append("inadmissible-forced")
    return flags


def run_smoothed_sum(config: ExperimentConfig, force: bool = False) -> SumReport:
    """Smoothed count: sum of Lambda(n) F(n alpha) over (X-Y, X] vs delta*Y.

    F is evaluated directly at the certified ||n alpha||; the report also
    carries the centered error sum  sum Lambda(n) (F(n alpha) - delta)  and
    its measured decay exponent.
    """
    X, Y, delta = config.X, config.Y, config.delta
    if Y == 0:
        return SumReport(kind="smoothed_sum", value=0.0, main_term=0.0, ratio=None,
                         flags=["empty-window"])
    adm = _gate(config, force)
    if Y > config.budget:
        raise BudgetExceeded(f"window length {Y} exceeds budget {config.budget}")
    conv, in_window = select_q(config)
    sieve = sieve_interval(X - Y, X)
    oracle = build_angle_oracle(config.alpha, n_max=X, err_target=config.err_target)
    value_terms = []
    psi_terms = []
    for n, p, _ in sieve.prime_powers():
        angle, _err = oracle.dist(n)
        logp = math.log(p)
        value_terms.append(logp * f_direct(angle, delta))
        psi_terms.append(logp)
    value = math.fsum(value_terms)
    psi_window = math.fsum(psi_terms)
    error_sum = value - delta * psi_window
    main = delta * Y
    err_ratio = abs(error_sum) / main if main else None
    exponent = -math.log(err_ratio) / math.log(X) if err_ratio else None
    return SumReport(
        kind="smoothed_sum",
        value=value,
        main_term=main,
        q_used=conv.q,
        q_window=config.q_window(),
        q_in_window=in_window,
        measured_exponent=exponent,
        bound_terms={
            "psi_window": psi_window,
            "error_sum": error_sum,
            "error_over_main": err_ratio if err_ratio is not None else 0.0,
        },
        flags=_q_flags(config, adm, in_window),
    )


def run_prime_count(config: ExperimentConfig, force: bool = False) -> SumReport:
    """Prime count with small angle: #{p in (X-Y, X]: ||p alpha|| < delta}.

    Main term 2 delta Y / log X; boundary straddles are flagged and
    reported separately (zero at default precision).
    """
    X, Y, delta = config.X, config.Y, config.delta
    if Y == 0:
        return SumReport(kind="prime_count", value=0.0, main_term=0.0, ratio=None,
                         flags=["empty-window"])
    adm = _gate(config, force)
    if Y > config.budget:
        raise BudgetExceeded(f"window length {Y} exceeds budget {config.budget}")
    conv, in_window = select_q(config)
    sieve = sieve_interval(X - Y, X)
    oracle = build_angle_oracle(config.alpha, n_max=X, err_target=config.err_target)
    res = primes_with_small_angle(sieve, oracle, delta)
    flags = _q_flags(config, adm, in_window)
    if res.boundary_count:
        flags.append(f"boundary:{res.boundary_count}")
    return SumReport(
        kind="prime_count",
        value=float(res.count),
        main_term=2 * delta * Y / math.log(X),
        q_used=conv.q,
        q_window=config.q_window(),
        q_in_window=in_window,
        bound_terms={
            "boundary_count": float(res.boundary_count),
            "interval_primes": float(sieve.prime_count()),
        },
        flags=flags,
    )


def build_sum_context(config: ExperimentConfig, force: bool = False) -> SumContext:
    """Assemble oracle, kernel and tables for the T-sum evaluators.

    The bound-suite oracle is built much deeper than the experiment default
    (2^-80) so that rearranged evaluation routes agree to float rounding;
    its arguments reach X*L for type I phases and 2XH/M for quadruple
    labels, both covered by 2*X*L + X.
    """
    kernel = kernel_for_experiment(config.X, config.eps, config.delta)
    oracle = build_angle_oracle(config.alpha, n_max=2 * config.X * kernel.L + config.X,
                                err_target=min(config.err_target, 2.0 ** -80))
    tables = small_tables(max(2 * iroot(config.X * config.X, 3) + 1, 16))
    return SumContext(X=config.X, Y=config.Y, delta=config.delta, eps=config.eps,
                      oracle=oracle, kernel=kernel, tables=tables,
                      budget=config.budget)


def run_bound_suite(config: ExperimentConfig, force: bool = False,
                    include_s1: bool = True) -> dict:
    """Dyadic grid of type I/II blocks with their bound chains.

    For each dyadic H: the exact T1(H) with its min-sum comparator; for
    each (H, M) with X^{1/3} <= M <= X^{2/3}: the exact T2(H, M), the
    Cauchy-Schwarz opening T3 = T4 + T5, quadruple-count samples where the
    enumeration budget allows, and the closed-form chain terms.
    """
    adm = _gate(config, force)
    conv, in_window = select_q(config)
    ctx = build_sum_context(config, force)
    notices = []
    result = {
        "q_used": conv.q,
        "q_in_window": in_window,
        "q_window": list(config.q_window()),
        "admissible": adm.ok,
        "t1_blocks": [],
        "t2_blocks": [],
        "notices": notices,
    }
    if include_s1:
        result["s1"] = s1_type_i(ctx, conv.q).as_dict()
    for H in dyadic_h_blocks(ctx.L):
        result["t1_blocks"].append(t1_sum(H, ctx, conv.q).as_dict())
    m_blocks = dyadic_m_blocks(config.X)
    if not m_blocks:
        notices.append("empty-grid: no dyadic M with X^(1/3) <= M <= X^(2/3)")
    empty_blocks = 0
    for M in m_blocks:
        for H in dyadic_h_blocks(ctx.L):
            block = {"H": H, "M": M}
            t2 = t2_sum(H, M, ctx)
            block["t2"] = t2.as_dict()
            split = t3_t4_t5_split(H, M, ctx)
            t4_plus_t5 = split.t4 + split.t5
            block["t3"] = split.t3
            block["t4_re"] = split.t4.real
            block["t5_re"] = split.t5.real
            block["identity_residual"] = split.identity_residual
            block["lambda_sq_sum"] = split.lambda_sq_sum
            block["cauchy_ok"] = (
                t2.value ** 2 <= split.lambda_sq_sum * split.t3 * (1 + 1e-9) + 1e-9)
            block["max_m_range_len"] = split.max_m_range_len
            if split.t3 == 0.0 and abs(t4_plus_t5) == 0.0:
                empty_blocks += 1
            chain = t2_bound_chain(H, M, config.X, config.Y, config.delta,
                                   config.eps, conv.q)
            block["chain"] = chain
            bound = chain["t2_bound"]
            block["measured_over_bound"] = t2.value / bound if bound else None
            if config.X <= 512 * M and int(H) <= 16:
                samples = {}
                for off in GAMMA_SAMPLE_OFFSETS:
                    if abs(off) * M <= 2 * config.X * int(H):
                        g0, g1 = gamma_counts(off, int(H), M, config.X, config.Y)
                        samples[str(off)] = [g0, g1]
                block["gamma_samples"] = samples
            result["t2_blocks"].append(block)
    if m_blocks and empty_blocks == len(result["t2_blocks"]):
        notices.append("empty-grid: every type II block had empty ranges")
    return result


ERROR_CODES = {
    InadmissibleConfig: "inadmissible",
    BudgetExceeded: "budget-exceeded",
}


def sweep(configs, runs=("prime_count", "smoothed_sum"), force: bool = False) -> list:
    """Run each config point in order; failures become error rows.

    Returns one row per input: {"index", "config", "reports" | "error"}.
    Output order always equals input order.
    """
    runners = {
        "prime_count": run_prime_count,
        "smoothed_sum": run_smoothed_sum,
        "bound_suite": run_bound_suite,
    }
    unknown = [r for r in runs if r not in runners]
    if unknown:
        raise ValueError(f"unknown runs: {unknown}")
    rows = []
    for index, config in enumerate(configs):
        row = {"index": index}
        try:
            if not isinstance(config, ExperimentConfig):
                from .config import config_from_dict
                config = config_from_dict(config)
            row["config"] = config.as_dict()
            reports = {}
            for name in runs:
                out = runners[name](config, force=force)
                reports[name] = out.as_dict() if isinstance(out, SumReport) else out
            row["reports"] = reports
        except Exception as exc:  # per-point isolation is the contract
            row["error"] = ERROR_CODES.get(type(exc), "error")
            row["error_detail"] = str(exc)
        rows.append(row)
    return rows


def attach_envelope(report, config: ExperimentConfig) -> dict:
    """Top-level report document: report fields + seed + config echo."""
    body = report.as_dict() if isinstance(report, SumReport) else dict(report)
    body["seed"] = config.seed
    body["config_echo"] = config.as_dict()
    return body

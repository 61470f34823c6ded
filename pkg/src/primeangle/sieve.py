"""Segmented prime sieving over short intervals and small arithmetic tables.

The window sieve certifies primality in (lo, hi] by striking multiples of
every prime <= sqrt(hi); prime powers p^k (k >= 2) are annotated separately
so that sums of the von Mangoldt function reduce to exact multiples of
log p, combined at the end with math.fsum (exact compensated reduction).

SmallTables holds mu(n), tau(n) and the (p, k) structure of Lambda(n) for
n <= N; Lambda's log is taken lazily.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .alpha import AngleOracle, classify_against_threshold

__all__ = [
    "IntervalSieve",
    "SmallTables",
    "sieve_interval",
    "mangoldt_sum_interval",
    "small_tables",
    "primes_with_small_angle",
    "SieveCeilingExceeded",
    "base_primes",
]

SIEVE_CEILING = 2 ** 48
SEGMENT_SIZE = 2 ** 20


class SieveCeilingExceeded(ValueError):
    """Requested window lies beyond the configured sieving ceiling."""


_BASE_CACHE: dict = {"limit": 0, "primes": np.empty(0, dtype=np.int64)}


def base_primes(limit: int) -> np.ndarray:
    """All primes <= limit by a plain sieve; cached and grown on demand."""
    if limit <= 1:
        return np.empty(0, dtype=np.int64)
    if limit > _BASE_CACHE["limit"]:
        flags = np.ones(limit + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if flags[p]:
                flags[p * p:: p] = False
        _BASE_CACHE["primes"] = np.flatnonzero(flags).astype(np.int64)
        _BASE_CACHE["limit"] = limit
    primes = _BASE_CACHE["primes"]
    return primes[primes <= limit]


@dataclass
class IntervalSieve:
    """Prime flags and prime-power annotations on the window (lo, hi].

    flags[i] corresponds to n = lo + 1 + i.  higher_powers lists
    (n, p, k) with n = p^k, k >= 2, in increasing n.  Immutable by
    convention after construction; segments may be sieved in parallel.
    """

    lo: int
    hi: int
    flags: np.ndarray
    higher_powers: list = field(default_factory=list)

    def is_prime(self, n: int) -> bool:
        if not (self.lo < n <= self.hi):
            raise ValueError(f"{n} outside window ({self.lo}, {self.hi}]")
        return bool(self.flags[n - self.lo - 1])

    def primes(self) -> np.ndarray:
        return np.flatnonzero(self.flags) + self.lo + 1

    def prime_count(self) -> int:
        return int(np.count_nonzero(self.flags))

    def prime_powers(self):
        """All (n, p, k) with Lambda(n) = log p in the window, sorted by n."""
        merged = [(int(p), int(p), 1) for p in self.primes()]
        merged.extend(self.higher_powers)
        merged.sort()
        return merged


def sieve_interval(lo: int, hi: int, ceiling: int = SIEVE_CEILING) -> IntervalSieve:
    """Sieve the window (lo, hi] with segmented strikes of base primes."""
    if not (2 <= lo < hi):
        raise ValueError("need 2 <= lo < hi")
    if hi > ceiling:
        raise SieveCeilingExceeded(f"hi={hi} exceeds ceiling {ceiling}")
    root = math.isqrt(hi)
    bases = base_primes(root)
    flags = np.ones(hi - lo, dtype=bool)
    for seg_lo in range(lo, hi, SEGMENT_SIZE):
        seg_hi = min(seg_lo + SEGMENT_SIZE, hi)
        off = seg_lo - lo
        for p in bases:
            p = int(p)
            start = max(p * p, ((seg_lo // p) + 1) * p)
            if start > seg_hi:
                continue
            flags[start - lo - 1: seg_hi - lo: p] = False
    powers = []
    for p in bases:
        p = int(p)
        pk, k = p * p, 2
        while pk <= hi:
            if pk > lo:
                powers.append((pk, p, k))
            pk *= p
            k += 1
    powers.sort()
    return IntervalSieve(lo=lo, hi=hi, flags=flags, higher_powers=powers)


def mangoldt_sum_interval(X: int, Y: int) -> float:
    """psi(X) - psi(X - Y): sum of Lambda(n) over the window (X-Y, X].

    Grouped per prime so each log p enters once with an integer
    multiplicity, then reduced with math.fsum.
    """
    if not (2 <= Y <= X / 2):
        raise ValueError("need 2 <= Y <= X/2")
    sieve = sieve_interval(X - Y, X)
    counts: dict = {}
    for p in sieve.primes():
        counts[int(p)] = counts.get(int(p), 0) + 1
    for _, p, _ in sieve.higher_powers:
        counts[p] = counts.get(p, 0) + 1
    return math.fsum(mult * math.log(p) for p, mult in sorted(counts.items()))


@dataclass
class SmallTables:
    """mu, tau and structural Lambda for all n <= limit."""

    limit: int
    mu: np.ndarray      # int8, mu(n) in {-1, 0, 1}
    tau: np.ndarray     # int32, divisor counts
    lam_p: np.ndarray   # int64, p if n = p^k else 0
    lam_k: np.ndarray   # int16, k if n = p^k else 0

    def mangoldt(self, n: int) -> float:
        p = self.lam_p[n]
        return math.log(p) if p else 0.0

    def mangoldt_pk(self, n: int):
        """(p, k) with n = p^k, or None."""
        p = int(self.lam_p[n])
        return (p, int(self.lam_k[n])) if p else None


def small_tables(N: int) -> SmallTables:
    """Sieve-filled mu/tau/Lambda tables for n in [0, N]."""
    if N < 1:
        raise ValueError("N must be >= 1")
    size = N + 1
    mu = np.ones(size, dtype=np.int8)
    tau = np.zeros(size, dtype=np.int32)
    lam_p = np.zeros(size, dtype=np.int64)
    lam_k = np.zeros(size, dtype=np.int16)
    for d in range(1, size):
        tau[d::d] += 1
    for p in base_primes(N):
        p = int(p)
        mu[p::p] *= -1
        if p * p <= N:
            mu[p * p:: p * p] = 0
        pk, k = p, 1
        while pk <= N:
            lam_p[pk] = p
            lam_k[pk] = k
            pk *= p
            k += 1
    mu[0] = 0
    tau[0] = 0
    return SmallTables(limit=N, mu=mu, tau=tau, lam_p=lam_p, lam_k=lam_k)


@dataclass
class SmallAngleCount:
    """Result of counting primes p with certified ||p*alpha|| < delta."""

    count: int
    boundary_count: int
    sample: list  # first (p, ||p*alpha||) hits, capped

    def as_dict(self):
        return {
            "count": self.count,
            "boundary_count": self.boundary_count,
            "sample": [[p, v] for p, v in self.sample],
        }


def primes_with_small_angle(sieve: IntervalSieve, oracle: AngleOracle,
                            delta: float, sample_cap: int = 32) -> SmallAngleCount:
    """Count primes p in the sieve window with certified ||p*alpha|| < delta.

    Strictness is decided on the certified interval; straddles are counted
    separately as boundary cases (expected zero at default precision).
    """
    if not (0.0 < delta <= 0.5):
        raise ValueError("delta must lie in (0, 1/2]")
    if sieve.hi > oracle.n_max:
        raise ValueError("oracle does not cover the sieve window")
    count = boundary = 0
    sample = []
    for p in sieve.primes():
        value, err = oracle.dist(int(p))
        verdict = classify_against_threshold(value, err, delta)
        if verdict == "below":
            count += 1
            if len(sample) < sample_cap:
                sample.append((int(p), value))
        elif verdict == "boundary":
            boundary += 1
    return SmallAngleCount(count=count, boundary_count=boundary, sample=sample)

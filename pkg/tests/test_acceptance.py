"""Acceptance gate: every release criterion at its pinned tolerance.

Each test runs one criterion, prints a PASS/FAIL line (visible with -s or
-rA), asserts the verdict, and enforces the stated runtime ceiling.
Tolerances live in primeangle.acceptance as module constants:

  1  convergent invariants: exact, zero failures          (< 1 s)
  2  Poisson identity: sup diff <= tail bound + 1e-12     (< 5 s)
  3  decomposition identity: residual <= 1e-9, all n      (< 10 s)
  4  exp-sum closed vs naive <= 1e-10, sharp min bound    (< 10 s)
  5  min-sum constant <= 8, two points per interval       (< 30 s)
  6  T3 = T4 + T5 (1e-9 rel), Cauchy-Schwarz, exact gamma (< 60 s)
  7  psi window within 5% of Y at X = 1e7                 (< 20 s)
  8  small-angle prime count within 15%, both alphas      (< 30 s)
  9  smoothed sum within 15% of delta*Y, admissible point (< 120 s)
  10 verify twice -> byte-identical JSON
"""

import time

import pytest

from primeangle.acceptance import CRITERIA
from primeangle.config import DEFAULT_SEED

RUNTIME_LIMITS = {1: 1.0, 2: 5.0, 3: 10.0, 4: 10.0, 5: 30.0,
                  6: 60.0, 7: 20.0, 8: 30.0, 9: 120.0}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    started = time.perf_counter()
    record = CRITERIA[number](DEFAULT_SEED)
    elapsed = time.perf_counter() - started
    status = "PASS" if record["passed"] else "FAIL"
    print(f"[{status}] criterion {number:2d}: {record['name']} ({elapsed:.2f}s)")
    assert record["passed"], record
    limit = RUNTIME_LIMITS.get(number)
    if limit is not None:
        assert elapsed < limit, f"criterion {number} took {elapsed:.2f}s >= {limit}s"

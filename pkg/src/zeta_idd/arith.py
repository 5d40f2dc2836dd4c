"""Prime powers, the von Mangoldt function and the weighted prime sum of g_zeta."""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from ._summation import blocked_prefix_sum, fsum
from .errors import CapacityError, DomainError

MAX_LIMIT = 10**9
SEGMENT = 1 << 22
# n <= e^t is tested as n <= floor(e^t (1 + 4 ulp)); a term sitting exactly on
# the boundary contributes Lambda(n)/sqrt(n) * (t - log n) = 0 anyway.
BOUNDARY_SLACK = 1.0 + 4 * np.finfo(float).eps


def _small_primes(limit):
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def _segmented_primes(limit):
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    base = _small_primes(math.isqrt(limit))
    chunks = []
    for lo in range(2, limit + 1, SEGMENT):
        hi = min(lo + SEGMENT, limit + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            seg[start - lo :: p] = False
        chunks.append(np.flatnonzero(seg).astype(np.int64) + lo)
    return np.concatenate(chunks)


@dataclass(frozen=True, eq=False)
class VonMangoldtTable:
    """All prime powers n <= limit with Lambda(n) = log p, sorted by n."""

    limit: int
    n: np.ndarray
    log_p: np.ndarray
    _prefix: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return self.n.size

    def entries(self):
        return list(zip(self.n.tolist(), self.log_p.tolist()))

    def weights(self):
        """Lambda(n) / sqrt(n), cached."""
        if "w" not in self._prefix:
            self._prefix["w"] = self.log_p / np.sqrt(self.n.astype(float))
        return self._prefix["w"]

    def prefix_sums(self):
        """Inclusive prefix sums of Lambda(n)/sqrt(n) and Lambda(n) log(n)/sqrt(n)."""
        if "p1" not in self._prefix:
            w = self.weights()
            self._prefix["p1"] = blocked_prefix_sum(w)
            self._prefix["p2"] = blocked_prefix_sum(w * np.log(self.n.astype(float)))
        return self._prefix["p1"], self._prefix["p2"]

    def require(self, x):
        if self.limit < x:
            raise CapacityError(f"von Mangoldt table limit {self.limit} < required {x}")


def sieve_von_mangoldt(limit: int) -> VonMangoldtTable:
    """Sieve every prime power up to ``limit`` (at most 1e9)."""
    limit = int(limit)
    if limit < 1:
        raise DomainError("limit must be >= 1")
    if limit > MAX_LIMIT:
        raise CapacityError(f"limit {limit} exceeds guard {MAX_LIMIT}")
    primes = _segmented_primes(limit)
    logs = np.log(primes.astype(float))
    ns, ls = [primes], [logs]
    # higher powers only exist for p <= sqrt(limit)
    small = primes[primes <= math.isqrt(limit)]
    power = small * small
    lp = logs[: small.size]
    while small.size:
        keep = power <= limit
        small, power, lp = small[keep], power[keep], lp[keep]
        ns.append(power)
        ls.append(lp)
        power = power * small
    n = np.concatenate(ns)
    log_p = np.concatenate(ls)
    order = np.argsort(n, kind="stable")
    n, log_p = n[order], log_p[order]
    n.setflags(write=False)
    log_p.setflags(write=False)
    return VonMangoldtTable(limit=limit, n=n, log_p=log_p)


@functools.lru_cache(maxsize=4)
def cached_table(limit: int) -> VonMangoldtTable:
    """Process-wide memo of :func:`sieve_von_mangoldt` (tables are read-only)."""
    return sieve_von_mangoldt(limit)


def table_for_t(t_max: float) -> VonMangoldtTable:
    """Smallest table that supports the explicit route up to |t| = t_max."""
    return cached_table(max(2, math.floor(math.exp(t_max)) + 1))


def cutoff_index(t, table):
    """Number of table entries with n <= e^t (boundary convention above)."""
    x = np.floor(np.exp(np.asarray(t, dtype=float)) * BOUNDARY_SLACK)
    return np.searchsorted(table.n, x, side="right")


def _check_capacity(t_max, table):
    if t_max < 0 or not math.isfinite(t_max):
        raise DomainError(f"t must be finite and >= 0, got {t_max}")
    table.require(math.floor(math.exp(t_max)))


def prime_term_sum(t: float, table: VonMangoldtTable) -> float:
    """sum_{n <= e^t} Lambda(n)/sqrt(n) * (t - log n), correctly rounded."""
    t = float(t)
    _check_capacity(t, table)
    k = int(cutoff_index(t, table))
    if k == 0:
        return 0.0
    n = table.n[:k].astype(float)
    return fsum(table.weights()[:k] * (t - np.log(n)))


def prime_term_sum_array(ts, table: VonMangoldtTable) -> np.ndarray:
    """Vectorized :func:`prime_term_sum` through compensated prefix sums.

    Agrees with the scalar version to a few ulps of t * sum Lambda(n)/sqrt(n).
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size == 0:
        return np.zeros_like(ts)
    _check_capacity(float(ts.max()), table)
    if ts.min() < 0:
        raise DomainError("t must be >= 0")
    p1, p2 = table.prefix_sums()
    k = cutoff_index(ts, table)
    s1 = np.where(k > 0, p1[np.maximum(k - 1, 0)], 0.0)
    s2 = np.where(k > 0, p2[np.maximum(k - 1, 0)], 0.0)
    return ts * s1 - s2


def chebyshev_psi(x: float, table: VonMangoldtTable) -> float:
    """psi(x) = sum_{n <= x} Lambda(n)."""
    table.require(math.floor(x))
    k = int(np.searchsorted(table.n, math.floor(x), side="right"))
    return fsum(table.log_p[:k])

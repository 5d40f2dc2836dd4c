"""Compound Poisson sampling for the triplet (0, 0, nu) and ECF validation.

Random streams: draws are processed in fixed chunks of ``CHUNK`` indices
and chunk ``c`` uses ``Generator(Philox(SeedSequence([seed, c])))``.  A
draw's value therefore depends only on (seed, its index, the measure),
never on how chunks are scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._summation import fsum
from .errors import ConsistencyError, DomainError
from .gfun import g_zero_sum_array
from .levy import LevyMeasure
from .zeros_io import ZeroTable

CHUNK = 1 << 16
MAX_SAMPLES = 10**8


@dataclass(frozen=True, eq=False)
class SampleBatch:
    values: np.ndarray
    seed: int
    n: int
    measure_height: float


@dataclass(frozen=True, eq=False)
class EcfReport:
    tgrid: np.ndarray
    ecf: np.ndarray
    theoretical: np.ndarray
    sup_error: float
    clt_tolerance: float

    @property
    def passed(self) -> bool:
        return self.sup_error <= self.clt_tolerance

    def to_json(self) -> dict:
        return {
            "tgrid": self.tgrid.tolist(),
            "ecf": [[z.real, z.imag] for z in self.ecf.tolist()],
            "theoretical": [[z.real, z.imag] for z in self.theoretical.tolist()],
            "sup_error": self.sup_error,
            "clt_tolerance": self.clt_tolerance,
            "passed": self.passed,
        }


def alias_table(probs):
    """Vose's alias method: returns (accept, alias) arrays."""
    p = np.asarray(probs, dtype=float)
    m = p.size
    scaled = p * m / p.sum()
    accept = np.ones(m)
    alias = np.arange(m)
    small = [i for i in range(m) if scaled[i] < 1.0]
    large = [i for i in range(m) if scaled[i] >= 1.0]
    while small and large:
        s = small.pop()
        l = large.pop()
        accept[s] = scaled[s]
        alias[s] = l
        scaled[l] = (scaled[l] + scaled[s]) - 1.0
        (small if scaled[l] < 1.0 else large).append(l)
    # leftovers are 1 up to rounding
    return accept, alias


def _chunk_rng(seed, chunk):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, chunk])))


def _sample_chunk(rng, size, lam, locations, accept, alias):
    counts = rng.poisson(lam, size)
    total = int(counts.sum())
    out = np.zeros(size)
    if total:
        col = rng.integers(0, locations.size, total)
        u = rng.random(total)
        idx = np.where(u < accept[col], col, alias[col])
        owner = np.repeat(np.arange(size), counts)
        out = np.bincount(owner, weights=locations[idx], minlength=size)
    return out


def sample(measure: LevyMeasure, n: int, seed: int) -> SampleBatch:
    """n draws of X = J_1 + ... + J_K, K ~ Poisson(total mass), J from the normalized atoms."""
    if len(measure) == 0:
        raise DomainError("cannot sample from an empty measure")
    n = int(n)
    if n < 1 or n > MAX_SAMPLES:
        raise DomainError(f"n must be in [1, {MAX_SAMPLES}], got {n}")
    seed = int(seed) & 0xFFFFFFFFFFFFFFFF
    lam = measure.total_mass
    accept, alias = alias_table(measure.masses)
    values = np.empty(n)
    for c, lo in enumerate(range(0, n, CHUNK)):
        hi = min(lo + CHUNK, n)
        values[lo:hi] = _sample_chunk(_chunk_rng(seed, c), hi - lo, lam,
                                      measure.locations, accept, alias)
    return SampleBatch(values=values, seed=seed, n=n, measure_height=measure.truncation_height)


def empirical_cf(values, ts) -> np.ndarray:
    """(1/n) sum_k e^{i t X_k}, each part correctly rounded (order independent)."""
    x = np.asarray(values, dtype=float)
    out = np.empty(len(ts), dtype=complex)
    for j, t in enumerate(np.asarray(ts, dtype=float).tolist()):
        tx = t * x
        out[j] = complex(fsum(np.cos(tx)), fsum(np.sin(tx))) / x.size
    return out


def ecf_compare(batch: SampleBatch, zeros: ZeroTable, tgrid) -> EcfReport:
    """Compare the sample's ECF with exp(g_zero_sum) for the same truncation."""
    if batch.measure_height != zeros.height:
        raise ConsistencyError(
            f"sample drawn at truncation height {batch.measure_height}, zero table height {zeros.height}"
        )
    ts = np.asarray(tgrid, dtype=float)
    ecf = empirical_cf(batch.values, ts)
    theo = np.exp(g_zero_sum_array(ts, zeros)).astype(complex)
    sup = float(np.max(np.abs(ecf - theo))) if ts.size else 0.0
    return EcfReport(ts, ecf, theo, sup, 3.0 / math.sqrt(batch.n))


def write_csv(batch: SampleBatch, stream) -> None:
    stream.write("x\n")
    for v in batch.values.tolist():
        stream.write(f"{v:.17g}\n")

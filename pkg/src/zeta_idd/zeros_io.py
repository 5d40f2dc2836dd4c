"""Zero-ordinate tables: parsing, validation and truncation tails.

A table file is plain text with one decimal ordinate per line; lines starting
with ``#`` are comments and blank lines are skipped.  Only positive
ordinates are stored; consumers pair each gamma with -gamma themselves.

Only the RH-true picture is representable here: an ordinate table holds real
numbers, so an off-line zero (complex gamma) cannot be loaded.
"""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.optimize import brentq

from ._summation import fsum
from .errors import DomainError, FormatError, ValidationError

MIN_ORDINATE = 14.0
TAIL_SAFETY = 1.5
TWO_PI = 2.0 * math.pi
ZEROS_ENV = "ZETA_IDD_ZEROS"


@dataclass(frozen=True, eq=False)
class ZeroTable:
    ordinates: np.ndarray
    multiplicities: np.ndarray
    source: str = ""

    def __post_init__(self):
        g = np.asarray(self.ordinates, dtype=float)
        m = np.asarray(self.multiplicities, dtype=np.int64)
        if g.ndim != 1 or g.size == 0:
            raise ValidationError("zero table is empty")
        if m.shape != g.shape:
            raise ValidationError("multiplicities must align with ordinates")
        if not np.all(np.isfinite(g)):
            raise ValidationError("ordinates must be finite")
        if g[0] <= MIN_ORDINATE:
            raise ValidationError(f"ordinate {g[0]} <= {MIN_ORDINATE}; the first zero lies above 14")
        bad = np.flatnonzero(np.diff(g) <= 0)
        if bad.size:
            i = int(bad[0])
            raise ValidationError(f"ordinates not strictly ascending at index {i + 1}: {g[i]} then {g[i + 1]}")
        if np.any(m < 1):
            raise ValidationError("multiplicities must be >= 1")
        g.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "ordinates", g)
        object.__setattr__(self, "multiplicities", m)

    @property
    def height(self) -> float:
        return float(self.ordinates[-1])

    def __len__(self):
        return self.ordinates.size

    def head(self, count):
        """Table of the first ``count`` ordinates (nested truncation)."""
        return ZeroTable(self.ordinates[:count], self.multiplicities[:count],
                         f"{self.source} [first {count}]")


@dataclass(frozen=True)
class TailBound:
    height: float
    bound: float


def load_zero_table(stream, source: str = "<stream>") -> ZeroTable:
    """Parse a zero table from a text stream (or a string)."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    values = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            val = float(line)
        except ValueError:
            raise FormatError(f"cannot parse ordinate {line!r}", line=lineno) from None
        if not math.isfinite(val) or val <= 0:
            raise ValidationError(f"line {lineno}: ordinate must be positive and finite, got {line!r}")
        values.append(val)
    if not values:
        raise ValidationError("zero table is empty")
    return ZeroTable(np.array(values), np.ones(len(values), dtype=np.int64), source)


def load_zero_file(path) -> ZeroTable:
    path = Path(path)
    with path.open() as fh:
        return load_zero_table(fh, source=str(path))


def dump_zero_table(table: ZeroTable, stream) -> None:
    """Write ``table`` in the loader format; ``repr`` keeps floats bit-exact."""
    if table.source:
        stream.write(f"# source: {table.source}\n")
    for g in table.ordinates.tolist():
        stream.write(repr(g) + "\n")


def bundled_table(count: int = 1000) -> ZeroTable:
    """First ``count`` (<= 1000) ordinates from the packaged fixture."""
    ref = resources.files("zeta_idd") / "data" / "zeros1000.txt"
    with ref.open() as fh:
        table = load_zero_table(fh, source="zeta_idd/data/zeros1000.txt")
    if count > len(table):
        raise ValidationError(f"bundled fixture has only {len(table)} zeros")
    return table if count == len(table) else table.head(count)


def default_zero_path():
    return os.environ.get(ZEROS_ENV) or None


def smooth_zero_count(T):
    """Riemann-von Mangoldt main term N(T) ~ (T/2pi) log(T/2pi) - T/2pi + 7/8."""
    x = np.asarray(T, dtype=float) / TWO_PI
    return x * np.log(x) - x + 0.875


def zero_density(T):
    """d/dT of :func:`smooth_zero_count`: log(T/2pi) / (2pi)."""
    return np.log(np.asarray(T, dtype=float) / TWO_PI) / TWO_PI


def inverse_power_tail(T, k):
    """Integral of u^{-k} against the smooth zero density over (T, inf), k > 1."""
    return (T ** (1 - k) / (k - 1)) * (math.log(T / TWO_PI) + 1.0 / (k - 1)) / TWO_PI


def tail_bound(table: ZeroTable) -> TailBound:
    """Bound on the zeros omitted above the table height.

    Each omitted pair +-gamma moves the zero sum of g_zeta by at most
    2 * 2 / gamma^2, and with the smooth density the omitted sum of
    1/gamma^2 is log(T/2pi) + 1 over 2pi T.  The safety factor 1.5 covers
    the fluctuation of the true count around the smooth one; the bound is a
    density heuristic, not a proof.
    """
    if table is None or len(table) == 0:
        raise DomainError("tail_bound needs a non-empty table")
    T = table.height
    return TailBound(height=T, bound=TAIL_SAFETY * 4.0 * inverse_power_tail(T, 2))


def inverse_square_sum(table: ZeroTable) -> float:
    """sum m_gamma / gamma^2 over the table."""
    g = table.ordinates
    return fsum(table.multiplicities / (g * g))


def continuum_start(table: ZeroTable) -> float:
    """Height T* where the smooth count reaches the table size.

    Used as the lower limit when the zeros beyond the table are replaced by
    the smooth density: the continuum then carries exactly the zeros that
    are missing on average.
    """
    count = float(table.multiplicities.sum())
    T = table.height
    f = lambda u: float(smooth_zero_count(u)) - count
    lo, hi = T * 0.9, T * 1.1
    while f(lo) > 0:
        lo *= 0.9
    while f(hi) < 0:
        hi *= 1.1
    return brentq(f, lo, hi, xtol=1e-12)

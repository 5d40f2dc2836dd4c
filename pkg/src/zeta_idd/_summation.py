"""Compensated accumulation helpers.

All long sums in the package go through these so that the summation order
is fixed and the rounding error does not grow with the number of terms.
"""
import math

import numpy as np


def fsum(values):
    """Correctly rounded sum of real values (Shewchuk via ``math.fsum``)."""
    if isinstance(values, np.ndarray):
        values = values.tolist()
    return math.fsum(values)


def cfsum(values):
    """Correctly rounded real and imaginary parts of a complex sum."""
    arr = np.asarray(values, dtype=complex)
    return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))


def two_sum(a, b):
    """Error-free transformation: ``a + b == s + e`` exactly."""
    s = a + b
    bp = s - a
    e = (a - (s - bp)) + (b - bp)
    return s, e


def blocked_prefix_sum(values, block=1024):
    """Inclusive prefix sums with error independent of the array length.

    The array is cut into blocks; block offsets are accumulated with
    a double-double running sum and only the short in-block partial sums use plain
    floating addition.  The absolute error of entry ``i`` is about
    ``eps * (|prefix[i]| + block * max|values|)``.
    """
    v = np.asarray(values, dtype=float)
    n = v.size
    out = np.empty(n)
    if n == 0:
        return out
    nblocks = -(-n // block)
    padded = np.zeros(nblocks * block)
    padded[:n] = v
    tiles = padded.reshape(nblocks, block)
    local = np.cumsum(tiles, axis=1)
    totals = local[:, -1]
    offsets = np.empty(nblocks)
    hi = lo = 0.0
    for i in range(nblocks):
        offsets[i] = hi + lo
        hi, err = two_sum(hi, float(totals[i]))
        lo += err
    # one rounding per entry: exact offset + short local partial sum
    out[:] = (local + offsets[:, None]).ravel()[:n]
    return out

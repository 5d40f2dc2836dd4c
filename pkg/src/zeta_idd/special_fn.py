"""Digamma, the Hurwitz-Lerch value Phi(x, 2, 1/4) and related constants.

Only what g_zeta and the xi'/xi evaluators need is implemented: real and
complex digamma, and Phi(x, 2, a) with a = 1/4 for 0 <= x <= 1.
"""
from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._summation import fsum
from .errors import DomainError

QUARTER = 0.25

# digamma: shift the argument up to this real part, then use the asymptotic
# series with the six Bernoulli terms below (next term < 1e-15 at |w| >= 10).
DIGAMMA_SHIFT = 10.0
_ASYMPTOTIC_B2K = (
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
    (10, 5.0 / 66.0),
    (12, -691.0 / 2730.0),
)

# Phi(e^{-u}, 2, 1/4): power series in x when u >= PHI_SWITCH, otherwise the
# log-singular expansion about x = 1.  Both truncations leave < 1e-16.
PHI_SWITCH = 1.0
PHI_SERIES_TERMS = 40     # x <= e^{-1}: tail < x^40 / (40^2 (1-x)) ~ 1e-20
PHI_EXPANSION_TERMS = 32  # u < 1: |term k| ~ 2 (u / 2pi)^k
PHI_EM_CUTOFF = 64        # direct terms before the Euler-Maclaurin tail at x = 1


def _bernoulli_numbers(n):
    """B_0..B_n as exact fractions (B_1 = -1/2)."""
    b = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        b[m] = Fraction(1) if m == 0 else -sum(
            math.comb(m + 1, k) * b[k] for k in range(m)
        ) / (m + 1)
    return b


def _bernoulli_poly(n, x, bern):
    return sum(math.comb(n, k) * bern[k] * x ** (n - k) for k in range(n + 1))


def _expansion_coefficients(a, terms):
    # coefficient of (-u)^k / k! is zeta(2 - k, a) = -B_{k-1}(a) / (k - 1)
    bern = _bernoulli_numbers(terms)
    coeffs = [0.0, 0.0]
    for k in range(2, terms):
        val = -_bernoulli_poly(k - 1, a, bern) / (k - 1)
        coeffs.append(float(val * (-1) ** k / math.factorial(k)))
    return np.array(coeffs)


_PHI_COEFFS = _expansion_coefficients(Fraction(1, 4), PHI_EXPANSION_TERMS)


def _check_positive(w):
    if not (isinstance(w, (int, float, np.floating, np.integer)) and math.isfinite(w) and w > 0):
        raise DomainError(f"digamma needs a finite positive real argument, got {w!r}")


def digamma(w: float) -> float:
    """psi(w) for real w > 0, absolute error below 1e-12 on (0, 100].

    Upward recurrence psi(w) = psi(w + 1) - 1/w to w >= 10, then the
    asymptotic expansion log w - 1/(2w) - sum B_2k / (2k w^2k).
    """
    _check_positive(w)
    w = float(w)
    shift = []
    while w < DIGAMMA_SHIFT:
        shift.append(-1.0 / w)
        w += 1.0
    inv2 = 1.0 / (w * w)
    series = 0.0
    for k, b in reversed(_ASYMPTOTIC_B2K):
        series = (series + b / k) * inv2
    shift.extend((math.log(w), -0.5 / w, -series))
    return fsum(shift)


def complex_digamma(w: complex) -> complex:
    """psi(w) for complex w with Re(w) >= 0.55; accuracy about 1e-13 absolute.

    Same recurrence-then-asymptotic strategy as :func:`digamma`.
    """
    w = complex(w)
    if not (cmath.isfinite(w) and w.real >= 0.55):
        raise DomainError(f"complex digamma implemented for Re(w) >= 0.55, got {w!r}")
    shift_re, shift_im = [], []
    while w.real < DIGAMMA_SHIFT:
        r = -1.0 / w
        shift_re.append(r.real)
        shift_im.append(r.imag)
        w += 1.0
    inv2 = 1.0 / (w * w)
    series = 0j
    for k, b in reversed(_ASYMPTOTIC_B2K):
        series = (series + b / k) * inv2
    tail = cmath.log(w) - 0.5 / w - series
    shift_re.append(tail.real)
    shift_im.append(tail.imag)
    return complex(fsum(shift_re), fsum(shift_im))


def _phi_quarter_at_one():
    a = QUARTER
    terms = [(n + a) ** -2 for n in range(PHI_EM_CUTOFF)]
    # Euler-Maclaurin tail of sum_{n >= N} (n + a)^-2; next term ~ 1/(30 y^9) < 1e-17
    y = PHI_EM_CUTOFF + a
    terms.extend((1.0 / y, 0.5 / y**2, 1.0 / (6 * y**3), -1.0 / (30 * y**5), 1.0 / (42 * y**7)))
    return fsum(terms)


def _phi_quarter_series(x):
    n = np.arange(PHI_SERIES_TERMS, dtype=float)
    weights = (n + QUARTER) ** -2
    # Horner in x, highest power first: identical for scalar and array input
    acc = np.zeros_like(x)
    for wgt in weights[::-1]:
        acc = acc * x + wgt
    return acc


def _expansion_excess(u):
    # Phi(e^{-u}, 2, a) = e^{a u} [zeta(2, a) + excess(u)], where
    # excess(u) = u (log u - psi(2) + psi(a)) + sum_{k>=2} zeta(2-k, a) (-u)^k / k!
    lin = (1.0 - np.euler_gamma) - digamma(QUARTER)
    poly = np.zeros_like(u)
    for c in _PHI_COEFFS[:1:-1]:
        poly = (poly + c) * u
    poly = poly * u
    with np.errstate(divide="ignore", invalid="ignore"):
        ulogu = np.where(u > 0, u * np.log(np.where(u > 0, u, 1.0)), 0.0)
    return (ulogu - lin * u) + poly


def _phi_quarter_expansion(u, zeta2):
    return np.exp(QUARTER * u) * (zeta2 + _expansion_excess(u))


def phi_quarter_of_u(u):
    """Phi(e^{-u}, 2, 1/4) for u >= 0 (scalar or array).

    Taking ``u`` rather than ``x`` avoids the cancellation in ``-log x``
    when x is within rounding of 1, which is the regime g_zeta(t) hits
    for small t (x = e^{-2t}).
    """
    arr = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(arr) & ~np.isposinf(arr)) or np.any(arr < 0):
        raise DomainError("phi_quarter_of_u needs u >= 0")
    zeta2 = constants().phi_1_2_quarter
    out = np.empty_like(arr)
    small = arr < PHI_SWITCH
    if np.any(small):
        out[small] = _phi_quarter_expansion(arr[small], zeta2)
    if np.any(~small):
        out[~small] = _phi_quarter_series(np.exp(-arr[~small]))
    out[arr == 0] = zeta2
    if np.ndim(u) == 0:
        return float(out)
    return out


def lerch_phi_2_quarter(x: float) -> float:
    """Hurwitz-Lerch Phi(x, 2, 1/4) = sum_{n>=0} x^n / (n + 1/4)^2 for 0 <= x <= 1."""
    if not (isinstance(x, (int, float, np.floating, np.integer)) and 0.0 <= x <= 1.0):
        raise DomainError(f"lerch_phi_2_quarter needs 0 <= x <= 1, got {x!r}")
    x = float(x)
    if x == 0.0:
        return 16.0
    if x == 1.0:
        return constants().phi_1_2_quarter
    return phi_quarter_of_u(-math.log(x))


@dataclass(frozen=True)
class Constants:
    euler_gamma: float
    log_pi: float
    psi_quarter: float
    phi_1_2_quarter: float


_CONSTANTS = None
_CONSTANTS_LOCK = threading.Lock()


def constants() -> Constants:
    """The constants entering g_zeta, computed once per process."""
    global _CONSTANTS
    if _CONSTANTS is None:
        with _CONSTANTS_LOCK:
            if _CONSTANTS is None:
                _CONSTANTS = Constants(
                    euler_gamma=float(np.euler_gamma),
                    log_pi=math.log(math.pi),
                    psi_quarter=digamma(QUARTER),
                    phi_1_2_quarter=_phi_quarter_at_one(),
                )
    return _CONSTANTS


def phi_term(t):
    """e^{-t/2} Phi(e^{-2t}, 2, 1/4) - Phi(1, 2, 1/4) for t >= 0 (scalar or array).

    For small t the difference is formed inside the expansion about x = 1,
    where the e^{-t/2} prefactor cancels e^{u/4} (u = 2t) exactly, so no
    digits are lost to the subtraction.
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise DomainError("phi_term needs t >= 0")
    zeta2 = constants().phi_1_2_quarter
    u = 2.0 * arr
    out = np.empty_like(arr)
    small = u < PHI_SWITCH
    if np.any(small):
        out[small] = _expansion_excess(u[small])
    if np.any(~small):
        tb = arr[~small]
        out[~small] = np.exp(-0.5 * tb) * _phi_quarter_series(np.exp(-2.0 * tb)) - zeta2
    if np.ndim(t) == 0:
        return float(out)
    return out

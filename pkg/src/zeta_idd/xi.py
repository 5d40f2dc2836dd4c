"""Two independent evaluators of the logarithmic derivative xi'/xi.

* :func:`xi_log_deriv_dirichlet` works in s, for Re(s) >= 1.1, from the
  Gamma-factor terms and the Dirichlet series of zeta'/zeta.
* :func:`xi_log_deriv_hadamard` works in z with s = 1/2 - iz, from the
  Hadamard product over the zeros (constant b = 0).

Complex points are plain Python ``complex`` values.
"""
from __future__ import annotations

import cmath
import math
from typing import Optional

import numpy as np

from ._summation import cfsum, fsum
from .arith import VonMangoldtTable
from .errors import CapacityError, DomainError, PoleProximityError
from .special_fn import complex_digamma, constants
from .zeros_io import ZeroTable, continuum_start, inverse_power_tail

MIN_DIRICHLET_RE = 1.1
DEFAULT_MAX_REMAINDER = 1e-10
POLE_RADIUS = 1e-6
# Schoenfeld's |psi(x) - x| < sqrt(x) log^2(x) / (8 pi) needs x >= 73.2
MIN_DIRICHLET_LIMIT = 74


def dirichlet_remainder_bound(s: complex, limit: int) -> float:
    """Bound on what the tail-corrected Dirichlet sum still misses.

    After the main term N^{1-s}/(s-1) and the boundary term of partial
    summation are added back, the remainder is
    s * int_N^inf (psi(u) - u) u^{-s-1} du.  With Schoenfeld's bound on
    psi(u) - u this is at most
    |s| / (8 pi) * N^{-a} (L^2/a + 2L/a^2 + 2/a^3), a = Re(s) - 1/2, L = log N.
    The estimate of psi(u) - u assumes RH, like the rest of the zero-side
    machinery; it is also very pessimistic (typically by 3-5 orders).
    """
    a = s.real - 0.5
    L = math.log(limit)
    return abs(s) / (8 * math.pi) * limit ** (-a) * (L * L / a + 2 * L / a**2 + 2 / a**3)


def dirichlet_sum(s: complex, table: VonMangoldtTable) -> complex:
    """sum_{n >= 2} Lambda(n) n^{-s}: table part plus partial-summation tail.

    The tail beyond N = table.limit is N^{1-s}/(s-1) - (psi(N) - N) N^{-s};
    both pieces are exact consequences of partial summation with psi(u) ~ u.
    """
    n = table.n.astype(float)
    logn = np.log(n)
    terms = table.log_p * np.exp(-s * logn)
    N = float(table.limit)
    psi_N = fsum(table.log_p)
    tail = N ** (1 - s) / (s - 1) - (psi_N - N) * N ** (-s)
    return cfsum(np.append(terms, tail))


def xi_log_deriv_dirichlet(s: complex, table: VonMangoldtTable, *,
                           max_remainder: Optional[float] = DEFAULT_MAX_REMAINDER) -> complex:
    """xi'/xi(s) = 1/(s-1) + 1/s - log(pi)/2 + psi(s/2)/2 - sum Lambda(n) n^{-s}.

    ``max_remainder`` caps :func:`dirichlet_remainder_bound`; a table too
    small for it raises :class:`CapacityError`.  Pass ``None`` to accept
    whatever the table gives (close to Re(s) = 1.1 the bound is useless
    long before the actual error is).
    """
    s = complex(s)
    if not cmath.isfinite(s):
        raise DomainError(f"s must be finite, got {s}")
    if s.real < MIN_DIRICHLET_RE:
        raise DomainError(f"Dirichlet route needs Re(s) >= {MIN_DIRICHLET_RE}, got {s}")
    if table.limit < MIN_DIRICHLET_LIMIT:
        raise CapacityError(f"Dirichlet route needs a table limit >= {MIN_DIRICHLET_LIMIT}")
    if max_remainder is not None:
        bound = dirichlet_remainder_bound(s, table.limit)
        if bound > max_remainder:
            raise CapacityError(
                f"table limit {table.limit} leaves remainder bound {bound:.3g} > {max_remainder:.3g} at s={s}"
            )
    consts = constants()
    psi = complex_digamma(s / 2)
    parts = [1 / (s - 1), 1 / s, -0.5 * consts.log_pi, 0.5 * psi, -dirichlet_sum(s, table)]
    return cfsum(parts)


def _check_poles(z, gammas):
    near = np.minimum(np.abs(z - gammas), np.abs(z + gammas))
    if near.size and near.min() < POLE_RADIUS:
        g = gammas[int(np.argmin(near))]
        raise PoleProximityError(f"z = {z} lies within {POLE_RADIUS} of the zero +-{g}")


def hadamard_tail(z: complex, zeros: ZeroTable) -> complex:
    """Smooth-density estimate of the pairs omitted above the table.

    sum_{gamma > T} 2z/(z^2 - gamma^2) ~ -2 sum_k z^{2k-1} int u^{-2k} dN(u),
    the integrals taken from the height where the smooth zero count equals
    the table size.  Odd in z, like the sum it replaces.
    """
    T = continuum_start(zeros)
    c2, c4, c6 = (inverse_power_tail(T, k) for k in (2, 4, 6))
    zz = z * z
    return -2.0 * z * (c2 + zz * (c4 + zz * c6))


def hadamard_truncation_estimate(z: complex, zeros: ZeroTable) -> float:
    """Size of the omitted pairs, 2|z| sum_{gamma > T} 1/gamma^2 (uncorrected)."""
    return 2.0 * abs(z) * inverse_power_tail(zeros.height, 2)


def xi_log_deriv_hadamard(z: complex, zeros: ZeroTable, *, density_tail: bool = True) -> complex:
    """(xi'/xi)(1/2 - iz) = i sum_{gamma > 0} m 2z / (z^2 - gamma^2).

    The +-gamma terms of the Hadamard sum are paired, which cancels the
    1/gamma convergence factors and makes the result exactly odd in z.
    With ``density_tail`` the zeros above the table are added through
    :func:`hadamard_tail`; without it the truncated sum is returned and
    its error is about :func:`hadamard_truncation_estimate`.
    """
    z = complex(z)
    if not cmath.isfinite(z):
        raise DomainError(f"z must be finite, got {z}")
    g = zeros.ordinates
    _check_poles(z, g)
    terms = zeros.multiplicities * (2.0 * z) / (z * z - g * g)
    if density_tail:
        terms = np.append(terms, hadamard_tail(z, zeros))
    total = cfsum(terms)
    return complex(-total.imag, total.real)


def xi_log_deriv_hadamard_s(s: complex, zeros: ZeroTable, **kw) -> complex:
    """Hadamard route addressed by s (z = i(s - 1/2))."""
    return xi_log_deriv_hadamard(1j * (complex(s) - 0.5), zeros, **kw)

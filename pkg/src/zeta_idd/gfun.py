"""g_zeta(t) by the explicit arithmetic formula and by the sum over zeros."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._summation import fsum
from .arith import VonMangoldtTable, prime_term_sum, prime_term_sum_array
from .errors import DomainError, ZetaIddError
from .special_fn import Constants, constants, phi_term
from .zeros_io import ZeroTable, tail_bound

# Beyond t = 20 the e^{t/2}-sized terms of the explicit formula cancel down
# to O(0.1) and double precision no longer resolves the result.
T_MAX = 20.0


class Route(str, enum.Enum):
    EXPLICIT = "explicit"
    ZERO_SUM = "zero_sum"


@dataclass(frozen=True)
class GEvaluation:
    t: float
    value: float
    route: Route
    truncation_height: Optional[float] = None
    tail_bound: Optional[float] = None


def _abs_t(t):
    t = float(t)
    if not math.isfinite(t):
        raise DomainError(f"t must be finite, got {t}")
    return abs(t)


def _check_explicit_range(tau):
    if tau > T_MAX:
        raise DomainError(f"|t| = {tau} exceeds the explicit-route cap {T_MAX}")


def explicit_terms(tau, table: VonMangoldtTable, consts: Constants):
    """The four summands of g_zeta(tau), tau >= 0, in their summation order.

    1. -4 (e^{tau/2} + e^{-tau/2} - 2), written as -16 sinh^2(tau/4)
    2. sum_{n <= e^tau} Lambda(n)/sqrt(n) (tau - log n)
    3. -(tau/2) (psi(1/4) - log pi)
    4. (1/4) (e^{-tau/2} Phi(e^{-2 tau}, 2, 1/4) - Phi(1, 2, 1/4))
    """
    return (
        -16.0 * math.sinh(0.25 * tau) ** 2,
        prime_term_sum(tau, table),
        -0.5 * tau * (consts.psi_quarter - consts.log_pi),
        0.25 * phi_term(tau),
    )


def g_explicit(t: float, table: VonMangoldtTable, consts: Optional[Constants] = None) -> GEvaluation:
    """g_zeta(t) from the explicit formula; g(-t) = g(t)."""
    tau = _abs_t(t)
    _check_explicit_range(tau)
    consts = consts or constants()
    value = fsum(explicit_terms(tau, table, consts))
    return GEvaluation(t=float(t), value=value, route=Route.EXPLICIT)


def g_explicit_array(ts, table: VonMangoldtTable, consts: Optional[Constants] = None) -> np.ndarray:
    """Vectorized explicit route (prefix-sum prime term, same four terms).

    Differs from :func:`g_explicit` by rounding only (<= 1e-10 for |t| <= 20).
    """
    tau = np.abs(np.asarray(ts, dtype=float))
    if tau.size == 0:
        return np.zeros_like(tau)
    if not np.all(np.isfinite(tau)):
        raise DomainError("t must be finite")
    _check_explicit_range(float(tau.max()))
    consts = consts or constants()
    a = -16.0 * np.sinh(0.25 * tau) ** 2
    b = prime_term_sum_array(tau, table)
    c = -0.5 * tau * (consts.psi_quarter - consts.log_pi)
    d = 0.25 * phi_term(tau)
    # same order as the scalar route; the two large terms go first
    return ((a + b) + c) + d


def _zero_sum_terms(tau, zeros: ZeroTable):
    g = zeros.ordinates
    # 2 (cos x - 1) = -4 sin^2(x/2): no cancellation for small x, and <= 0 termwise
    return -4.0 * zeros.multiplicities * np.sin(0.5 * g * tau) ** 2 / (g * g)


def g_zero_sum(t: float, zeros: ZeroTable) -> GEvaluation:
    """g_zeta(t) as sum over +-gamma of m (e^{-i gamma t} - 1) / gamma^2, truncated."""
    if zeros is None or len(zeros) == 0:
        raise DomainError("zero-sum route needs a non-empty zero table")
    tau = _abs_t(t)
    value = fsum(_zero_sum_terms(tau, zeros))
    return GEvaluation(t=float(t), value=value, route=Route.ZERO_SUM,
                       truncation_height=zeros.height, tail_bound=tail_bound(zeros).bound)


def g_zero_sum_array(ts, zeros: ZeroTable) -> np.ndarray:
    """Values of :func:`g_zero_sum` on an array of t (bit-identical per point)."""
    tau = np.abs(np.asarray(ts, dtype=float))
    out = np.empty(tau.shape)
    flat = out.reshape(-1)
    for i, x in enumerate(tau.reshape(-1).tolist()):
        flat[i] = fsum(_zero_sum_terms(x, zeros))
    return out


def g_grid(ts, route, *, zeros: Optional[ZeroTable] = None,
           table: Optional[VonMangoldtTable] = None) -> list:
    """Evaluate ``route`` at each t, in order; errors name the failing index."""
    route = Route(route)
    out = []
    consts = constants()
    for i, t in enumerate(ts):
        try:
            if route is Route.EXPLICIT:
                out.append(g_explicit(t, table, consts))
            else:
                out.append(g_zero_sum(t, zeros))
        except ZetaIddError as exc:
            raise type(exc)(f"grid index {i} (t={t}): {exc}") from exc
    return out

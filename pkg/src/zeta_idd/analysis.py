"""Numerical checks: the Fourier integral of g_zeta, Bochner grids, sign scans.

A finite-truncation check can neither confirm nor refute the Riemann
Hypothesis: the equivalence concerns the exact, untruncated g_zeta, and
these reports only describe truncated objects at desk scale.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._summation import cfsum
from .arith import VonMangoldtTable
from .errors import DomainError, ValidationError
from .gfun import T_MAX, Route, g_explicit_array, g_zero_sum_array
from .xi import xi_log_deriv_dirichlet
from .zeros_io import ZeroTable

MIN_IM_Z = 0.6
FOURIER_SLACK = 1e-6
BOCHNER_TOL = -1e-8
MAX_BOCHNER_DIM = 256
# geometric grading of [0, log 2] toward the t log t behaviour of g at 0
GRADING_LEVELS = 48
GL_NODES = 10
# kinks of g at log n get their own panel edge only for n up to this; later
# kinks have height Lambda(n)/sqrt(n) < 0.02 and sit where e^{izt} is tiny
BREAKPOINT_LIMIT = 1 << 20
MAX_SIMPSON_DEPTH = 40


class Scheme(str, enum.Enum):
    ADAPTIVE_SIMPSON = "adaptive_simpson"
    GAUSS_LEGENDRE = "gauss_legendre_composite"


@dataclass(frozen=True)
class QuadratureConfig:
    t_upper: float = 15.0
    panels: int = 1
    scheme: Scheme = Scheme.ADAPTIVE_SIMPSON
    abs_tol: float = 1e-10

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not 0 < self.t_upper <= T_MAX:
            raise ValidationError(f"t_upper must be in (0, {T_MAX}]")
        if self.panels < 1:
            raise ValidationError("panels must be >= 1")
        if not self.abs_tol >= 1e-12:
            raise ValidationError("abs_tol must be >= 1e-12")


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    evaluations: int


@dataclass(frozen=True)
class FourierCheckResult:
    z: complex
    lhs: complex
    rhs: complex
    abs_error: float
    truncation_estimate: float
    quad_error: float

    @property
    def budget(self) -> float:
        return self.truncation_estimate + FOURIER_SLACK

    @property
    def passed(self) -> bool:
        return self.abs_error <= self.budget

    def to_json(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs": [self.rhs.real, self.rhs.imag],
            "abs_error": self.abs_error,
            "truncation_estimate": self.truncation_estimate,
            "quad_error": self.quad_error,
            "passed": self.passed,
        }


def breakpoints(t_upper: float, table: Optional[VonMangoldtTable]) -> np.ndarray:
    """Panel edges: 0, a geometric grading toward 0, log n for n <= BREAKPOINT_LIMIT, t_upper.

    Between consecutive edges g_zeta is smooth apart from the small kinks
    above the limit, so each panel converges at the rate of the underlying
    rule.
    """
    first = min(math.log(2.0), t_upper)
    edges = [0.0, t_upper]
    edges.extend(first * 2.0 ** -np.arange(GRADING_LEVELS))
    if table is not None:
        logs = np.log(table.n[table.n <= min(math.exp(t_upper), BREAKPOINT_LIMIT)].astype(float))
        edges.extend(logs[logs < t_upper])
    return np.unique(np.asarray(edges, dtype=float))


def _subdivide(edges, panels):
    if panels == 1:
        return edges
    frac = np.arange(panels) / panels
    a, b = edges[:-1], edges[1:]
    inner = (a[:, None] + (b - a)[:, None] * frac[None, :]).ravel()
    return np.append(inner, edges[-1])


def _gauss_legendre(f, edges, nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    a, b = edges[:-1], edges[1:]
    half = 0.5 * (b - a)
    pts = (0.5 * (a + b))[:, None] + half[:, None] * x[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    return cfsum((vals * w[None, :] * half[:, None]).ravel()), pts.size


def gauss_legendre_composite(f, edges, panels=1) -> QuadResult:
    """Composite GL on every panel; error = |Q(panels) - Q(2 panels)|."""
    coarse, n1 = _gauss_legendre(f, _subdivide(edges, panels), GL_NODES)
    fine, n2 = _gauss_legendre(f, _subdivide(edges, 2 * panels), GL_NODES)
    return QuadResult(fine, abs(fine - coarse), n1 + n2)


def adaptive_simpson(f, edges, abs_tol, panels=1) -> QuadResult:
    """Adaptive Simpson run over all panels at once.

    Each interval gets a share of ``abs_tol`` proportional to its width;
    accepted intervals contribute the Richardson-corrected value and
    |S2 - S1| / 15 to the reported error.
    """
    edges = _subdivide(edges, panels)
    a, b = edges[:-1], edges[1:]
    m = 0.5 * (a + b)
    fa, fm, fb = (f(x) for x in (a, m, b))
    evals = 3 * a.size
    scale = abs_tol / (edges[-1] - edges[0])
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    pieces, errors = [], []
    for depth in range(MAX_SIMPSON_DEPTH + 1):
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        evals += 2 * a.size
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        diff = left + right - whole
        err = np.abs(diff) / 15.0
        done = (err <= scale * (b - a)) | (depth == MAX_SIMPSON_DEPTH)
        pieces.append((left + right + diff / 15.0)[done])
        errors.append(err[done])
        keep = ~done
        if not keep.any():
            break
        # split survivors: [a, m] and [m, b]
        a2 = np.concatenate([a[keep], m[keep]])
        b2 = np.concatenate([m[keep], b[keep]])
        fa2 = np.concatenate([fa[keep], fm[keep]])
        fm2 = np.concatenate([flm[keep], frm[keep]])
        fb2 = np.concatenate([fm[keep], fb[keep]])
        whole = np.concatenate([left[keep], right[keep]])
        a, b, fa, fm, fb = a2, b2, fa2, fm2, fb2
        m = 0.5 * (a + b)
    value = cfsum(np.concatenate(pieces))
    error = float(np.concatenate(errors).sum())
    return QuadResult(value, error, evals)


def integrate(f, edges, cfg: QuadratureConfig) -> QuadResult:
    if cfg.scheme is Scheme.GAUSS_LEGENDRE:
        return gauss_legendre_composite(f, edges, cfg.panels)
    return adaptive_simpson(f, edges, cfg.abs_tol, cfg.panels)


def _check_z(z):
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or z.imag < MIN_IM_Z:
        raise DomainError(f"Fourier check needs Im(z) >= {MIN_IM_Z}, got {z}")
    return z


def truncation_estimate(z: complex, t_upper: float, table: VonMangoldtTable, samples: int = 201) -> float:
    """Estimate of |int_{t_upper}^inf g e^{izt} dt| under |g(t)| <= C e^{t/2}.

    C is the largest |g(t)| e^{-t/2} seen on [t_upper - 2, t_upper].
    """
    ts = np.linspace(max(t_upper - 2.0, 0.0), t_upper, samples)
    C = float(np.max(np.abs(g_explicit_array(ts, table)) * np.exp(-0.5 * ts)))
    rate = z.imag - 0.5
    return C * math.exp(-rate * t_upper) / rate


def fourier_lhs(z: complex, cfg: QuadratureConfig, table: VonMangoldtTable) -> QuadResult:
    """Quadrature of g_explicit(t) e^{izt} over [0, t_upper]."""
    z = _check_z(z)
    table.require(math.floor(math.exp(cfg.t_upper)))
    f = lambda t: g_explicit_array(t, table) * np.exp(1j * z * t)
    return integrate(f, breakpoints(cfg.t_upper, table), cfg)


def fourier_rhs(z: complex, table: VonMangoldtTable, **kw) -> complex:
    """(1/z^2) (xi'/xi)(1/2 - iz) through the Dirichlet-series route."""
    z = _check_z(z)
    return xi_log_deriv_dirichlet(0.5 - 1j * z, table, **kw) / (z * z)


def fourier_g(z: complex, cfg: QuadratureConfig, table: VonMangoldtTable,
              dirichlet_table: Optional[VonMangoldtTable] = None) -> FourierCheckResult:
    """Check int_0^inf g(t) e^{izt} dt = (1/z^2) (xi'/xi)(1/2 - iz).

    ``table`` must reach e^{t_upper}; ``dirichlet_table`` (default
    ``table``) feeds the Dirichlet series and should be large enough for
    its remainder bound.
    """
    z = _check_z(z)
    q = fourier_lhs(z, cfg, table)
    rhs = fourier_rhs(z, dirichlet_table or table)
    return FourierCheckResult(
        z=z, lhs=q.value, rhs=rhs, abs_error=abs(q.value - rhs),
        truncation_estimate=truncation_estimate(z, cfg.t_upper, table), quad_error=q.error,
    )


@dataclass(frozen=True)
class BochnerReport:
    grid: list
    min_eigenvalue: float
    matrix_dim: int

    @property
    def passed(self) -> bool:
        return self.min_eigenvalue >= BOCHNER_TOL

    def to_json(self) -> dict:
        return {"grid": list(self.grid), "min_eigenvalue": self.min_eigenvalue,
                "matrix_dim": self.matrix_dim, "tolerance": BOCHNER_TOL, "passed": self.passed}


def zero_sum_provider(zeros: ZeroTable) -> Callable:
    return lambda ts: g_zero_sum_array(ts, zeros)


def bochner_matrix(grid, g_values: Callable) -> np.ndarray:
    ts = np.asarray(grid, dtype=float)
    diff = np.abs(ts[:, None] - ts[None, :])
    uniq, inv = np.unique(diff, return_inverse=True)
    return np.exp(np.asarray(g_values(uniq), dtype=float))[inv].reshape(diff.shape)


def bochner_check(grid, g_values: Callable) -> BochnerReport:
    """Smallest eigenvalue of M[j, k] = exp(g(t_j - t_k)).

    A characteristic function makes every such matrix positive
    semidefinite (Bochner).  Eigenvalues come from LAPACK's symmetric
    solver (``numpy.linalg.eigvalsh``); M is symmetric because g is even.
    """
    ts = [float(t) for t in grid]
    if len(ts) > MAX_BOCHNER_DIM:
        raise ValidationError(f"Bochner grid limited to {MAX_BOCHNER_DIM} points")
    if len(set(ts)) != len(ts):
        raise ValidationError("Bochner grid points must be distinct")
    if not ts:
        return BochnerReport([], math.inf, 0)
    M = bochner_matrix(ts, g_values)
    return BochnerReport(ts, float(np.linalg.eigvalsh(M).min()), len(ts))


@dataclass(frozen=True)
class CfScanReport:
    route: str
    count: int
    max_value: Optional[float]
    argmax: Optional[float]
    evenness_residual: float
    tolerance: float
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0 and self.evenness_residual == 0.0

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def cf_scan(ts, route, *, zeros: Optional[ZeroTable] = None,
            table: Optional[VonMangoldtTable] = None, tolerance: Optional[float] = None) -> CfScanReport:
    """Scan g on ``ts`` for positive values and for any asymmetry g(t) != g(-t).

    Default tolerance: 0 on the zero-sum route (every term is <= 0),
    1e-8 on the explicit route.
    """
    route = Route(route)
    if tolerance is None:
        tolerance = 0.0 if route is Route.ZERO_SUM else 1e-8
    ts = np.asarray(list(ts), dtype=float)
    if ts.size == 0:
        return CfScanReport(route.value, 0, None, None, 0.0, tolerance, 0)
    if route is Route.ZERO_SUM:
        fn = lambda x: g_zero_sum_array(x, zeros)
    else:
        fn = lambda x: g_explicit_array(x, table)
    vals = fn(ts)
    mirror = fn(-ts)
    i = int(np.argmax(vals))
    return CfScanReport(
        route=route.value,
        count=int(ts.size),
        max_value=float(vals[i]),
        argmax=float(ts[i]),
        evenness_residual=float(np.max(np.abs(vals - mirror))),
        tolerance=tolerance,
        violations=int(np.count_nonzero(vals > tolerance)),
    )

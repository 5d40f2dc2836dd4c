"""g_zeta(t) by two routes, its Levy measure, and numerical identity checks."""
from .arith import VonMangoldtTable, prime_term_sum, sieve_von_mangoldt
from .gfun import GEvaluation, Route, g_explicit, g_grid, g_zero_sum
from .levy import LevyMeasure, admissibility, build_levy_measure
from .special_fn import constants, digamma, lerch_phi_2_quarter
from .xi import xi_log_deriv_dirichlet, xi_log_deriv_hadamard
from .zeros_io import ZeroTable, bundled_table, load_zero_table, tail_bound

__version__ = "0.1.0"

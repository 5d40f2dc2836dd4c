"""The atomic Levy measure nu_zeta built from a zero table."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._summation import cfsum, fsum
from .errors import ValidationError
from .zeros_io import ZeroTable


@dataclass(frozen=True, eq=False)
class LevyMeasure:
    """Atoms at -gamma and +gamma with mass m_gamma / gamma^2, sorted by location."""

    locations: np.ndarray
    masses: np.ndarray
    truncation_height: float

    def __post_init__(self):
        loc = np.asarray(self.locations, dtype=float)
        mass = np.asarray(self.masses, dtype=float)
        if loc.shape != mass.shape or loc.ndim != 1:
            raise ValidationError("locations and masses must be aligned 1-d arrays")
        if np.any(loc == 0):
            raise ValidationError("a Levy measure has no atom at 0")
        if np.any(mass <= 0) or not np.all(np.isfinite(mass)):
            raise ValidationError("atom masses must be positive and finite")
        if loc.size and np.any(np.diff(loc) <= 0):
            raise ValidationError("atom locations must be strictly increasing")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "masses", mass)

    @property
    def atoms(self):
        return list(zip(self.locations.tolist(), self.masses.tolist()))

    def __len__(self):
        return self.locations.size

    @property
    def total_mass(self) -> float:
        return fsum(self.masses)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.locations, -self.locations[::-1])
                    and np.array_equal(self.masses, self.masses[::-1]))

    def to_json(self) -> dict:
        return {
            "truncation_height": self.truncation_height,
            "atoms": [[loc, mass] for loc, mass in self.atoms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LevyMeasure":
        atoms = np.array(data["atoms"], dtype=float).reshape(-1, 2)
        return cls(atoms[:, 0], atoms[:, 1], float(data["truncation_height"]))


@dataclass(frozen=True)
class AdmissibilityReport:
    total_mass: float
    min1_lambda2_integral: float
    abs_lambda_small_integral: float
    passed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def build_levy_measure(zeros: ZeroTable) -> LevyMeasure:
    g = zeros.ordinates
    mass = zeros.multiplicities / (g * g)
    return LevyMeasure(
        locations=np.concatenate([-g[::-1], g]),
        masses=np.concatenate([mass[::-1], mass]),
        truncation_height=zeros.height,
    )


def admissibility(measure: LevyMeasure) -> AdmissibilityReport:
    """Integrals of min(1, lambda^2) and of |lambda| over |lambda| <= 1.

    For a finite atom set both are finite; the numbers themselves are the
    useful output (they grow with the truncation height).
    """
    lam = measure.locations
    mass = measure.masses
    total = fsum(mass)
    m1 = fsum(mass * np.minimum(1.0, lam * lam))
    small = np.abs(lam) <= 1.0
    m_small = fsum(mass[small] * np.abs(lam[small]))
    passed = all(np.isfinite(v) and v >= 0 for v in (total, m1, m_small))
    return AdmissibilityReport(total, m1, m_small, bool(passed))


def characteristic_exponent(measure: LevyMeasure, t: float) -> complex:
    """int (e^{i t lambda} - 1) nu(d lambda) over the atoms."""
    x = t * measure.locations
    # e^{ix} - 1 = -2 sin^2(x/2) + i sin x
    return cfsum(measure.masses * (-2.0 * np.sin(0.5 * x) ** 2 + 1j * np.sin(x)))


def levy_khintchine_exponent(measure: LevyMeasure, t: float, *, gaussian: float = 0.0,
                             drift: float = 0.0, compensated: bool = False) -> complex:
    """log of the characteristic function for the triplet (gaussian, drift, measure).

    ``compensated=False`` is the form without small-jump compensation, where
    ``drift`` plays the role of b0.  ``compensated=True`` subtracts
    i t lambda / (1 + lambda^2) inside the integral, where ``drift`` is b.
    The two agree with b = b0 + int lambda / (1 + lambda^2) nu(d lambda),
    which is b0 itself for a symmetric measure.
    """
    parts = [-0.5 * gaussian * t * t, 1j * drift * t, characteristic_exponent(measure, t)]
    if compensated:
        lam = measure.locations
        parts.append(-1j * t * fsum(measure.masses * lam / (1.0 + lam * lam)))
    return cfsum(parts)


def compensator_drift(measure: LevyMeasure) -> float:
    """int lambda / (1 + lambda^2) nu(d lambda); zero for a symmetric measure."""
    lam = measure.locations
    return fsum(measure.masses * lam / (1.0 + lam * lam))

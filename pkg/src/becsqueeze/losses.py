"""Decoherence estimates: Beliaev decay time and rescattering fraction.

These are order-of-magnitude validity bounds on the coherent dynamics, not
part of the dynamics itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import HBAR
from .errors import DomainError, InvalidParameterError
from .units import DerivedScales, LabParameters

# The rescattering cross-section prefactor is convention-dependent; both
# common choices are always computed side by side.
SIGMA_CONVENTIONS = ("4pi", "8pi")


@dataclass(frozen=True)
class LossEstimate:
    """Summary of loss scales at one momentum.

    beliaev_time: inverse Beliaev width at |k| = y * k0, seconds
    rescatter_4pi / rescatter_8pi: fraction of extracted particles
        rescattered while crossing the condensate, for sigma = 4 pi a^2
        and 8 pi a^2
    """

    y: float
    beliaev_time: float
    rescatter_4pi: float
    rescatter_8pi: float


def beliaev_time(y: float, params: LabParameters, scales: DerivedScales) -> float:
    """Inverse Beliaev decay width tau = m / (8 pi a^2 n0 hbar k), seconds."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y!r}")
    k = y * scales.healing_momentum
    return params.atom_mass / (8.0 * math.pi * params.scattering_length ** 2
                               * scales.density * HBAR * k)


def rescatter_fraction(params: LabParameters, scales: DerivedScales,
                       convention: str = "4pi") -> float:
    """Fraction sigma * n0 * V^(1/3) of outgoing particles rescattered."""
    if convention not in SIGMA_CONVENTIONS:
        raise InvalidParameterError(
            f"convention must be one of {SIGMA_CONVENTIONS}, got {convention!r}")
    prefactor = 4.0 if convention == "4pi" else 8.0
    sigma = prefactor * math.pi * params.scattering_length ** 2
    return sigma * scales.density * params.volume ** (1.0 / 3.0)


def estimate(y: float, params: LabParameters, scales: DerivedScales) -> LossEstimate:
    """Both loss figures at one momentum."""
    return LossEstimate(
        y=float(y),
        beliaev_time=beliaev_time(y, params, scales),
        rescatter_4pi=rescatter_fraction(params, scales, "4pi"),
        rescatter_8pi=rescatter_fraction(params, scales, "8pi"),
    )

"""Laboratory inputs and the derived condensate scales.

Everything is SI internally: kg, m, s, rad/s. Momenta are reported as
wavenumbers (1/m) so no factor of hbar floats around in the dynamics.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import InvalidParameterError, PhysicsWarning

# Diluteness n0*a^3 above this draws a warning; the quadratic (Bogoliubov)
# treatment of the gas degrades well before 1.
DILUTENESS_WARN = 1e-3

# k0^2 * V^(2/3) below this draws a warning: the mode spacing is no longer
# negligible compared to the healing momentum and the continuum labels lie.
DISCRETENESS_WARN = 1e2


@dataclass(frozen=True)
class LabParameters:
    """Raw experimental inputs.

    atom_mass: kg
    n_condensate: number of condensed atoms N0
    volume: m^3
    scattering_length: m (s-wave, a > 0)
    rabi_frequency: rad/s (single-photon Rabi frequency magnitude |Omega|)
    detuning: rad/s (laser detuning Delta from the atomic resonance)
    """

    atom_mass: float
    n_condensate: float
    volume: float
    scattering_length: float
    rabi_frequency: float
    detuning: float

    def __post_init__(self):
        for name in ("atom_mass", "n_condensate", "volume", "scattering_length",
                     "rabi_frequency", "detuning"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be a positive finite number, got {value!r}")
        gas_parameter = (self.n_condensate / self.volume) * self.scattering_length ** 3
        if gas_parameter > DILUTENESS_WARN:
            warnings.warn(
                f"n0*a^3 = {gas_parameter:.3g} exceeds {DILUTENESS_WARN:g}; "
                "the gas is not deeply dilute and the quadratic treatment is strained",
                PhysicsWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class DerivedScales:
    """Scales derived from :class:`LabParameters`.

    density: condensate density n0 = N0/V, 1/m^3
    healing_momentum: k0 = sqrt(8 pi a n0), 1/m
    energy_scale: E0 = hbar k0^2 / (2 m), rad/s
    effective_coupling: two-photon coupling Omega_tilde = |Omega|^2 / (2 Delta), rad/s
    n_condensate: carried through from the inputs (drive strengths need it)
    """

    density: float
    healing_momentum: float
    energy_scale: float
    effective_coupling: float
    n_condensate: float


def derive(params: LabParameters) -> DerivedScales:
    """Compute condensate scales from laboratory inputs."""
    from .constants import HBAR

    density = params.n_condensate / params.volume
    healing_momentum = math.sqrt(8.0 * math.pi * params.scattering_length * density)
    energy_scale = HBAR * healing_momentum ** 2 / (2.0 * params.atom_mass)
    effective_coupling = params.rabi_frequency ** 2 / (2.0 * params.detuning)

    discreteness = healing_momentum ** 2 * params.volume ** (2.0 / 3.0)
    if discreteness < DISCRETENESS_WARN:
        warnings.warn(
            f"k0^2 V^(2/3) = {discreteness:.3g} is not large; the momentum grid "
            "is too coarse for the continuum mode labels to be trustworthy",
            PhysicsWarning,
            stacklevel=2,
        )
    return DerivedScales(
        density=density,
        healing_momentum=healing_momentum,
        energy_scale=energy_scale,
        effective_coupling=effective_coupling,
        n_condensate=params.n_condensate,
    )

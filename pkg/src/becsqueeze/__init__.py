"""Relative number squeezing of momentum modes in a driven condensate.

A Gaussian-state engine evolves the Bogoliubov ground state under the
two-laser coupling for two resonance choices (quasiparticle pair
extraction and direct Bragg driving), with perturbative formulas,
decoherence estimates and a brute-force truncated-Fock oracle alongside.
"""

__version__ = "0.1.0"

from .bogoliubov import BogoliubovCoeffs, coeffs, pair_coeffs
from .channels import (
    ChannelASpec,
    ChannelBSpec,
    SqueezingResult,
    asymptotic_xi_channel_a,
    perturbative_channel_a,
    perturbative_channel_b,
    quasiparticle_laser_hamiltonian,
    scan,
    simulate_channel_a,
    simulate_channel_b,
)
from .config import RunConfig, load_config, parse_config, serialize_config, to_lab_parameters
from .errors import (
    BecSqueezeError,
    ConfigError,
    CutoffError,
    DomainError,
    InvalidParameterError,
    ModeCollisionError,
    NumericsError,
    PhysicsWarning,
    RegistryError,
    UndefinedSqueezingError,
    ValidationError,
)
from .fock import FockSpace, FockState, evolve, moments, two_mode_squeezed_vacuum
from .gaussian import (
    GaussianState,
    ModeRegistry,
    QuadraticForm,
    bogoliubov_ground_state,
    bogoliubov_map,
    evolve_quadratic,
    symplectic_form,
)
from .losses import LossEstimate, beliaev_time, estimate, rescatter_fraction
from .oracle_check import Scenario, default_scenarios, run_check
from .units import DerivedScales, LabParameters, derive

__all__ = [
    "BecSqueezeError", "BogoliubovCoeffs", "ChannelASpec", "ChannelBSpec",
    "ConfigError", "CutoffError", "DerivedScales", "DomainError", "FockSpace",
    "FockState", "GaussianState", "InvalidParameterError", "LabParameters",
    "LossEstimate", "ModeCollisionError", "ModeRegistry", "NumericsError",
    "PhysicsWarning", "QuadraticForm", "RegistryError", "RunConfig",
    "Scenario", "SqueezingResult", "UndefinedSqueezingError", "ValidationError",
    "asymptotic_xi_channel_a", "beliaev_time", "bogoliubov_ground_state",
    "bogoliubov_map", "coeffs", "default_scenarios", "derive", "estimate",
    "evolve", "evolve_quadratic", "load_config", "moments", "pair_coeffs",
    "parse_config", "perturbative_channel_a", "perturbative_channel_b",
    "quasiparticle_laser_hamiltonian", "rescatter_fraction", "run_check",
    "scan", "serialize_config", "simulate_channel_a", "simulate_channel_b",
    "symplectic_form", "to_lab_parameters", "two_mode_squeezed_vacuum",
]

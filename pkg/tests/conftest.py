import pytest

from becsqueeze.config import RunConfig, to_lab_parameters
from becsqueeze.constants import MASS_NA23
from becsqueeze.oracle_check import run_check
from becsqueeze.units import derive


def reference_config(**overrides) -> RunConfig:
    """Sodium reference point: 1e7 atoms in 1e-7 cm^3, a = 2.8 nm,
    Omega = 2pi 1.8 MHz, Delta = 2pi 1 GHz."""
    base = dict(atom_mass_kg=MASS_NA23, n0_atoms=1e7, volume_cm3=1e-7,
                a_nm=2.8, rabi_2pi_mhz=1.8, detuning_2pi_ghz=1.0)
    base.update(overrides)
    return RunConfig(**base)


@pytest.fixture(scope="session")
def ref_config():
    return reference_config()


@pytest.fixture(scope="session")
def ref_params(ref_config):
    return to_lab_parameters(ref_config)


@pytest.fixture(scope="session")
def ref_scales(ref_params):
    return derive(ref_params)


@pytest.fixture(scope="session")
def oracle_report():
    """Full engine-vs-oracle grid, shared across test modules (it is the
    slow part of the suite)."""
    return run_check()

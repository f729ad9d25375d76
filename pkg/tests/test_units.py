import math

import numpy as np
import pytest

from becsqueeze.errors import InvalidParameterError, PhysicsWarning
from becsqueeze.units import DerivedScales, LabParameters, derive

# High-precision values for the sodium reference point.
K0 = 2652766.017583          # 1/m
E0 = 9719.867526323          # rad/s
COUPLING = 10178.76019763    # rad/s


def test_reference_scales(ref_params, ref_scales):
    assert ref_scales.density == pytest.approx(1e20, rel=1e-12)
    assert ref_scales.healing_momentum == pytest.approx(K0, rel=1e-11)
    assert ref_scales.energy_scale == pytest.approx(E0, rel=1e-11)
    assert ref_scales.effective_coupling == pytest.approx(COUPLING, rel=1e-11)
    assert ref_scales.n_condensate == ref_params.n_condensate


def test_healing_momentum_definition(ref_params, ref_scales):
    assert np.isclose(ref_scales.healing_momentum ** 2,
                      8 * math.pi * ref_params.scattering_length * ref_scales.density,
                      rtol=1e-14)


@pytest.mark.parametrize("field", ["atom_mass", "n_condensate", "volume",
                                   "scattering_length", "rabi_frequency", "detuning"])
@pytest.mark.parametrize("bad", [0.0, -2.0, math.inf, math.nan])
def test_positive_finite_inputs_required(ref_params, field, bad):
    kwargs = {f: getattr(ref_params, f) for f in (
        "atom_mass", "n_condensate", "volume", "scattering_length",
        "rabi_frequency", "detuning")}
    kwargs[field] = bad
    with pytest.raises(InvalidParameterError, match=field):
        LabParameters(**kwargs)


def test_diluteness_warning(ref_params):
    with pytest.warns(PhysicsWarning, match="dilute"):
        LabParameters(atom_mass=ref_params.atom_mass, n_condensate=1e7,
                      volume=1e-13, scattering_length=5e-8,
                      rabi_frequency=1.0, detuning=1.0)


def test_discreteness_warning(ref_params):
    # a tiny box makes the momentum grid coarse relative to k0
    tiny = LabParameters(atom_mass=ref_params.atom_mass, n_condensate=10.0,
                         volume=1e-18, scattering_length=2.8e-9,
                         rabi_frequency=1.0, detuning=1.0)
    with pytest.warns(PhysicsWarning, match="coarse"):
        derive(tiny)


def test_frozen_dataclasses(ref_scales):
    assert isinstance(ref_scales, DerivedScales)
    with pytest.raises(AttributeError):
        ref_scales.density = 0.0

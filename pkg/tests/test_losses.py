import pytest

from becsqueeze.errors import DomainError, InvalidParameterError
from becsqueeze.losses import beliaev_time, estimate, rescatter_fraction

# Frozen from a high-precision evaluation at the reference sodium parameters.
TAU_AT_2K0 = 0.003462762342473
RESCATTER_4PI = 0.4572909360976
RESCATTER_8PI = 0.9145818721951


def test_reference_beliaev_time(ref_params, ref_scales):
    assert beliaev_time(2.0, ref_params, ref_scales) == pytest.approx(TAU_AT_2K0, rel=1e-10)


def test_beliaev_time_scales_inversely_with_momentum(ref_params, ref_scales):
    t1 = beliaev_time(1.0, ref_params, ref_scales)
    t4 = beliaev_time(4.0, ref_params, ref_scales)
    assert t4 == pytest.approx(t1 / 4.0, rel=1e-12)


def test_beliaev_rejects_nonpositive_momentum(ref_params, ref_scales):
    with pytest.raises(DomainError):
        beliaev_time(0.0, ref_params, ref_scales)


def test_reference_rescatter_fractions(ref_params, ref_scales):
    assert rescatter_fraction(ref_params, ref_scales, "4pi") == pytest.approx(
        RESCATTER_4PI, rel=1e-10)
    assert rescatter_fraction(ref_params, ref_scales, "8pi") == pytest.approx(
        RESCATTER_8PI, rel=1e-10)
    # the two conventions differ by exactly the cross-section prefactor
    assert rescatter_fraction(ref_params, ref_scales, "8pi") == pytest.approx(
        2.0 * rescatter_fraction(ref_params, ref_scales, "4pi"), rel=1e-14)


def test_unknown_convention_rejected(ref_params, ref_scales):
    with pytest.raises(InvalidParameterError, match="convention"):
        rescatter_fraction(ref_params, ref_scales, "2pi")


def test_estimate_bundles_everything(ref_params, ref_scales):
    est = estimate(2.0, ref_params, ref_scales)
    assert est.y == 2.0
    assert est.beliaev_time == pytest.approx(TAU_AT_2K0, rel=1e-10)
    assert est.rescatter_4pi == pytest.approx(RESCATTER_4PI, rel=1e-10)
    assert est.rescatter_8pi == pytest.approx(RESCATTER_8PI, rel=1e-10)

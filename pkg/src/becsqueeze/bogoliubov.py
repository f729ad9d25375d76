"""Bogoliubov coefficients for the homogeneous weakly interacting gas.

All momenta enter as the dimensionless ratio y = |k| / k0 with k0 the
healing momentum. The mode-mixing amplitude is

    beta(y) = 1 + y^2 - y*sqrt(2 + y^2)

computed here in the algebraically equivalent form
1 / (1 + y^2 + y*sqrt(2 + y^2)), which suffers no cancellation at large y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# Dimensionless momenta below this are rejected: u, v diverge like y^(-1/2)
# and the single-pair picture has already lost meaning.
Y_MIN = 1e-8


@dataclass(frozen=True)
class BogoliubovCoeffs:
    """Quasiparticle transformation data at one dimensionless momentum.

    y: |k| / k0
    beta: mixing amplitude, v/u
    u, v: transformation coefficients, u^2 - v^2 = 1
    omega_over_e0: quasiparticle frequency omega_k / E0 = y*sqrt(2 + y^2)
    """

    y: float
    beta: float
    u: float
    v: float
    omega_over_e0: float

    @property
    def u_minus_v(self) -> float:
        # u*(1 - beta) avoids the direct subtraction, which cancels badly
        # in the phonon regime where u and v both diverge.
        return self.u * (1.0 - self.beta)


def coeffs(y: float) -> BogoliubovCoeffs:
    """Bogoliubov coefficients at dimensionless momentum y = |k|/k0."""
    if not (isinstance(y, (int, float)) and math.isfinite(y)):
        raise DomainError(f"y must be a finite number, got {y!r}")
    if y <= 0.0:
        raise DomainError(f"y must be positive, got {y}")
    if y < Y_MIN:
        raise DomainError(f"y = {y:g} is below the supported minimum {Y_MIN:g}")
    root = math.sqrt(2.0 + y * y)
    beta = 1.0 / (1.0 + y * y + y * root)
    # 1 - beta with the same stable denominator (exact rearrangement).
    one_minus_beta = (y * y + y * root) / (1.0 + y * y + y * root)
    u = 1.0 / math.sqrt(one_minus_beta * (1.0 + beta))
    return BogoliubovCoeffs(y=float(y), beta=beta, u=u, v=beta * u, omega_over_e0=y * root)


def pair_coeffs(y1: float, y2: float) -> tuple[float, float]:
    """Two-mode coupling coefficients (u_{kk'}, v_{kk'}).

    u_{kk'} = u_k u_{k'} + v_k v_{k'} multiplies the beam-splitter part of the
    laser coupling, v_{kk'} = u_k v_{k'} + v_k u_{k'} the pair-creation part.
    """
    c1, c2 = coeffs(y1), coeffs(y2)
    return c1.u * c2.u + c1.v * c2.v, c1.u * c2.v + c1.v * c2.u

"""Two-laser scattering channels and their squeezing observables.

Channel A (pair extraction): detuning delta = omega_k + omega_{k+dk}
resonantly creates quasiparticle pairs in (k + dk, -k); the retained
rotating-frame coupling is -(Omega_tilde/2) v_{k,k+dk} in front of
alpha^dag_{k+dk} alpha^dag_{-k} + h.c.

Channel B (Bragg drive): delta = omega_dk resonantly displaces the single
quasiparticle mode +dk at rate (Omega_tilde/2) sqrt(N0) (u_dk - v_dk).

All momenta are dimensionless (units of the healing momentum k0) and signed;
a mode label is the signed momentum as a float. States live in the particle
basis; quasiparticle Hamiltonians are mapped through the Bogoliubov
symplectic before evolution, and the free rotation of the frame is undone
before moments are read out.
"""

from __future__ import annotations

import math
from collections import namedtuple
from dataclasses import dataclass
from typing import Sequence

from .bogoliubov import BogoliubovCoeffs, coeffs, pair_coeffs
from .errors import (
    BecSqueezeError,
    InvalidParameterError,
    UndefinedSqueezingError,
)
from .gaussian import (
    GaussianState,
    ModeRegistry,
    QuadraticForm,
    bogoliubov_ground_state,
    bogoliubov_map,
    evolve_quadratic,
)
from .units import DerivedScales

import numpy as np

# Validity monitors (flags on results, never aborts):
# total extracted population beyond this fraction of N0 strains the
# undepleted-condensate assumption,
DEPLETION_FRACTION = 0.01
# and any quasiparticle occupation beyond sinh(1)^2 strains the
# linearized (quadratic) Hamiltonian.
QP_OCCUPATION_MAX = math.sinh(1.0) ** 2

FLAG_DEPLETION = "depletion"
FLAG_QP_OCCUPATION = "qp-occupation"
FLAG_NONFINITE = "nonfinite"

_REL_TOL = 1e-9


@dataclass(frozen=True)
class ChannelASpec:
    """Pair-extraction channel at mode k = y (units of k0), transfer dy.

    dy defaults to y/2. The extraction modes are +(y+dy) and -y; the mode
    must not coincide with the momentum transfer itself.
    """

    y: float
    dy: float | None = None

    def __post_init__(self):
        if self.dy is None:
            object.__setattr__(self, "dy", 0.5 * self.y)
        for name in ("y", "dy"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")
        if abs(self.y - self.dy) <= _REL_TOL * max(self.y, self.dy):
            raise InvalidParameterError(
                f"y = dy = {self.y:g}: mode k may not coincide with the momentum transfer")

    def mode_labels(self) -> tuple[float, float, float, float]:
        hi = self.y + self.dy
        return (hi, -hi, self.y, -self.y)

    @property
    def label_hi(self) -> float:
        return self.y + self.dy

    @property
    def label_lo(self) -> float:
        return -self.y

    def resonant_delta(self, scales: DerivedScales) -> float:
        """delta = omega_k + omega_{k+dk}, rad/s."""
        return scales.energy_scale * (
            coeffs(self.y).omega_over_e0 + coeffs(self.y + self.dy).omega_over_e0)


@dataclass(frozen=True)
class ChannelBSpec:
    """Direct Bragg channel populating the modes +-dy."""

    dy: float

    def __post_init__(self):
        if not (isinstance(self.dy, (int, float)) and math.isfinite(self.dy) and self.dy > 0):
            raise InvalidParameterError(f"dy must be positive and finite, got {self.dy!r}")

    def mode_labels(self) -> tuple[float, float]:
        return (self.dy, -self.dy)

    @property
    def label_hi(self) -> float:
        return self.dy

    @property
    def label_lo(self) -> float:
        return -self.dy

    def resonant_delta(self, scales: DerivedScales) -> float:
        return scales.energy_scale * coeffs(self.dy).omega_over_e0


@dataclass(frozen=True)
class SqueezingResult:
    """Time series of populations and squeezing for one channel point."""

    label_hi: float
    label_lo: float
    times: tuple[float, ...]
    n_hi: tuple[float, ...]
    n_lo: tuple[float, ...]
    var_diff: tuple[float, ...]
    xi: tuple[float, ...]
    flags: tuple[tuple[str, ...], ...]


ScanRow = namedtuple("ScanRow", "y t n_hi n_lo var_diff xi flags")
PerturbativeA = namedtuple("PerturbativeA", "n_hi n_lo xi_asymptotic")
PerturbativeB = namedtuple("PerturbativeB", "n_plus n_minus xi")


def _find_label(labels: Sequence[float], value: float) -> float | None:
    """Locate a float mode label up to round-off from repeated +-dy arithmetic."""
    tol = _REL_TOL * max(1.0, abs(value))
    for label in labels:
        if abs(label - value) <= tol:
            return label
    return None


def _check_times(times: Sequence[float]) -> tuple[float, ...]:
    times = tuple(float(t) for t in times)
    if not times:
        raise InvalidParameterError("at least one evolution time is required")
    for t in times:
        if not math.isfinite(t) or t < 0.0:
            raise InvalidParameterError(f"times must be finite and >= 0, got {t!r}")
    if any(b <= a for a, b in zip(times, times[1:])):
        raise InvalidParameterError("times must be strictly ascending")
    return times


def quasiparticle_laser_hamiltonian(registry: ModeRegistry, dy: float, delta: float,
                                    scales: DerivedScales) -> QuadraticForm:
    """Laser coupling in the quasiparticle basis and rotating frame.

    Every registered mode k whose hopping partner k - dk is also registered
    contributes a beam-splitter term, a pair-creation term and its
    counter-rotating partner; the condensate line k = dk contributes the
    linear drive on the modes +-dk when they are registered. Term
    frequencies are the rotating-frame detunings; the resonant terms are
    exactly static.
    """
    labels = registry.labels
    ztol = _REL_TOL * max(1.0, dy)
    cs: dict[float, BogoliubovCoeffs] = {}
    for label in labels:
        key = abs(label)
        if key not in cs:
            cs[key] = coeffs(key)
    omega = {label: scales.energy_scale * cs[abs(label)].omega_over_e0 for label in labels}
    half = 0.5 * scales.effective_coupling
    form = QuadraticForm(registry)

    for label in labels:
        partner_value = label - dy
        if abs(partner_value) <= ztol:
            continue
        partner = _find_label(labels, partner_value)
        neg_partner = _find_label(labels, -partner_value)
        neg_label = _find_label(labels, -label)
        cl = cs[abs(label)]
        cpart = coeffs(abs(partner_value))
        if partner is not None:
            u12 = cl.u * cpart.u + cl.v * cpart.v
            form.add_hopping(label, partner, half * u12,
                             freq=omega[label] - omega[partner] - delta)
        if neg_partner is not None:
            form.add_pair(label, neg_partner, -half * cl.u * cpart.v,
                          freq=omega[label] + omega[neg_partner] - delta)
        if partner is not None and neg_label is not None:
            # h.c. of the annihilation pair -(Omega/2) u_{k-dk} v_k alpha_{-k} alpha_{k-dk}
            form.add_pair(partner, neg_label, -half * cpart.u * cl.v,
                          freq=omega[partner] + omega[neg_label] + delta)

    drive_plus = _find_label(labels, dy)
    drive_minus = _find_label(labels, -dy)
    if drive_plus is not None or drive_minus is not None:
        cd = coeffs(dy)
        z = half * math.sqrt(scales.n_condensate) * cd.u_minus_v
        omega_d = scales.energy_scale * cd.omega_over_e0
        if drive_plus is not None:
            form.add_linear(drive_plus, z, freq=omega_d - delta)
        if drive_minus is not None:
            form.add_linear(drive_minus, z, freq=omega_d + delta)
    return form


def _prepare(labels: Sequence[float], scales: DerivedScales):
    """Registry, ground state, Bogoliubov map and frame data for signed labels."""
    registry = ModeRegistry(labels)
    positives = [la for la in labels if la > 0]
    pairs_beta = []
    pairs_uv = []
    for lp in positives:
        lm = _find_label(labels, -lp)
        c = coeffs(lp)
        pairs_beta.append((lp, lm, c.beta))
        pairs_uv.append((lp, lm, c.u, c.v))
    state = bogoliubov_ground_state(registry, pairs_beta)
    bmat, binv = bogoliubov_map(registry, pairs_uv)
    omegas = [scales.energy_scale * coeffs(abs(la)).omega_over_e0 for la in labels]
    return registry, state, bmat, binv, omegas


def _frame_restore(state: GaussianState, bmat, binv, omegas, t: float) -> GaussianState:
    """Undo the quasiparticle rotating frame: free evolution for time t."""
    n = len(omegas)
    rot = np.zeros((2 * n, 2 * n))
    for m, om in enumerate(omegas):
        c, s = math.cos(om * t), math.sin(om * t)
        rot[2 * m:2 * m + 2, 2 * m:2 * m + 2] = [[c, s], [-s, c]]
    return state.apply_symplectic(bmat @ rot @ binv)


def _point_flags(state: GaussianState, binv, n_condensate: float) -> tuple[str, ...]:
    flags = []
    total = sum(state.mean_number(la) for la in state.registry.labels)
    if total > DEPLETION_FRACTION * n_condensate:
        flags.append(FLAG_DEPLETION)
    qp_state = state.apply_symplectic(binv)
    occ = max(qp_state.mean_number(la) for la in state.registry.labels)
    if occ > QP_OCCUPATION_MAX:
        flags.append(FLAG_QP_OCCUPATION)
    return tuple(flags)


def _run_channel(spec, scales: DerivedScales, times: Sequence[float],
                 ladder: int = 0) -> SqueezingResult:
    times = _check_times(times)
    if ladder:
        if not isinstance(spec, ChannelASpec):
            raise InvalidParameterError("the coupled-ladder option applies to channel A only")
        if not (isinstance(ladder, int) and 1 <= ladder <= 6):
            raise InvalidParameterError(f"ladder extent must be an integer in [1, 6], got {ladder!r}")
        labels = _ladder_labels(spec, ladder)
    else:
        labels = list(spec.mode_labels())
    registry, state0, bmat, binv, omegas = _prepare(labels, scales)
    delta = spec.resonant_delta(scales)
    form = quasiparticle_laser_hamiltonian(registry, spec.dy, delta, scales)
    if not ladder:
        form = form.static_part(freq_tol=_REL_TOL * max(scales.energy_scale, delta))
    form = form.transformed(binv)

    hi = _find_label(labels, spec.label_hi)
    lo = _find_label(labels, spec.label_lo)
    n_hi, n_lo, var, xi, flags = [], [], [], [], []
    for t in times:
        st = evolve_quadratic(state0, form, t)
        st = _frame_restore(st, bmat, binv, omegas, t)
        a = st.mean_number(hi)
        b = st.mean_number(lo)
        v = st.number_diff_variance(hi, lo)
        point_flags = _point_flags(st, binv, scales.n_condensate)
        try:
            x = st.xi(hi, lo)
        except UndefinedSqueezingError:
            x = math.nan
        if not all(math.isfinite(q) for q in (a, b, v, x)):
            point_flags = point_flags + (FLAG_NONFINITE,)
        n_hi.append(a)
        n_lo.append(b)
        var.append(v)
        xi.append(x)
        flags.append(point_flags)
    return SqueezingResult(
        label_hi=hi, label_lo=lo, times=times,
        n_hi=tuple(n_hi), n_lo=tuple(n_lo), var_diff=tuple(var),
        xi=tuple(xi), flags=tuple(flags),
    )


def _ladder_labels(spec: ChannelASpec, extent: int) -> list[float]:
    """Signed momenta {+-(y + n dy)} for n in [-extent, extent], condensate excluded."""
    ztol = _REL_TOL * max(1.0, spec.dy)
    values: list[float] = []
    for n in range(-extent, extent + 1):
        val = spec.y + n * spec.dy
        for cand in (val, -val):
            if abs(cand) > ztol and _find_label(values, cand) is None:
                values.append(cand)
    return sorted(values, reverse=True)


def simulate_channel_a(spec: ChannelASpec, scales: DerivedScales,
                       times: Sequence[float], ladder: int = 0) -> SqueezingResult:
    """Exact Gaussian evolution of the pair-extraction channel.

    With ladder = 0 the resonant four-mode rotating-wave model is evolved;
    ladder = N > 0 instead keeps the full oscillating coupling on the
    momentum ladder y + n dy, |n| <= N (off-resonant-correction studies).
    """
    return _run_channel(spec, scales, times, ladder=ladder)


def simulate_channel_b(spec: ChannelBSpec, scales: DerivedScales,
                       times: Sequence[float]) -> SqueezingResult:
    """Exact Gaussian evolution of the direct Bragg channel (modes +-dy)."""
    return _run_channel(spec, scales, times)


def asymptotic_xi_channel_a(spec: ChannelASpec) -> float:
    """Large-time perturbative squeezing floor of channel A.

    xi -> [ (u+^2 + v+^2) u+^2 + (u^2 + v^2) u^2 - 2 u^2 u+^2 ] / (u+^2 + u^2)
    with unsubscripted coefficients at y and + at y + dy.
    """
    ca = coeffs(spec.y)
    cp = coeffs(spec.y + spec.dy)
    u2, v2 = ca.u ** 2, ca.v ** 2
    up2, vp2 = cp.u ** 2, cp.v ** 2
    return ((up2 + vp2) * up2 + (u2 + v2) * u2 - 2.0 * u2 * up2) / (up2 + u2)


def perturbative_channel_a(spec: ChannelASpec, scales: DerivedScales,
                           t: float) -> PerturbativeA:
    """Second-order populations and the asymptotic squeezing of channel A.

    n_hi = v+^2 + (Omega_tilde t / 2)^2 u+^2 v_{k,k+dk}^2 and likewise for
    n_lo with the coefficients at y. Valid while Omega_tilde * t is small.
    """
    if not (isinstance(t, (int, float)) and math.isfinite(t)) or t < 0.0:
        raise InvalidParameterError(f"t must be finite and >= 0, got {t!r}")
    ca = coeffs(spec.y)
    cp = coeffs(spec.y + spec.dy)
    _, v12 = pair_coeffs(spec.y, spec.y + spec.dy)
    drive = (0.5 * scales.effective_coupling * t * v12) ** 2
    return PerturbativeA(
        n_hi=cp.v ** 2 + cp.u ** 2 * drive,
        n_lo=ca.v ** 2 + ca.u ** 2 * drive,
        xi_asymptotic=asymptotic_xi_channel_a(spec),
    )


def perturbative_channel_b(spec: ChannelBSpec, scales: DerivedScales,
                           t: float) -> PerturbativeB:
    """Displaced-state populations and squeezing of channel B.

    The quasiparticle mode +dy acquires amplitude
    |alpha| = (Omega_tilde/2) sqrt(N0) (u - v) t; Wick evaluation on the
    displaced two-mode squeezed state gives Var(n_+ - n_-) = |alpha|^2
    exactly, so xi = |alpha|^2 / [(u^2 + v^2)|alpha|^2 + 2 v^2].
    """
    if not (isinstance(t, (int, float)) and math.isfinite(t)) or t < 0.0:
        raise InvalidParameterError(f"t must be finite and >= 0, got {t!r}")
    c = coeffs(spec.dy)
    amp = 0.5 * scales.effective_coupling * math.sqrt(scales.n_condensate) * c.u_minus_v * t
    x = amp * amp
    n_plus = c.v ** 2 + c.u ** 2 * x
    n_minus = c.v ** 2 + c.v ** 2 * x
    total = n_plus + n_minus
    if total <= 0.0:
        raise UndefinedSqueezingError("channel B modes hold no population")
    return PerturbativeB(n_plus=n_plus, n_minus=n_minus, xi=x / total)


def scan(channel: str, y_values: Sequence[float], times: Sequence[float],
         scales: DerivedScales, dy_over_y: float = 0.5) -> list[ScanRow]:
    """Simulate a channel over a momentum grid; one row per (y, t).

    For channel "a" the grid variable is the mode momentum y with
    dy = dy_over_y * y; for channel "b" it is the transfer dy itself.
    A point that raises is recorded as rows of NaNs carrying an error flag
    rather than aborting the scan.
    """
    if channel not in ("a", "b"):
        raise InvalidParameterError(f'channel must be "a" or "b", got {channel!r}')
    times = _check_times(times)
    y_values = tuple(float(y) for y in y_values)
    rows: list[ScanRow] = []
    for y in y_values:
        try:
            if channel == "a":
                result = simulate_channel_a(ChannelASpec(y, dy_over_y * y), scales, times)
            else:
                result = simulate_channel_b(ChannelBSpec(y), scales, times)
        except BecSqueezeError as exc:
            reason = f"error:{type(exc).__name__}"
            rows.extend(ScanRow(y, t, math.nan, math.nan, math.nan, math.nan, (reason,))
                        for t in times)
            continue
        for i, t in enumerate(result.times):
            rows.append(ScanRow(y, t, result.n_hi[i], result.n_lo[i],
                                result.var_diff[i], result.xi[i], result.flags[i]))
    return rows

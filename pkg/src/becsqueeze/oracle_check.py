"""Cross-validation of the Gaussian engine against the Fock-space oracle.

Each scenario runs one channel point twice: through the production path
(channels + gaussian) and through a brute-force truncated-Fock computation
assembled independently in fock. Cutoff convergence is certified by
doubling every cutoff and requiring the moments to move by less than
CONVERGENCE_TOL. Amplitudes are kept small so the truncated space is
comfortably converged; the Gaussian result is exact at any amplitude, so
small-amplitude agreement certifies the engine everywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bogoliubov import coeffs, pair_coeffs
from .channels import (
    ChannelASpec,
    ChannelBSpec,
    simulate_channel_a,
    simulate_channel_b,
)
from .errors import InvalidParameterError
from .fock import FockSpace, FockState, TMSV_TAIL, evolve, moments, two_mode_squeezed_vacuum
from .units import DerivedScales

REL_TOL = 1e-6
CONVERGENCE_TOL = 1e-8

# Values this small on both routes are compared absolutely, not relatively.
ZERO_FLOOR = 1e-9

# Extra Fock levels on top of the ground-state requirement when a drive is
# on. Seven keeps the doubled four-mode spaces inside the dimension cap and
# still leaves the cutoff drift orders of magnitude under tolerance.
HEADROOM_PAIR = 7


@dataclass(frozen=True)
class Scenario:
    """One engine-vs-oracle comparison point.

    channel "a": y is the extraction momentum (dy = y/2), drive is the
    accumulated squeeze parameter r = Omega_tilde v_{k,k+dk} t / 2.
    channel "b": y is the transfer momentum, drive is the coherent
    amplitude |alpha| accumulated by the driven quasiparticle mode.
    """

    channel: str
    y: float
    drive: float
    n_condensate: float = 400.0

    @property
    def name(self) -> str:
        kind = "r" if self.channel == "a" else "amp"
        return f"{self.channel}-y{self.y:g}-{kind}{self.drive:g}"


@dataclass
class ScenarioResult:
    scenario: Scenario
    time: float
    dims: tuple[int, int]
    engine: tuple[float, float, float, float]
    oracle: tuple[float, float, float, float]
    rel_errors: tuple[float, float, float, float]
    convergence: float
    converged: bool = field(init=False)
    matched: bool = field(init=False)

    def __post_init__(self):
        self.converged = self.convergence < CONVERGENCE_TOL
        self.matched = max(self.rel_errors) < REL_TOL


@dataclass
class CheckReport:
    results: list[ScenarioResult]
    max_rel_error: float
    max_convergence: float
    passed: bool

    def summary_lines(self) -> list[str]:
        lines = []
        for r in self.results:
            status = "ok" if (r.matched and r.converged) else "FAIL"
            lines.append(
                f"{r.scenario.name:<16s} dim {r.dims[0]:>7d}->{r.dims[1]:>7d}  "
                f"max rel {max(r.rel_errors):.3e}  cutoff drift {r.convergence:.3e}  {status}")
        lines.append(f"worst relative deviation {self.max_rel_error:.3e} "
                     f"(tolerance {REL_TOL:g}), worst cutoff drift "
                     f"{self.max_convergence:.3e} (tolerance {CONVERGENCE_TOL:g})")
        lines.append("oracle check PASSED" if self.passed else "oracle check FAILED")
        return lines


def default_scenarios() -> list[Scenario]:
    return [
        Scenario("a", 0.5, 0.0),
        Scenario("a", 1.0, 0.0),
        Scenario("a", 2.0, 0.0),
        Scenario("a", 1.0, 0.12),
        Scenario("a", 1.0, 0.25),
        Scenario("a", 2.0, 0.12),
        Scenario("a", 2.0, 0.25),
        Scenario("b", 0.5, 0.0),
        Scenario("b", 1.0, 0.0),
        Scenario("b", 2.0, 0.0),
        Scenario("b", 0.5, 0.8),
        Scenario("b", 1.0, 0.8),
        Scenario("b", 2.0, 1.2),
        Scenario("b", 0.5, 1.5),
    ]


def _synthetic_scales(n_condensate: float) -> DerivedScales:
    # Only the coupling and N0 shape the resonant dynamics; unit filler
    # elsewhere keeps the scenario dimensionless.
    return DerivedScales(density=1.0, healing_momentum=1.0, energy_scale=1.0,
                         effective_coupling=1.0, n_condensate=n_condensate)


def scenario_time(sc: Scenario) -> float:
    """Evolution time (with Omega_tilde = 1) that realizes the target drive."""
    if sc.drive == 0.0:
        return 0.0
    if sc.channel == "a":
        _, v12 = pair_coeffs(sc.y, 1.5 * sc.y)
        return 2.0 * sc.drive / v12
    rate = 0.5 * math.sqrt(sc.n_condensate) * coeffs(sc.y).u_minus_v
    return sc.drive / rate


def _engine_moments(sc: Scenario, t: float) -> tuple[float, float, float, float]:
    scales = _synthetic_scales(sc.n_condensate)
    if sc.channel == "a":
        res = simulate_channel_a(ChannelASpec(sc.y), scales, (t,))
    else:
        res = simulate_channel_b(ChannelBSpec(sc.y), scales, (t,))
    return res.n_hi[0], res.n_lo[0], res.var_diff[0], res.xi[0]


def _tmsv_levels(beta: float) -> int:
    if beta == 0.0:
        return 1
    rho2 = beta * beta
    return math.ceil(math.log(TMSV_TAIL / (1.0 - rho2)) / math.log(rho2))


def _cutoffs(sc: Scenario, double: bool) -> list[int]:
    if sc.channel == "a":
        hi_levels = _tmsv_levels(coeffs(1.5 * sc.y).beta)
        lo_levels = _tmsv_levels(coeffs(sc.y).beta)
        # one spare level even without drive: the ground-state tail alone
        # sits too close to the convergence gate at y = 0.5
        head = HEADROOM_PAIR if sc.drive else 1
        cuts = [hi_levels + head] * 2 + [lo_levels + head] * 2
    else:
        levels = _tmsv_levels(coeffs(sc.y).beta)
        head = math.ceil(12 + 6 * sc.drive) if sc.drive else 0
        cuts = [levels + head] * 2
    return [2 * c for c in cuts] if double else cuts


def _oracle_moments(sc: Scenario, t: float, double: bool
                    ) -> tuple[tuple[float, float, float, float], int]:
    space = FockSpace(_cutoffs(sc, double))
    if sc.channel == "a":
        dy = 0.5 * sc.y
        cl = coeffs(sc.y)
        ch = coeffs(sc.y + dy)
        # modes: 0 = +(y+dy), 1 = -(y+dy), 2 = +y, 3 = -y
        upper = two_mode_squeezed_vacuum(FockSpace(space.cutoffs[:2]), 0, 1, -ch.beta)
        lower = two_mode_squeezed_vacuum(FockSpace(space.cutoffs[2:]), 0, 1, -cl.beta)
        state = FockState(space, np.kron(upper.amplitudes, lower.amplitudes))
        alpha_hi_dag = ch.u * space.creation(0) + ch.v * space.annihilation(1)
        alpha_lo_dag = cl.u * space.creation(3) + cl.v * space.annihilation(2)
        _, v12 = pair_coeffs(sc.y, sc.y + dy)
        pair_op = alpha_hi_dag @ alpha_lo_dag
        ham = -0.5 * v12 * (pair_op + pair_op.conjugate().T)
        mode_hi, mode_lo = 0, 3
    else:
        c = coeffs(sc.y)
        state = two_mode_squeezed_vacuum(space, 0, 1, -c.beta)
        alpha_dag = c.u * space.creation(0) + c.v * space.annihilation(1)
        z = 0.5 * math.sqrt(sc.n_condensate) * c.u_minus_v
        ham = z * (alpha_dag + alpha_dag.conjugate().T)
        mode_hi, mode_lo = 0, 1
    if t > 0.0:
        state = evolve(state, ham, t)
    n_hi, n_lo, var, xi = moments(state, mode_hi, mode_lo)
    if xi is None:
        xi = math.nan
    return (n_hi, n_lo, var, xi), space.dim


def _rel(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale <= ZERO_FLOOR:
        return 0.0
    return abs(a - b) / scale


def run_check(scenarios: Sequence[Scenario] | None = None,
              engine_fn: Callable[[Scenario, float], tuple[float, float, float, float]] | None = None,
              ) -> CheckReport:
    """Run the comparison grid; passes only if every scenario matches and converges.

    engine_fn may be overridden to validate the comparison itself (it should
    then fail loudly on a corrupted engine).
    """
    if scenarios is None:
        scenarios = default_scenarios()
    scenarios = list(scenarios)
    if not scenarios:
        raise InvalidParameterError("oracle check needs at least one scenario")
    if engine_fn is None:
        engine_fn = _engine_moments
    results = []
    for sc in scenarios:
        if sc.channel not in ("a", "b"):
            raise InvalidParameterError(f'scenario channel must be "a" or "b", got {sc.channel!r}')
        t = scenario_time(sc)
        engine = engine_fn(sc, t)
        base, dim_base = _oracle_moments(sc, t, double=False)
        doubled, dim_doubled = _oracle_moments(sc, t, double=True)
        convergence = max(abs(d - b) / max(1.0, abs(b)) for d, b in zip(doubled, base))
        rel_errors = tuple(_rel(e, o) for e, o in zip(engine, doubled))
        results.append(ScenarioResult(
            scenario=sc, time=t, dims=(dim_base, dim_doubled),
            engine=tuple(float(v) for v in engine),
            oracle=tuple(float(v) for v in doubled),
            rel_errors=rel_errors, convergence=convergence,
        ))
    max_rel = max(max(r.rel_errors) for r in results)
    max_conv = max(r.convergence for r in results)
    passed = all(r.matched and r.converged for r in results)
    return CheckReport(results=results, max_rel_error=max_rel,
                       max_convergence=max_conv, passed=passed)

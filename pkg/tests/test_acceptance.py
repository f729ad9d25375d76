"""Acceptance suite: the eight headline requirements, one verdict line each.

Run with `pytest -s tests/test_acceptance.py` to see the verdict lines for
passing criteria too (pytest hides stdout of passing tests by default).

The simulated-route half of criterion 2 fails by construction: at the
documented 10 ms operating point the exact evolution is far outside the
perturbative regime (the pair amplitude reaches r ~ 7.7, i.e. ~1.3e6
particles per mode instead of ~60). The perturbative route reproduces the
quoted numbers; the discrepancy is analyzed in the project notes and the
test is kept faithful rather than loosened.
"""

import math

import numpy as np
import pytest

from becsqueeze import cli
from becsqueeze.bogoliubov import coeffs
from becsqueeze.channels import (
    ChannelASpec,
    asymptotic_xi_channel_a,
    perturbative_channel_a,
    scan,
    simulate_channel_a,
)
from becsqueeze.config import grid_values
from becsqueeze.gaussian import (
    GaussianState,
    ModeRegistry,
    QuadraticForm,
    bogoliubov_ground_state,
    bogoliubov_map,
    evolve_quadratic,
    symplectic_form,
)
from becsqueeze.losses import estimate
from becsqueeze.oracle_check import REL_TOL

from conftest import reference_config

WORKED_T = 10e-3  # seconds
WORKED_SPEC = ChannelASpec(2.0, 1.0)


def verdict(num: str, label: str, ok: bool, detail: str = "") -> bool:
    mark = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"[acceptance] criterion {num} ({label}): {mark}{suffix}")
    return ok


def test_criterion_1_derived_scales(ref_scales):
    n0_cm3 = ref_scales.density * 1e-6
    e0_ref = 2.0 * math.pi * 1.5e3
    ratio = ref_scales.effective_coupling / ref_scales.energy_scale
    ok_n0 = abs(n0_cm3 / 1e14 - 1.0) < 1e-12
    ok_e0 = abs(ref_scales.energy_scale / e0_ref - 1.0) <= 0.05
    ok_ratio = abs(ratio - 1.0) <= 0.10
    ok = verdict("1", "derived scales", ok_n0 and ok_e0 and ok_ratio,
                 f"n0 = {n0_cm3:.6g} cm^-3, E0/2pi = "
                 f"{ref_scales.energy_scale / (2 * math.pi):.6g} Hz, ratio = {ratio:.4g}")
    assert ok, (n0_cm3, ref_scales.energy_scale, ratio)


def test_criterion_2_worked_example_perturbative_route(ref_scales):
    pert = perturbative_channel_a(WORKED_SPEC, ref_scales, WORKED_T)
    ok_pop = abs(pert.n_hi / 60.0 - 1.0) <= 0.10 and abs(pert.n_lo / 60.0 - 1.0) <= 0.10
    ok_xi = pert.xi_asymptotic <= 0.05
    ok = verdict("2a", "worked example, perturbative route", ok_pop and ok_xi,
                 f"n_hi = {pert.n_hi:.4g}, n_lo = {pert.n_lo:.4g}, "
                 f"xi = {pert.xi_asymptotic:.4g}")
    assert ok, pert


def test_criterion_2_worked_example_simulated_route(ref_scales):
    sim = simulate_channel_a(WORKED_SPEC, ref_scales, (WORKED_T,))
    n_hi, n_lo, xi = sim.n_hi[0], sim.n_lo[0], sim.xi[0]
    ok_pop = abs(n_hi / 60.0 - 1.0) <= 0.10 and abs(n_lo / 60.0 - 1.0) <= 0.10
    ok_xi = xi <= 0.05
    ok = verdict("2b", "worked example, simulated route", ok_pop and ok_xi,
                 f"n_hi = {n_hi:.4g}, n_lo = {n_lo:.4g}, xi = {xi:.4g}")
    assert ok, (n_hi, n_lo, xi)


def test_criterion_3_asymptotic_squeezing():
    at_working_point = asymptotic_xi_channel_a(ChannelASpec(2.0, 1.0))
    far_out = asymptotic_xi_channel_a(ChannelASpec(1e3, 500.0))
    ok_value = abs(at_working_point / 0.0065 - 1.0) <= 0.01
    ok_limit = far_out <= 1e-4
    ok = verdict("3", "asymptotic squeezing", ok_value and ok_limit,
                 f"xi(2,1) = {at_working_point:.6g}, xi(1e3) = {far_out:.3g}")
    assert ok, (at_working_point, far_out)


def test_criterion_4_figure_shapes(ref_scales):
    ys = grid_values(reference_config())
    rows_a = scan("a", ys, cli.FIG1_TIMES, ref_scales)
    rows_b = scan("b", ys, cli.FIG2_TIMES, ref_scales)

    def series(rows, y):
        return [r.xi for r in rows if r.y == y]

    # pair channel: xi falls monotonically with time for every y >= 1, and
    # falls with y along the final-time curve on the y >= 1 branch
    high = [y for y in ys if y >= 1.0]
    falling_t = all(
        all(b < a for a, b in zip(series(rows_a, y), series(rows_a, y)[1:]))
        for y in high)
    final_curve = [series(rows_a, y)[-1] for y in high]
    falling_y = all(b < a for a, b in zip(final_curve, final_curve[1:]))

    # Bragg channel: noiseless at t = 0, deteriorating with time, best
    # transfer in the phonon regime dy < 1
    start_zero = all(series(rows_b, y)[0] == pytest.approx(0.0, abs=1e-12) for y in ys)
    rising_t = all(
        all(b > a for a, b in zip(series(rows_b, y), series(rows_b, y)[1:]))
        for y in ys)
    argmin_low = True
    for i, t in enumerate(cli.FIG2_TIMES):
        if t == 0.0:
            continue
        curve = [(series(rows_b, y)[i], y) for y in ys]
        argmin_low = argmin_low and min(curve)[1] < 1.0

    ok = verdict("4", "figure shapes", falling_t and falling_y and start_zero
                 and rising_t and argmin_low,
                 f"fall(t) {falling_t}, fall(y) {falling_y}, zero-start {start_zero}, "
                 f"rise(t) {rising_t}, argmin<1 {argmin_low}")
    assert ok


def test_criterion_5_loss_estimates(ref_params, ref_scales):
    loss = estimate(2.0, ref_params, ref_scales)
    ok_tau = abs(loss.beliaev_time / 3.5e-3 - 1.0) <= 0.05
    ok_frac = abs(loss.rescatter_4pi / 0.42 - 1.0) <= 0.15
    report = cli._derive_report(reference_config())
    ok_doc = ("4 pi a^2" in report and "8 pi a^2" in report
              and "convention" in report)
    ok = verdict("5", "loss estimates", ok_tau and ok_frac and ok_doc,
                 f"tau = {loss.beliaev_time:.4g} s, fraction = {loss.rescatter_4pi:.4g}, "
                 f"documented = {ok_doc}")
    assert ok, (loss.beliaev_time, loss.rescatter_4pi, ok_doc)


def test_criterion_6_oracle_equivalence(oracle_report):
    scenarios = [r.scenario for r in oracle_report.results]
    broad = (len(scenarios) >= 12
             and {sc.channel for sc in scenarios} == {"a", "b"}
             and {0.5, 1.0, 2.0} <= {sc.y for sc in scenarios})
    ok = verdict("6", "oracle equivalence", oracle_report.passed and broad,
                 f"{len(scenarios)} scenarios, worst rel "
                 f"{oracle_report.max_rel_error:.3e} (tol {REL_TOL:g})")
    assert ok, oracle_report.summary_lines()


def test_criterion_7_invariant_suite():
    tol = 1e-10
    # normalization u^2 - v^2 = 1 across the momentum range
    grid = np.logspace(-3, 3, 121)
    norm_defect = max(abs(coeffs(y).u ** 2 - coeffs(y).v ** 2 - 1.0) for y in grid)

    # symplectic-form preservation, reading the linear action off the mean
    registry = ModeRegistry(["a", "b"])
    sigma = symplectic_form(2)
    form = (QuadraticForm(registry)
            .add_number("a", 0.9)
            .add_hopping("a", "b", 0.4 - 0.2j)
            .add_pair("a", "b", 0.3 + 0.1j))
    operations = [
        lambda st: st.two_mode_squeeze("a", "b", 0.7, 1.3),
        lambda st: st.phase_rotate("a", 0.9),
        lambda st: evolve_quadratic(st, form, 0.8),
    ]
    sympl_defect = 0.0
    for op in operations:
        cols = []
        for i in range(4):
            mean = np.zeros(4)
            mean[i] = 1.0
            cols.append(op(GaussianState(registry, mean, 0.5 * np.eye(4))).mean)
        s = np.column_stack(cols)
        sympl_defect = max(sympl_defect, np.max(np.abs(s @ sigma @ s.T - sigma)))
    for y in (0.5, 2.0):
        reg = ModeRegistry([y, -y])
        c = coeffs(y)
        b, _ = bogoliubov_map(reg, [(y, -y, c.u, c.v)])
        sympl_defect = max(sympl_defect, np.max(np.abs(b @ symplectic_form(2) @ b.T
                                                       - symplectic_form(2))))

    # ground-state twin-beam property and the coherent baseline
    twin_defect = 0.0
    for y in (0.5, 1.0, 2.0):
        reg = ModeRegistry([y, -y])
        gs = bogoliubov_ground_state(reg, [(y, -y, coeffs(y).beta)])
        twin_defect = max(twin_defect, gs.number_diff_variance(y, -y))
    coherent = GaussianState.vacuum(registry).displace("a", 2.0).displace("b", 1.5j)
    baseline_defect = abs(coherent.xi("a", "b") - 1.0)

    ok = verdict("7", "invariant suite",
                 max(norm_defect, sympl_defect, twin_defect, baseline_defect) <= tol,
                 f"u/v {norm_defect:.1e}, symplectic {sympl_defect:.1e}, "
                 f"twin {twin_defect:.1e}, baseline {baseline_defect:.1e}")
    assert ok, (norm_defect, sympl_defect, twin_defect, baseline_defect)


def test_criterion_8_perturbative_consistency(ref_scales):
    bound_c = 1.0
    worst = 0.0
    for y in (0.5, 1.0, 2.0):
        spec = ChannelASpec(y)
        for x in (0.025, 0.05, 0.1):  # x = coupling * t
            t = x / ref_scales.effective_coupling
            sim = simulate_channel_a(spec, ref_scales, (t,))
            pert = perturbative_channel_a(spec, ref_scales, t)
            rel = max(abs(sim.n_hi[0] / pert.n_hi - 1.0),
                      abs(sim.n_lo[0] / pert.n_lo - 1.0))
            worst = max(worst, rel / x ** 2)
    ok = verdict("8", "perturbative consistency", worst <= bound_c,
                 f"worst rel/(coupling*t)^2 = {worst:.3g} (bound {bound_c:g})")
    assert ok, worst

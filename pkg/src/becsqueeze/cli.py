"""Command-line interface.

Subcommands:
  derive        print the derived condensate scales and loss estimates
  fig1          pair-extraction channel: xi(y, t) scan to CSV
  fig2          Bragg channel: xi(dy, t) scan to CSV
  scan          channel and grid taken from the config file
  oracle-check  run the engine-vs-Fock-oracle comparison grid

Exit codes: 0 success, 2 configuration problems, 3 numerical failures.
CSV output is deterministic byte for byte for a given config.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import __version__
from .channels import scan as run_scan
from .config import (
    RunConfig,
    config_hash,
    grid_values,
    load_config,
    serialize_config,
    to_lab_parameters,
    with_overrides,
)
from .errors import BecSqueezeError, ConfigError, InvalidParameterError
from .losses import estimate
from .oracle_check import run_check
from .units import derive

# Default time grids for the two figure scans, seconds. The pair channel is
# sampled inside its perturbative window (populations still small for every
# y >= 1 on the default grid); the Bragg channel across its full rise.
FIG1_TIMES = (0.0,) + tuple(5e-5 * (6e-4 / 5e-5) ** (i / 4) for i in range(5))
FIG2_TIMES = (0.0,) + tuple(1e-8 * (1e-2 / 1e-8) ** (i / 4) for i in range(5))


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.12g}"


def render_csv(rows, digest: str) -> str:
    lines = [f"# config-hash: {digest}", "y,t_seconds,n_hi,n_lo,var_diff,xi,flags"]
    for r in rows:
        lines.append(",".join([
            _fmt(r.y), _fmt(r.t), _fmt(r.n_hi), _fmt(r.n_lo),
            _fmt(r.var_diff), _fmt(r.xi), ";".join(r.flags),
        ]))
    return "\n".join(lines) + "\n"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(text.encode("utf-8"))


def _plot_rows(rows, path: Path, xlabel: str) -> bool:
    try:
        import matplotlib
    except ImportError:
        print("plotting skipped: matplotlib is not installed", file=sys.stderr)
        return False
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_time: dict[float, list] = {}
    for r in rows:
        by_time.setdefault(r.t, []).append(r)
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for t in sorted(by_time):
        pts = [(r.y, r.xi) for r in by_time[t]
               if math.isfinite(r.xi) and r.xi > 0.0]
        if not pts:
            continue
        ax.plot([p[0] for p in pts], [p[1] for p in pts], label=f"t = {t:g} s")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("squeezing parameter")
    ax.legend(fontsize=7)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return True


def _derive_report(cfg: RunConfig) -> str:
    params = to_lab_parameters(cfg)
    scales = derive(params)
    loss = estimate(2.0, params, scales)
    e0_khz = scales.energy_scale / (2.0 * math.pi * 1e3)
    lines = [
        f"condensate density      n0 = {scales.density:.6g} 1/m^3 "
        f"({scales.density * 1e-6:.6g} 1/cm^3)",
        f"healing momentum        k0 = {scales.healing_momentum:.6g} 1/m",
        f"energy scale            E0 = {scales.energy_scale:.6g} rad/s "
        f"(E0/2pi = {e0_khz:.6g} kHz)",
        f"two-photon coupling     {scales.effective_coupling:.6g} rad/s "
        f"(coupling/E0 = {scales.effective_coupling / scales.energy_scale:.6g})",
        f"Beliaev decay time at 2 k0: {loss.beliaev_time:.6g} s",
        f"rescattered fraction:   {loss.rescatter_4pi:.6g} (sigma = 4 pi a^2), "
        f"{loss.rescatter_8pi:.6g} (sigma = 8 pi a^2)",
        "  note: the rescattering cross-section convention is ambiguous;"
        " both values are reported side by side",
        "[machine]",
        f"density_m3 = {_fmt(scales.density)}",
        f"healing_momentum_inv_m = {_fmt(scales.healing_momentum)}",
        f"energy_scale_rad_s = {_fmt(scales.energy_scale)}",
        f"energy_scale_2pi_khz = {_fmt(e0_khz)}",
        f"coupling_rad_s = {_fmt(scales.effective_coupling)}",
        f"coupling_over_e0 = {_fmt(scales.effective_coupling / scales.energy_scale)}",
        f"beliaev_time_2k0_s = {_fmt(loss.beliaev_time)}",
        f"rescatter_4pi = {_fmt(loss.rescatter_4pi)}",
        f"rescatter_8pi = {_fmt(loss.rescatter_8pi)}",
        f"config_hash = {config_hash(cfg)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_derive(args) -> int:
    cfg = with_overrides(load_config(args.config), args.grid, args.times)
    report = _derive_report(cfg)
    print(report, end="")
    if args.out:
        outdir = Path(args.out)
        _write_text(outdir / "derive.txt", report)
        _write_text(outdir / "resolved.cfg", serialize_config(cfg))
    return 0


def _scan_command(args, channel: str | None, default_times, csv_name: str) -> int:
    cfg = with_overrides(load_config(args.config), args.grid, args.times)
    if channel is None:
        channel = cfg.channel
    times = cfg.times_s if cfg.times_s is not None else default_times
    params = to_lab_parameters(cfg)
    scales = derive(params)
    rows = run_scan(channel, grid_values(cfg), times, scales, dy_over_y=cfg.dy_over_y)
    text = render_csv(rows, config_hash(cfg))
    outdir = Path(args.out)
    csv_path = outdir / csv_name
    _write_text(csv_path, text)
    _write_text(outdir / "resolved.cfg", serialize_config(cfg))
    print(f"wrote {csv_path} ({len(rows)} rows)")
    if args.plot:
        xlabel = "y = k / k0" if channel == "a" else "dy = dk / k0"
        if _plot_rows(rows, csv_path.with_suffix(".pdf"), xlabel):
            print(f"wrote {csv_path.with_suffix('.pdf')}")
    return 0


def cmd_fig1(args) -> int:
    return _scan_command(args, "a", FIG1_TIMES, "fig1.csv")


def cmd_fig2(args) -> int:
    return _scan_command(args, "b", FIG2_TIMES, "fig2.csv")


def cmd_scan(args) -> int:
    return _scan_command(args, None, FIG1_TIMES, "scan.csv")


def cmd_oracle_check(args) -> int:
    report = run_check()
    for line in report.summary_lines():
        print(line)
    return 0 if report.passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="becsqueeze",
        description="Relative number squeezing of condensate momentum modes "
                    "under stimulated light scattering.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", required=True, help="path to a key = value config file")
            p.add_argument("--out", default="out", help="output directory (default: out)")
            p.add_argument("--plot", action="store_true", help="also render a PDF figure")
            p.add_argument("--times", default=None,
                           help="comma-separated evolution times in seconds")
            p.add_argument("--grid", default=None,
                           help="momentum grid as min:max:count:log|lin")

    p = sub.add_parser("derive", help="print derived scales and loss estimates")
    add_common(p)
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("fig1", help="pair-extraction channel scan (xi vs y and t)")
    add_common(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="Bragg channel scan (xi vs dy and t)")
    add_common(p)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("scan", help="scan the channel named in the config")
    add_common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle-check", help="compare the Gaussian engine against "
                                            "the truncated-Fock oracle")
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, InvalidParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BecSqueezeError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

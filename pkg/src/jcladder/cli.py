"""Command-line entry point: one subcommand per figure-class computation.

Every subcommand reads one TOML config, writes CSV artifacts with fixed
column contracts plus a JSON sidecar of run metadata, and prints a one-line
summary.  Artifacts are a pure function of the config: no timestamps or
environment state enter the data files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .config import RunConfig, parse_config
from .coupling import two_strip_splitting_oracle
from .errors import BranchTrackingError, ConfigError, ConvergenceError
from .ladder import LadderModel, critical_photon_number, dispersive_chi
from .resonance import find_resonant_photon_number, sweep_qubit_frequency
from .tables import emit_table
from .tls import tls_crossing_diagram
from .transmon import DeviceParams, solve_transmon

ORACLE_LAMBDAS = (0.3, 0.1, 0.03)


def _device_meta(params: DeviceParams) -> dict:
    return {
        "E_C_GHz": params.E_C,
        "E_J_GHz": params.E_J,
        "omega_r_GHz": params.omega_r,
        "g_GHz": params.g,
        "n_g": params.n_g,
        "k_max": params.k_max,
        "charge_cutoff": params.charge_cutoff,
        "epsilon_sym": params.epsilon_sym,
    }


def _run_spectrum(cfg: RunConfig):
    params = cfg.build_params()
    spec = solve_transmon(params)
    rows = [
        (k, float(spec.levels[k]), float(spec.levels[k] - spec.levels[0]))
        for k in range(spec.k_max + 1)
    ]
    data = emit_table(rows, ("k", "E_k_GHz", "omega_k0_GHz"))
    meta = {
        "device": _device_meta(params),
        "omega_10_GHz": spec.omega_10,
        "eta_GHz": spec.eta,
    }
    summary = (
        f"spectrum: {len(rows)} levels, omega_10 = {spec.omega_10:.6f} GHz, "
        f"eta = {spec.eta:.6f} GHz"
    )
    return {"spectrum.csv": data}, meta, summary


def _run_stark(cfg: RunConfig):
    params = cfg.build_params()
    model = LadderModel(params)
    chi = dispersive_chi(model.spectrum, params)
    n_c = critical_photon_number(params, model.spectrum)
    rows = [
        (n, model.stark_shift(n), 2.0 * chi * n)
        for n in range(0, cfg.n_range[1] + 1)
    ]
    data = emit_table(rows, ("n", "stark_shift_GHz", "linear_ref_GHz"))
    meta = {"device": _device_meta(params), "chi_GHz": chi, "n_c": n_c}
    summary = f"stark: {len(rows)} rows, chi = {chi * 1e3:.6f} MHz, n_c = {n_c:.2f}"
    return {"stark.csv": data}, meta, summary


def _run_fan(cfg: RunConfig):
    params = cfg.build_params()
    model = LadderModel(params)
    lo, hi = cfg.n_total_range
    rows = []
    for n_total in range(lo, hi + 1):
        for k in range(min(n_total, model.k_max) + 1):
            rows.append((n_total, k, model.fan_frequency(k, n_total)))
    data = emit_table(rows, ("n_total", "k", "fan_freq_GHz"))
    meta = {"device": _device_meta(params), "n_total_range": list(cfg.n_total_range)}
    summary = f"fan: {len(rows)} rows over strips {lo}..{hi}"
    return {"fan.csv": data}, meta, summary


def _run_geff(cfg: RunConfig):
    params = cfg.build_params()
    model = LadderModel(params)
    rows = []
    missing = []
    for family in cfg.transitions:
        point = find_resonant_photon_number(model, family, cfg.n_range)
        if point is None:
            missing.append(family.tag)
            continue
        rows.append(
            (
                point.omega_10,
                point.n_res,
                point.coupling.g_eff_coh * 1e3,
                point.coupling.g_eff_incoh * 1e3,
                family.tag,
            )
        )
    data = emit_table(
        rows,
        ("omega_10_GHz", "n_res", "geff_coh_MHz", "geff_incoh_MHz", "transition_tag"),
    )
    meta = {"device": _device_meta(params), "no_resonance": missing}
    summary = f"geff: {len(rows)} resonances ({len(missing)} transitions without crossing in range)"
    return {"geff.csv": data}, meta, summary


def _run_resonance_sweep(cfg: RunConfig):
    if cfg.sweep is None:
        raise ConfigError("resonance-sweep requires a [sweep] block")
    device = cfg.device
    if isinstance(device, DeviceParams):
        raise ConfigError(
            "resonance-sweep requires a spectroscopy-style device block "
            "(omega_10, eta) so the sweep can hold eta fixed"
        )
    result = sweep_qubit_frequency(
        cfg.sweep.values(),
        cfg.transitions,
        eta=device.eta,
        omega_r=device.omega_r,
        g=device.g,
        n_range=cfg.n_range,
        n_g=device.n_g,
        k_max=device.k_max,
        charge_cutoff=device.charge_cutoff,
        epsilon_sym=device.epsilon_sym,
    )
    rows = []
    for p in result.points:
        n_c = (p.delta / (2.0 * device.g)) ** 2
        rows.append(
            (
                p.omega_10,
                p.delta,
                p.family.tag,
                p.n_star,
                p.n_res,
                p.coupling.g_eff_coh * 1e3,
                p.coupling.g_eff_incoh * 1e3,
                n_c,
            )
        )
    data = emit_table(
        rows,
        (
            "omega_10_GHz", "delta_GHz", "transition_tag", "n_star", "n_res",
            "geff_coh_MHz", "geff_incoh_MHz", "n_c",
        ),
    )
    meta = {
        "grid": {"start": cfg.sweep.start, "stop": cfg.sweep.stop, "count": cfg.sweep.count},
        "gaps": [{"omega_10_GHz": w, "reason": r} for w, r in result.gaps],
    }
    summary = (
        f"resonance-sweep: {len(rows)} resonances over {cfg.sweep.count} grid points "
        f"({len(result.gaps)} gaps)"
    )
    return {"resonance_sweep.csv": data}, meta, summary


def _run_tls(cfg: RunConfig):
    if cfg.tls is None:
        raise ConfigError("tls requires a [tls] block with omega_tls")
    params = cfg.build_params()
    model = LadderModel(params)
    n_c = critical_photon_number(params, model.spectrum)
    diagram = tls_crossing_diagram(model, cfg.tls, cfg.n_range)
    rows = [
        (int(n), float(ei), float(ef), float(n) / n_c)
        for n, ei, ef in zip(
            diagram.photon_numbers, diagram.e_initial, diagram.e_final
        )
    ]
    data = emit_table(rows, ("n", "E_initial_GHz", "E_final_GHz", "n_over_nc"))
    summary_schema = (
        "omega_tls_GHz", "condition_estimate_GHz", "n_star", "n_res", "n_over_nc",
    )
    if diagram.crossing is not None:
        c = diagram.crossing
        summary_rows = [
            (cfg.tls.omega_tls, diagram.condition_estimate, c.n_star, c.n_res, c.n_over_nc)
        ]
        summary = (
            f"tls: crossing at n* = {c.n_star:.2f} (n/n_c = {c.n_over_nc:.3f}), "
            f"condition estimate {diagram.condition_estimate:.4f} GHz"
        )
    else:
        summary_rows = []
        summary = (
            f"tls: no crossing in n range {cfg.n_range}, condition estimate "
            f"{diagram.condition_estimate:.4f} GHz"
        )
    summary_data = emit_table(summary_rows, summary_schema)
    meta = {
        "device": _device_meta(params),
        "omega_tls_GHz": cfg.tls.omega_tls,
        "final_level": cfg.tls.final_level,
        "condition_estimate_GHz": diagram.condition_estimate,
        "crossing_found": diagram.crossing is not None,
    }
    return {"tls.csv": data, "tls_summary.csv": summary_data}, meta, summary


def _run_oracle(cfg: RunConfig):
    params = cfg.build_params()
    model = LadderModel(params)
    rows = []
    missing = []
    for family in cfg.transitions:
        point = find_resonant_photon_number(model, family, cfg.n_range)
        if point is None:
            missing.append(family.tag)
            continue
        coh = abs(point.coupling.g_eff_coh)
        t = family.at_photon_number(point.n_res)
        for lam in ORACLE_LAMBDAS:
            splitting = two_strip_splitting_oracle(model, t, lam)
            ratio = splitting / (2.0 * lam)
            rows.append(
                (
                    family.tag,
                    lam,
                    point.n_res,
                    splitting,
                    ratio * 1e3,
                    point.coupling.g_eff_coh * 1e3,
                    ratio / coh - 1.0 if coh > 0 else 0.0,
                )
            )
    data = emit_table(
        rows,
        (
            "transition_tag", "lambda", "n_res", "splitting_GHz",
            "splitting_over_2lambda_MHz", "geff_coh_MHz", "rel_err",
        ),
    )
    meta = {"device": _device_meta(params), "no_resonance": missing}
    summary = f"oracle: {len(rows)} rows ({len(missing)} transitions without crossing)"
    return {"oracle.csv": data}, meta, summary


_RUNNERS = {
    "spectrum": _run_spectrum,
    "stark": _run_stark,
    "fan": _run_fan,
    "geff": _run_geff,
    "resonance-sweep": _run_resonance_sweep,
    "tls": _run_tls,
    "oracle": _run_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcladder",
        description=(
            "Beyond-RWA ladder of a transmon-resonator pair: dressed strips, "
            "ac Stark calibration, inter-strip effective couplings, resonance "
            "sweeps and TLS crossing diagrams.  All frequencies are GHz; "
            "photon and level numbers are dimensionless counts."
        ),
    )
    parser.add_argument("command", choices=sorted(_RUNNERS), help="computation to run")
    parser.add_argument("--config", required=True, help="path to TOML run configuration")
    parser.add_argument("--out", default=None, help="output directory (overrides config)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"jcladder: cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        print(f"jcladder: config error: {exc}", file=sys.stderr)
        return 2

    out_dir = Path(args.out if args.out is not None else cfg.output.directory)
    try:
        artifacts, meta, summary = _RUNNERS[args.command](cfg)
    except ConfigError as exc:
        print(f"jcladder: config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, IndexError, ConvergenceError, BranchTrackingError) as exc:
        print(f"jcladder: {args.command} failed: {exc}", file=sys.stderr)
        return 1

    out_dir.mkdir(parents=True, exist_ok=True)
    for name, data in artifacts.items():
        (out_dir / name).write_bytes(data)
    sidecar = {
        "command": args.command,
        "package_version": __version__,
        "artifacts": sorted(artifacts),
        **meta,
    }
    stem = args.command.replace("-", "_")
    (out_dir / f"{stem}_meta.json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"{summary}; wrote {', '.join(str(out_dir / n) for n in sorted(artifacts))}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line frontend.

Configuration comes from JSON files plus flag overrides; flags win.  Outputs
are deterministic (no timestamps), so re-running a command overwrites
byte-identical files.  Exit status: 0 on success, 2 on usage errors, 3 when a
result carries a degeneracy flag and --allow-degenerate was not given, 1 on
other computation errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import cpr as cpr_mod
from .circuit import CircuitParams
from .errors import Cos2PhiError
from .elements import matrix_elements, parity_weights, symmetry_metric
from .noise import NoiseSpec, coherence_report
from .plots import emit_plot_script
from .semiclassics import TwoLevelModel, kappa, sweetness, two_level_f01
from .spectrum import converge_truncation, lowest_energies, spectrum_of
from .sweep import SweepGrid, default_grid, log_axis, optimize_t2, run_sweep
from .thermal import build_rate_matrix, effective_qubit_rates

DEGENERATE_EXIT = 3

_PARAM_DEFAULTS = dict(ec=0.5, ejs2=10.0, ratio=-0.1, d=0.01, dphi=1e-3, ng=0.25)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: subcommand plus the knobs it will use."""

    subcommand: str
    params: Optional[dict] = None
    noise: Optional[dict] = None
    output: Optional[str] = None
    format: str = "json"
    plot: bool = False

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(**data)


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _write_csv(path: Path, columns: list[str], rows: list[list]) -> None:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--params", help="CircuitParams JSON file")
    parser.add_argument("--ec", type=float, help="charging energy, GHz")
    parser.add_argument("--ejs1", type=float, help="first-harmonic energy, GHz (signed)")
    parser.add_argument("--ejs2", type=float, help="second-harmonic energy, GHz")
    parser.add_argument("--ratio", type=float, help="E_JS2/E_JS1; sets ejs1 = ejs2/ratio")
    parser.add_argument("--d", type=float, help="junction asymmetry for both harmonics")
    parser.add_argument("--d1", type=float)
    parser.add_argument("--d2", type=float)
    parser.add_argument("--dphi", type=float, help="flux offset from frustration, Phi0")
    parser.add_argument("--ng", type=float, help="offset charge, Cooper pairs")
    parser.add_argument(
        "--n-trunc", type=int, default=0,
        help="basis halfwidth; 0 selects automatic truncation convergence",
    )


def _add_noise_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--noise", help="NoiseSpec JSON file")
    parser.add_argument("--a-phi", type=float, help="1/f flux-noise amplitude, Phi0")
    parser.add_argument("--a-ng", type=float, help="1/f charge-noise amplitude, Cooper pairs")
    parser.add_argument("--q-cap", type=float, help="dielectric quality factor")
    parser.add_argument("--temperature", type=float, help="temperature, K")


def resolve_params(args) -> CircuitParams:
    """JSON file -> defaults -> flag overrides, flags winning."""
    data: dict = {}
    if args.params:
        data = json.loads(Path(args.params).read_text())
        CircuitParams.from_dict(data)  # validate schema early
    ec = args.ec if args.ec is not None else data.get("ec", _PARAM_DEFAULTS["ec"])
    ejs2 = args.ejs2 if args.ejs2 is not None else data.get("ejs2", _PARAM_DEFAULTS["ejs2"])
    if args.ejs1 is not None and args.ratio is not None:
        raise Cos2PhiError("--ejs1 and --ratio are mutually exclusive")
    if args.ejs1 is not None:
        ejs1 = args.ejs1
    elif args.ratio is not None:
        ejs1 = ejs2 / args.ratio
    elif "ejs1" in data:
        ejs1 = data["ejs1"]
    else:
        ejs1 = ejs2 / _PARAM_DEFAULTS["ratio"]
    d_common = args.d
    d1 = args.d1 if args.d1 is not None else (
        d_common if d_common is not None else data.get("d1", _PARAM_DEFAULTS["d"])
    )
    d2 = args.d2 if args.d2 is not None else (
        d_common if d_common is not None else data.get("d2", _PARAM_DEFAULTS["d"])
    )
    dphi = args.dphi if args.dphi is not None else data.get("dphi", _PARAM_DEFAULTS["dphi"])
    ng = args.ng if args.ng is not None else data.get("ng", _PARAM_DEFAULTS["ng"])
    n_trunc = args.n_trunc if args.n_trunc else data.get("n_trunc", 0)
    params = CircuitParams(
        ec=ec, ejs1=ejs1, ejs2=ejs2, d1=d1, d2=d2, dphi=dphi, ng=ng,
        n_trunc=n_trunc if n_trunc else 40,
    )
    if not n_trunc:
        params = params.replace(n_trunc=converge_truncation(params))
    return params


def resolve_noise(args) -> NoiseSpec:
    data: dict = {}
    if getattr(args, "noise", None):
        data = json.loads(Path(args.noise).read_text())
        NoiseSpec.from_dict(data)
    spec = NoiseSpec.from_dict(data) if data else NoiseSpec()
    overrides = {}
    for flag, field in (("a_phi", "a_phi"), ("a_ng", "a_ng"), ("q_cap", "q_cap"),
                        ("temperature", "temperature")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return spec.replace(**overrides) if overrides else spec


def _maybe_plot(args, csv_path: Path, tag: str) -> None:
    if getattr(args, "plot", False):
        script = emit_plot_script(csv_path, tag)
        csv_path.with_suffix(".py").write_text(script)


def _finish(payload: dict, args, config: RunConfig) -> int:
    payload = dict(payload)
    payload["config"] = config.to_dict()
    _emit(_json_text(payload), args.output if args.format == "json" else None)
    flags = payload.get("flags", [])
    if "degenerate" in flags and not getattr(args, "allow_degenerate", False):
        print("degenerate qubit transition flagged (use --allow-degenerate to accept)",
              file=sys.stderr)
        return DEGENERATE_EXIT
    return 0


def _cmd_spectrum(args) -> int:
    params = resolve_params(args)
    k = args.levels
    config = RunConfig("spectrum", params.to_dict(), None, args.output, args.format, args.plot)
    if args.sweep:
        values = (
            np.geomspace(args.start, args.stop, args.points)
            if args.log
            else np.linspace(args.start, args.stop, args.points)
        )
        columns = ["x"] + [f"e{m}_ghz" for m in range(k)]
        rows = []
        for x in values:
            energies = lowest_energies(params.replace(**{args.sweep: float(x)}), k=k)
            rows.append([float(x)] + [float(e) for e in energies])
        out = Path(args.output or f"spectrum_{args.sweep}.csv")
        _write_csv(out, columns, rows)
        _maybe_plot(args, out, "spectrum")
        return 0
    spec = spectrum_of(params, k=k)
    payload = {
        "energies_ghz": [float(e) for e in spec.energies],
        "params_hash": spec.params_hash,
        "flags": [],
    }
    return _finish(payload, args, config)


def _cmd_elements(args) -> int:
    params = resolve_params(args)
    config = RunConfig("elements", params.to_dict(), None, args.output, args.format, args.plot)
    if args.sweep:
        values = np.geomspace(args.start, args.stop, args.points)
        columns = ["x", "m_n", "m_1phi", "m_2phi", "f01_ghz"]
        rows = []
        for x in values:
            report = matrix_elements(params.replace(**{args.sweep: float(x)}))
            rows.append([float(x), report.m_n, report.m_1phi, report.m_2phi, report.f01_ghz])
        out = Path(args.output or f"elements_{args.sweep}.csv")
        _write_csv(out, columns, rows)
        _maybe_plot(args, out, "elements")
        return 0
    report = matrix_elements(params)
    w_even, w_odd = parity_weights(params, 0)
    s_even, s_odd = symmetry_metric(params, 0)
    payload = {
        "m_n": report.m_n,
        "m_1phi": report.m_1phi,
        "m_2phi": report.m_2phi,
        "components": {k: [v.real, v.imag] for k, v in report.components.items()},
        "f01_ghz": report.f01_ghz,
        "ground_parity_weights": [w_even, w_odd],
        "ground_symmetry_metric": [s_even, s_odd],
        "flags": ["degenerate"] if report.degenerate else [],
    }
    return _finish(payload, args, config)


def _cmd_coherence(args) -> int:
    params = resolve_params(args)
    noise = resolve_noise(args)
    thermal = args.thermal_levels if args.thermal_levels > 0 else None
    config = RunConfig(
        "coherence", params.to_dict(), noise.to_dict(), args.output, args.format, args.plot
    )
    if args.sweep_dphi:
        values = np.geomspace(args.start, args.stop, args.points)
        columns = ["dphi", "tphi_s", "tphi_charge_s", "tphi_flux_s",
                   "t1_s", "t1_flux_s", "t1_dielectric_s", "t2_s", "f01_ghz"]
        rows = []
        for dphi in values:
            rep = coherence_report(params.replace(dphi=float(dphi)), noise, thermal_levels=thermal)
            rows.append([
                float(dphi), rep.tphi_total, rep.tphi_charge, rep.tphi_flux,
                rep.t1_total, rep.t1_flux, rep.t1_dielectric, rep.t2, rep.f01_ghz,
            ])
        out = Path(args.output or "coherence_dphi.csv")
        _write_csv(out, columns, rows)
        _maybe_plot(args, out, "fig8")
        return 0
    report = coherence_report(params, noise, thermal_levels=thermal)
    payload = report.to_dict()
    return _finish(payload, args, config)


def _cmd_thermal(args) -> int:
    params = resolve_params(args)
    noise = resolve_noise(args)
    config = RunConfig("thermal", params.to_dict(), noise.to_dict(), args.output, "json", False)
    rates = build_rate_matrix(params, noise, n_levels=args.levels)
    gamma1, gamma2 = effective_qubit_rates(rates)
    payload = {
        "n_levels": rates.n_levels,
        "gamma_per_s": [[float(x) for x in row] for row in rates.gamma],
        "gamma1_eff_per_s": gamma1,
        "gamma2_eff_per_s": gamma2,
        "flags": [],
    }
    return _finish(payload, args, config)


def _cmd_semiclassics(args) -> int:
    params = resolve_params(args)
    config = RunConfig("semiclassics", params.to_dict(), None, args.output, "json", args.plot)
    model = TwoLevelModel.from_params(params)
    values = np.geomspace(args.start, args.stop, args.points)
    columns = ["dphi", "f01_model_ghz"]
    rows = [[float(x), two_level_f01(model, float(x))] for x in values]
    out = Path(args.output or "semiclassics.csv")
    _write_csv(out, columns, rows)
    _maybe_plot(args, out, "semiclassics")
    payload = {
        "kappa_ghz": kappa(params.ec, params.ejs2, params.ng),
        "alpha_ghz_per_phi0": model.alpha,
        "dphi_max": sweetness(params),
        "curve_csv": str(out),
        "flags": [],
    }
    sys.stdout.write(_json_text({**payload, "config": config.to_dict()}))
    return 0


def _cmd_cpr(args) -> int:
    if args.model == "table":
        payload = {"rows": cpr_mod.implementation_table(), "flags": []}
        _emit(_json_text(payload), args.output)
        return 0
    if args.model == "transparent":
        series = cpr_mod.transparent_junction_harmonics(args.tau, args.order)
    elif args.model == "rhombus":
        series = cpr_mod.rhombus_harmonics(args.eta, args.order)
    elif args.model == "kite":
        ratio = cpr_mod.kite_small_inductance_ratio(args.ej, args.el)
        _emit(_json_text({"ratio": ratio, "model": "kite", "flags": []}), args.output)
        return 0
    elif args.model == "flowermon":
        ratio = cpr_mod.flowermon_ratio(math.radians(args.theta_deg), args.ek_over_ej)
        _emit(_json_text({"ratio": ratio, "model": "flowermon", "flags": []}), args.output)
        return 0
    else:  # pragma: no cover - argparse restricts choices
        raise Cos2PhiError(f"unknown model {args.model}")
    csv_out = Path(args.output or f"cpr_{args.model}.csv")
    _write_csv(
        csv_out, ["m", "coefficient"],
        [[m, float(c)] for m, c in enumerate(series.coefficients)],
    )
    sys.stdout.write(_json_text({
        "model": series.model_tag,
        "ratio": series.second_to_first_ratio,
        "coefficients_csv": str(csv_out),
        "flags": [],
    }))
    return 0


def _grid_from_args(args) -> SweepGrid:
    if args.full:
        shape = (401, 401, 101)
    else:
        shape = (args.ejs2_points, args.ec_points, args.dphi_points)
    return SweepGrid(
        ejs2_axis=log_axis(args.ejs2_min, args.ejs2_max, shape[0]),
        ec_axis=log_axis(args.ec_min, args.ec_max, shape[1]),
        dphi_axis=log_axis(args.dphi_min, args.dphi_max, shape[2]),
        ratio=args.ratio,
        d=args.d,
        ng=args.ng,
        noise=resolve_noise(args),
        thermal_levels=args.thermal_levels if args.thermal_levels > 0 else None,
    )


def _cmd_sweep(args) -> int:
    grid = _grid_from_args(args)
    out_dir = Path(args.output_dir)
    result = run_sweep(
        grid, output_dir=out_dir, workers=args.workers,
        chunk_size=args.chunk_size, resume=args.resume,
    )
    final = out_dir / f"{result.config_hash}.csv"
    result.to_csv(final)
    optima = result.cell_optima()
    opt_rows = [
        [k[0], k[1], row["t2_s"], row["limiting"], row["dphi"]]
        for k, row in sorted(optima.items())
    ]
    opt_csv = out_dir / f"{result.config_hash}.optima.csv"
    _write_csv(opt_csv, ["ejs2_ghz", "ec_ghz", "t2_s", "limiting", "optimal_dphi"], opt_rows)
    summary = {
        "config_hash": result.config_hash,
        "points": len(result.rows),
        "best": result.best(),
        "boundary_fraction": result.boundary_fraction(),
        "rows_csv": str(final),
        "optima_csv": str(opt_csv),
        "flags": [],
    }
    sys.stdout.write(_json_text(summary))
    if args.plot:
        fig9_csv = out_dir / f"{result.config_hash}.fig9.csv"
        _write_csv(
            fig9_csv, ["ejs2_ghz", "ec_ghz", "t2_s", "limiting"],
            [[k[0], k[1], row["t2_s"], row["limiting"]] for k, row in sorted(optima.items())],
        )
        fig9_csv.with_suffix(".py").write_text(emit_plot_script(fig9_csv, "fig9"))
    return 0


def _cmd_optimize(args) -> int:
    bounds = {
        "ejs2": (args.ejs2_min, args.ejs2_max),
        "ec": (args.ec_min, args.ec_max),
        "dphi": (args.dphi_min, args.dphi_max),
    }
    params, best_row = optimize_t2(
        bounds, ratio=args.ratio, d=args.d, ng=args.ng,
        noise=resolve_noise(args),
        thermal_levels=args.thermal_levels if args.thermal_levels > 0 else None,
        workers=args.workers,
    )
    payload = {"best_params": params.to_dict(), "best_row": best_row, "flags": []}
    _emit(_json_text(payload), args.output)
    return 0


def _cmd_figures(args) -> int:
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.figure == "fig4":
        return _figures_fig4(args, out_dir)
    if args.figure == "fig8":
        return _figures_fig8(args, out_dir)
    if args.figure == "fig9":
        return _figures_fig9(args, out_dir)
    raise Cos2PhiError(f"unknown figure {args.figure}")  # pragma: no cover


def _figures_fig4(args, out_dir: Path) -> int:
    ec = 0.5
    for rel in (2, 20, 150):
        ejs2 = rel * ec
        pure = CircuitParams.from_ratio(ec=ec, ejs2=ejs2, ratio=args.ratio, d=0.0, dphi=0.0)
        pure = pure.replace(n_trunc=converge_truncation(pure))
        norm = float(np.diff(lowest_energies(pure.replace(ng=0.0), k=2))[0])
        for tag, d, dphi in (("pure", 0.0, 0.0), ("interference", 0.01, 1e-3)):
            params = CircuitParams.from_ratio(
                ec=ec, ejs2=ejs2, ratio=args.ratio, d=d, dphi=dphi, n_trunc=pure.n_trunc
            )
            rows = []
            for ng in np.linspace(0.0, 1.0, args.points):
                energies = lowest_energies(params.replace(ng=float(ng)), k=3)
                e_rel = energies - energies[0]
                rows.append(
                    [float(ng)] + [float(e) for e in energies]
                    + [float(e / norm) for e in e_rel]
                )
            csv_path = out_dir / f"fig4_{tag}_r{rel}.csv"
            _write_csv(
                csv_path,
                ["ng", "e0_ghz", "e1_ghz", "e2_ghz", "e0_norm", "e1_norm", "e2_norm"],
                rows,
            )
            if args.plot:
                csv_path.with_suffix(".py").write_text(emit_plot_script(csv_path, "fig4"))
    return 0


def _figures_fig8(args, out_dir: Path) -> int:
    ec = 0.5
    ejs2 = args.ejs2_over_ec * ec
    params = CircuitParams.from_ratio(ec=ec, ejs2=ejs2, ratio=args.ratio, d=0.01, ng=0.25)
    params = params.replace(n_trunc=converge_truncation(params))
    noise = resolve_noise(args)
    thermal = args.thermal_levels if args.thermal_levels > 0 else None
    columns = ["dphi", "tphi_s", "tphi_charge_s", "tphi_flux_s",
               "t1_s", "t1_flux_s", "t1_dielectric_s", "t2_s", "f01_ghz"]
    rows = []
    for dphi in np.geomspace(1e-6, 1e-2, args.points):
        rep = coherence_report(params.replace(dphi=float(dphi)), noise, thermal_levels=thermal)
        rows.append([
            float(dphi), rep.tphi_total, rep.tphi_charge, rep.tphi_flux,
            rep.t1_total, rep.t1_flux, rep.t1_dielectric, rep.t2, rep.f01_ghz,
        ])
    csv_path = out_dir / f"fig8_ratio{args.ejs2_over_ec:g}.csv"
    _write_csv(csv_path, columns, rows)
    if args.plot:
        csv_path.with_suffix(".py").write_text(emit_plot_script(csv_path, "fig8"))
    return 0


def _figures_fig9(args, out_dir: Path) -> int:
    grid = default_grid(
        ratio=args.ratio,
        shape=(args.ejs2_points, args.ec_points, args.dphi_points),
    )
    result = run_sweep(grid, output_dir=out_dir, workers=args.workers)
    optima = result.cell_optima()
    csv_path = out_dir / f"fig9_ratio{args.ratio:g}.csv"
    _write_csv(
        csv_path, ["ejs2_ghz", "ec_ghz", "t2_s", "limiting"],
        [[k[0], k[1], row["t2_s"], row["limiting"]] for k, row in sorted(optima.items())],
    )
    if args.plot:
        csv_path.with_suffix(".py").write_text(emit_plot_script(csv_path, "fig9"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cos2phi",
        description="Numerical laboratory for interference-based cos(2phi) qubits",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, noise=False):
        _add_param_flags(p)
        if noise:
            _add_noise_flags(p)
        p.add_argument("--output", help="output file (default: stdout for JSON)")
        p.add_argument("--format", choices=("csv", "json"), default="json")
        p.add_argument("--plot", action="store_true", help="emit a plot script next to CSV data")
        p.add_argument("--allow-degenerate", action="store_true")

    p = sub.add_parser("spectrum", help="eigenenergies, optionally swept over ng or dphi")
    common(p)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--sweep", choices=("ng", "dphi"))
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--log", action="store_true", help="log-spaced sweep values")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("elements", help="decay figures of merit and parity diagnostics")
    common(p)
    p.add_argument("--sweep", choices=("dphi", "d1"))
    p.add_argument("--start", type=float, default=1e-6)
    p.add_argument("--stop", type=float, default=1e-2)
    p.add_argument("--points", type=int, default=41)
    p.set_defaults(func=_cmd_elements)

    p = sub.add_parser("coherence", help="T1/Tphi/T2 report, optionally swept over dphi")
    common(p, noise=True)
    p.add_argument("--thermal-levels", type=int, default=0,
                   help="enable multilevel thermal rates with this many levels (0 = off)")
    p.add_argument("--sweep-dphi", action="store_true")
    p.add_argument("--start", type=float, default=1e-6)
    p.add_argument("--stop", type=float, default=1e-2)
    p.add_argument("--points", type=int, default=31)
    p.set_defaults(func=_cmd_coherence)

    p = sub.add_parser("thermal", help="multilevel rate matrix and effective qubit rates")
    common(p, noise=True)
    p.add_argument("--levels", type=int, default=4)
    p.set_defaults(func=_cmd_thermal)

    p = sub.add_parser("semiclassics", help="two-level flux model: kappa, alpha, sweetness")
    common(p)
    p.add_argument("--start", type=float, default=1e-6)
    p.add_argument("--stop", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=61)
    p.set_defaults(func=_cmd_semiclassics)

    p = sub.add_parser("cpr", help="harmonic content of implementation models")
    p.add_argument("--model", choices=("transparent", "rhombus", "kite", "flowermon", "table"),
                   required=True)
    p.add_argument("--tau", type=float, default=0.9)
    p.add_argument("--eta", type=float, default=0.0)
    p.add_argument("--ej", type=float, default=0.1)
    p.add_argument("--el", type=float, default=1.0)
    p.add_argument("--theta-deg", type=float, default=44.8)
    p.add_argument("--ek-over-ej", type=float, default=0.1)
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_cpr)

    p = sub.add_parser("sweep", help="grid sweep over (E_JS2, E_C, dPhi)")
    _add_noise_flags(p)
    p.add_argument("--ratio", type=float, default=-0.1)
    p.add_argument("--d", type=float, default=0.01)
    p.add_argument("--ng", type=float, default=0.25)
    p.add_argument("--ejs2-min", type=float, default=5e-3)
    p.add_argument("--ejs2-max", type=float, default=50.0)
    p.add_argument("--ejs2-points", type=int, default=21)
    p.add_argument("--ec-min", type=float, default=0.02)
    p.add_argument("--ec-max", type=float, default=20.0)
    p.add_argument("--ec-points", type=int, default=21)
    p.add_argument("--dphi-min", type=float, default=1e-5)
    p.add_argument("--dphi-max", type=float, default=9e-3)
    p.add_argument("--dphi-points", type=int, default=11)
    p.add_argument("--thermal-levels", type=int, default=4)
    p.add_argument("--full", action="store_true",
                   help="401 x 401 x 101 grid (hours of compute; default is reduced)")
    p.add_argument("--workers", type=int, default=None,
                   help="parallel workers (default: COS2PHI_WORKERS env or 1)")
    p.add_argument("--chunk-size", type=int, default=256)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("optimize", help="maximize T2 inside a parameter box")
    _add_noise_flags(p)
    p.add_argument("--ratio", type=float, default=-0.1)
    p.add_argument("--d", type=float, default=0.01)
    p.add_argument("--ng", type=float, default=0.25)
    p.add_argument("--ejs2-min", type=float, default=0.5)
    p.add_argument("--ejs2-max", type=float, default=50.0)
    p.add_argument("--ec-min", type=float, default=0.02)
    p.add_argument("--ec-max", type=float, default=20.0)
    p.add_argument("--dphi-min", type=float, default=1e-5)
    p.add_argument("--dphi-max", type=float, default=9e-3)
    p.add_argument("--thermal-levels", type=int, default=4)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("figures", help="emit data (and plot scripts) for the survey figures")
    _add_noise_flags(p)
    p.add_argument("figure", choices=("fig4", "fig8", "fig9"))
    p.add_argument("--ratio", type=float, default=-0.1)
    p.add_argument("--ejs2-over-ec", type=float, default=20.0)
    p.add_argument("--points", type=int, default=51)
    p.add_argument("--ejs2-points", type=int, default=21)
    p.add_argument("--ec-points", type=int, default=21)
    p.add_argument("--dphi-points", type=int, default=11)
    p.add_argument("--thermal-levels", type=int, default=4)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output-dir", default="figures")
    p.add_argument("--plot", action="store_true")
    p.set_defaults(func=_cmd_figures)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Cos2PhiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

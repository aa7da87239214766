"""Parameter-space sweeps over (E_JS2, E_C, dPhi) and T2 maximization.

Grid points are independent work items evaluated in a deterministic order;
aggregation is order-independent, so serial and parallel runs produce the
same rows.  Long sweeps checkpoint in chunk files named
``<config-hash>.part<k>.csv`` so an interrupted run can resume without
recomputing finished chunks.
"""

from __future__ import annotations

import csv
import hashlib
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .circuit import CircuitParams
from .errors import Cos2PhiError, ConvergenceError
from .noise import NoiseSpec, classify_limiting, coherence_report
from .spectrum import converge_truncation

__all__ = [
    "SweepGrid",
    "SweepResult",
    "log_axis",
    "default_grid",
    "run_sweep",
    "optimize_t2",
    "classify_limiting_mechanism",
]

COLUMNS = (
    "ejs2_ghz",
    "ec_ghz",
    "dphi",
    "f01_ghz",
    "t1_s",
    "tphi_s",
    "t2_s",
    "tphi_charge_s",
    "tphi_flux_s",
    "limiting",
    "flags",
)

# Realistic-parameter envelope: smallest fabricable charging energy and the
# smallest flux offset distinguishable from flux noise.
EC_MIN_GHZ = 1e-3
DPHI_MIN = 1e-5


def log_axis(lo: float, hi: float, num: int) -> tuple:
    """Strictly increasing log-spaced axis as a hashable tuple."""
    if not (lo > 0 and hi > lo and num >= 2):
        raise ValueError("need 0 < lo < hi and num >= 2")
    return tuple(float(x) for x in np.geomspace(lo, hi, num))


@dataclass(frozen=True)
class SweepGrid:
    """Axes plus the fixed knobs shared by every grid point."""

    ejs2_axis: tuple
    ec_axis: tuple
    dphi_axis: tuple
    ratio: float = -0.1
    d: float = 0.01
    ng: float = 0.25
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    thermal_levels: Optional[int] = 4
    enforce_envelope: bool = True

    def __post_init__(self):
        for name in ("ejs2_axis", "ec_axis", "dphi_axis"):
            axis = tuple(float(x) for x in getattr(self, name))
            if len(axis) < 1 or any(b <= a for a, b in zip(axis, axis[1:])):
                raise ValueError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, axis)
        if self.enforce_envelope:
            if self.ec_axis[0] < EC_MIN_GHZ:
                raise ValueError(
                    f"ec axis extends below the {EC_MIN_GHZ} GHz fabrication envelope"
                )
            if self.dphi_axis[0] < DPHI_MIN:
                raise ValueError(
                    f"dphi axis extends below the {DPHI_MIN} flux-resolution envelope"
                )

    def config_dict(self) -> dict:
        return {
            "ejs2_axis": list(self.ejs2_axis),
            "ec_axis": list(self.ec_axis),
            "dphi_axis": list(self.dphi_axis),
            "ratio": self.ratio,
            "d": self.d,
            "ng": self.ng,
            "noise": self.noise.to_dict(),
            "thermal_levels": self.thermal_levels,
            "columns": list(COLUMNS),
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.config_dict(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def points(self) -> list[tuple[float, float, float]]:
        return list(itertools.product(self.ejs2_axis, self.ec_axis, self.dphi_axis))


def default_grid(ratio: float = -0.1, shape: tuple[int, int, int] = (21, 21, 11)) -> SweepGrid:
    """Reduced-resolution version of the exhaustive study grid.

    The E_C axis reaches down to the 1 MHz fabrication floor: the large-ratio
    optima live below 20 MHz, so clipping the axis higher would miss them.
    """
    return SweepGrid(
        ejs2_axis=log_axis(5e-3, 50.0, shape[0]),
        ec_axis=log_axis(EC_MIN_GHZ, 20.0, shape[1]),
        dphi_axis=log_axis(1e-5, 9e-3, shape[2]),
        ratio=ratio,
    )


def _truncation_table(grid: SweepGrid) -> dict[float, int]:
    """Converged basis halfwidth per E_JS2/E_C bucket.

    Truncation depends on the potential-to-kinetic ratio, so one convergence
    run per rounded log-ratio bucket covers the whole grid; the table is built
    serially up front so parallel workers share identical truncations.
    """
    table: dict[float, int] = {}
    for ejs2 in grid.ejs2_axis:
        for ec in grid.ec_axis:
            key = round(math.log10(ejs2 / ec), 1)
            if key in table:
                continue
            probe = CircuitParams.from_ratio(
                ec=ec, ejs2=ejs2, ratio=grid.ratio, d=grid.d,
                dphi=grid.dphi_axis[0], ng=grid.ng,
            )
            try:
                table[key] = converge_truncation(probe)
            except ConvergenceError:
                table[key] = 400
    return table


def _point_row(task: tuple) -> dict:
    """Evaluate one grid point; never raises (failures become flagged rows)."""
    ejs2, ec, dphi, ratio, d, ng, noise_dict, thermal_levels, n_trunc = task
    row = {
        "ejs2_ghz": ejs2,
        "ec_ghz": ec,
        "dphi": dphi,
        "f01_ghz": math.nan,
        "t1_s": math.nan,
        "tphi_s": math.nan,
        "t2_s": math.nan,
        "tphi_charge_s": math.nan,
        "tphi_flux_s": math.nan,
        "limiting": "",
        "flags": "",
    }
    try:
        params = CircuitParams.from_ratio(
            ec=ec, ejs2=ejs2, ratio=ratio, d=d, dphi=dphi, ng=ng, n_trunc=n_trunc
        )
        report = coherence_report(
            params, NoiseSpec.from_dict(noise_dict), thermal_levels=thermal_levels
        )
    except Cos2PhiError as exc:
        row["flags"] = f"error:{type(exc).__name__}"
        return row
    row.update(
        f01_ghz=report.f01_ghz,
        t1_s=report.t1_total,
        tphi_s=report.tphi_total,
        t2_s=report.t2,
        tphi_charge_s=report.tphi_charge,
        tphi_flux_s=report.tphi_flux,
        limiting=report.limiting_channel,
        flags="|".join(report.flags),
    )
    return row


@dataclass
class SweepResult:
    """All rows of a sweep plus the identifying config hash."""

    grid: SweepGrid
    rows: list[dict]
    config_hash: str

    def cell_optima(self) -> dict[tuple[float, float], dict]:
        """Best-T2 row per (E_JS2, E_C) cell; ties resolved to smallest dPhi."""
        best: dict[tuple[float, float], dict] = {}
        for row in self.rows:
            t2 = row["t2_s"]
            if not (isinstance(t2, float) and math.isfinite(t2)):
                continue
            key = (row["ejs2_ghz"], row["ec_ghz"])
            cur = best.get(key)
            if cur is None or t2 > cur["t2_s"] or (
                t2 == cur["t2_s"] and row["dphi"] < cur["dphi"]
            ):
                best[key] = row
        return best

    def best(self) -> dict:
        """Globally best row; ties resolved to smallest dPhi then smallest E_JS2."""
        optima = self.cell_optima()
        if not optima:
            raise Cos2PhiError("sweep produced no finite T2 values")
        return max(
            optima.values(),
            key=lambda r: (r["t2_s"], -r["dphi"], -r["ejs2_ghz"]),
        )

    def boundary_fraction(self) -> float:
        """Fraction of cells whose optimal dPhi sits at an axis boundary."""
        axis = self.grid.dphi_axis
        optima = self.cell_optima()
        if not optima:
            return math.nan
        edges = {axis[0], axis[-1]}
        at_edge = sum(1 for row in optima.values() if row["dphi"] in edges)
        return at_edge / len(optima)

    def to_csv(self, path: str | Path) -> None:
        _write_rows(Path(path), self.rows)


def _format_value(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(path: Path, rows: Iterable[dict]) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow([_format_value(row[col]) for col in COLUMNS])


def _read_rows(path: Path) -> list[dict]:
    rows = []
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        for record in reader:
            row = dict(record)
            for col in COLUMNS:
                if col not in ("limiting", "flags"):
                    row[col] = float(row[col])
            rows.append(row)
    return rows


def run_sweep(
    grid: SweepGrid,
    output_dir: Optional[str | Path] = None,
    workers: Optional[int] = None,
    chunk_size: int = 256,
    resume: bool = False,
) -> SweepResult:
    """Evaluate every grid point, optionally checkpointing chunk files.

    Per-point failures never abort the sweep; they are recorded as flagged
    rows with NaN values.  With ``resume=True`` existing chunk files matching
    the grid's config hash are loaded instead of recomputed.
    """
    cfg_hash = grid.config_hash()
    out = Path(output_dir) if output_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        sidecar = out / f"{cfg_hash}.config.json"
        sidecar.write_text(json.dumps(grid.config_dict(), sort_keys=True, indent=2))

    trunc = _truncation_table(grid)
    noise_dict = grid.noise.to_dict()
    tasks = [
        (
            ejs2,
            ec,
            dphi,
            grid.ratio,
            grid.d,
            grid.ng,
            noise_dict,
            grid.thermal_levels,
            trunc[round(math.log10(ejs2 / ec), 1)],
        )
        for ejs2, ec, dphi in grid.points()
    ]
    chunks = [tasks[i : i + chunk_size] for i in range(0, len(tasks), chunk_size)]

    if workers is None:
        workers = int(os.environ.get("COS2PHI_WORKERS", "1"))

    rows: list[dict] = []
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for k, chunk in enumerate(chunks):
            part = out / f"{cfg_hash}.part{k}.csv" if out is not None else None
            if resume and part is not None and part.exists():
                rows.extend(_read_rows(part))
                continue
            if executor is not None:
                chunk_rows = list(executor.map(_point_row, chunk, chunksize=8))
            else:
                chunk_rows = [_point_row(task) for task in chunk]
            if part is not None:
                _write_rows(part, chunk_rows)
            rows.extend(chunk_rows)
    finally:
        if executor is not None:
            executor.shutdown()
    return SweepResult(grid=grid, rows=rows, config_hash=cfg_hash)


def classify_limiting_mechanism(report, params) -> tuple[str, tuple]:
    """Fig.-9-style classification; see :func:`cos2phi.noise.classify_limiting`."""
    return classify_limiting(report.tphi_flux, report.tphi_charge, params.ejs2)


def optimize_t2(
    bounds: dict,
    ratio: float = -0.1,
    d: float = 0.01,
    ng: float = 0.25,
    noise: Optional[NoiseSpec] = None,
    thermal_levels: Optional[int] = 4,
    coarse_shape: tuple[int, int, int] = (11, 11, 7),
    refine_rounds: int = 2,
    refine_shape: tuple[int, int, int] = (5, 5, 5),
    workers: Optional[int] = None,
) -> tuple[CircuitParams, dict]:
    """Maximize T2 over log-space boxes for (ejs2, ec, dphi).

    ``bounds`` maps each of 'ejs2', 'ec', 'dphi' to (lo, hi) in GHz / Phi0
    units.  A coarse grid search is followed by local log-space refinement
    around the running best cell; the result can only improve on the coarse
    maximum.  Cells excluded by the temperature constraint (2 E_JS2 < 1 GHz)
    are skipped; if the constraint empties the box, that is an error.
    """
    noise = noise or NoiseSpec()
    for key in ("ejs2", "ec", "dphi"):
        if key not in bounds:
            raise ValueError(f"bounds missing {key!r}")
    if 2.0 * bounds["ejs2"][1] < 1.0:
        raise Cos2PhiError(
            "temperature constraint 2*E_JS2 >= 1 GHz excludes the entire search box"
        )

    def search(box: dict, shape: tuple[int, int, int]) -> tuple[Optional[dict], SweepGrid]:
        grid = SweepGrid(
            ejs2_axis=log_axis(*box["ejs2"], shape[0]),
            ec_axis=log_axis(*box["ec"], shape[1]),
            dphi_axis=log_axis(*box["dphi"], shape[2]),
            ratio=ratio,
            d=d,
            ng=ng,
            noise=noise,
            thermal_levels=thermal_levels,
            enforce_envelope=False,
        )
        result = run_sweep(grid, workers=workers)
        feasible = [
            r
            for r in result.rows
            if 2.0 * r["ejs2_ghz"] >= 1.0
            and isinstance(r["t2_s"], float)
            and math.isfinite(r["t2_s"])
        ]
        if not feasible:
            return None, grid
        best = max(feasible, key=lambda r: (r["t2_s"], -r["dphi"], -r["ejs2_ghz"]))
        return best, grid

    best, grid = search(bounds, coarse_shape)
    if best is None:
        raise Cos2PhiError("no feasible grid point inside the search box")

    for _ in range(refine_rounds):
        new_box = {}
        for key, axis in (
            ("ejs2", grid.ejs2_axis),
            ("ec", grid.ec_axis),
            ("dphi", grid.dphi_axis),
        ):
            center = best[{"ejs2": "ejs2_ghz", "ec": "ec_ghz", "dphi": "dphi"}[key]]
            idx = min(range(len(axis)), key=lambda i: abs(axis[i] - center))
            lo = axis[max(idx - 1, 0)]
            hi = axis[min(idx + 1, len(axis) - 1)]
            if hi <= lo:
                lo, hi = lo * 0.99, lo * 1.01
            new_box[key] = (lo, hi)
        candidate, grid = search(new_box, refine_shape)
        if candidate is not None and candidate["t2_s"] > best["t2_s"]:
            best = candidate

    params = CircuitParams.from_ratio(
        ec=best["ec_ghz"],
        ejs2=best["ejs2_ghz"],
        ratio=ratio,
        d=d,
        dphi=best["dphi"],
        ng=ng,
    )
    params = params.replace(n_trunc=converge_truncation(params))
    return params, best

"""Parameter-grid engines producing the topological phase diagrams.

Cells are pure functions of (config, axis values); failures are contained
per cell with an explicit error note so that sweeps crossing gapless phase
boundaries always complete.  Output documents are deterministic apart from
the timestamp field in meta.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .config import LatticeConfig, config_from_dict
from .dynamics import build_site_graph, steady_state
from .errors import ConfigError
from .topology import chern_bessel, chern_fhs, min_bandgap

PHASE_OBSERVABLES = ("chern_fhs", "chern_analytic_sign", "min_gap", "eta")
DEFAULT_OBSERVABLES = ("chern_analytic_sign", "min_gap", "eta")


@dataclass(frozen=True)
class PhaseDiagramGrid:
    """2-D sweep result: axes, per-cell records, and a reproducibility snapshot."""

    axis1: dict   # {"name": str, "values": [...]}
    axis2: dict
    cells: list   # cells[i][j] dict with keys chern_fhs, chern_analytic_sign,
                  # min_gap, eta, reliable, error
    meta: dict

    def to_dict(self) -> dict:
        return {"axis1": self.axis1, "axis2": self.axis2, "cells": self.cells, "meta": self.meta}

    def write_json(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")

    def write_csv(self, path: str):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["axis1_value", "axis2_value", "chern_fhs",
                             "chern_analytic_sign", "min_gap_mhz", "eta", "reliable"])
            for i, v1 in enumerate(self.axis1["values"]):
                for j, v2 in enumerate(self.axis2["values"]):
                    cell = self.cells[i][j]
                    writer.writerow([
                        repr(float(v1)), repr(float(v2)),
                        "" if cell["chern_fhs"] is None else int(cell["chern_fhs"]),
                        "" if cell["chern_analytic_sign"] is None else int(cell["chern_analytic_sign"]),
                        "" if cell["min_gap"] is None else repr(float(cell["min_gap"])),
                        "" if cell["eta"] is None else repr(float(cell["eta"])),
                        cell["reliable"],
                    ])


def load_grid(path: str) -> PhaseDiagramGrid:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    missing = {"axis1", "axis2", "cells", "meta"} - set(doc)
    if missing:
        raise ConfigError(f"{path}: missing keys {sorted(missing)}")
    return PhaseDiagramGrid(axis1=doc["axis1"], axis2=doc["axis2"],
                            cells=doc["cells"], meta=doc["meta"])


def _empty_cell() -> dict:
    return {"chern_fhs": None, "chern_analytic_sign": None,
            "min_gap": None, "eta": None, "reliable": True, "error": None}


def _eval_cell(cfg: LatticeConfig, observables, options) -> dict:
    """Evaluate one parameter cell; any exception lands in the error note."""
    cell = _empty_cell()

    def attempt(key, fn):
        try:
            cell[key] = fn()
        except Exception as exc:  # record the failure in the cell, never abort the sweep
            cell[key] = None
            cell["reliable"] = False
            if cell["error"] is None:
                cell["error"] = f"{key}: {type(exc).__name__}: {exc}"

    if "chern_analytic_sign" in observables:
        attempt("chern_analytic_sign", lambda: int(chern_bessel(cfg.phi, cfg.f)))
    if "min_gap" in observables:
        attempt("min_gap", lambda: float(min_bandgap(cfg, grid=options["gap_grid"])[0]))
    if "chern_fhs" in observables:
        def run_fhs():
            res = chern_fhs(cfg, grid=options["fhs_grid"])
            if not res.reliable:
                cell["reliable"] = False
            return int(res.value)
        attempt("chern_fhs", run_fhs)
    if "eta" in observables:
        def run_eta():
            res = steady_state(cfg, options["delta_p"], v=options["v"],
                               graph=build_site_graph(cfg))
            return None if res.eta is None else float(res.eta)
        attempt("eta", run_eta)
    return cell


def _cell_worker(payload):
    cfg, observables, options = payload
    return _eval_cell(cfg, observables, options)


def _run_cells(payloads, jobs: int):
    if jobs <= 1:
        return [_cell_worker(p) for p in payloads]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_cell_worker, payloads, chunksize=4))


def _meta(cfg: LatticeConfig, sweep: dict, observables) -> dict:
    return {
        "config": cfg.to_dict(),
        "sweep": {**sweep, "observables": sorted(observables)},
        "code_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _grid(payload_cfgs, axis1, axis2, observables, options, meta, jobs):
    payloads = [(c, tuple(observables), options) for row in payload_cfgs for c in row]
    flat = _run_cells(payloads, jobs)
    n2 = len(axis2["values"])
    cells = [flat[i * n2:(i + 1) * n2] for i in range(len(axis1["values"]))]
    return PhaseDiagramGrid(axis1=axis1, axis2=axis2, cells=cells, meta=meta)


def sweep_phase(
    cfg: LatticeConfig,
    grid_n: int,
    observables=DEFAULT_OBSERVABLES,
    jobs: int = 1,
    delta_p: float = 0.0,
    v: float = 0.0,
    fhs_grid: int = 60,
    gap_grid: int = 48,
) -> PhaseDiagramGrid:
    """Uniform sweep of (phi2, phi3) over [0, 2pi)^2 at fixed phi1."""
    if grid_n < 4:
        raise ConfigError(f"grid_n must be >= 4, got {grid_n}")
    unknown = set(observables) - set(PHASE_OBSERVABLES)
    if unknown:
        raise ConfigError(f"unknown observables {sorted(unknown)}; allowed: {PHASE_OBSERVABLES}")
    values = [2.0 * np.pi * k / grid_n for k in range(grid_n)]
    cfgs = [[replace(cfg, phi=(cfg.phi[0], p2, p3)) for p3 in values] for p2 in values]
    options = {"delta_p": delta_p, "v": v, "fhs_grid": fhs_grid, "gap_grid": gap_grid}
    meta = _meta(cfg, {"type": "phase", "grid_n": grid_n, **options}, observables)
    return _grid(cfgs, {"name": "phi2", "values": values},
                 {"name": "phi3", "values": values}, observables, options, meta, jobs)


def sweep_modulation(
    cfg: LatticeConfig,
    omega_values,
    f_values,
    observables=DEFAULT_OBSERVABLES,
    jobs: int = 1,
    delta_p: float = 0.0,
    v: float = 0.0,
    fhs_grid: int = 60,
    gap_grid: int = 48,
) -> PhaseDiagramGrid:
    """Sweep of (Omega, f) at the fixed modulation phases of cfg."""
    omega_values = [float(x) for x in omega_values]
    f_values = [float(x) for x in f_values]
    if any(not np.isfinite(x) or x <= 0 for x in omega_values):
        raise ConfigError("omega values must be finite and positive")
    if any(not np.isfinite(x) or x < 0 for x in f_values):
        raise ConfigError("f values must be finite and non-negative")
    cfgs = [[replace(cfg, omega=om, f=f, n_max=None) for f in f_values] for om in omega_values]
    options = {"delta_p": delta_p, "v": v, "fhs_grid": fhs_grid, "gap_grid": gap_grid}
    meta = _meta(cfg, {"type": "modulation", **options}, observables)
    return _grid(cfgs, {"name": "omega_mhz", "values": omega_values},
                 {"name": "f", "values": f_values}, observables, options, meta, jobs)


def rerun_cell(grid: PhaseDiagramGrid, i: int, j: int) -> dict:
    """Recompute a single cell from the stored meta (bit-identical to the sweep)."""
    cfg = config_from_dict(grid.meta["config"], source="<meta>")
    sweep = grid.meta["sweep"]
    if sweep["type"] == "phase":
        cfg = replace(cfg, phi=(cfg.phi[0], grid.axis1["values"][i], grid.axis2["values"][j]))
    elif sweep["type"] == "modulation":
        cfg = replace(cfg, omega=grid.axis1["values"][i], f=grid.axis2["values"][j], n_max=None)
    else:
        raise ConfigError(f"unknown sweep type {sweep['type']!r}")
    options = {k: sweep[k] for k in ("delta_p", "v", "fhs_grid", "gap_grid")}
    return _eval_cell(cfg, tuple(sweep["observables"]), options)


def _spectrum_worker(payload):
    cfg, delta_grid, v = payload
    graph = build_site_graph(cfg)
    return [steady_state(cfg, float(dp), v=v, graph=graph).absorption for dp in delta_grid]


@dataclass(frozen=True)
class SpectrumMap:
    """Absorption over an (f, probe-detuning) grid."""

    axis1: dict
    axis2: dict
    values: list  # values[i][j]: absorption at (f_i, delta_j)
    meta: dict

    def to_dict(self) -> dict:
        return {"axis1": self.axis1, "axis2": self.axis2, "values": self.values, "meta": self.meta}

    def write_json(self, path: str):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=1)
            fh.write("\n")


def spectrum_vs_f(
    cfg: LatticeConfig,
    f_values,
    delta_grid,
    v: float = 0.0,
    jobs: int = 1,
) -> SpectrumMap:
    """Absorption spectra as a function of modulation depth."""
    f_values = [float(x) for x in f_values]
    delta_grid = [float(x) for x in delta_grid]
    if not all(np.isfinite(delta_grid)):
        raise ConfigError("delta_p grid must be finite")
    payloads = [(replace(cfg, f=f, n_max=None), delta_grid, v) for f in f_values]
    if jobs <= 1:
        rows = [_spectrum_worker(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_spectrum_worker, payloads))
    meta = _meta(cfg, {"type": "spectrum_vs_f", "v": v}, ())
    return SpectrumMap(axis1={"name": "f", "values": f_values},
                       axis2={"name": "delta_p_mhz", "values": delta_grid},
                       values=rows, meta=meta)

"""Command-line interface: JSON config in, JSON/CSV results out.

Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure.
stdout carries only the requested result for single-value commands;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .config import LatticeConfig, config_from_dict, load_config
from .errors import ConfigError, ParameterError
from .geometry import SPECIAL_POINTS
from .dynamics import absorption_spectrum, steady_state
from .sweep import (
    DEFAULT_OBSERVABLES,
    PHASE_OBSERVABLES,
    spectrum_vs_f,
    sweep_modulation,
    sweep_phase,
)
from .topology import band_polarization, chern_bessel, chern_dp_counting, chern_fhs, chern_small_f, find_dirac_points


def _default_jobs() -> int:
    env = os.environ.get("SRLATTICE_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _add_common(p: argparse.ArgumentParser, axis_overridden: bool = False):
    p.add_argument("--config", help="JSON config file; missing keys take documented defaults")
    if not axis_overridden:  # sweep-mod owns --omega/--f as its grid axes
        p.add_argument("--omega", type=float, help="override coupling strength Omega (MHz)")
        p.add_argument("--f", type=float, help="override modulation depth")
    p.add_argument("--delta", type=float, help="override modulation frequency (MHz)")
    p.add_argument("--phi", help="override phases, comma triple (radians; see --degrees)")
    p.add_argument("--gamma-b", type=float, help="override b-sublattice decay (MHz)")
    p.add_argument("--gamma-a", type=float, help="override a-sublattice decay (MHz)")
    p.add_argument("--n-max", type=int, help="override Floquet truncation order")
    p.add_argument("--n-shells", type=int, help="override site-graph truncation radius")
    p.add_argument("--degrees", action="store_true", help="interpret --phi in degrees")
    p.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="worker processes for sweeps (or SRLATTICE_JOBS)")


def _build_config(args) -> LatticeConfig:
    cfg = load_config(args.config) if args.config else config_from_dict({})
    updates = {}
    for attr, key in [("omega", "omega"), ("f", "f"), ("delta", "delta"),
                      ("gamma_b", "gamma_b"), ("gamma_a", "gamma_a"),
                      ("n_max", "n_max"), ("n_shells", "n_shells")]:
        val = getattr(args, attr, None)
        if val is not None:
            updates[key] = val
    if args.phi is not None:
        try:
            phi = tuple(float(x) for x in args.phi.split(","))
        except ValueError:
            raise ConfigError(f"--phi expects three comma-separated numbers, got {args.phi!r}")
        if len(phi) != 3:
            raise ConfigError(f"--phi expects exactly three phases, got {len(phi)}")
        if args.degrees:
            phi = tuple(math.radians(x) for x in phi)
        updates["phi"] = phi
    return replace(cfg, **updates) if updates else cfg


def _meta(cfg: LatticeConfig) -> dict:
    return {
        "config": cfg.to_dict(),
        "code_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _linspace(lo: float, hi: float, steps: int):
    if steps < 1:
        raise ConfigError(f"steps must be >= 1, got {steps}")
    if steps == 1:
        return [float(lo)]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def cmd_bands(args) -> int:
    cfg = _build_config(args)
    names = [n.strip() for n in args.path.split(",")]
    for n in names:
        if n not in SPECIAL_POINTS:
            raise ConfigError(f"unknown path point {n!r}; known: {sorted(SPECIAL_POINTS)}")
    if len(names) < 2:
        raise ConfigError("--path needs at least two points")
    geo = cfg.geometry
    rows = []
    arc = 0.0
    for a, b in zip(names[:-1], names[1:]):
        ra, rb = geo.special_point(a), geo.special_point(b)
        seg = np.linspace(0.0, 1.0, args.points, endpoint=False)
        pts = ra[None, :] + seg[:, None] * (rb - ra)[None, :]
        energies, sigma_z = band_polarization(cfg, pts)
        seg_len = float(np.linalg.norm(rb - ra))
        for t, r, e, sz in zip(seg, pts, energies, sigma_z):
            rows.append((f"{a}-{b}", arc + t * seg_len, r, e, sz))
        arc += seg_len
    # closing endpoint
    r_end = geo.special_point(names[-1])
    e_end, sz_end = band_polarization(cfg, r_end[None, :])
    rows.append((f"{names[-2]}-{names[-1]}", arc, r_end, e_end[0], sz_end[0]))

    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["segment", "arc", "r_x", "r_y",
                         "e_lower_mhz", "e_upper_mhz", "sz_lower", "sz_upper"])
        for seg, s_arc, r, e, sz in rows:
            writer.writerow([seg, repr(float(s_arc)), repr(float(r[0])), repr(float(r[1])),
                             repr(float(e[0])), repr(float(e[1])),
                             repr(float(sz[0])), repr(float(sz[1]))])
    print(args.out)
    return 0


def cmd_dirac(args) -> int:
    cfg = _build_config(args)
    scan = find_dirac_points(cfg, grid=args.grid)
    doc = {
        "points": [
            {
                "position": [float(x) for x in p.position],
                "frac": [float(x) for x in cfg.geometry.cart_to_frac(p.position) % 1.0],
                "chirality": p.chirality,
                "hz_sign": p.hz_sign,
                "gap_mhz": p.gap,
                "in_plane_residual_mhz": p.in_plane_residual,
            }
            for p in scan.points
        ],
        "unresolved": [list(map(float, r)) for r in scan.unresolved],
        "meta": _meta(cfg),
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print(args.out)
    return 0


def cmd_chern(args) -> int:
    cfg = _build_config(args)
    if args.method == "small-f":
        print(f"{chern_small_f(cfg.phi):+d}")
    elif args.method == "bessel":
        print(f"{chern_bessel(cfg.phi, cfg.f):+d}")
    elif args.method == "fhs":
        res = chern_fhs(cfg, grid=args.grid)
        print(f"{int(res.value):+d} {'reliable' if res.reliable else 'unreliable'}")
    else:  # dp
        res = chern_dp_counting(cfg)
        value = int(res.value) if float(res.value).is_integer() else res.value
        print(f"{value:+} {'reliable' if res.reliable else 'unreliable'}")
    return 0


def cmd_eta(args) -> int:
    cfg = _build_config(args)
    res = steady_state(cfg, args.delta_p, v=args.velocity)
    if res.eta is None:
        print("undefined")
        print("both emission channels empty; eta flagged undefined", file=sys.stderr)
    else:
        value = round(res.eta, 6) + 0.0  # normalize -0.0 at print precision
        print(f"{value:.6f}")
    return 0


def cmd_spectrum(args) -> int:
    cfg = _build_config(args)
    grid = _linspace(args.delta_min, args.delta_max, args.steps)
    values = absorption_spectrum(cfg, grid, v=args.velocity)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["delta_p_mhz", "absorption"])
        for dp, ab in zip(grid, values):
            writer.writerow([repr(float(dp)), repr(float(ab))])
    print(args.out)
    return 0


def _parse_observables(raw: str):
    obs = tuple(x.strip() for x in raw.split(",") if x.strip())
    unknown = set(obs) - set(PHASE_OBSERVABLES)
    if unknown:
        raise ConfigError(f"unknown observables {sorted(unknown)}; allowed: {PHASE_OBSERVABLES}")
    return obs


def cmd_sweep_phase(args) -> int:
    cfg = _build_config(args)
    observables = _parse_observables(args.observables) if args.observables else DEFAULT_OBSERVABLES
    grid = sweep_phase(cfg, args.grid, observables=observables, jobs=args.jobs,
                       delta_p=args.delta_p, fhs_grid=args.fhs_grid)
    grid.write_json(args.out)
    if args.csv:
        grid.write_csv(args.csv)
    print(args.out)
    return 0


def cmd_sweep_mod(args) -> int:
    cfg = _build_config(args)
    observables = _parse_observables(args.observables) if args.observables else DEFAULT_OBSERVABLES
    try:
        omega_values = [float(x) for x in args.omega_list.split(",")]
    except ValueError:
        raise ConfigError(f"--omega expects comma-separated numbers, got {args.omega_list!r}")
    f_values = _linspace(args.f_min, args.f_max, args.f_steps)
    grid = sweep_modulation(cfg, omega_values, f_values, observables=observables,
                            jobs=args.jobs, delta_p=args.delta_p, fhs_grid=args.fhs_grid)
    grid.write_json(args.out)
    if args.csv:
        grid.write_csv(args.csv)
    print(args.out)
    return 0


def cmd_spectrum_vs_f(args) -> int:
    cfg = _build_config(args)
    f_values = _linspace(args.f_min, args.f_max, args.f_steps)
    delta_grid = _linspace(args.delta_min, args.delta_max, args.delta_steps)
    result = spectrum_vs_f(cfg, f_values, delta_grid, v=args.velocity, jobs=args.jobs)
    result.write_json(args.out)
    print(args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srlattice",
        description="Floquet honeycomb superradiance-lattice simulator",
    )
    parser.add_argument("--version", action="version", version=f"srlattice {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bands", help="band energies and sublattice polarization along a zone path")
    _add_common(p)
    p.add_argument("--path", default="K,G,M,Kp", help="comma list of zone points (K, G, M, Kp)")
    p.add_argument("--points", type=int, default=60, help="samples per path segment")
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser("dirac", help="locate and classify the band-touching points")
    _add_common(p)
    p.add_argument("--grid", type=int, default=96, help="scan grid for zero seeds")
    p.add_argument("--out", required=True, help="output JSON file")
    p.set_defaults(func=cmd_dirac)

    p = sub.add_parser("chern", help="Chern number by one of the four methods")
    _add_common(p)
    p.add_argument("--method", required=True, choices=["fhs", "dp", "small-f", "bessel"])
    p.add_argument("--grid", type=int, default=60, help="fhs: plaquette grid size")
    p.set_defaults(func=cmd_chern)

    p = sub.add_parser("eta", help="steady-state superradiance contrast")
    _add_common(p)
    p.add_argument("--delta-p", type=float, default=0.0, help="probe detuning (MHz)")
    p.add_argument("--velocity", type=float, default=0.0, help="x-velocity (MHz per unit wavevector)")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("spectrum", help="absorption vs probe detuning")
    _add_common(p)
    p.add_argument("--delta-min", type=float, required=True)
    p.add_argument("--delta-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--velocity", type=float, default=0.0)
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep-phase", help="(phi2, phi3) phase diagram")
    _add_common(p)
    p.add_argument("--grid", type=int, required=True, help="grid points per phase axis")
    p.add_argument("--observables", help=f"comma list from {PHASE_OBSERVABLES}")
    p.add_argument("--delta-p", type=float, default=0.0)
    p.add_argument("--fhs-grid", type=int, default=60)
    p.add_argument("--out", required=True, help="output JSON file")
    p.add_argument("--csv", help="optional CSV export")
    p.set_defaults(func=cmd_sweep_phase)

    p = sub.add_parser("sweep-mod", help="(Omega, f) phase diagram")
    _add_common(p, axis_overridden=True)
    p.add_argument("--omega", dest="omega_list", required=True, help="comma list of Omega values (MHz)")
    p.add_argument("--f-min", type=float, required=True)
    p.add_argument("--f-max", type=float, required=True)
    p.add_argument("--f-steps", type=int, required=True)
    p.add_argument("--observables", help=f"comma list from {PHASE_OBSERVABLES}")
    p.add_argument("--delta-p", type=float, default=0.0)
    p.add_argument("--fhs-grid", type=int, default=60)
    p.add_argument("--out", required=True, help="output JSON file")
    p.add_argument("--csv", help="optional CSV export")
    p.set_defaults(func=cmd_sweep_mod)

    p = sub.add_parser("spectrum-vs-f", help="absorption spectra over a modulation-depth scan")
    _add_common(p)
    p.add_argument("--f-min", type=float, required=True)
    p.add_argument("--f-max", type=float, required=True)
    p.add_argument("--f-steps", type=int, required=True)
    p.add_argument("--delta-min", type=float, required=True)
    p.add_argument("--delta-max", type=float, required=True)
    p.add_argument("--delta-steps", type=int, required=True)
    p.add_argument("--velocity", type=float, default=0.0)
    p.add_argument("--out", required=True, help="output JSON file")
    p.set_defaults(func=cmd_spectrum_vs_f)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        code = exc.code if isinstance(exc.code, int) else 2
        return 2 if code != 0 else 0
    try:
        return args.func(args)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numerical failures per contract
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

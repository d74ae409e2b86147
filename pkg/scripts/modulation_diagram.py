#!/usr/bin/env python3
"""Reproduce the (Omega, f) phase diagram with the fixed symmetric phases.

The lattice-gauge Chern map needs one Wilson-loop evaluation per cell and
is fast; adding eta turns each cell into a sparse steady-state solve.
"""

import argparse
import os

import numpy as np

from srlattice import LatticeConfig
from srlattice.sweep import sweep_modulation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--omega-min", type=float, default=5.0)
    ap.add_argument("--omega-max", type=float, default=30.0)
    ap.add_argument("--omega-steps", type=int, default=26)
    ap.add_argument("--f-min", type=float, default=0.0)
    ap.add_argument("--f-max", type=float, default=7.0)
    ap.add_argument("--f-steps", type=int, default=71)
    ap.add_argument("--observables", default="chern_fhs,chern_analytic_sign,min_gap")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", default="results/modulation_diagram.json")
    args = ap.parse_args()

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    cfg = LatticeConfig(omega=25.0, f=1.0, delta=80.0, phi=(0.0, 2 * np.pi / 3, 4 * np.pi / 3))
    grid = sweep_modulation(
        cfg,
        np.linspace(args.omega_min, args.omega_max, args.omega_steps),
        np.linspace(args.f_min, args.f_max, args.f_steps),
        observables=tuple(x.strip() for x in args.observables.split(",")),
        jobs=args.jobs,
    )
    grid.write_json(args.out)
    print(args.out)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Absorption spectra as a function of modulation depth (band-edge map).

The band-edge pinches near the flat-band values of f show up as crossings
of the spectral support at zero probe detuning.  Full resolution
(141 f-values x 161 detunings at n_shells=12) is an overnight run; the
defaults here finish in minutes.
"""

import argparse
import os

import numpy as np

from srlattice import LatticeConfig
from srlattice.sweep import spectrum_vs_f


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--f-min", type=float, default=0.0)
    ap.add_argument("--f-max", type=float, default=7.0)
    ap.add_argument("--f-steps", type=int, default=36)
    ap.add_argument("--delta-min", type=float, default=-80.0)
    ap.add_argument("--delta-max", type=float, default=80.0)
    ap.add_argument("--delta-steps", type=int, default=81)
    ap.add_argument("--n-shells", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out", default="results/spectra_vs_f.json")
    args = ap.parse_args()

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    cfg = LatticeConfig(omega=25.0, f=0.0, delta=80.0,
                        phi=(0.0, 2 * np.pi / 3, 4 * np.pi / 3), n_shells=args.n_shells)
    result = spectrum_vs_f(
        cfg,
        np.linspace(args.f_min, args.f_max, args.f_steps),
        np.linspace(args.delta_min, args.delta_max, args.delta_steps),
        jobs=args.jobs,
    )
    result.write_json(args.out)
    print(args.out)


if __name__ == "__main__":
    main()

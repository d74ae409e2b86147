"""Physical and numerical parameters of the modulated lattice."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .geometry import Geometry, custom_geometry, symmetric_geometry

TWO_PI = 2.0 * math.pi

# Documented defaults; frequency-like entries are in MHz (hbar = 1).
DEFAULTS = {
    "omega_mhz": 10.0,
    "f": 1.0,
    "delta_mhz": 80.0,
    "phi": (0.0, TWO_PI / 3.0, 2.0 * TWO_PI / 3.0),
    "geometry": "symmetric",
    "gamma_b_mhz": 6.0,
    "gamma_a_mhz": 0.1,
    "n_max": None,  # auto: max(8, ceil(f) + 6)
    "n_shells": 12,
}


def auto_n_max(f: float) -> int:
    """Harmonic cutoff heuristic: J_n(f) is negligible for n >~ f + 4."""
    return max(8, math.ceil(f) + 6)


@dataclass(frozen=True)
class LatticeConfig:
    """All knobs of one lattice realization.

    omega:    coupling strength Omega (MHz)
    f:        dimensionless modulation depth
    delta:    modulation frequency (MHz)
    phi:      modulation phases (phi1, phi2, phi3), radians in [0, 2pi)
    geometry: coupling-wavevector layout
    gamma_b:  excited-state (b sublattice) decay rate (MHz)
    gamma_a:  ground-coherence (a sublattice) decay rate (MHz)
    n_max:    Floquet harmonic truncation order
    n_shells: site-graph truncation radius in hexagonal shells
    """

    omega: float
    f: float
    delta: float = 80.0
    phi: tuple = DEFAULTS["phi"]
    geometry: Geometry = field(default_factory=symmetric_geometry)
    gamma_b: float = 6.0
    gamma_a: float = 0.1
    n_max: int | None = None
    n_shells: int = 12

    def __post_init__(self):
        if not (self.omega > 0):
            raise ConfigError(f"omega must be positive, got {self.omega}")
        if not (self.delta > 0):
            raise ConfigError(f"delta must be positive, got {self.delta}")
        if self.f < 0:
            raise ConfigError(f"f must be non-negative, got {self.f}")
        if self.gamma_b < 0 or self.gamma_a < 0:
            raise ConfigError("decay rates must be non-negative")
        phi = tuple(float(p) % TWO_PI for p in self.phi)
        if len(phi) != 3:
            raise ConfigError(f"phi needs exactly three phases, got {len(phi)}")
        object.__setattr__(self, "phi", phi)
        n_max = self.n_max if self.n_max is not None else auto_n_max(self.f)
        if n_max < 1:
            raise ConfigError(f"n_max must be >= 1, got {n_max}")
        object.__setattr__(self, "n_max", int(n_max))
        if self.n_shells < 1:
            raise ConfigError(f"n_shells must be >= 1, got {self.n_shells}")
        if not isinstance(self.geometry, Geometry):
            raise ConfigError("geometry must be a Geometry instance")

    def with_phi(self, phi) -> "LatticeConfig":
        return replace(self, phi=tuple(phi))

    def to_dict(self) -> dict:
        """JSON-ready snapshot using the config-file key names."""
        geo = "symmetric" if self.geometry.is_symmetric else {
            "k1": list(self.geometry.k[0]),
            "k2": list(self.geometry.k[1]),
            "k3": list(self.geometry.k[2]),
        }
        return {
            "omega_mhz": self.omega,
            "f": self.f,
            "delta_mhz": self.delta,
            "phi": list(self.phi),
            "geometry": geo,
            "gamma_b_mhz": self.gamma_b,
            "gamma_a_mhz": self.gamma_a,
            "n_max": self.n_max,
            "n_shells": self.n_shells,
        }


def config_from_dict(raw: dict, source: str = "<config>") -> LatticeConfig:
    """Build a config from parsed JSON, rejecting unknown keys."""
    unknown = sorted(set(raw) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"{source}: unknown keys {unknown}; allowed: {sorted(DEFAULTS)}")
    merged = {**DEFAULTS, **raw}

    geo = merged["geometry"]
    if geo == "symmetric":
        geometry = symmetric_geometry()
    elif isinstance(geo, dict):
        missing = sorted({"k1", "k2", "k3"} - set(geo))
        if missing:
            raise ConfigError(f"{source}: geometry missing keys {missing}")
        extra = sorted(set(geo) - {"k1", "k2", "k3"})
        if extra:
            raise ConfigError(f"{source}: geometry has unknown keys {extra}")
        geometry = custom_geometry(geo["k1"], geo["k2"], geo["k3"])
    else:
        raise ConfigError(f"{source}: geometry must be \"symmetric\" or {{k1,k2,k3}}, got {geo!r}")

    phi = merged["phi"]
    if not (isinstance(phi, (list, tuple)) and len(phi) == 3):
        raise ConfigError(f"{source}: phi must be an array of 3 radians, got {phi!r}")

    for key in ("omega_mhz", "f", "delta_mhz", "gamma_b_mhz", "gamma_a_mhz"):
        if not isinstance(merged[key], (int, float)) or isinstance(merged[key], bool):
            raise ConfigError(f"{source}: {key} must be a number, got {merged[key]!r}")

    try:
        return LatticeConfig(
            omega=float(merged["omega_mhz"]),
            f=float(merged["f"]),
            delta=float(merged["delta_mhz"]),
            phi=tuple(float(p) for p in phi),
            geometry=geometry,
            gamma_b=float(merged["gamma_b_mhz"]),
            gamma_a=float(merged["gamma_a_mhz"]),
            n_max=None if merged["n_max"] in (None, "auto") else int(merged["n_max"]),
            n_shells=int(merged["n_shells"]),
        )
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path: str) -> LatticeConfig:
    """Load a JSON config file; parse errors report line and column."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return config_from_dict(raw, source=path)

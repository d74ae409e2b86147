"""Coupling-field geometry and the real-space Brillouin zone.

The three coupling wavevectors k_j span a momentum-space honeycomb whose
"crystal momentum" r lives in real space.  The lattice generated by
b1 = k1 - k2 and b2 = k1 - k3 plays the role of a reciprocal lattice for r,
so the unit cell spanned by the dual vectors a1, a2 (a_i . b_j = 2 pi d_ij)
is the Brillouin-zone torus on which every band quantity is periodic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

SQRT3 = np.sqrt(3.0)

# Fractional coordinates (r = s1*a1 + s2*a2) of the named zone points.
SPECIAL_POINTS = {
    "G": (0.0, 0.0),
    "K": (1.0 / 3.0, 2.0 / 3.0),
    "Kp": (2.0 / 3.0, 1.0 / 3.0),
    "M": (0.5, 0.5),
}


@dataclass(frozen=True)
class Geometry:
    """Three coupling wavevectors and the derived zone geometry."""

    k: np.ndarray  # (3, 2) coupling wavevectors
    b: np.ndarray = field(init=False)  # (2, 2) momentum-lattice vectors
    a: np.ndarray = field(init=False)  # (2, 2) BZ cell vectors, a_i . b_j = 2 pi d_ij

    def __post_init__(self):
        k = np.asarray(self.k, dtype=float)
        if k.shape != (3, 2):
            raise ConfigError(f"geometry needs three 2-D wavevectors, got shape {k.shape}")
        b = np.array([k[0] - k[1], k[0] - k[2]])
        det = b[0, 0] * b[1, 1] - b[0, 1] * b[1, 0]
        if abs(det) < 1e-12:
            raise ConfigError("coupling wavevectors give a degenerate momentum lattice")
        a = 2.0 * np.pi * np.linalg.inv(b).T
        for arr in (k, b, a):
            arr.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a", a)

    @property
    def is_symmetric(self) -> bool:
        return bool(np.allclose(self.k.sum(axis=0), 0.0, atol=1e-12)
                    and np.allclose(np.linalg.norm(self.k, axis=1), 1.0, atol=1e-12))

    def frac_to_cart(self, s) -> np.ndarray:
        """Map fractional cell coordinates (..., 2) to cartesian r."""
        return np.asarray(s, dtype=float) @ self.a

    def cart_to_frac(self, r) -> np.ndarray:
        return np.asarray(r, dtype=float) @ self.b.T / (2.0 * np.pi)

    def wrap(self, r) -> np.ndarray:
        """Wrap cartesian points into the fundamental cell s in [0, 1)^2."""
        s = np.mod(self.cart_to_frac(r), 1.0)
        # guard against 1.0 - eps surviving the mod
        s = np.where(s > 1.0 - 1e-12, 0.0, s)
        return self.frac_to_cart(s)

    def special_point(self, name: str) -> np.ndarray:
        try:
            return self.frac_to_cart(SPECIAL_POINTS[name])
        except KeyError:
            raise ConfigError(f"unknown zone point {name!r}; known: {sorted(SPECIAL_POINTS)}")

    def cell_diameter(self) -> float:
        return float(np.linalg.norm(self.a[0] + self.a[1]))

    def min_image_distance(self, r1, r2) -> float:
        """Distance between two points modulo the cell lattice."""
        d = np.asarray(r1, dtype=float) - np.asarray(r2, dtype=float)
        best = np.inf
        for i in (-1, 0, 1):
            for j in (-1, 0, 1):
                best = min(best, float(np.linalg.norm(d + i * self.a[0] + j * self.a[1])))
        return best


def symmetric_geometry() -> Geometry:
    """Unit wavevectors at mutual 120 degrees, k1 + k2 + k3 = 0."""
    k = np.array([
        [1.0, 0.0],
        [-0.5, SQRT3 / 2.0],
        [-0.5, -SQRT3 / 2.0],
    ])
    return Geometry(k=k)


def custom_geometry(k1, k2, k3) -> Geometry:
    return Geometry(k=np.array([k1, k2, k3], dtype=float))

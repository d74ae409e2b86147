"""Floquet-modulated honeycomb superradiance-lattice simulator."""

__version__ = "0.1.0"

from .config import LatticeConfig, config_from_dict, load_config
from .geometry import Geometry, custom_geometry, symmetric_geometry
from .lattice import (
    CentralBands,
    HVector,
    HoppingSet,
    bessel_j,
    build_floquet_matrix,
    coupling_field,
    effective_h_vector,
    effective_hoppings,
    fourier_block,
    heff_fields,
    quasienergy_bands,
)

__all__ = [
    "__version__",
    "LatticeConfig",
    "config_from_dict",
    "load_config",
    "Geometry",
    "custom_geometry",
    "symmetric_geometry",
    "CentralBands",
    "HVector",
    "HoppingSet",
    "bessel_j",
    "build_floquet_matrix",
    "coupling_field",
    "effective_h_vector",
    "effective_hoppings",
    "fourier_block",
    "heff_fields",
    "quasienergy_bands",
]

"""Entanglement harvesting from static detectors outside a BTZ black hole.

The library computes the two-detector density matrix elements by contour
quadrature of the image-sum response integrals, assembles the mutual
information, and exposes sweep/CSV tooling for the figure-style parameter
scans.  All lengths are in units of the Gaussian switching width and
energies in units of its inverse.
"""

__version__ = "0.1.0"

from .geometry import (
    DIRICHLET, TRANSPARENT, NEUMANN,
    SpacetimeParams, DetectorPlacement, HorizonError,
    proper_distance, radius_at_distance, distance_from_horizon,
    redshift_from_radius, redshift_from_distance, local_temperature,
    placement_from_thermal, thermal_from_radius,
)
from .wightman import TruncationPolicy, select_image_terms, alpha_pm
from .quadrature import ContourSpec, ConvergenceError, fermi_dirac_response
from .detector import (
    DetectorPair, MatrixElements, ElementResult,
    compute_L_AB, compute_L_DD, compute_matrix_elements,
    oracle_L_AB_2d, oracle_L_DD_2d,
)
from .correlations import (
    CorrelationResult, NegativeResultError,
    l_plus_minus, mutual_information, evaluate_correlations,
    edr_temperature, anti_hawking_weak, anti_hawking_strong,
)
from .sweep import SweepSpec, AxisSpec, run_sweep, write_csv, preset_specs

__all__ = [
    "__version__",
    "DIRICHLET", "TRANSPARENT", "NEUMANN",
    "SpacetimeParams", "DetectorPlacement", "HorizonError",
    "proper_distance", "radius_at_distance", "distance_from_horizon",
    "redshift_from_radius", "redshift_from_distance", "local_temperature",
    "placement_from_thermal", "thermal_from_radius",
    "TruncationPolicy", "select_image_terms", "alpha_pm",
    "ContourSpec", "ConvergenceError", "fermi_dirac_response",
    "DetectorPair", "MatrixElements", "ElementResult",
    "compute_L_AB", "compute_L_DD", "compute_matrix_elements",
    "oracle_L_AB_2d", "oracle_L_DD_2d",
    "CorrelationResult", "NegativeResultError",
    "l_plus_minus", "mutual_information", "evaluate_correlations",
    "edr_temperature", "anti_hawking_weak", "anti_hawking_strong",
    "SweepSpec", "AxisSpec", "run_sweep", "write_csv", "preset_specs",
]

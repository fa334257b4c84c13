"""diskeig: exact eigenvalue counting inside a disk via contour quadrature.

The pipeline: a Gauss-Legendre rule on the disk boundary turns the
spectral projector into a rational filter whose real part separates the
spectrum at 1/2; a randomized rank search bounds the inside count from
above and captures the eigenspace; the small counting matrix then yields
the exact count, which doubles as the stopping criterion for the
integrated subspace eigensolver.
"""

__version__ = "0.1.0"

from .counting import CountReport, build_m, count_eigs
from .kernels import (
    LUFactors,
    RRQRFactors,
    eig_dense,
    lu_factor,
    lu_solve,
    qr_column_pivoted,
    qr_thin,
)
from .mmio import SparseMatrix, from_dense, read_matrix_market, write_matrix_market
from .oracle import SpectrumOracle, dense_generalized_eig, diagonal_benchmark, exact_count
from .projector import NodeFactorizations, Pencil, apply_filtered, factorize_nodes
from .quadrature import (
    ContourRule,
    Disk,
    FilterValue,
    contour_rule,
    filter_profile,
    filter_value,
    filter_values,
    gauss_legendre,
    map_to_circle,
)
from .search import SearchConfig, SearchResult, sample_gaussian, search, trace_estimate
from .solver import EigenpairSet, EigsConfig, refine_eigenpairs, residual

__all__ = [
    "CountReport",
    "ContourRule",
    "Disk",
    "EigenpairSet",
    "EigsConfig",
    "FilterValue",
    "LUFactors",
    "NodeFactorizations",
    "Pencil",
    "RRQRFactors",
    "SearchConfig",
    "SearchResult",
    "SparseMatrix",
    "SpectrumOracle",
    "apply_filtered",
    "build_m",
    "contour_rule",
    "count_eigs",
    "dense_generalized_eig",
    "diagonal_benchmark",
    "eig_dense",
    "exact_count",
    "factorize_nodes",
    "filter_profile",
    "filter_value",
    "filter_values",
    "from_dense",
    "gauss_legendre",
    "lu_factor",
    "lu_solve",
    "map_to_circle",
    "qr_column_pivoted",
    "qr_thin",
    "read_matrix_market",
    "refine_eigenpairs",
    "residual",
    "sample_gaussian",
    "search",
    "trace_estimate",
    "write_matrix_market",
]

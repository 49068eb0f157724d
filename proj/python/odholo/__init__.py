"""Off-diagonal holonomies for noncyclically evolving subspace decompositions."""

from ._core import (  # noqa: F401
    CurveFamily,
    Decomposition,
    ExtractResult,
    Frame,
    HolonomyResult,
    HolonomyStatus,
    OdholoError,
    ProtocolResult,
    SigmaTable,
    Strategy,
    TripodOracle,
    TripodOracleEntry,
    TripodPath,
    build_sigma_table,
    enumerate_strict_sequences,
    extract_filtering_holonomy,
    gamma_product,
    holonomy_of_order,
    is_unitary,
    numerical_rank,
    phi_map,
    projector,
    random_admissible_v,
    random_unitary_curve,
    run_filtering_protocol,
    svd,
    tripod_curve,
    tripod_frames,
    tripod_hamiltonian,
    tripod_oracle,
    tripod_z,
    uniform_grid,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

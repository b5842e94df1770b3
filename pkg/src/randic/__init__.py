"""Spectra of the degree-normalized adjacency matrix R = D^(-1/2) A D^(-1/2),
graph energies derived from it, and mechanical verification of the structural
identities that relate a graph, its subdivision, and its distinct eigenvalue
count."""

from .errors import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphFormatError,
    IsolatedVertexError,
    PreconditionError,
)
from .graphs import (
    Graph,
    encode_graph6,
    enumerate_connected_graphs,
    format_edge_list,
    generate,
    is_connected,
    parse_edge_list,
    parse_graph6,
    subdivision,
)
from .identities import (
    Classification,
    Counterexample,
    ScanSummary,
    SrgParameters,
    VerificationReport,
    classify_distinct_count,
    is_strongly_regular,
    local_condition_residuals,
    scan_small_graphs,
    verify_eigenvalue_correspondence,
    verify_k_distinct_identity,
    verify_local_conditions,
    verify_subdivision_charpoly,
    verify_subdivision_energy,
)
from .linalg import (
    Polynomial,
    Spectrum,
    cluster_distinct,
    eigenvalues,
    symmetric_eigenvalues,
)
from .spectra import (
    GraphSpectra,
    normalized_laplacian,
    normalized_signless_laplacian,
    perron_residual,
    perron_vector,
    randic_energy,
    randic_index,
    randic_matrix,
    randic_spectrum,
    spectra,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "ConvergenceError",
    "Counterexample",
    "DisconnectedGraphError",
    "Graph",
    "GraphFormatError",
    "GraphSpectra",
    "IsolatedVertexError",
    "Polynomial",
    "PreconditionError",
    "ScanSummary",
    "Spectrum",
    "SrgParameters",
    "VerificationReport",
    "classify_distinct_count",
    "cluster_distinct",
    "eigenvalues",
    "encode_graph6",
    "enumerate_connected_graphs",
    "format_edge_list",
    "generate",
    "is_connected",
    "is_strongly_regular",
    "local_condition_residuals",
    "normalized_laplacian",
    "normalized_signless_laplacian",
    "parse_edge_list",
    "parse_graph6",
    "perron_residual",
    "perron_vector",
    "randic_energy",
    "randic_index",
    "randic_matrix",
    "randic_spectrum",
    "scan_small_graphs",
    "spectra",
    "subdivision",
    "symmetric_eigenvalues",
    "verify_eigenvalue_correspondence",
    "verify_k_distinct_identity",
    "verify_local_conditions",
    "verify_subdivision_charpoly",
    "verify_subdivision_energy",
    "__version__",
]

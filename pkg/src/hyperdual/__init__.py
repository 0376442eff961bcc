"""Hypergraph duality toolkit.

GF(2) hypergraph combinatorics (dual, orthogonal complement, independence,
self-duality), lattice-model generators, bitmask Pauli operators, exact and
iterative eigensolvers, and the strong-weak coupling consistency check with
transition scans.

Submodule attributes are loaded lazily so importing the package stays cheap
and numpy-free until a numerical entry point is touched (the CLI relies on
this to install thread caps first).
"""

from importlib import import_module

from .errors import (  # noqa: F401  (re-exported)
    DependentEdgesError,
    DimensionMismatchError,
    FormatError,
    HyperdualError,
    HyperdualWarning,
    NotConvergedError,
    SearchBudgetExceededError,
    TooLargeError,
    UnsupportedDimsError,
)

__version__ = "0.1.0"

_LAZY = {
    # gf2
    "BitMatrix": "gf2", "bits_of": "gf2", "mask_from_bits": "gf2",
    "popcount": "gf2", "parity": "gf2", "dot": "gf2",
    "gf2_rank": "gf2", "gf2_rref": "gf2", "gf2_nullspace": "gf2",
    "gf2_independent_rows": "gf2", "gf2_in_rowspace": "gf2",
    # hypergraph
    "Hypergraph": "hypergraph", "IndependentSet": "hypergraph",
    "SelfDualWitness": "hypergraph", "rank": "hypergraph",
    "dual": "hypergraph", "orthogonal": "hypergraph",
    "independent_set": "hypergraph", "reduce_to_independent": "hypergraph",
    "is_self_dual": "hypergraph", "apply_witness": "hypergraph",
    "format_hypergraph": "hypergraph", "parse_hypergraph": "hypergraph",
    "read_hypergraph": "hypergraph", "write_hypergraph": "hypergraph",
    # lattices
    "Graph": "lattices", "LatticeSpec": "lattices",
    "parse_lattice_spec": "lattices", "build_graph": "lattices",
    "toric_code_hypergraph": "lattices", "colex2_hypergraph": "lattices",
    "selfdual_hypercubic": "lattices", "selfdual_chain": "lattices",
    "selfdual_plaquette": "lattices",
    "hypergraph_from_spec_string": "lattices",
    "GRAPH_KINDS": "lattices", "KINDS": "lattices",
    # pauli
    "PauliTerm": "pauli", "PauliSum": "pauli", "StateVector": "pauli",
    "commutes": "pauli", "apply": "pauli",
    "sector_projector_apply": "pauli", "css_hamiltonian": "pauli",
    "perturbed_css_hamiltonian": "pauli",
    "ising_like_hamiltonian": "pauli", "dual_model": "pauli",
    "permute_qubits": "pauli", "format_pauli_sum": "pauli",
    # spectra
    "SpectrumResult": "spectra", "eig_dense": "spectra",
    "ground_lanczos": "spectra", "sector_spectrum": "spectra",
    "fidelity_susceptibility": "spectra", "DEFAULT_SEED": "spectra",
    # duality
    "DualityReport": "duality", "ScanSample": "duality",
    "ScanResult": "duality", "verify_duality": "duality",
    "scan_transition": "duality", "estimate_tc_robustness": "duality",
    "critical_from_energy_curvature": "duality",
    "format_scan_csv": "duality", "export_csv": "duality",
    "read_scan_csv": "duality", "format_report": "duality",
    "export_report": "duality",
    # plotting
    "plot_scan": "plotting", "plot_duality": "plotting",
}

__all__ = sorted(_LAZY) + [
    "DependentEdgesError", "DimensionMismatchError", "FormatError",
    "HyperdualError", "HyperdualWarning", "NotConvergedError",
    "SearchBudgetExceededError", "TooLargeError", "UnsupportedDimsError",
    "__version__",
]


def __getattr__(name: str):
    try:
        modname = _LAZY[name]
    except KeyError:
        raise AttributeError(
            f"module {__name__!r} has no attribute {name!r}") from None
    value = getattr(import_module(f".{modname}", __name__), name)
    globals()[name] = value
    return value


def __dir__():
    return sorted(set(globals()) | set(_LAZY))

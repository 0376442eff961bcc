import numpy as np
import pytest

from hyperdual.hypergraph import Hypergraph
from hyperdual.lattices import (
    build_graph,
    parse_lattice_spec,
    selfdual_chain,
    toric_code_hypergraph,
)
from hyperdual.pauli import PauliSum, PauliTerm

# Single-qubit matrices for the independent kron oracle.
_I2 = np.eye(2)
_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def kron_dense(hsum: PauliSum) -> np.ndarray:
    """Dense matrix built the slow, obvious way (np.kron per term).

    Basis convention: index bit b is qubit b, qubit 0 least significant,
    so the kron chain runs from the highest qubit down to qubit 0.
    """
    n = hsum.num_qubits
    mat = hsum.constant * np.eye(1 << n)
    for t in hsum.terms:
        op = np.eye(1)
        for q in range(n - 1, -1, -1):
            if (t.x_mask >> q) & 1:
                single = _X
            elif (t.z_mask >> q) & 1:
                single = _Z
            else:
                single = _I2
            op = np.kron(op, single)
        mat += t.coeff * op
    return mat


def random_hypergraph(rng: np.random.Generator, max_k: int = 16) -> Hypergraph:
    """Random hypergraph with no duplicate and no empty edges."""
    k = int(rng.integers(1, max_k + 1))
    max_edges = min(2 ** k - 1, 2 * k)
    m = int(rng.integers(1, max_edges + 1))
    masks = rng.permutation(np.arange(1, 2 ** min(k, 20)))[:m]
    return Hypergraph(k, [int(x) for x in masks])


def random_pauli_sum(rng: np.random.Generator, k: int,
                     num_terms: int = 6) -> PauliSum:
    terms = []
    for _ in range(num_terms):
        support = int(rng.integers(0, 1 << k))
        xz_split = int(rng.integers(0, 1 << k))
        x = support & xz_split
        z = support & ~xz_split
        terms.append(PauliTerm(x, z, float(rng.normal())))
    const = float(rng.normal())
    return PauliSum(k, terms, const)


@pytest.fixture
def fig_hypergraph() -> Hypergraph:
    """The worked 5-vertex, 4-edge example used throughout: edges
    {1}, {1,2,4,5}, {2,3}, {3,5} (1-indexed)."""
    return Hypergraph.from_edge_sets(5, [(0,), (0, 1, 3, 4), (1, 2), (2, 4)])


def duality_models() -> dict[str, Hypergraph]:
    """The cross-checked model set: tiny closed forms, the worked 5-vertex
    example, two code hypergraphs, and the n=8 chain model."""
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        c4 = toric_code_hypergraph(
            build_graph(parse_lattice_spec("chain:4:periodic")))
        sq22 = toric_code_hypergraph(
            build_graph(parse_lattice_spec("square:2x2:periodic")))
    return {
        "loop-1": Hypergraph.from_edge_sets(1, [(0,)]),
        "edge-2": Hypergraph.from_edge_sets(2, [(0, 1)]),
        "worked-5": Hypergraph.from_edge_sets(
            5, [(0,), (0, 1, 3, 4), (1, 2), (2, 4)]),
        "cycle4-code": c4,
        "square22-code": sq22,
        "chain-8": selfdual_chain(8),
    }


COUPLING_GRID = (
    (1.0, 0.0),    # pure stabilizer model
    (1.0, 0.5),
    (1.0, 1.0),
    (1.0, 2.0),
    (0.5, 1.0),
    (1.0, 10.0),   # field-dominated
)

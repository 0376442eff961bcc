import math
import warnings

import numpy as np
import pytest

from hyperdual.errors import (
    DimensionMismatchError,
    HyperdualWarning,
    NotConvergedError,
    TooLargeError,
)
from hyperdual.hypergraph import Hypergraph, orthogonal
from hyperdual.lattices import (
    build_graph,
    parse_lattice_spec,
    selfdual_chain,
    toric_code_hypergraph,
)
from hyperdual.pauli import (
    PauliSum,
    PauliTerm,
    ising_like_hamiltonian,
    perturbed_css_hamiltonian,
)
from hyperdual.spectra import (
    eig_dense,
    fidelity_susceptibility,
    ground_lanczos,
    sector_spectrum,
)

from conftest import kron_dense, random_pauli_sum


def tfim_ring_energy(n: int, j: float, h: float) -> float:
    """Free-fermion ground energy of the n-site periodic transverse-field
    Ising chain -j sum XX - h sum Z (even-parity momenta)."""
    ks = [(2 * m + 1) * math.pi / n for m in range(n)]
    return -sum(math.sqrt(j * j + h * h - 2 * j * h * math.cos(k))
                for k in ks)


def test_tfim_oracle_sanity():
    # closed form at the self-dual point: -2 / sin(pi / 2n)
    for n in (4, 8, 12):
        assert tfim_ring_energy(n, 1.0, 1.0) == pytest.approx(
            -2.0 / math.sin(math.pi / (2 * n)), abs=1e-12)


def test_eig_dense_examples():
    r = eig_dense(PauliSum(1, [PauliTerm(1, 0, -1.0)]))
    assert np.allclose(r.eigenvalues, [-1.0, 1.0])
    assert r.converged and r.residual == 0.0

    j = 1.3
    two = PauliSum(2, [PauliTerm(0b11, 0, -j), PauliTerm(0, 0b11, -j)])
    assert np.allclose(eig_dense(two).eigenvalues, [-2 * j, 0.0, 0.0, 2 * j])

    tfim2 = ising_like_hamiltonian(
        Hypergraph.from_edge_sets(2, [(0, 1)]), a=1.0, b=1.0)
    assert eig_dense(tfim2).eigenvalues[0] == pytest.approx(-math.sqrt(5.0))


def test_eig_dense_matches_kron_oracle():
    rng = np.random.default_rng(42)
    for _ in range(5):
        s = random_pauli_sum(rng, 5, num_terms=10)
        want = np.linalg.eigvalsh(kron_dense(s))
        assert np.allclose(eig_dense(s).eigenvalues, want, atol=1e-10)


def test_eig_dense_ground_vector_is_eigenvector():
    rng = np.random.default_rng(5)
    s = random_pauli_sum(rng, 4)
    r = eig_dense(s)
    v = r.ground_vector.amplitudes
    assert np.linalg.norm(s.matvec(v) - r.eigenvalues[0] * v) < 1e-10


def test_eig_dense_too_large():
    with pytest.raises(TooLargeError):
        eig_dense(PauliSum(13, [PauliTerm(1, 0, 1.0)]))


def test_lanczos_identity_only():
    r = ground_lanczos(PauliSum(2, [], constant=2.5), k=1)
    assert r.eigenvalues[0] == pytest.approx(2.5)
    assert r.converged


@pytest.mark.parametrize("seed", range(6))
def test_lanczos_matches_dense_random(seed):
    rng = np.random.default_rng(4000 + seed)
    k = int(rng.integers(2, 7))
    s = random_pauli_sum(rng, k, num_terms=2 * k)
    dense = eig_dense(s)
    lz = ground_lanczos(s, k=3)
    assert lz.converged
    take = min(3, len(dense.eigenvalues))
    assert np.allclose(lz.eigenvalues[:take], dense.eigenvalues[:take],
                       atol=1e-9)
    assert lz.residual <= 1e-10
    assert lz.seed is not None


def test_lanczos_resolves_degeneracy():
    # unperturbed stabilizer model on the 2x2 torus: flipping any single
    # nullspace generator costs 2, so the first excited level -7 has
    # multiplicity 5 (single star flips are blocked by the product
    # constraint and cost 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HyperdualWarning)
        g = build_graph(parse_lattice_spec("square:2x2:periodic"))
    h = toric_code_hypergraph(g)
    hstar = orthogonal(h)
    m = perturbed_css_hamiltonian(h, hstar, 1.0, 0.0)
    dense = eig_dense(m)
    assert dense.eigenvalues[0] == pytest.approx(-9.0)
    assert np.allclose(dense.eigenvalues[1:4], -7.0)
    lz = ground_lanczos(m, k=4)
    assert lz.converged
    assert np.allclose(lz.eigenvalues, dense.eigenvalues[:4], atol=1e-9)


def test_lanczos_variational_bound():
    rng = np.random.default_rng(9)
    s = random_pauli_sum(rng, 6, num_terms=12)
    lz = ground_lanczos(s, k=1)
    e0 = eig_dense(s).eigenvalues[0]
    assert lz.eigenvalues[0] >= e0 - 1e-9
    for _ in range(5):
        v = rng.standard_normal(s.dim)
        v /= np.linalg.norm(v)
        assert lz.eigenvalues[0] <= float(v @ s.matvec(v)) + 1e-9


def test_lanczos_free_fermion_chain():
    n = 12
    for (j, h) in [(1.0, 1.0), (1.0, 0.6), (0.7, 1.1)]:
        m = ising_like_hamiltonian(selfdual_chain(n), a=j, b=h)
        r = ground_lanczos(m, k=1)
        assert r.converged
        assert r.eigenvalues[0] == pytest.approx(tfim_ring_energy(n, j, h),
                                                 abs=1e-8)


def test_lanczos_seed_determinism():
    m = ising_like_hamiltonian(selfdual_chain(8), a=1.0, b=0.8)
    a = ground_lanczos(m, k=2, seed=123)
    b = ground_lanczos(m, k=2, seed=123)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    c = ground_lanczos(m, k=2, seed=321)
    assert np.allclose(a.eigenvalues, c.eigenvalues, atol=1e-9)


def test_lanczos_not_converged_returns_best():
    m = ising_like_hamiltonian(selfdual_chain(10), a=1.0, b=1.0)
    r = ground_lanczos(m, k=1, max_iter=4)
    assert not r.converged
    assert r.residual > 1e-10
    assert len(r.eigenvalues) == 1  # best estimate still reported


def test_lanczos_too_large():
    with pytest.raises(TooLargeError):
        ground_lanczos(PauliSum(25, [PauliTerm(1, 0, 1.0)]))
    with pytest.raises(ValueError):
        ground_lanczos(PauliSum(2, [PauliTerm(1, 0, 1.0)]), k=0)


def test_sector_spectrum_example():
    hstar = Hypergraph(2, [0b11])
    m = PauliSum(2, [PauliTerm(0, 0b01, -1.0), PauliTerm(0, 0b10, -1.0)])
    r = sector_spectrum(m, hstar)
    assert np.allclose(r.eigenvalues, [-2.0, 2.0])


def test_sector_spectrum_fig_model(fig_hypergraph):
    h = fig_hypergraph
    hstar = orthogonal(h)
    m = perturbed_css_hamiltonian(h, hstar, 1.0, 0.7)
    r = sector_spectrum(m, hstar)
    assert len(r.eigenvalues) == 16  # 2^rank
    # sub-multiset of the full spectrum
    full = eig_dense(m).eigenvalues
    for ev in r.eigenvalues:
        assert np.min(np.abs(full - ev)) < 1e-9
    # ground vector is embedded in the full register and lies in the sector
    v = r.ground_vector.amplitudes
    assert np.linalg.norm(m.matvec(v) - r.eigenvalues[0] * v) < 1e-9


def test_sector_spectrum_via_submatrix_oracle(fig_hypergraph):
    # independent oracle: filter basis states with even generator overlap
    # and diagonalize that submatrix of the dense Hamiltonian
    h = fig_hypergraph
    hstar = orthogonal(h)
    m = perturbed_css_hamiltonian(h, hstar, 1.2, 0.4)
    idx = np.arange(1 << 5)
    keep = np.ones(idx.shape, dtype=bool)
    for e in hstar.edges:
        keep &= np.array([bin(i & e).count("1") % 2 == 0 for i in idx])
    sub = kron_dense(m)[np.ix_(keep, keep)]
    want = np.linalg.eigvalsh(sub)
    got = sector_spectrum(m, hstar).eigenvalues
    assert np.allclose(got, want, atol=1e-10)


def test_sector_spectrum_rejects_noncommuting():
    hstar = Hypergraph(2, [0b11])
    bad = PauliSum(2, [PauliTerm(0b01, 0, 1.0)])  # X1 anticommutes with Z1Z2
    with pytest.raises(ValueError):
        sector_spectrum(bad, hstar)
    with pytest.raises(DimensionMismatchError):
        sector_spectrum(PauliSum(3, []), hstar)


def test_fidelity_single_spin_closed_form():
    # -rho X - Z on one qubit: ground state tilts by arctan(rho), and the
    # overlap of two tilted states is cos of half the angle difference
    h1 = Hypergraph.from_edge_sets(1, [(0,)])

    def model(rho):
        return ising_like_hamiltonian(h1, a=rho, b=1.0)

    rho, delta = 0.8, 1e-3
    got = fidelity_susceptibility(model, rho, delta)
    ang = math.atan(rho + delta) - math.atan(rho)
    want = 2.0 * (1.0 - math.cos(ang / 2.0)) / delta ** 2
    assert got == pytest.approx(want, rel=1e-6)


def test_fidelity_symmetry():
    def model(rho):
        return ising_like_hamiltonian(selfdual_chain(6), a=rho, b=1.0)

    d = 1e-3
    a = fidelity_susceptibility(model, 0.9, d)
    b = fidelity_susceptibility(model, 0.9 + d, -d)
    assert a == pytest.approx(b, abs=1e-6)


def test_fidelity_product_regime_perturbative():
    def model(rho):
        return ising_like_hamiltonian(selfdual_chain(6), a=rho, b=1.0)

    # second order in rho: each of the 6 pair-flip edges contributes
    # 1/(Delta E)^2 = 1/16, so chi -> 6/16 as rho -> 0
    chi = fidelity_susceptibility(model, 0.01, 1e-3)
    assert chi == pytest.approx(6 / 16, rel=1e-2)


def test_fidelity_rejects_zero_delta():
    def model(rho):
        return ising_like_hamiltonian(selfdual_chain(4), a=rho, b=1.0)

    with pytest.raises(ValueError):
        fidelity_susceptibility(model, 1.0, 0.0)


def test_fidelity_propagates_nonconvergence():
    def model(rho):
        return ising_like_hamiltonian(selfdual_chain(10), a=rho, b=1.0)

    with pytest.raises(NotConvergedError) as exc:
        fidelity_susceptibility(model, 1.0, 1e-3, max_iter=4)
    assert exc.value.result is not None

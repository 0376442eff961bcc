"""Real-weighted Pauli-string sums over K qubits, bitmask encoded, plus the
model builders: stabilizer Hamiltonians from a hypergraph, their field
perturbation, and the dual transverse-field model.

A term is (x_mask, z_mask, coeff): X on the x_mask qubits, Z on the z_mask
qubits, never both on one qubit (no Y anywhere in this problem family).  On a
computational basis index ``i`` a term acts as

    c * (-1)^popcount(i & z_mask) * |i XOR x_mask>

which is all the matrix-free machinery needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DependentEdgesError, DimensionMismatchError
from .gf2 import bits_of
from .hypergraph import Hypergraph, dual, independent_set

_CACHE_QUBIT_LIMIT = 22  # above this, per-term sign vectors are not cached


@dataclass(frozen=True)
class PauliTerm:
    """One Pauli string with a real coefficient."""

    x_mask: int
    z_mask: int
    coeff: float

    def __post_init__(self) -> None:
        if self.x_mask < 0 or self.z_mask < 0:
            raise ValueError("masks must be non-negative")
        if self.x_mask & self.z_mask:
            raise ValueError("x_mask and z_mask overlap (Y operators excluded)")

    @property
    def weight(self) -> int:
        """Number of qubits acted on."""
        return (self.x_mask | self.z_mask).bit_count()


def commutes(t1: PauliTerm, t2: PauliTerm) -> bool:
    """True iff the two Pauli strings commute."""
    anti = (t1.x_mask & t2.z_mask).bit_count() + (t1.z_mask & t2.x_mask).bit_count()
    return anti % 2 == 0


class PauliSum:
    """Immutable sum of Pauli terms plus an identity constant.

    Terms with identical (x_mask, z_mask) are merged at construction by
    summing coefficients (exact cancellations are dropped); term order is
    first occurrence, so construction is deterministic.
    """

    __slots__ = ("_num_qubits", "_terms", "_constant", "_cache")

    def __init__(self, num_qubits: int,
                 terms: Iterable[PauliTerm] = (),
                 constant: float = 0.0) -> None:
        if num_qubits < 1:
            raise ValueError("need at least one qubit")
        limit = 1 << num_qubits
        merged: dict[tuple[int, int], float] = {}
        for t in terms:
            if t.x_mask >= limit or t.z_mask >= limit:
                raise DimensionMismatchError(
                    f"term {t} does not fit in {num_qubits} qubits")
            key = (t.x_mask, t.z_mask)
            merged[key] = merged.get(key, 0.0) + t.coeff
        self._num_qubits = num_qubits
        self._terms = tuple(
            PauliTerm(x, z, c) for (x, z), c in merged.items() if c != 0.0
        )
        self._constant = float(constant)
        self._cache: dict = {}

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def terms(self) -> tuple[PauliTerm, ...]:
        return self._terms

    @property
    def constant(self) -> float:
        return self._constant

    @property
    def dim(self) -> int:
        return 1 << self._num_qubits

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, PauliSum)
                and self._num_qubits == other._num_qubits
                and self._terms == other._terms
                and self._constant == other._constant)

    def __hash__(self) -> int:
        return hash((self._num_qubits, self._terms, self._constant))

    def __repr__(self) -> str:
        return (f"PauliSum(K={self._num_qubits}, terms={len(self._terms)}, "
                f"constant={self._constant})")

    # -- matrix-free action -------------------------------------------------

    def _indices(self) -> np.ndarray:
        idx = self._cache.get("idx")
        if idx is None:
            idx = np.arange(self.dim, dtype=np.uint64)
            if self._num_qubits <= _CACHE_QUBIT_LIMIT:
                self._cache["idx"] = idx
        return idx

    def _signs(self, z_mask: int) -> np.ndarray:
        """Vector of (-1)^popcount(i & z_mask) over all basis indices."""
        cached = self._cache.get(z_mask)
        if cached is not None:
            return cached
        idx = self._indices()
        par = np.bitwise_count(idx & np.uint64(z_mask)).astype(np.int64) & 1
        signs = 1.0 - 2.0 * par
        if self._num_qubits <= _CACHE_QUBIT_LIMIT:
            self._cache[z_mask] = signs
        return signs

    def matvec(self, vec: np.ndarray) -> np.ndarray:
        """Apply to a length-2^K amplitude array (dtype preserved)."""
        vec = np.asarray(vec)
        if vec.shape != (self.dim,):
            raise DimensionMismatchError(
                f"vector length {vec.shape} does not match dimension {self.dim}")
        out = self._constant * vec
        idx = self._indices()
        for t in self._terms:
            contrib = vec if t.x_mask == 0 else vec[idx ^ np.uint64(t.x_mask)]
            if t.z_mask:
                contrib = contrib * self._signs(t.z_mask)
            out = out + t.coeff * contrib
        return out

    def to_dense(self) -> np.ndarray:
        """Real symmetric dense matrix (X/Z strings only, so real)."""
        n = self.dim
        mat = np.zeros((n, n), dtype=np.float64)
        idx = self._indices()
        cols = idx.astype(np.int64)
        for t in self._terms:
            rows = (idx ^ np.uint64(t.x_mask)).astype(np.int64)
            vals = np.full(n, t.coeff)
            if t.z_mask:
                vals = vals * self._signs(t.z_mask)
            mat[rows, cols] += vals
        if self._constant:
            mat[np.arange(n), np.arange(n)] += self._constant
        return mat


class StateVector:
    """Dense amplitude vector over K qubits."""

    __slots__ = ("_num_qubits", "_amps")

    def __init__(self, num_qubits: int, amplitudes, *, copy: bool = True) -> None:
        amps = np.array(amplitudes, dtype=np.complex128, copy=copy)
        if amps.shape != (1 << num_qubits,):
            raise DimensionMismatchError(
                f"expected {1 << num_qubits} amplitudes, got {amps.shape}")
        self._num_qubits = num_qubits
        self._amps = amps

    @property
    def num_qubits(self) -> int:
        return self._num_qubits

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    @classmethod
    def basis(cls, num_qubits: int, index: int) -> "StateVector":
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(num_qubits, amps, copy=False)

    def norm(self) -> float:
        return float(np.linalg.norm(self._amps))

    def normalize(self) -> "StateVector":
        n = self.norm()
        if n < 1e-300:
            raise ValueError("cannot normalize a zero vector")
        return StateVector(self._num_qubits, self._amps / n, copy=False)

    def overlap(self, other: "StateVector") -> complex:
        if self._num_qubits != other._num_qubits:
            raise DimensionMismatchError("qubit counts differ")
        return complex(np.vdot(self._amps, other._amps))


def apply(hsum: PauliSum, s: StateVector) -> StateVector:
    """Matrix-free hsum |s> (no normalization)."""
    if hsum.num_qubits != s.num_qubits:
        raise DimensionMismatchError(
            f"operator on {hsum.num_qubits} qubits, state on {s.num_qubits}")
    return StateVector(s.num_qubits, hsum.matvec(s.amplitudes), copy=False)


def sector_projector_apply(hstar: Hypergraph, s: StateVector) -> StateVector:
    """Project onto the joint +1 eigenspace of the Z-type generators.

    Applies prod_e (1 + B_e)/2 where B_e is the Z-string of edge e of
    ``hstar``: amplitudes at basis states with odd overlap against any
    generator are zeroed.  Result is unnormalized (possibly zero).
    """
    if hstar.num_vertices != s.num_qubits:
        raise DimensionMismatchError(
            f"generators on {hstar.num_vertices} qubits, state on {s.num_qubits}")
    idx = np.arange(1 << s.num_qubits, dtype=np.uint64)
    keep = np.ones(idx.shape, dtype=bool)
    for e in hstar.edges:
        keep &= (np.bitwise_count(idx & np.uint64(e)) & 1) == 0
    out = np.where(keep, s.amplitudes, 0.0)
    return StateVector(s.num_qubits, out, copy=False)


# ---------------------------------------------------------------------------
# Model builders
# ---------------------------------------------------------------------------

def css_hamiltonian(h: Hypergraph, hstar: Hypergraph, j: float) -> PauliSum:
    """Stabilizer Hamiltonian -j * (sum of X-strings A_e + sum of Z-strings B_e).

    ``h`` supplies the X-type generators (one per edge, assumed GF(2)
    independent); ``hstar`` supplies the Z-type generators (its orthogonal
    complement).  All terms commute by construction.
    """
    if h.num_vertices != hstar.num_vertices:
        raise DimensionMismatchError(
            f"vertex counts differ: {h.num_vertices} vs {hstar.num_vertices}")
    if j <= 0:
        raise ValueError("coupling j must be positive")
    terms = [PauliTerm(e, 0, -j) for e in h.edges]
    terms += [PauliTerm(0, e, -j) for e in hstar.edges]
    return PauliSum(h.num_vertices, terms)


def perturbed_css_hamiltonian(h: Hypergraph, hstar: Hypergraph,
                              j: float, field: float) -> PauliSum:
    """Stabilizer Hamiltonian plus a uniform -field * Z on every qubit."""
    if field < 0:
        raise ValueError("field must be non-negative")
    base = css_hamiltonian(h, hstar, j)
    terms = list(base.terms)
    terms += [PauliTerm(0, 1 << v, -field) for v in range(h.num_vertices)]
    return PauliSum(h.num_vertices, terms, base.constant)


def ising_like_hamiltonian(h: Hypergraph, a: float, b: float,
                           shift: float = 0.0) -> PauliSum:
    """Transverse-field model on a hypergraph:
    -a * sum over edges of (product of X on the edge)
    -b * sum over vertices of Z, plus an identity shift."""
    terms = [PauliTerm(e, 0, -a) for e in h.edges]
    terms += [PauliTerm(0, 1 << v, -b) for v in range(h.num_vertices)]
    return PauliSum(h.num_vertices, terms, shift)


def dual_model(h: Hypergraph, j: float, field: float) -> PauliSum:
    """Dual transverse-field model with the couplings swapped.

    Built on the transposed hypergraph: one X-interaction per vertex of
    ``h`` with coefficient -field, one single-qubit Z per edge of ``h`` with
    coefficient -j, plus the additive constant -j*(K - rank): one -j per
    Z-type generator of the stabilized sector.  Requires independent edges
    (reduce first; see ``independent_set``).

    Vertices of ``h`` contained in no edge would contribute identity
    X-products; each adds -field to the constant instead (with a warning
    from the transpose step about the dropped empty dual edge).
    """
    if j <= 0:
        raise ValueError("coupling j must be positive")
    if field < 0:
        raise ValueError("field must be non-negative")
    ind = independent_set(h)
    if ind.rank != h.num_edges:
        dependent = [i for i in range(h.num_edges)
                     if i not in set(ind.edge_indices)]
        raise DependentEdgesError(
            f"edges {dependent} are GF(2)-dependent; reduce before dualizing")
    k = h.num_vertices
    shift = -j * (k - ind.rank)
    isolated = h.isolated_vertices()
    if isolated:
        shift += -field * len(isolated)
    d = dual(h)
    return ising_like_hamiltonian(d, a=field, b=j, shift=shift)


# ---------------------------------------------------------------------------
# Utilities
# ---------------------------------------------------------------------------

def permute_qubits(hsum: PauliSum, perm: Sequence[int]) -> PauliSum:
    """Relabel qubits: new qubit ``perm[q]`` carries what qubit ``q`` did."""
    if sorted(perm) != list(range(hsum.num_qubits)):
        raise DimensionMismatchError("perm is not a permutation of the qubits")

    def remap(mask: int) -> int:
        out = 0
        for q in bits_of(mask):
            out |= 1 << perm[q]
        return out

    terms = [PauliTerm(remap(t.x_mask), remap(t.z_mask), t.coeff)
             for t in hsum.terms]
    return PauliSum(hsum.num_qubits, terms, hsum.constant)


def format_pauli_sum(hsum: PauliSum) -> str:
    """Debug dump: one ``<coeff> <X-support> | <Z-support>`` line per term
    (1-indexed qubits), then ``const <value>``."""
    lines = []
    for t in hsum.terms:
        parts = [f"{t.coeff:.17g}"]
        parts.extend(str(q + 1) for q in bits_of(t.x_mask))
        parts.append("|")
        parts.extend(str(q + 1) for q in bits_of(t.z_mask))
        lines.append(" ".join(parts))
    lines.append(f"const {hsum.constant:.17g}")
    return "\n".join(lines) + "\n"

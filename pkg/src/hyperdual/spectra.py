"""Spectra and ground-state quantities.

Three solver paths, used by the duality checks and transition scans:

* ``eig_dense``      - assemble the real symmetric matrix and call ``eigh``
                       (hard limit 12 qubits); oracle-grade reference.
* ``ground_lanczos`` - matrix-free Lanczos with full reorthogonalization and
                       seeded restarts.  Restart sweeps continue until the
                       lowest-k Ritz values stop changing, so degenerate
                       levels acquire their full multiplicity (a single
                       Krylov space only ever sees one copy per eigenvalue).
* ``sector_spectrum``- restrict to the joint +1 eigenspace of a set of
                       Z-type generators by GF(2) coset enumeration of the
                       allowed basis states, then diagonalize the reduced
                       dense matrix of dimension 2^rank.

``fidelity_susceptibility`` builds on the Lanczos path and handles ground
degeneracy via the projector onto the lowest eigenspace at the shifted
coupling.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatchError, NotConvergedError, TooLargeError
from .gf2 import gf2_nullspace
from .hypergraph import Hypergraph
from .pauli import PauliSum, StateVector

DENSE_QUBIT_LIMIT = 12
LANCZOS_QUBIT_LIMIT = 24
SECTOR_RANK_LIMIT = 12
SECTOR_EMBED_LIMIT = 16
DEFAULT_SEED = 170915


@dataclass
class SpectrumResult:
    """Eigenvalues (ascending; full spectrum or lowest-k) plus provenance.

    ``residual`` is the largest ``||H v - lambda v||`` over the returned
    eigenpairs (0 for the dense paths).  ``seed`` records the start-vector
    seed for the Lanczos path, ``None`` for deterministic dense solves.
    ``eigenvectors`` (columns matching ``eigenvalues``) is populated by the
    Lanczos path only.
    """

    eigenvalues: np.ndarray
    ground_vector: StateVector | None
    converged: bool
    residual: float
    seed: int | None = None
    eigenvectors: np.ndarray | None = None


def eig_dense(hsum: PauliSum) -> SpectrumResult:
    """Full spectrum by dense diagonalization (up to 12 qubits)."""
    if hsum.num_qubits > DENSE_QUBIT_LIMIT:
        raise TooLargeError(
            f"dense path limited to {DENSE_QUBIT_LIMIT} qubits, "
            f"got {hsum.num_qubits}")
    mat = hsum.to_dense()
    vals, vecs = np.linalg.eigh(mat)
    ground = StateVector(hsum.num_qubits, vecs[:, 0].astype(np.complex128),
                         copy=False)
    return SpectrumResult(eigenvalues=vals, ground_vector=ground,
                          converged=True, residual=0.0)


def ground_lanczos(hsum: PauliSum, k: int = 1, tol: float = 1e-10,
                   max_iter: int = 2000, *,
                   seed: int = DEFAULT_SEED) -> SpectrumResult:
    """Lowest-k eigenpairs by deflated Lanczos sweeps.

    Each sweep runs plain Lanczos with full reorthogonalization (against
    both the sweep basis and all previously locked eigenvectors) from a
    seeded random start, until its bottom Ritz pair converges or the Krylov
    space breaks down; converged Ritz pairs are then locked.  Because every
    sweep starts from fresh randomness in the deflated complement, repeated
    sweeps recover the full multiplicity of degenerate levels, which a
    single Krylov space cannot.  Sweeps stop once an additional sweep
    leaves the lowest-k locked values unchanged within ``tol``, the space
    is exhausted, or ``max_iter`` total matrix applications are spent
    (``converged`` then reflects the true residuals of what was found).
    Deterministic for a fixed ``seed``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if hsum.num_qubits > LANCZOS_QUBIT_LIMIT:
        raise TooLargeError(
            f"Lanczos path limited to {LANCZOS_QUBIT_LIMIT} qubits, "
            f"got {hsum.num_qubits}")
    dim = hsum.dim
    rng = np.random.default_rng(seed)
    lock_tol = tol / 10.0
    locked = _ColumnStore(dim)
    locked_vals: list[float] = []
    iters = 0
    check_every = 8
    snapshot: np.ndarray | None = None
    fallback = None  # last sweep's Ritz data, for the nothing-converged case

    while iters < max_iter and locked.n < dim:
        v = None
        for _ in range(5):
            w = rng.standard_normal(dim)
            w = locked.project_out(locked.project_out(w))
            nw = np.linalg.norm(w)
            if nw > 1e-7:
                v = w / nw
                break
        if v is None:
            break  # complement numerically empty
        sweep = _ColumnStore(dim)
        sweep.add(v)
        alphas: list[float] = []
        betas: list[float] = []
        pending = None
        while iters < max_iter:
            q = sweep.col(sweep.n - 1)
            w = hsum.matvec(q)
            iters += 1
            alphas.append(float(q @ w))
            for _ in range(2):
                w = sweep.project_out(locked.project_out(w))
            beta = float(np.linalg.norm(w))
            m = len(alphas)
            scale = max(1.0, max(abs(a) for a in alphas))
            broke = beta <= 1e-13 * scale
            full = sweep.n + locked.n >= dim
            if (broke or full or m % check_every == 0 or iters >= max_iter):
                theta, ys = _tridiag_eigh(alphas, betas)
                bounds = beta * np.abs(ys[m - 1, :])
                if broke or full or bounds[0] <= lock_tol or iters >= max_iter:
                    pending = (theta, ys, bounds, broke or full)
                    break
            betas.append(beta)
            sweep.add(w / beta)
        if pending is None:
            break
        theta, ys, bounds, exact = pending
        fallback = (theta, ys, sweep)
        lock_cut = max(lock_tol, 1e-12 * max(1.0, float(np.max(np.abs(theta)))))
        newly = range(len(theta)) if exact else \
            np.nonzero(bounds <= lock_cut)[0]
        for i in newly:
            x = sweep.cols() @ ys[:, i]
            x = locked.project_out(x)
            nx = np.linalg.norm(x)
            if nx < 1e-7:
                continue
            locked_vals.append(float(theta[i]))
            locked.add(x / nx)
        if not locked_vals:
            continue
        order = np.argsort(locked_vals)
        kk = min(k, len(locked_vals))
        current = np.array([locked_vals[i] for i in order[:kk]])
        stable = (snapshot is not None and len(snapshot) == kk
                  and bool(np.all(np.abs(current - snapshot) <= max(tol, 1e-13))))
        snapshot = current
        if stable and kk == min(k, dim):
            break

    if not locked_vals:
        if fallback is None:
            raise NotConvergedError(
                f"no eigenpairs found within {max_iter} iterations", None)
        theta, ys, sweep = fallback
        take = np.argsort(theta)[:min(k, len(theta))]
        values = theta[take]
        vectors = sweep.cols() @ ys[:, take]
        vectors /= np.linalg.norm(vectors, axis=0, keepdims=True)
    else:
        order = np.argsort(locked_vals)[:min(k, len(locked_vals))]
        values = np.array([locked_vals[i] for i in order])
        vectors = locked.cols()[:, order].copy()
    residual = 0.0
    for i in range(vectors.shape[1]):
        r = np.linalg.norm(hsum.matvec(vectors[:, i]) - values[i] * vectors[:, i])
        residual = max(residual, float(r))
    converged = residual <= tol
    ground = StateVector(hsum.num_qubits,
                         vectors[:, 0].astype(np.complex128), copy=False)
    return SpectrumResult(eigenvalues=values, ground_vector=ground,
                          converged=bool(converged), residual=residual,
                          seed=seed, eigenvectors=vectors)


class _ColumnStore:
    """Growing store of orthonormal columns with projection helpers."""

    def __init__(self, dim: int, cap: int = 32) -> None:
        self._arr = np.zeros((dim, cap))
        self.n = 0

    def add(self, v: np.ndarray) -> None:
        if self.n == self._arr.shape[1]:
            grown = np.zeros((self._arr.shape[0], 2 * self._arr.shape[1]))
            grown[:, :self.n] = self._arr[:, :self.n]
            self._arr = grown
        self._arr[:, self.n] = v
        self.n += 1

    def col(self, i: int) -> np.ndarray:
        return self._arr[:, i]

    def cols(self) -> np.ndarray:
        return self._arr[:, :self.n]

    def project_out(self, w: np.ndarray) -> np.ndarray:
        if self.n:
            c = self.cols()
            w = w - c @ (c.T @ w)
        return w


def _tridiag_eigh(alphas: list[float], betas: list[float]):
    m = len(alphas)
    tmat = np.diag(alphas)
    if m > 1:
        off = np.asarray(betas[:m - 1])
        tmat[np.arange(m - 1), np.arange(1, m)] = off
        tmat[np.arange(1, m), np.arange(m - 1)] = off
    return np.linalg.eigh(tmat)


def sector_spectrum(hsum: PauliSum, hstar: Hypergraph) -> SpectrumResult:
    """Spectrum of ``hsum`` in the joint +1 eigenspace of the Z-generators.

    The sector is spanned by the computational states whose index has even
    overlap with every edge of ``hstar``; these form the GF(2) nullspace of
    the generator incidence, enumerated explicitly.  ``hsum`` must commute
    with every generator, which also guarantees the X-parts map the sector
    onto itself.  Ground vector is re-embedded in the full register when it
    fits (at most ``SECTOR_EMBED_LIMIT`` qubits).
    """
    if hsum.num_qubits != hstar.num_vertices:
        raise DimensionMismatchError(
            f"operator on {hsum.num_qubits} qubits but generators on "
            f"{hstar.num_vertices}")
    for t in hsum.terms:
        for e in hstar.edges:
            if (t.x_mask & e).bit_count() & 1:
                raise ValueError(
                    "operator does not commute with the Z-type generators; "
                    "no common eigenspace to restrict to")
    support = gf2_nullspace(hstar.incidence())
    r = support.num_rows
    if r > SECTOR_RANK_LIMIT:
        raise TooLargeError(
            f"sector dimension 2^{r} exceeds the dense limit 2^{SECTOR_RANK_LIMIT}")
    states = np.zeros(1 << r, dtype=np.uint64)
    for s in range(1 << r):
        x = 0
        bits = s
        while bits:
            low = bits & -bits
            x ^= support.rows[low.bit_length() - 1]
            bits ^= low
        states[s] = x
    index_of = {int(x): i for i, x in enumerate(states)}

    n = 1 << r
    reduced = np.zeros((n, n))
    for t in hsum.terms:
        vals = np.full(n, t.coeff)
        if t.z_mask:
            par = np.bitwise_count(states & np.uint64(t.z_mask)).astype(np.int64) & 1
            vals = vals * (1.0 - 2.0 * par)
        if t.x_mask == 0:
            reduced[np.arange(n), np.arange(n)] += vals
        else:
            targets = states ^ np.uint64(t.x_mask)
            rows = np.fromiter((index_of[int(x)] for x in targets),
                               count=n, dtype=np.int64)
            reduced[rows, np.arange(n)] += vals
    if hsum.constant:
        reduced[np.arange(n), np.arange(n)] += hsum.constant

    vals, vecs = np.linalg.eigh(reduced)
    ground = None
    if hsum.num_qubits <= SECTOR_EMBED_LIMIT:
        amps = np.zeros(hsum.dim, dtype=np.complex128)
        amps[states.astype(np.int64)] = vecs[:, 0]
        ground = StateVector(hsum.num_qubits, amps, copy=False)
    return SpectrumResult(eigenvalues=vals, ground_vector=ground,
                          converged=True, residual=0.0)


def fidelity_susceptibility(hbuilder: Callable[[float], PauliSum],
                            ratio: float, delta: float, *,
                            k: int = 4, degeneracy_tol: float = 1e-10,
                            tol: float = 1e-10, max_iter: int = 2000,
                            seed: int = DEFAULT_SEED,
                            base_result: SpectrumResult | None = None) -> float:
    """chi_F(ratio) = 2 (1 - overlap) / delta^2.

    ``overlap`` is the norm of the projection of the ground state at
    ``ratio`` onto the lowest eigenspace at ``ratio + delta`` (eigenvalues
    within ``degeneracy_tol`` of the minimum), which reduces to the plain
    ground-state overlap in the nondegenerate case.  ``base_result`` lets
    scans reuse an already-computed solve at ``ratio``.  Raises
    :class:`NotConvergedError` if either eigensolve fails to converge.
    """
    if delta == 0:
        raise ValueError("delta must be nonzero")
    if base_result is None:
        base_result = ground_lanczos(hbuilder(ratio), k=k, tol=tol,
                                     max_iter=max_iter, seed=seed)
    if not base_result.converged:
        raise NotConvergedError(
            f"eigensolve at ratio {ratio} did not converge "
            f"(residual {base_result.residual:.3e})", base_result)
    shifted = ground_lanczos(hbuilder(ratio + delta), k=k, tol=tol,
                             max_iter=max_iter, seed=seed)
    if not shifted.converged:
        raise NotConvergedError(
            f"eigensolve at ratio {ratio + delta} did not converge "
            f"(residual {shifted.residual:.3e})", shifted)
    psi = base_result.ground_vector.amplitudes.real
    vals = shifted.eigenvalues
    members = np.nonzero(vals - vals[0] <= degeneracy_tol)[0]
    space = shifted.eigenvectors[:, members]
    overlap = float(np.linalg.norm(space.T @ psi))
    overlap = min(overlap, 1.0)
    return 2.0 * (1.0 - overlap) / (delta * delta)

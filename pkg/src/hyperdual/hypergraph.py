"""Hypergraphs as GF(2) incidence matrices: dual, orthogonal complement,
independence, self-duality, and the plain-text exchange format.

A hypergraph on K vertices stores each hyperedge as a K-bit incidence vector
(bit ``v`` set iff vertex ``v`` belongs to the edge).  The three derived
objects are:

* ``dual(h)``      - transpose the incidence matrix (vertices and edges swap).
* ``orthogonal(h)``- canonical GF(2) nullspace basis of the incidence matrix,
                     read as edges on the same vertex set.
* ``independent_set(h)`` - greedy maximal independent edge subset.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    FormatError,
    HyperdualWarning,
    SearchBudgetExceededError,
)
from .gf2 import (
    BitMatrix,
    bits_of,
    gf2_independent_rows,
    gf2_nullspace,
    gf2_rank,
    mask_from_bits,
)


class Hypergraph:
    """Immutable hypergraph with bit-packed edge incidence vectors.

    Parameters
    ----------
    num_vertices : int
        Vertex count K (vertices are 0-based internally, 1-based in files).
    edges : iterable of int
        One K-bit mask per hyperedge.  All-zero edges are rejected;
        duplicate edges are rejected unless ``allow_duplicates`` is set.
    """

    __slots__ = ("_num_vertices", "_edges")

    def __init__(self, num_vertices: int, edges: Iterable[int], *,
                 allow_duplicates: bool = False) -> None:
        if num_vertices < 1:
            raise ValueError("hypergraph needs at least one vertex")
        edges = tuple(edges)
        limit = 1 << num_vertices
        seen = set()
        for i, e in enumerate(edges):
            if not isinstance(e, int):
                raise TypeError(f"edge {i} is not an int bitmask")
            if e <= 0 or e >= limit:
                raise ValueError(
                    f"edge {i} must be a nonzero mask over {num_vertices} vertices"
                )
            if not allow_duplicates:
                if e in seen:
                    raise ValueError(
                        f"duplicate edge {i}; pass allow_duplicates=True to permit"
                    )
                seen.add(e)
        self._num_vertices = num_vertices
        self._edges = edges

    @property
    def num_vertices(self) -> int:
        return self._num_vertices

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[int, ...]:
        return self._edges

    @classmethod
    def from_edge_sets(cls, num_vertices: int,
                       edge_sets: Iterable[Iterable[int]], *,
                       allow_duplicates: bool = False) -> "Hypergraph":
        """Build from 0-based vertex index collections."""
        masks = [mask_from_bits(s) for s in edge_sets]
        return cls(num_vertices, masks, allow_duplicates=allow_duplicates)

    def edge_set(self, i: int) -> tuple[int, ...]:
        """Vertices of edge ``i`` (0-based, ascending)."""
        return bits_of(self._edges[i])

    def edge_size(self, i: int) -> int:
        return self._edges[i].bit_count()

    def vertex_degree(self, v: int) -> int:
        bit = 1 << v
        return sum(1 for e in self._edges if e & bit)

    def incidence(self) -> BitMatrix:
        """Edge-by-vertex incidence matrix (row m = edge m)."""
        return BitMatrix(self._edges, self._num_vertices)

    def isolated_vertices(self) -> tuple[int, ...]:
        """Vertices contained in no edge."""
        covered = 0
        for e in self._edges:
            covered |= e
        return bits_of(((1 << self._num_vertices) - 1) & ~covered)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Hypergraph)
                and self._num_vertices == other._num_vertices
                and self._edges == other._edges)

    def __hash__(self) -> int:
        return hash((self._num_vertices, self._edges))

    def __repr__(self) -> str:
        return (f"Hypergraph(K={self._num_vertices}, "
                f"edges={[self.edge_set(i) for i in range(self.num_edges)]})")


@dataclass(frozen=True)
class IndependentSet:
    """Greedy maximal GF(2)-independent edge subset of a hypergraph."""

    edge_indices: tuple[int, ...]
    rank: int


@dataclass(frozen=True)
class SelfDualWitness:
    """Relabeling under which the dual coincides with the original.

    ``vertex_map[i]`` is the original vertex assigned to dual vertex ``i``
    (dual vertex ``i`` is original edge ``i``); ``edge_map[j]`` is the
    original edge matched to dual edge ``j`` (dual edge ``j`` is original
    vertex ``j``).  Both are permutations of ``range(n)``.
    """

    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def rank(h: Hypergraph) -> int:
    """GF(2) rank of the incidence matrix."""
    return gf2_rank(h.incidence())


def dual(h: Hypergraph) -> Hypergraph:
    """Transpose vertices and edges.

    The result has one vertex per edge of ``h`` and one edge per vertex of
    ``h`` (the set of edges containing that vertex).  Vertices of ``h`` that
    lie in no edge would become all-zero edges; they are dropped with a
    warning.
    """
    transposed = h.incidence().transpose()
    kept = [r for r in transposed.rows if r]
    if len(kept) < len(transposed.rows):
        dropped = [v for v, r in enumerate(transposed.rows) if not r]
        warnings.warn(
            f"dual: dropping {len(dropped)} isolated vertex/vertices "
            f"{[v + 1 for v in dropped]} (would be empty dual edges)",
            HyperdualWarning,
            stacklevel=2,
        )
    return Hypergraph(h.num_edges, kept, allow_duplicates=True)


def orthogonal(h: Hypergraph) -> Hypergraph:
    """Orthogonal complement: canonical nullspace basis as edges.

    Same vertex set; ``K - rank`` edges, each with even overlap with every
    edge of ``h``.  Full-rank hypergraphs yield an edge-less hypergraph.
    """
    basis = gf2_nullspace(h.incidence())
    return Hypergraph(h.num_vertices, basis.rows, allow_duplicates=True)


def independent_set(h: Hypergraph) -> IndependentSet:
    """Greedy-by-input-order maximal independent edge subset."""
    keep = gf2_independent_rows(h.incidence())
    return IndependentSet(edge_indices=keep, rank=len(keep))


def reduce_to_independent(h: Hypergraph) -> tuple[Hypergraph, tuple[int, ...]]:
    """Drop GF(2)-dependent edges.

    Returns the reduced hypergraph plus the indices of dropped edges
    (in the original edge order).
    """
    ind = independent_set(h)
    kept = set(ind.edge_indices)
    dropped = tuple(i for i in range(h.num_edges) if i not in kept)
    if not dropped:
        return h, ()
    reduced = Hypergraph(h.num_vertices,
                         [h.edges[i] for i in ind.edge_indices],
                         allow_duplicates=True)
    return reduced, dropped


def apply_witness(h: Hypergraph, witness: SelfDualWitness) -> bool:
    """Check that a witness really maps ``dual(h)`` onto ``h``.

    True iff relabeling dual vertices through ``vertex_map`` turns dual edge
    ``j`` into exactly ``h.edges[edge_map[j]]`` for every ``j``.
    """
    d = dual(h)
    n = h.num_vertices
    if d.num_vertices != n or d.num_edges != h.num_edges:
        return False
    vm, em = witness.vertex_map, witness.edge_map
    if sorted(vm) != list(range(n)) or sorted(em) != list(range(h.num_edges)):
        return False
    for j, de in enumerate(d.edges):
        relabeled = 0
        for i in bits_of(de):
            relabeled |= 1 << vm[i]
        if relabeled != h.edges[em[j]]:
            return False
    return True


def is_self_dual(h: Hypergraph, *, node_budget: int = 500_000):
    """Exact self-duality decision with a relabeling witness.

    Returns a :class:`SelfDualWitness` if ``dual(h)`` can be relabeled into
    ``h``, else ``None``.  Backtracking over vertex assignments with
    degree-signature and co-occurrence pruning; raises
    :class:`SearchBudgetExceededError` (answer unknown) once more than
    ``node_budget`` assignments have been tried.
    """
    d = dual(h)
    n = h.num_vertices
    if d.num_vertices != n or d.num_edges != h.num_edges or h.num_edges != n:
        return None

    h_edges = h.edges
    d_edges = d.edges

    # Quick invariants: sorted edge-size and vertex-degree sequences.
    if sorted(e.bit_count() for e in h_edges) != sorted(
            e.bit_count() for e in d_edges):
        return None
    h_memb = _membership_masks(h_edges, n)
    d_memb = _membership_masks(d_edges, n)
    h_sig = [_vertex_signature(h_memb[v], h_edges) for v in range(n)]
    d_sig = [_vertex_signature(d_memb[v], d_edges) for v in range(n)]
    if sorted(h_sig) != sorted(d_sig):
        return None

    # Candidate original vertices for each dual vertex, by signature class.
    candidates = [
        [w for w in range(n) if h_sig[w] == d_sig[v]] for v in range(n)
    ]
    # Most-constrained-first assignment order.
    order = sorted(range(n), key=lambda v: len(candidates[v]))

    h_edge_count = _mask_counter(h_edges)
    co_d = _cooccurrence(d_memb, n)
    co_h = _cooccurrence(h_memb, n)

    assignment = [-1] * n          # dual vertex -> original vertex
    used = [False] * n
    budget = [node_budget]

    def backtrack(pos: int):
        if pos == n:
            return _finish_edge_map(assignment, d_edges, h_edge_count)
        v = order[pos]
        for w in candidates[v]:
            if used[w]:
                continue
            if budget[0] <= 0:
                raise SearchBudgetExceededError(
                    f"self-duality search exceeded node budget ({node_budget})"
                )
            budget[0] -= 1
            ok = True
            for prev_pos in range(pos):
                u = order[prev_pos]
                if co_d[v][u] != co_h[w][assignment[u]]:
                    ok = False
                    break
            if not ok:
                continue
            assignment[v] = w
            used[w] = True
            result = backtrack(pos + 1)
            if result is not None:
                return result
            assignment[v] = -1
            used[w] = False
        return None

    maps = backtrack(0)
    if maps is None:
        return None
    edge_map = maps
    return SelfDualWitness(vertex_map=tuple(assignment), edge_map=edge_map)


def _membership_masks(edges: Sequence[int], n: int) -> list[int]:
    """For each vertex, the bitmask of edge indices containing it."""
    memb = [0] * n
    for m, e in enumerate(edges):
        for v in bits_of(e):
            memb[v] |= 1 << m
    return memb


def _vertex_signature(memb: int, edges: Sequence[int]) -> tuple:
    sizes = sorted(edges[m].bit_count() for m in bits_of(memb))
    return (memb.bit_count(), tuple(sizes))


def _cooccurrence(memb: Sequence[int], n: int) -> list[list[int]]:
    return [[(memb[a] & memb[b]).bit_count() for b in range(n)]
            for a in range(n)]


def _mask_counter(edges: Sequence[int]) -> dict[int, list[int]]:
    by_mask: dict[int, list[int]] = {}
    for i, e in enumerate(edges):
        by_mask.setdefault(e, []).append(i)
    return by_mask


def _finish_edge_map(assignment: Sequence[int], d_edges: Sequence[int],
                     h_edge_count: dict[int, list[int]]):
    """Match relabeled dual edges to original edges; None if multisets differ."""
    pools = {mask: list(idxs) for mask, idxs in h_edge_count.items()}
    edge_map = []
    for de in d_edges:
        relabeled = 0
        for i in bits_of(de):
            relabeled |= 1 << assignment[i]
        pool = pools.get(relabeled)
        if not pool:
            return None
        edge_map.append(pool.pop(0))
    return tuple(edge_map)


# ---------------------------------------------------------------------------
# Text exchange format
# ---------------------------------------------------------------------------

def format_hypergraph(h: Hypergraph) -> str:
    """Emit the canonical text form.

    ``K <num_vertices>`` / ``E <num_edges>`` / one ``e v1 v2 ...`` line per
    edge with 1-indexed ascending vertex ids.
    """
    lines = [f"K {h.num_vertices}", f"E {h.num_edges}"]
    for i in range(h.num_edges):
        verts = " ".join(str(v + 1) for v in h.edge_set(i))
        lines.append(f"e {verts}")
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str, *, allow_duplicates: bool = False) -> Hypergraph:
    """Parse the text form; raises :class:`FormatError` on any malformation."""
    content = [
        ln.strip() for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if len(content) < 2:
        raise FormatError("expected 'K <n>' and 'E <m>' header lines")
    k = _parse_header(content[0], "K")
    m = _parse_header(content[1], "E")
    if k < 1:
        raise FormatError("vertex count must be at least 1")
    if m < 0:
        raise FormatError("edge count must be non-negative")
    edge_lines = content[2:]
    if len(edge_lines) != m:
        raise FormatError(
            f"header promises {m} edges but {len(edge_lines)} edge lines found"
        )
    masks = []
    for ln in edge_lines:
        parts = ln.split()
        if parts[0] != "e" or len(parts) < 2:
            raise FormatError(f"malformed edge line: {ln!r}")
        try:
            verts = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise FormatError(f"non-integer vertex id in line {ln!r}") from exc
        mask = 0
        for v in verts:
            if v < 1 or v > k:
                raise FormatError(f"vertex id {v} out of range 1..{k}")
            bit = 1 << (v - 1)
            if mask & bit:
                raise FormatError(f"repeated vertex id {v} in line {ln!r}")
            mask |= bit
        masks.append(mask)
    try:
        return Hypergraph(k, masks, allow_duplicates=allow_duplicates)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def _parse_header(line: str, tag: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != tag:
        raise FormatError(f"expected '{tag} <count>' line, got {line!r}")
    try:
        return int(parts[1])
    except ValueError as exc:
        raise FormatError(f"non-integer count in {line!r}") from exc


def read_hypergraph(path, *, allow_duplicates: bool = False) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read(), allow_duplicates=allow_duplicates)


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hypergraph(h))

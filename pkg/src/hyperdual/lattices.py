"""Named hypergraph families: stabilizer hypergraphs of codes on graphs,
the hexagonal two-colex, and the self-dual chain/plaquette/hypercubic models.

Vertex numbering convention (documented so tests can hardcode edges): sites
are grouped into unit cells indexed row-major with the x axis fastest, and
``site_id = cell_index * sites_per_cell + sublattice``.  Sublattices:
honeycomb A=0, B=1; kagome a=0 (x-bond midpoint), b=1 (y-bond midpoint),
c=2 (diagonal-bond midpoint); colex2 uses the honeycomb sites.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import HyperdualWarning, UnsupportedDimsError
from .hypergraph import Hypergraph

GRAPH_KINDS = ("chain", "square", "honeycomb", "triangular", "kagome", "cubic")
KINDS = GRAPH_KINDS + ("colex2",)

_AXES = {"chain": 1, "square": 2, "honeycomb": 2, "triangular": 2,
         "kagome": 2, "cubic": 3, "colex2": 2}

_CELL_SITES = {"chain": 1, "square": 1, "triangular": 1, "cubic": 1,
               "honeycomb": 2, "kagome": 3, "colex2": 2}

# Bonds as (sublattice_from, sublattice_to, cell_offset) per unit cell.
_BONDS: dict[str, tuple[tuple[int, int, tuple[int, ...]], ...]] = {
    "chain": ((0, 0, (1,)),),
    "square": ((0, 0, (1, 0)), (0, 0, (0, 1))),
    "cubic": ((0, 0, (1, 0, 0)), (0, 0, (0, 1, 0)), (0, 0, (0, 0, 1))),
    "triangular": ((0, 0, (1, 0)), (0, 0, (0, 1)), (0, 0, (1, 1))),
    "honeycomb": ((0, 1, (0, 0)), (0, 1, (-1, 0)), (0, 1, (0, -1))),
    "kagome": (
        (0, 1, (0, 0)), (1, 2, (0, 0)), (0, 2, (0, 0)),
        (2, 1, (1, 0)), (2, 0, (0, 1)), (1, 0, (-1, 1)),
    ),
}


class Graph:
    """Undirected graph; edges stored as (u, v) with u < v, insertion order.

    Self-loops are always rejected.  Parallel edges are rejected unless
    ``allow_parallel`` is set (tiny periodic lattices genuinely have them,
    e.g. the 2x2 periodic square lattice where opposite bonds coincide).
    """

    __slots__ = ("_num_vertices", "_edges", "boundary")

    def __init__(self, num_vertices: int, edges: Iterable[tuple[int, int]], *,
                 allow_parallel: bool = False, boundary: str | None = None) -> None:
        if num_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        norm = []
        seen = set()
        for (u, v) in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u},{v}) out of range")
            e = (u, v) if u < v else (v, u)
            if e in seen and not allow_parallel:
                raise ValueError(
                    f"parallel edge {e}; pass allow_parallel=True to permit")
            seen.add(e)
            norm.append(e)
        self._num_vertices = num_vertices
        self._edges = tuple(norm)
        self.boundary = boundary

    @property
    def num_vertices(self) -> int:
        return self._num_vertices

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def degree(self, v: int) -> int:
        return sum(1 for (a, b) in self._edges if v in (a, b))

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(i for i, (a, b) in enumerate(self._edges) if v in (a, b))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Graph)
                and self._num_vertices == other._num_vertices
                and self._edges == other._edges)

    def __hash__(self) -> int:
        return hash((self._num_vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._num_vertices}, edges={list(self._edges)})"


@dataclass(frozen=True)
class LatticeSpec:
    """A named lattice: kind, per-axis extents, and boundary condition."""

    kind: str
    dims: tuple[int, ...]
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise UnsupportedDimsError(
                f"unknown lattice kind {self.kind!r}; expected one of {KINDS}")
        if self.boundary not in ("periodic", "open"):
            raise UnsupportedDimsError(
                f"boundary must be 'periodic' or 'open', got {self.boundary!r}")
        object.__setattr__(self, "dims", tuple(self.dims))
        if len(self.dims) != _AXES[self.kind]:
            raise UnsupportedDimsError(
                f"{self.kind} needs {_AXES[self.kind]} extent(s), "
                f"got {len(self.dims)}")
        if any(d < 1 for d in self.dims):
            raise UnsupportedDimsError("extents must be positive")


def parse_lattice_spec(text: str) -> LatticeSpec:
    """Parse a spec string such as ``square:3x3:open`` or ``chain:8:periodic``.

    Boundary defaults to periodic when omitted.
    """
    parts = text.strip().split(":")
    if len(parts) not in (2, 3) or not parts[0]:
        raise UnsupportedDimsError(
            f"bad lattice spec {text!r}; expected kind:dims[:boundary]")
    kind = parts[0]
    try:
        dims = tuple(int(p) for p in parts[1].split("x"))
    except ValueError as exc:
        raise UnsupportedDimsError(
            f"bad extents in lattice spec {text!r}") from exc
    boundary = parts[2] if len(parts) == 3 else "periodic"
    return LatticeSpec(kind=kind, dims=dims, boundary=boundary)


def _cell_index(coords: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for c, d in zip(reversed(coords), reversed(dims)):
        idx = idx * d + c
    return idx


def build_graph(spec: LatticeSpec) -> Graph:
    """Deterministic graph for any non-colex kind.

    Periodic boundaries wrap bonds; open boundaries drop bonds that would
    leave the patch.  Extent 1 along a periodic axis would create self-loops
    and is rejected; extent 2 creates parallel bonds, which are kept (with a
    warning) because the wrapped lattice genuinely has them.
    """
    if spec.kind == "colex2":
        raise UnsupportedDimsError(
            "colex2 is a hypergraph-only kind; use colex2_hypergraph")
    dims = spec.dims
    periodic = spec.boundary == "periodic"
    if periodic and any(d == 1 for d in dims):
        raise UnsupportedDimsError(
            "periodic extent 1 creates self-loops; use extent >= 2 or open")
    sites = _CELL_SITES[spec.kind]
    edges: list[tuple[int, int]] = []
    for cell in _iter_cells(dims):
        base = _cell_index(cell, dims)
        for (s_from, s_to, offset) in _BONDS[spec.kind]:
            target = []
            ok = True
            for c, off, d in zip(cell, offset, dims):
                t = c + off
                if periodic:
                    t %= d
                elif t < 0 or t >= d:
                    ok = False
                    break
                target.append(t)
            if not ok:
                continue
            u = base * sites + s_from
            v = _cell_index(target, dims) * sites + s_to
            edges.append((u, v))
    num_vertices = prod(dims) * sites
    has_parallel = len({tuple(sorted(e)) for e in edges}) < len(edges)
    if has_parallel:
        warnings.warn(
            f"{spec.kind} {'x'.join(map(str, dims))} periodic patch has "
            "parallel bonds (extent 2 wraps onto itself)",
            HyperdualWarning,
            stacklevel=2,
        )
    return Graph(num_vertices, edges, allow_parallel=has_parallel,
                 boundary=spec.boundary)


def _iter_cells(dims: Sequence[int]):
    coords = [0] * len(dims)
    total = prod(dims)
    for _ in range(total):
        yield tuple(coords)
        for ax in range(len(dims)):
            coords[ax] += 1
            if coords[ax] < dims[ax]:
                break
            coords[ax] = 0


def toric_code_hypergraph(g: Graph) -> Hypergraph:
    """Qubits on graph edges, one hyperedge per vertex star.

    The hyperedge of vertex v collects the indices of v's incident edges;
    these are the X-type generators.  Z-type generators are not built here:
    the orthogonal complement of the result supplies them (it contains the
    plaquette operators).
    """
    if g.num_edges == 0:
        raise ValueError("graph has no edges, so there are no qubits")
    stars = []
    for v in range(g.num_vertices):
        mask = 0
        for i, (a, b) in enumerate(g.edges):
            if v in (a, b):
                mask |= 1 << i
        if mask == 0:
            raise ValueError(f"vertex {v} has no incident edges")
        stars.append(mask)
    return Hypergraph(g.num_edges, stars, allow_duplicates=True)


def colex2_hypergraph(spec: LatticeSpec) -> Hypergraph:
    """Hexagonal two-colex: sites on the honeycomb, one hyperedge per hexagon.

    Hexagon (i,j) collects the six sites
    A(i,j), B(i,j), A(i+1,j), B(i+1,j-1), A(i+1,j-1), B(i,j-1) (periodic).
    Every site lies in exactly three hexagons and the hexagon count is half
    the site count.  A proper face three-coloring exists only when both
    extents are multiples of 3; other extents are still valid hypergraphs
    and are accepted with a warning.
    """
    if spec.kind != "colex2":
        raise UnsupportedDimsError(f"expected colex2 spec, got {spec.kind!r}")
    if spec.boundary != "periodic":
        raise UnsupportedDimsError("colex2 is defined on periodic patches only")
    lx, ly = spec.dims
    if lx < 2 or ly < 2:
        raise UnsupportedDimsError(
            "colex2 extents must be >= 2 (hexagon corners must be distinct)")
    if lx % 3 or ly % 3:
        warnings.warn(
            f"colex2 {lx}x{ly}: face three-coloring needs extents divisible "
            "by 3; hypergraph is still well formed",
            HyperdualWarning,
            stacklevel=2,
        )
    def site(i: int, j: int, sub: int) -> int:
        return ((j % ly) * lx + (i % lx)) * 2 + sub

    edges = []
    for j in range(ly):
        for i in range(lx):
            corners = (
                site(i, j, 0), site(i, j, 1), site(i + 1, j, 0),
                site(i + 1, j - 1, 1), site(i + 1, j - 1, 0), site(i, j - 1, 1),
            )
            mask = 0
            for c in corners:
                mask |= 1 << c
            edges.append(mask)
    return Hypergraph(2 * lx * ly, edges, allow_duplicates=True)


def selfdual_hypercubic(d: int, dims: Sequence[int]) -> Hypergraph:
    """Periodic d-dimensional model: qubits on sites, one hyperedge per unit
    cell containing its 2^d corners.

    Reduces to the chain at d=1 and the square-plaquette model at d=2.
    Extents of 2 make distinct cells share the same corner set; such
    duplicate hyperedges are kept (the model genuinely has one generator per
    cell) with a warning.
    """
    dims = tuple(dims)
    if d < 1:
        raise UnsupportedDimsError("dimension must be >= 1")
    if len(dims) != d:
        raise UnsupportedDimsError(f"expected {d} extents, got {len(dims)}")
    if any(l < 2 for l in dims):
        raise UnsupportedDimsError(
            "extents must be >= 2 (extent 1 collapses cell corners)")
    edges = []
    for cell in _iter_cells(dims):
        mask = 0
        for corner_bits in range(1 << d):
            coords = [
                (c + ((corner_bits >> ax) & 1)) % dims[ax]
                for ax, c in enumerate(cell)
            ]
            mask |= 1 << _cell_index(coords, dims)
        edges.append(mask)
    if len(set(edges)) < len(edges):
        warnings.warn(
            "hypercubic cell corner sets coincide at extent 2; duplicate "
            "hyperedges kept",
            HyperdualWarning,
            stacklevel=2,
        )
    return Hypergraph(prod(dims), edges, allow_duplicates=True)


def selfdual_chain(n: int) -> Hypergraph:
    """Periodic chain model: n qubits, hyperedges {i, i+1 mod n}."""
    if n < 2:
        raise UnsupportedDimsError("chain needs n >= 2")
    return selfdual_hypercubic(1, (n,))


def selfdual_plaquette(l: int) -> Hypergraph:
    """Periodic l x l plaquette model: qubits on sites, four-corner hyperedges."""
    if l < 2:
        raise UnsupportedDimsError("plaquette model needs l >= 2")
    return selfdual_hypercubic(2, (l, l))


def hypergraph_from_spec_string(text: str) -> Hypergraph:
    """Resolve a CLI-facing spec string to a hypergraph.

    Graph kinds produce the code hypergraph of the built graph
    (qubits on edges, vertex-star hyperedges); ``colex2`` produces the
    two-colex; ``plaquette:LxL`` and ``hypercubic:L1x...xLd`` produce the
    self-dual families directly.
    """
    head = text.strip().split(":", 1)[0]
    if head == "plaquette":
        spec = text.strip().split(":")
        dims = _parse_extents(spec[1] if len(spec) > 1 else "")
        if len(dims) != 2 or dims[0] != dims[1]:
            raise UnsupportedDimsError(
                f"plaquette spec needs square extents LxL, got {text!r}")
        return selfdual_plaquette(dims[0])
    if head == "hypercubic":
        spec = text.strip().split(":")
        dims = _parse_extents(spec[1] if len(spec) > 1 else "")
        return selfdual_hypercubic(len(dims), dims)
    spec = parse_lattice_spec(text)
    if spec.kind == "colex2":
        return colex2_hypergraph(spec)
    return toric_code_hypergraph(build_graph(spec))


def _parse_extents(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(p) for p in text.split("x"))
    except ValueError as exc:
        raise UnsupportedDimsError(f"bad extents {text!r}") from exc
    if not dims:
        raise UnsupportedDimsError("empty extents")
    return dims

"""Persistence pairs from filtered complexes via Z2 boundary reduction.

``reduce`` is the plain standard column reduction (optionally with the
twist/clearing optimization), faithful to the textbook algorithm so that the
small hand-checked oracles in the test suite apply to it directly.
``compute_diagrams`` routes large Rips complexes through an equivalent dual
(coboundary) reduction instead, whose output pairing is identical; the
pairing of a filtration is unique whatever the reduction order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _dual
from .errors import InvariantViolationError
from .rips import FilteredComplex

INF = math.inf

# Above this simplex count, compute_diagrams switches to the dual path.
_FAST_PATH_THRESHOLD = 20_000


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float  # math.inf for essential classes


def lifespan(pair: PersistencePair) -> float:
    """death - birth; +inf for essential pairs."""
    return pair.death - pair.birth


@dataclass(frozen=True)
class BoundaryColumn:
    """Z2 boundary chain of one simplex, as sorted facet positions."""

    simplex_index: int
    chain: tuple[int, ...]


class PersistenceDiagram:
    """Multiset of (birth, death) pairs of one homology dimension.

    ``finite_pairs`` is an (n, 2) array with death > birth on every row;
    ``essential_births`` holds the births of classes that never die.
    """

    def __init__(self, dim: int, finite_pairs=None, essential_births=None):
        fp = np.asarray(
            finite_pairs if finite_pairs is not None else np.empty((0, 2)), dtype=np.float64
        )
        if fp.size == 0:
            fp = fp.reshape(0, 2)
        if fp.ndim != 2 or fp.shape[1] != 2:
            raise ValueError("finite_pairs must be an (n, 2) array")
        if not (fp[:, 1] > fp[:, 0]).all():
            raise ValueError("every finite pair needs death > birth")
        eb = np.asarray(
            essential_births if essential_births is not None else np.empty(0), dtype=np.float64
        ).reshape(-1)
        fp.setflags(write=False)
        eb.setflags(write=False)
        self.dim = int(dim)
        self.finite_pairs = fp
        self.essential_births = eb

    @property
    def n_finite(self) -> int:
        return self.finite_pairs.shape[0]

    @property
    def n_essential(self) -> int:
        return self.essential_births.shape[0]

    def is_empty(self) -> bool:
        return self.n_finite == 0 and self.n_essential == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.finite_pairs, other.finite_pairs)
            and np.array_equal(self.essential_births, other.essential_births)
        )

    def __repr__(self) -> str:
        return (
            f"PersistenceDiagram(dim={self.dim}, finite={self.n_finite}, "
            f"essential={self.n_essential})"
        )


def boundary_columns(cx: FilteredComplex) -> list[BoundaryColumn]:
    """Boundary chains of every simplex, in filtration order.

    Raises InvariantViolationError if any facet comes after its coface.
    """
    chains = _position_chains(cx)
    return [BoundaryColumn(j, tuple(sorted(c))) for j, c in enumerate(chains)]


def _position_chains(cx: FilteredComplex) -> list[np.ndarray]:
    m = len(cx)
    empty = np.empty(0, dtype=np.int64)
    chains = [empty] * m
    for k in range(1, cx.max_dim + 1):
        if cx.count(k) == 0:
            continue
        facets = cx.facet_positions(k)
        pos = cx._pos[k]
        if (facets >= pos[:, None]).any():
            raise InvariantViolationError("face listed after its coface")
        for row in range(len(pos)):
            chains[pos[row]] = facets[row]
    return chains


def _reduce_standard(cx: FilteredComplex) -> tuple[list[tuple[int, int]], list[int]]:
    chains = _position_chains(cx)
    pivot: dict[int, int] = {}
    stored: dict[int, set[int]] = {}
    pairs: list[tuple[int, int]] = []
    for j in range(len(chains)):
        chain = set(chains[j])
        low = -1
        while chain:
            low = max(chain)
            owner = pivot.get(low)
            if owner is None:
                break
            chain ^= stored[owner]
        if chain:
            pivot[low] = j
            stored[j] = chain
            pairs.append((low, j))
    return pairs, _essential_positions(len(chains), pairs)


def _reduce_twist(cx: FilteredComplex) -> tuple[list[tuple[int, int]], list[int]]:
    # Same pairing as _reduce_standard; dimensions are processed top-down and
    # every column claimed as a pivot row is cleared without reduction.
    chains = _position_chains(cx)
    pivot: dict[int, int] = {}
    stored: dict[int, set[int]] = {}
    pairs: list[tuple[int, int]] = []
    cleared: set[int] = set()
    for k in range(cx.max_dim, 0, -1):
        if cx.count(k) == 0:
            continue
        for j in (int(p) for p in cx._pos[k]):
            if j in cleared:
                continue
            chain = set(chains[j])
            low = -1
            while chain:
                low = max(chain)
                owner = pivot.get(low)
                if owner is None:
                    break
                chain ^= stored[owner]
            if chain:
                pivot[low] = j
                stored[j] = chain
                pairs.append((low, j))
                cleared.add(low)
    pairs.sort(key=lambda ij: ij[1])
    return pairs, _essential_positions(len(chains), pairs)


def _essential_positions(m: int, pairs: list[tuple[int, int]]) -> list[int]:
    used = set()
    for i, j in pairs:
        used.add(i)
        used.add(j)
    return [p for p in range(m) if p not in used]


def _rips_pairs_dual(cx: FilteredComplex) -> tuple[list[tuple[int, int]], list[int]]:
    """Pairs and essentials for dims < max_dim via union-find + dual reduction."""
    n = cx.n_vertices
    vert_pos = cx._pos[0]
    pairs: list[tuple[int, int]] = []
    essentials: list[int] = []

    parent = np.arange(n, dtype=np.int64)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, int(parent[x])
        return int(root)

    n_edges = cx.count(1)
    negative = np.zeros(n_edges, dtype=bool)
    if n_edges:
        edge_pos = cx._pos[1]
        edge_verts = cx._verts[1]
        for e in range(n_edges):
            ru = find(int(edge_verts[e, 0]))
            rv = find(int(edge_verts[e, 1]))
            if ru != rv:
                negative[e] = True
                young, old = max(ru, rv), min(ru, rv)
                pairs.append((int(vert_pos[young]), int(edge_pos[e])))
                parent[young] = old
    for v in range(n):
        if find(v) == v:
            essentials.append(int(vert_pos[v]))

    if cx.max_dim >= 2 and n_edges:
        n_tri = cx.count(2)
        if n_tri:
            edge_pos = cx._pos[1]
            tri_pos = cx._pos[2]
            tri_facets = cx.facet_positions(2)
            # Coboundary columns: per edge row, its cofacet triangle rows
            # ascending (triangle rows are already in position order).
            flat_e = np.searchsorted(edge_pos, tri_facets.ravel())
            flat_t = np.repeat(np.arange(n_tri, dtype=np.int64), 3)
            order = np.lexsort((flat_t, flat_e))
            data = flat_t[order]
            counts = np.bincount(flat_e, minlength=n_edges)
            indptr = np.zeros(n_edges + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            cols = np.nonzero(~negative)[0][::-1].astype(np.int64)
            pair_e, pair_t, zero_e = _dual.dual_reduce(indptr, data, cols, n_tri)
            for e, t in zip(pair_e, pair_t):
                pairs.append((int(edge_pos[e]), int(tri_pos[t])))
            for e in zero_e:
                essentials.append(int(edge_pos[e]))
        else:
            for e in np.nonzero(~negative)[0]:
                essentials.append(int(cx._pos[1][e]))
    elif cx.max_dim >= 2:
        pass
    elif n_edges:
        # max_dim == 1: positive edges are (unreliable) dim-1 essentials;
        # diagrams() drops the top dimension anyway.
        for e in np.nonzero(~negative)[0]:
            essentials.append(int(cx._pos[1][e]))

    pairs.sort(key=lambda ij: ij[1])
    return pairs, sorted(essentials)


def _pairs_from_positions(cx, pairs_pos, essential_pos) -> list[PersistencePair]:
    out = []
    for i, j in pairs_pos:
        out.append(PersistencePair(cx.dim_of(i), cx.value_of(i), cx.value_of(j)))
    for p in essential_pos:
        out.append(PersistencePair(cx.dim_of(p), cx.value_of(p), INF))
    return out


def reduce(cx: FilteredComplex, clearing: bool = False) -> list[PersistencePair]:
    """Standard column reduction of the full boundary matrix.

    Zero-lifespan pairs are kept here and dropped by ``diagrams``.
    """
    pairs_pos, ess = _reduce_twist(cx) if clearing else _reduce_standard(cx)
    return _pairs_from_positions(cx, pairs_pos, ess)


def diagrams(pairs: list[PersistencePair], complex_max_dim: int) -> dict[int, PersistenceDiagram]:
    """Bucket pairs by dimension, for dims below the complex dimension cap.

    Top-dimension classes need the next skeleton to be trusted and are
    dropped; so are zero-lifespan pairs, which no metric or landscape sees.
    """
    out: dict[int, PersistenceDiagram] = {}
    for dim in range(complex_max_dim):
        finite = [(p.birth, p.death) for p in pairs if p.dim == dim and INF > p.death > p.birth]
        ess = [p.birth for p in pairs if p.dim == dim and p.death == INF]
        finite.sort()
        ess.sort()
        out[dim] = PersistenceDiagram(dim, np.asarray(finite).reshape(-1, 2), ess)
    return out


def compute_diagrams(cx: FilteredComplex, method: str = "auto") -> dict[int, PersistenceDiagram]:
    """Diagrams for dims 0..max_dim-1 of a filtered complex.

    ``method`` is "auto", "standard", or "dual"; "auto" picks the dual path
    for large complexes of dimension <= 2.
    """
    if method not in ("auto", "standard", "dual"):
        raise ValueError(f"unknown method {method!r}")
    use_dual = method == "dual" or (
        method == "auto" and len(cx) > _FAST_PATH_THRESHOLD and cx.max_dim <= 2
    )
    if use_dual:
        if cx.max_dim > 2:
            raise ValueError("dual path supports max_dim <= 2")
        pairs_pos, ess = _rips_pairs_dual(cx)
        pairs = _pairs_from_positions(cx, pairs_pos, ess)
    else:
        pairs = reduce(cx)
    return diagrams(pairs, cx.max_dim)

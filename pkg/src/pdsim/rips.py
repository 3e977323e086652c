"""Vietoris-Rips filtrations built from explicit distance matrices.

A simplex enters the filtration at the largest pairwise distance among its
vertices, so a vertex set is a simplex at parameter t exactly when all its
pairwise distances are <= t.  The complex stores its simplices in a single
total order (value, dim, lexicographic vertices), which puts every face before
its cofaces and makes downstream matrix reduction deterministic.

Simplices are kept in per-dimension integer arrays rather than one object per
simplex; demo-scale complexes reach millions of triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .sampling import DistanceMatrix


@dataclass(frozen=True)
class FilteredSimplex:
    vertices: tuple[int, ...]
    value: float

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


class FilteredComplex:
    """A filtered simplicial complex in reduction-ready total order.

    ``vertices_of``/``value_of``/``dim_of`` address simplices by their global
    filtration position.  ``facet_positions(k)`` returns, for every dim-k
    simplex (in position order), the global positions of its k+1 facets.
    """

    def __init__(self, verts_by_dim, values_by_dim, max_dim, max_value, n_vertices):
        dims_list = [d for d in range(len(verts_by_dim)) if len(verts_by_dim[d])]
        counts = [len(verts_by_dim[d]) for d in dims_list]
        m = int(sum(counts))
        width = max(d + 1 for d in dims_list)

        val = np.concatenate([np.asarray(values_by_dim[d], dtype=np.float64) for d in dims_list])
        dim = np.concatenate(
            [np.full(len(verts_by_dim[d]), d, dtype=np.int8) for d in dims_list]
        )
        pad = np.zeros((m, width), dtype=np.int64)
        row0 = 0
        for d, c in zip(dims_list, counts):
            pad[row0 : row0 + c, : d + 1] = verts_by_dim[d]
            row0 += c

        # Primary key value, then dim, then lexicographic vertices.
        keys = tuple(pad[:, c] for c in reversed(range(width))) + (dim, val)
        order = np.lexsort(keys)

        self.values = val[order]
        self.dims = dim[order]
        self.max_dim = int(max_dim)
        self.max_value = float(max_value)
        self.n_vertices = int(n_vertices)

        self._verts: dict[int, np.ndarray] = {}
        self._pos: dict[int, np.ndarray] = {}
        self._vals: dict[int, np.ndarray] = {}
        padded_sorted = pad[order]
        positions = np.arange(m, dtype=np.int64)
        for d in dims_list:
            sel = self.dims == d
            self._verts[d] = np.ascontiguousarray(padded_sorted[sel, : d + 1])
            self._pos[d] = positions[sel]
            self._vals[d] = self.values[sel]

        self._facet_cache: dict[int, np.ndarray] = {}
        self._key_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def __len__(self) -> int:
        return self.values.shape[0]

    def count(self, dim: int) -> int:
        return len(self._verts[dim]) if dim in self._verts else 0

    def dim_of(self, pos: int) -> int:
        return int(self.dims[pos])

    def value_of(self, pos: int) -> float:
        return float(self.values[pos])

    def vertices_of(self, pos: int) -> tuple[int, ...]:
        d = self.dim_of(pos)
        row = int(np.searchsorted(self._pos[d], pos))
        return tuple(int(v) for v in self._verts[d][row])

    def simplex_at(self, pos: int) -> FilteredSimplex:
        return FilteredSimplex(self.vertices_of(pos), self.value_of(pos))

    def simplices(self) -> Iterator[FilteredSimplex]:
        for pos in range(len(self)):
            yield self.simplex_at(pos)

    def position_of(self, vertices) -> int:
        verts = tuple(sorted(int(v) for v in vertices))
        d = len(verts) - 1
        if d not in self._verts:
            raise KeyError(f"no simplex {verts}")
        keys, sorter = self._keys(d)
        key = self._encode(np.asarray([verts], dtype=np.int64))[0]
        i = np.searchsorted(keys, key, sorter=sorter)
        if i >= len(keys) or keys[sorter[i]] != key:
            raise KeyError(f"no simplex {verts}")
        return int(self._pos[d][sorter[i]])

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        # Horner encoding of sorted vertex tuples; fits int64 for any
        # realistic (n, dim) here.
        base = np.int64(self.n_vertices)
        if rows.shape[1] > 0 and self.n_vertices ** rows.shape[1] >= 2**62:
            raise OverflowError("complex too large for integer face keys")
        key = np.zeros(len(rows), dtype=np.int64)
        for c in range(rows.shape[1]):
            key = key * base + rows[:, c]
        return key

    def _keys(self, d: int) -> tuple[np.ndarray, np.ndarray]:
        if d not in self._key_cache:
            keys = self._encode(self._verts[d])
            self._key_cache[d] = (keys, np.argsort(keys, kind="stable"))
        return self._key_cache[d]

    def facet_positions(self, dim: int) -> np.ndarray:
        """Global positions of the facets of every dim-``dim`` simplex."""
        if dim < 1:
            raise ValueError("vertices have no facets")
        if dim in self._facet_cache:
            return self._facet_cache[dim]
        verts = self._verts.get(dim)
        if verts is None or not len(verts):
            out = np.empty((0, dim + 1), dtype=np.int64)
            self._facet_cache[dim] = out
            return out
        keys, sorter = self._keys(dim - 1)
        out = np.empty((len(verts), dim + 1), dtype=np.int64)
        cols = np.arange(dim + 1)
        for drop in range(dim + 1):
            fverts = verts[:, cols[cols != drop]]
            fkeys = self._encode(fverts)
            idx = sorter[np.searchsorted(keys, fkeys, sorter=sorter)]
            out[:, drop] = self._pos[dim - 1][idx]
        out.setflags(write=False)
        self._facet_cache[dim] = out
        return out


def build_rips(d: DistanceMatrix, max_dim: int, max_value: float | None = None) -> FilteredComplex:
    """Build the Rips filtration of ``d`` up to ``max_dim`` and value ``max_value``.

    ``max_value`` defaults to the largest entry of ``d``; ``max_dim`` is
    silently clamped to n-1.  For homology up to H_k pass ``max_dim >= k+1``.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    D = d.d
    n = d.n
    if n == 0:
        raise ValueError("empty distance matrix")
    if max_value is None:
        cap = float(D.max()) if n > 1 else 0.0
    else:
        cap = float(max_value)
        if cap <= 0.0:
            raise ValueError("max_value must be > 0")
    md = min(max_dim, n - 1)

    verts_by_dim: list[np.ndarray] = [np.arange(n, dtype=np.int64)[:, None]]
    values_by_dim: list[np.ndarray] = [np.zeros(n)]

    if md >= 1:
        mask = np.triu(D <= cap, k=1)
        iu, ju = np.nonzero(mask)
        edges = np.column_stack((iu, ju)).astype(np.int64)
        verts_by_dim.append(edges)
        values_by_dim.append(D[iu, ju])

        adj = (D <= cap) & ~np.eye(n, dtype=bool)
        prev, prev_vals = edges, values_by_dim[1]
        for k in range(2, md + 1):
            rows, vals = [], []
            for s in range(len(prev)):
                vs = prev[s]
                cand = adj[vs[0]]
                for v in vs[1:]:
                    cand = cand & adj[v]
                ks = np.nonzero(cand)[0]
                ks = ks[ks > vs[-1]]
                if ks.size:
                    new = np.empty((ks.size, k + 1), dtype=np.int64)
                    new[:, :k] = vs
                    new[:, k] = ks
                    dv = np.full(ks.size, prev_vals[s])
                    for v in vs:
                        dv = np.maximum(dv, D[v, ks])
                    rows.append(new)
                    vals.append(dv)
            if not rows:
                break
            prev = np.concatenate(rows)
            prev_vals = np.concatenate(vals)
            verts_by_dim.append(prev)
            values_by_dim.append(prev_vals)

    return FilteredComplex(verts_by_dim, values_by_dim, md, cap, n)

"""Column-reduction kernels for the large-complex fast path.

The fast path reduces the anti-transposed (coboundary) matrix dimension by
dimension, which yields exactly the same persistence pairing as the standard
boundary reduction but touches only the columns of the dimension being read
off.  Columns are ascending int64 arrays of cofacet row ids; the pivot is the
smallest entry, which corresponds to the largest row of the anti-transpose.

A numba-compiled kernel handles demo-scale complexes; the pure-Python twin
below implements the identical algorithm and is used when numba is missing
(and by the test suite to cross-check the compiled kernel).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
    from numba.typed import List as NumbaList

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def _symdiff_py(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(a.size + b.size, dtype=np.int64)
    i = j = k = 0
    while i < a.size and j < b.size:
        if a[i] < b[j]:
            out[k] = a[i]
            i += 1
            k += 1
        elif a[i] > b[j]:
            out[k] = b[j]
            j += 1
            k += 1
        else:
            i += 1
            j += 1
    while i < a.size:
        out[k] = a[i]
        i += 1
        k += 1
    while j < b.size:
        out[k] = b[j]
        j += 1
        k += 1
    return out[:k]


def dual_reduce_py(indptr, data, cols, n_rows):
    """Reduce the given coboundary columns (in the given order) over Z2.

    Returns (paired_cols, paired_rows, zero_cols): column c pairs with pivot
    row r, or reduces to zero.
    """
    owner = np.full(n_rows, -1, dtype=np.int64)
    stored: list[np.ndarray] = []
    pair_c = np.empty(cols.size, dtype=np.int64)
    pair_r = np.empty(cols.size, dtype=np.int64)
    zeros = np.empty(cols.size, dtype=np.int64)
    n_pairs = n_zero = 0
    for c in cols:
        col = data[indptr[c] : indptr[c + 1]].copy()
        while col.size > 0:
            piv = col[0]
            own = owner[piv]
            if own < 0:
                owner[piv] = len(stored)
                stored.append(col)
                pair_c[n_pairs] = c
                pair_r[n_pairs] = piv
                n_pairs += 1
                break
            col = _symdiff_py(col, stored[own])
        if col.size == 0:
            zeros[n_zero] = c
            n_zero += 1
    return pair_c[:n_pairs], pair_r[:n_pairs], zeros[:n_zero]


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _symdiff_nb(a, b):  # pragma: no cover - compiled
        out = np.empty(a.size + b.size, dtype=np.int64)
        i = j = k = 0
        while i < a.size and j < b.size:
            if a[i] < b[j]:
                out[k] = a[i]
                i += 1
                k += 1
            elif a[i] > b[j]:
                out[k] = b[j]
                j += 1
                k += 1
            else:
                i += 1
                j += 1
        while i < a.size:
            out[k] = a[i]
            i += 1
            k += 1
        while j < b.size:
            out[k] = b[j]
            j += 1
            k += 1
        return out[:k].copy()

    @njit(cache=True, nogil=True)
    def _dual_reduce_nb(indptr, data, cols, n_rows, stored):  # pragma: no cover
        owner = np.full(n_rows, -1, dtype=np.int64)
        pair_c = np.empty(cols.size, dtype=np.int64)
        pair_r = np.empty(cols.size, dtype=np.int64)
        zeros = np.empty(cols.size, dtype=np.int64)
        n_pairs = 0
        n_zero = 0
        for ci in range(cols.size):
            c = cols[ci]
            col = data[indptr[c] : indptr[c + 1]].copy()
            while col.size > 0:
                piv = col[0]
                own = owner[piv]
                if own < 0:
                    owner[piv] = len(stored)
                    stored.append(col)
                    pair_c[n_pairs] = c
                    pair_r[n_pairs] = piv
                    n_pairs += 1
                    break
                col = _symdiff_nb(col, stored[own])
            if col.size == 0:
                zeros[n_zero] = c
                n_zero += 1
        return pair_c[:n_pairs], pair_r[:n_pairs], zeros[:n_zero]

    def dual_reduce_nb(indptr, data, cols, n_rows):
        stored = NumbaList()
        stored.append(np.empty(0, dtype=np.int64))  # pin the element type
        stored.pop()
        return _dual_reduce_nb(
            indptr.astype(np.int64),
            data.astype(np.int64),
            cols.astype(np.int64),
            n_rows,
            stored,
        )

else:  # pragma: no cover
    dual_reduce_nb = None


def dual_reduce(indptr, data, cols, n_rows):
    """Dispatch to the compiled kernel when available."""
    if HAVE_NUMBA:
        return dual_reduce_nb(indptr, data, cols, n_rows)
    return dual_reduce_py(indptr, data, cols, n_rows)

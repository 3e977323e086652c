"""Exact piecewise-linear persistence landscapes.

A diagram's landscape is the sequence of pointwise j-th maxima of the tent
functions of its pairs.  Layers are built by a sort-and-sweep over tent
events, so every knot is exact (tent endpoints, peaks, and pairwise tent
crossings, all of which are half-integer combinations of births and deaths).
Norms and inner products integrate segment by segment in closed form.

Contributions are accumulated with ``math.fsum`` so that results do not
depend on summation order.
"""

from __future__ import annotations

import math
from bisect import insort
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function given by its knots, zero outside them.

    Knots are an (m, 2) array of (t, y) with strictly increasing t and no
    three consecutive collinear knots; an empty array is the zero function.
    Landscape layers keep y >= 0 with zero endpoints; signed differences may
    carry negative y.
    """

    knots: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.knots, dtype=np.float64)
        if k.size == 0:
            k = k.reshape(0, 2)
        if k.ndim != 2 or k.shape[1] != 2:
            raise ValueError("knots must be an (m, 2) array")
        if k.shape[0] and not (np.diff(k[:, 0]) > 0).all():
            raise ValueError("knot abscissae must be strictly increasing")
        k.setflags(write=False)
        object.__setattr__(self, "knots", k)

    def is_zero(self) -> bool:
        return self.knots.shape[0] == 0

    @property
    def support(self) -> tuple[float, float] | None:
        if self.is_zero():
            return None
        return float(self.knots[0, 0]), float(self.knots[-1, 0])

    def __call__(self, t):
        if self.is_zero():
            return np.zeros_like(np.asarray(t, dtype=np.float64)) if np.ndim(t) else 0.0
        out = np.interp(t, self.knots[:, 0], self.knots[:, 1], left=0.0, right=0.0)
        return out if np.ndim(t) else float(out)


@dataclass(frozen=True)
class PersistenceLandscape:
    """Finite sequence of landscape layers; layers beyond the list are zero."""

    layers: tuple[PLFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))

    @property
    def n_layers(self) -> int:
        return len(self.layers)

    def layer(self, j: int) -> PLFunction:
        """1-based layer access; zero function beyond the stored layers."""
        if j < 1:
            raise ValueError("layer index starts at 1")
        if j > len(self.layers):
            return _ZERO
        return self.layers[j - 1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceLandscape):
            return NotImplemented
        return len(self.layers) == len(other.layers) and all(
            np.array_equal(a.knots, b.knots) for a, b in zip(self.layers, other.layers)
        )


_ZERO = PLFunction(np.empty((0, 2)))


def _canonical(points: list[tuple[float, float]], trim_zero_tails: bool = True) -> PLFunction:
    """Drop duplicate and collinear knots; optionally trim flat zero tails."""
    pts: list[tuple[float, float]] = []
    for t, y in points:
        if pts and pts[-1][0] == t:
            if pts[-1][1] != y:
                raise ValueError("conflicting knots at one abscissa")
            continue
        pts.append((t, y))
    out: list[tuple[float, float]] = []
    for p in pts:
        while len(out) >= 2:
            (t0, y0), (t1, y1) = out[-2], out[-1]
            if (y1 - y0) * (p[0] - t1) == (p[1] - y1) * (t1 - t0):
                out.pop()
            else:
                break
        out.append(p)
    if trim_zero_tails:
        while len(out) >= 2 and out[0][1] == 0.0 and out[1][1] == 0.0:
            out.pop(0)
        while len(out) >= 2 and out[-1][1] == 0.0 and out[-2][1] == 0.0:
            out.pop()
    if all(y == 0.0 for _, y in out):
        return _ZERO
    return PLFunction(np.asarray(out))


def tent(b: float, d: float) -> PLFunction:
    """The triangular function of a pair: up from (b,0), peak (b+d)/2, down to (d,0)."""
    if not (math.isfinite(b) and math.isfinite(d)):
        raise ValueError("tent needs finite birth and death")
    if b >= d:
        raise ValueError("tent needs birth < death")
    return PLFunction(np.asarray([(b, 0.0), ((b + d) / 2.0, (d - b) / 2.0), (d, 0.0)]))


def _finite_pairs(diagram_or_pairs) -> list[tuple[float, float]]:
    fp = getattr(diagram_or_pairs, "finite_pairs", diagram_or_pairs)
    return [(float(b), float(d)) for b, d in np.asarray(fp, dtype=np.float64).reshape(-1, 2)]


def build_landscape(diagram) -> PersistenceLandscape:
    """Landscape of the finite part of a diagram (essential classes excluded).

    Sweep: pairs sorted by (birth asc, death desc); each layer walks the
    upper envelope.  A pair dominated by the current tent, and the valley
    tent left by each crossing, are deferred to the next layer's pool.
    """
    pairs = sorted(_finite_pairs(diagram), key=lambda bd: (bd[0], -bd[1]))
    if any(b >= d for b, d in pairs):
        raise ValueError("diagram pairs need birth < death")
    layers: list[PLFunction] = []
    pool = pairs
    while pool:
        nxt: list[tuple[float, float]] = []
        queue = deque(pool)
        b, d = queue.popleft()
        knots: list[tuple[float, float]] = [(b, 0.0), ((b + d) / 2.0, (d - b) / 2.0)]
        while True:
            if queue and queue[0][0] < d:
                b2, d2 = queue.popleft()
                if d2 <= d:
                    insort(nxt, (b2, d2), key=lambda bd: (bd[0], -bd[1]))
                else:
                    knots.append(((b2 + d) / 2.0, (d - b2) / 2.0))
                    insort(nxt, (b2, d), key=lambda bd: (bd[0], -bd[1]))
                    knots.append(((b2 + d2) / 2.0, (d2 - b2) / 2.0))
                    b, d = b2, d2
            else:
                knots.append((d, 0.0))
                if not queue:
                    break
                b, d = queue.popleft()
                knots.append((b, 0.0))
                knots.append(((b + d) / 2.0, (d - b) / 2.0))
        layers.append(_canonical(knots))
        pool = nxt
    return PersistenceLandscape(tuple(layers))


def evaluate(landscape: PersistenceLandscape, j: int, t) -> float:
    """Value of layer j (1-based) at t; zero outside support or beyond layers."""
    return landscape.layer(j)(t)


def _layers_of(obj) -> Sequence[PLFunction]:
    if isinstance(obj, PersistenceLandscape):
        return obj.layers
    return list(obj)


def _merged_grid(f: PLFunction, g: PLFunction) -> np.ndarray:
    ts = []
    if not f.is_zero():
        ts.append(f.knots[:, 0])
    if not g.is_zero():
        ts.append(g.knots[:, 0])
    if not ts:
        return np.empty(0)
    return np.unique(np.concatenate(ts))


def subtract(l1, l2) -> list[PLFunction]:
    """Layerwise signed differences on merged knots (canonical, y may be negative)."""
    a, b = _layers_of(l1), _layers_of(l2)
    out = []
    for j in range(max(len(a), len(b))):
        f = a[j] if j < len(a) else _ZERO
        g = b[j] if j < len(b) else _ZERO
        grid = _merged_grid(f, g)
        diff = [(float(t), float(f(t)) - float(g(t))) for t in grid]
        out.append(_canonical(diff))
    return out


def _segment_abs_power(w: float, y0: float, y1: float, p: float) -> float:
    # integral of |linear|**p over a segment of width w, one-signed inputs
    a0, a1 = abs(y0), abs(y1)
    if a0 == a1:
        return w * a0**p
    return w * (a1 ** (p + 1.0) - a0 ** (p + 1.0)) / ((p + 1.0) * (a1 - a0))


def p_norm(layers, p: float) -> float:
    """(sum_j integral |layer_j|^p dt)^(1/p), exact per segment.

    Sign-crossing segments are split at the root first so each piece is
    one-signed.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    total = []
    for f in _layers_of(layers):
        k = f.knots
        for s in range(k.shape[0] - 1):
            t0, y0 = k[s]
            t1, y1 = k[s + 1]
            w = t1 - t0
            if y0 * y1 < 0:
                r = w * y0 / (y0 - y1)
                total.append(_segment_abs_power(r, y0, 0.0, p))
                total.append(_segment_abs_power(w - r, 0.0, y1, p))
            else:
                total.append(_segment_abs_power(w, y0, y1, p))
    return math.fsum(total) ** (1.0 / p)


def sup_norm(layers) -> float:
    """max |y| over all knots; PL extrema sit at knots."""
    best = 0.0
    for f in _layers_of(layers):
        if not f.is_zero():
            best = max(best, float(np.abs(f.knots[:, 1]).max()))
    return best


def inner_product(l1, l2) -> float:
    """sum_j integral layer_j * layer_j dt, exact via Simpson per merged segment."""
    a, b = _layers_of(l1), _layers_of(l2)
    total = []
    for j in range(min(len(a), len(b))):
        f, g = a[j], b[j]
        if f.is_zero() or g.is_zero():
            continue
        grid = _merged_grid(f, g)
        t0 = grid[:-1]
        t1 = grid[1:]
        tm = 0.5 * (t0 + t1)
        ys = f(np.concatenate((t0, tm, t1))) * g(np.concatenate((t0, tm, t1)))
        m = t0.size
        seg = (t1 - t0) / 6.0 * (ys[:m] + 4.0 * ys[m : 2 * m] + ys[2 * m :])
        total.extend(seg.tolist())
    return math.fsum(total)


def support_union(diagram) -> list[tuple[float, float]]:
    """Union of the open (birth, death) intervals as maximal disjoint intervals.

    Open intervals that merely touch at an endpoint stay separate.
    """
    ivals = sorted(_finite_pairs(diagram))
    out: list[tuple[float, float]] = []
    for b, d in ivals:
        if b >= d:
            raise ValueError("intervals need birth < death")
        if out and b < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], d))
        else:
            out.append((b, d))
    return out

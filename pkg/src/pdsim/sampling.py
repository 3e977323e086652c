"""Uniform point-cloud samplers for the reference shapes and their distances.

Every sampler draws from a fresh PCG64 stream keyed by the caller's seed:
one call, one stream, so identical ``(op, args, seed)`` always reproduces the
same cloud bit for bit.  Pipelines that need several independent clouds from
one master seed derive per-cloud seeds with ``numpy.random.SeedSequence``
spawn keys (see ``pdsim.cli``); the two rules together are the package's
stream-splitting policy.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class ShapeTag(Enum):
    DISC = "disc"
    ANNULUS = "annulus"
    CIRCLE = "circle"
    EXTERNAL = "external"


@dataclass(frozen=True)
class PointCloud:
    """A finite multiset of 2-D points with its sampling provenance."""

    points: np.ndarray
    shape_tag: ShapeTag
    seed: int

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a non-empty (n, 2) array")
        if not np.isfinite(pts).all():
            raise ValueError("points must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise-distance matrix with zero diagonal."""

    d: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.d, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise ValueError("distance matrix must be square and non-empty")
        m.setflags(write=False)
        object.__setattr__(self, "d", m)

    @property
    def n(self) -> int:
        return self.d.shape[0]


def _generator(seed: int) -> np.random.Generator:
    # One named, portable stream per call.
    return np.random.Generator(np.random.PCG64(seed))


def sample_disc(n: int, seed: int) -> PointCloud:
    """Sample ``n`` points uniformly by area from the closed unit disc.

    Radius uses the inverse CDF r = sqrt(u), which is area-uniform without
    rejection.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = _generator(seed).random((n, 2))
    r = np.sqrt(u[:, 0])
    theta = 2.0 * np.pi * u[:, 1]
    pts = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    return PointCloud(pts, ShapeTag.DISC, seed)


def sample_annulus(n: int, seed: int, r_in: float = 0.5, r_out: float = 1.0) -> PointCloud:
    """Sample ``n`` points uniformly by area from the annulus r_in <= |x| <= r_out.

    Radius uses r = sqrt(r_in^2 + u * (r_out^2 - r_in^2)); r_in = 0 degenerates
    to disc sampling.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 <= r_in < r_out):
        raise ValueError("need 0 <= r_in < r_out")
    u = _generator(seed).random((n, 2))
    r = np.sqrt(r_in * r_in + u[:, 0] * (r_out * r_out - r_in * r_in))
    theta = 2.0 * np.pi * u[:, 1]
    pts = np.column_stack((r * np.cos(theta), r * np.sin(theta)))
    return PointCloud(pts, ShapeTag.ANNULUS, seed)


def sample_circle(n: int, seed: int) -> PointCloud:
    """Sample ``n`` points with angle uniform on the unit circle."""
    if n < 1:
        raise ValueError("n must be >= 1")
    theta = 2.0 * np.pi * _generator(seed).random(n)
    pts = np.column_stack((np.cos(theta), np.sin(theta)))
    return PointCloud(pts, ShapeTag.CIRCLE, seed)


def distance_matrix(cloud: PointCloud) -> DistanceMatrix:
    """Euclidean pairwise distances of a cloud.

    The broadcasted formula is evaluated once for the full matrix, which makes
    the result exactly symmetric with an exactly zero diagonal.
    """
    pts = cloud.points
    diff = pts[:, None, :] - pts[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    return DistanceMatrix(d)

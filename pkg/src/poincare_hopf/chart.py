"""Planar charts of vertex stars and the discrete winding number."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SurfaceComplex
from .errors import (
    NonGenericGeometry,
    NonIntegerWinding,
    UndersampledLoop,
    ZeroAreaTriangle,
    ZeroVector,
)

STEP_GUARD = 1e-6
ROUND_GUARD = 1e-6
MIN_SAMPLES = 8


@dataclass(frozen=True, eq=False)
class LoopSamples:
    """A closed polygonal loop with a nonzero vector attached to each sample."""

    points: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        vec = np.asarray(self.vectors, dtype=float).reshape(-1, 2)
        if len(pts) != len(vec):
            raise ValueError("points and vectors must have the same length")
        if len(vec) < MIN_SAMPLES:
            raise ValueError(f"a loop needs at least {MIN_SAMPLES} samples, got {len(vec)}")
        if np.any(np.hypot(vec[:, 0], vec[:, 1]) == 0):
            raise ZeroVector("loop contains a zero vector")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "vectors", vec)

    def reversed(self) -> LoopSamples:
        return LoopSamples(self.points[::-1], self.vectors[::-1])


def angle_steps(vectors: np.ndarray) -> np.ndarray:
    """Signed angle in (-pi, pi] from each vector to the next, cyclically."""
    a = vectors
    b = np.roll(vectors, -1, axis=0)
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    dot = a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]
    return np.arctan2(cross, dot)


def total_turning(loop: LoopSamples) -> float:
    """Accumulated signed turning of the vectors, in turns (unrounded)."""
    steps = angle_steps(loop.vectors)
    worst = int(np.argmax(np.abs(steps)))
    if abs(steps[worst]) >= np.pi - STEP_GUARD:
        raise UndersampledLoop(
            f"step {worst} turns by {steps[worst]:.6g} rad; refine the loop"
        )
    return float(np.sum(steps) / (2 * np.pi))


def winding_number(loop: LoopSamples) -> int:
    """Number of signed turns the vectors make along the loop."""
    turns = total_turning(loop)
    k = round(turns)
    if abs(turns - k) >= ROUND_GUARD:
        raise NonIntegerWinding(f"total turning {turns!r} is not an integer")
    return int(k)


@dataclass(frozen=True, eq=False)
class Chart:
    """Fan-wise flattening of the star of ``center``.

    Triangle ``ordered_star[k]`` occupies the wedge between ``directions[k]``
    and ``directions[k] + corner_angles[k]``; its far corners are
    ``link[k]`` and ``link[k + 1]`` (cyclically) placed at their true
    distance from the center.
    """

    center: int
    ordered_star: tuple
    link: tuple
    corner_angles: np.ndarray
    radii: np.ndarray
    scale: float

    @property
    def directions(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum(self.corner_angles)[:-1]])

    @property
    def positions(self) -> np.ndarray:
        d = self.directions
        return self.radii[:, None] * np.stack([np.cos(d), np.sin(d)], axis=1)

    def corners(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        P = self.positions
        return P[k], P[(k + 1) % len(P)]

    def embed(self, k: int, bary) -> np.ndarray:
        """Chart point of barycentric ``(center, link[k], link[k+1])`` coords in triangle ``k``."""
        _, lp, lq = bary
        p, q = self.corners(k)
        return lp * p + lq * q


def _angle(u: np.ndarray, w: np.ndarray) -> float:
    return float(np.arctan2(np.linalg.norm(np.cross(u, w)), np.dot(u, w)))


def star_chart(K: SurfaceComplex, v: int) -> Chart:
    V = K.vertices
    star = K.star(v)
    link = [p for _, p, _ in star]
    raw = []
    for t, p, q in star:
        u, w = V[p] - V[v], V[q] - V[v]
        if np.linalg.norm(np.cross(u, w)) <= 1e-14 * np.dot(u, u) + 1e-300:
            raise ZeroAreaTriangle(f"triangle {t} at vertex {v} has zero area")
        raw.append(_angle(u, w))
    raw = np.array(raw)
    scale = 2 * np.pi / raw.sum()
    angles = raw * scale
    if angles.max() >= np.pi:
        raise NonGenericGeometry(
            f"flattened corner of {angles.max():.4g} rad at vertex {v} is not convex"
        )
    radii = np.linalg.norm(V[link] - V[v], axis=1)
    return Chart(v, tuple(t for t, _, _ in star), tuple(link), angles, radii, scale)


def star_loop(chart: Chart, vectors, per_triangle: int = 16, radius: float | None = None) -> LoopSamples:
    """Sample a circle around the chart center, one arc per star triangle.

    ``vectors[k]`` is attached to every sample inside wedge ``k``. The default
    radius is a quarter of the shortest incident edge.
    """
    vectors = np.asarray(vectors, dtype=float).reshape(-1, 2)
    if radius is None:
        radius = 0.25 * float(chart.radii.min())
    s = (np.arange(per_triangle) + 0.5) / per_triangle
    ang = (chart.directions[:, None] + s[None, :] * chart.corner_angles[:, None]).ravel()
    pts = radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return LoopSamples(pts, np.repeat(vectors, per_triangle, axis=0))

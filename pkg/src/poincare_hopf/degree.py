"""Degrees of PL circle and sphere maps, and the radial-extension check."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial.transform import Rotation

from .complex import SurfaceComplex, build_complex, euler_characteristic, orient
from .errors import (
    AmbiguousStep,
    DegenerateImageTriangle,
    NoIsolatedZero,
    NonIntegerTotal,
    NonRegularValue,
    TopologyError,
    ZeroFieldOnSphere,
)
from .fields import ModelField, planar_index
from .generators import refined_icosahedron

TWO_PI = 2 * np.pi
STEP_GUARD = 1e-6
ROUND_GUARD = 1e-6
VALUE_TOL = 1e-12
REGULAR_RETRIES = 64


def _round_guarded(x: float, what: str) -> int:
    k = round(x)
    if abs(x - k) >= ROUND_GUARD:
        raise NonIntegerTotal(f"{what} {x!r} is not within {ROUND_GUARD} of an integer")
    return int(k)


# -- circle maps ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CircleMap:
    """Images ``samples[i]`` of the points ``2 pi i / n`` of the source circle.

    Between consecutive samples the map runs along the shorter arc.
    """

    samples: np.ndarray

    def __post_init__(self):
        s = np.mod(np.asarray(self.samples, dtype=float).ravel(), TWO_PI)
        if len(s) < 8:
            raise ValueError(f"a circle map needs at least 8 samples, got {len(s)}")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, f, n: int = 64) -> CircleMap:
        return cls(f(TWO_PI * np.arange(n) / n))

    @classmethod
    def identity(cls, n: int = 64) -> CircleMap:
        return cls.from_function(lambda t: t, n)

    @classmethod
    def multiply(cls, k: int, n: int = 64) -> CircleMap:
        return cls.from_function(lambda t: k * t, n)

    @classmethod
    def sine(cls, a: float = 1.5, n: int = 64) -> CircleMap:
        """t -> t + a sin t."""
        return cls.from_function(lambda t: t + a * np.sin(t), n)

    def __len__(self) -> int:
        return len(self.samples)

    @cached_property
    def steps(self) -> np.ndarray:
        """Signed length of each arc, in (-pi, pi)."""
        d = np.mod(np.roll(self.samples, -1) - self.samples + np.pi, TWO_PI) - np.pi
        bad = np.abs(d) >= np.pi - STEP_GUARD
        if bad.any():
            i = int(np.argmax(bad))
            raise AmbiguousStep(f"samples {i} and {(i + 1) % len(d)} are antipodal")
        return d

    def turning_points(self) -> list[int]:
        """Samples where the image stops going one way and starts going the other."""
        sgn = np.sign(self.steps)
        return [i for i in range(len(sgn)) if sgn[i - 1] * sgn[i] < 0]


def circle_degree_winding(m: CircleMap) -> int:
    return _round_guarded(float(np.sum(m.steps)) / TWO_PI, "circle winding")


@dataclass(frozen=True)
class Crossing:
    """A preimage of the regular value: arc ``arc`` at fraction ``s`` of its length."""

    arc: int
    s: float
    sign: int

    def source_angle(self, n: int) -> float:
        return TWO_PI * (self.arc + self.s) / n


def circle_crossings(m: CircleMap, y: float) -> list[Crossing]:
    """Preimages of ``y`` in source order, each signed by the arc direction."""
    y = float(np.mod(y, TWO_PI))
    gap = np.abs(np.mod(m.samples - y + np.pi, TWO_PI) - np.pi)
    if gap.min() <= VALUE_TOL:
        raise NonRegularValue(f"y = {y!r} is the image of sample {int(np.argmin(gap))}")
    out = []
    for i, (theta, d) in enumerate(zip(m.samples.tolist(), m.steps.tolist())):
        if d > 0:
            dist = np.mod(y - theta, TWO_PI)
            if dist < d:
                out.append(Crossing(i, dist / d, +1))
        elif d < 0:
            dist = np.mod(theta - y, TWO_PI)
            if dist < -d:
                out.append(Crossing(i, dist / -d, -1))
    return out


def circle_degree_regular_value(m: CircleMap, y: float) -> int:
    return sum(c.sign for c in circle_crossings(m, y))


# -- sphere maps ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SphereMap:
    """A PL map from a triangulated unit sphere to the unit sphere.

    ``images[v]`` is the image of source vertex ``v``; each source triangle
    goes to the geodesic triangle spanned by its three images.
    """

    source: SurfaceComplex
    images: np.ndarray

    def __post_init__(self):
        img = np.array(self.images, dtype=float)
        if img.shape != (self.source.n_vertices, 3):
            raise ValueError("need one image per source vertex")
        if np.max(np.abs(np.linalg.norm(img, axis=1) - 1)) > 1e-12:
            raise ValueError("images must be unit vectors")
        if euler_characteristic(self.source) != 2:
            raise TopologyError("source of a sphere map must have Euler characteristic 2")
        img.setflags(write=False)
        object.__setattr__(self, "images", img)

    @classmethod
    def from_vectors(cls, source: SurfaceComplex, vectors) -> SphereMap:
        w = np.asarray(vectors, dtype=float)
        return cls(source, w / np.linalg.norm(w, axis=1, keepdims=True))

    @cached_property
    def oriented_triangles(self) -> np.ndarray:
        """Source triangles coherently oriented with outward normals."""
        res = orient(self.source)
        if not res.orientable:
            raise TopologyError("source is not orientable")
        tris = res.oriented_triangles(self.source)
        V = self.source.vertices
        if np.sum(np.linalg.det(V[tris])) < 0:
            tris = tris[:, ::-1]
        return tris

    def image_corners(self):
        T = self.oriented_triangles
        I = self.images
        return I[T[:, 0]], I[T[:, 1]], I[T[:, 2]]


def identity_map(level: int = 2) -> SphereMap:
    K = refined_icosahedron(level)
    return SphereMap(K, K.vertices)


def antipodal_map(level: int = 2) -> SphereMap:
    K = refined_icosahedron(level)
    return SphereMap(K, -K.vertices)


def _det3(a, b, c) -> np.ndarray:
    return np.einsum("ij,ij->i", a, np.cross(b, c))


def signed_solid_angles(m: SphereMap) -> np.ndarray:
    """Signed solid angle of each image triangle (Van Oosterom-Strackee)."""
    a, b, c = m.image_corners()
    num = _det3(a, b, c)
    den = 1 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    bad = (np.abs(num) <= VALUE_TOL) & (den <= VALUE_TOL)
    if bad.any():
        raise DegenerateImageTriangle(f"image of triangle {int(np.argmax(bad))} passes through the origin")
    return 2 * np.arctan2(num, den)


def solid_angle_turns(m: SphereMap) -> float:
    """Total signed image area over 4 pi, before rounding."""
    return float(np.sum(signed_solid_angles(m)) / (4 * np.pi))


def sphere_degree_solid_angle(m: SphereMap) -> int:
    return _round_guarded(solid_angle_turns(m), "solid-angle total")


def sphere_preimage_signs(m: SphereMap, y) -> np.ndarray:
    """Orientation signs of the image triangles containing ``y``.

    Raises NonRegularValue when ``y`` lies (within tolerance) on an image edge.
    """
    y = np.asarray(y, dtype=float)
    y = y / np.linalg.norm(y)
    a, b, c = m.image_corners()
    Y = np.broadcast_to(y, a.shape)
    d = _det3(a, b, c)
    ca, cb, cc = _det3(Y, b, c), _det3(a, Y, c), _det3(a, b, Y)

    flat = np.abs(d) <= VALUE_TOL
    if flat.any():
        # a flat image triangle lies on a great circle: only a problem if y is on it
        fa, fb, fc = a[flat], b[flat], c[flat]
        cands = np.stack([np.cross(fa, fb), np.cross(fb, fc), np.cross(fc, fa)], axis=1)
        best = np.argmax(np.linalg.norm(cands, axis=2), axis=1)
        n = cands[np.arange(len(best)), best]
        nn = np.linalg.norm(n, axis=1)
        if np.any((nn == 0) | (np.abs(n @ y) <= 1e-9 * nn)):
            raise NonRegularValue("value lies on the great circle of a flat image triangle")

    live = ~flat
    bary = np.stack([ca, cb, cc], axis=1)[live] / d[live, None]
    inside_closed = np.all(bary >= -1e-10, axis=1)
    on_edge = inside_closed & np.any(np.abs(bary) <= 1e-10, axis=1)
    if on_edge.any():
        raise NonRegularValue("value lies on an image edge")
    hit = np.all(bary > 0, axis=1)
    return np.sign(d[live][hit]).astype(int)


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def sphere_degree_regular_value(m: SphereMap, y=None, seed: int = 0) -> int:
    """Signed count of preimages of a regular value.

    If ``y`` is omitted or turns out not to be regular, seeded random values
    are tried instead, at most 64 times.
    """
    rng = np.random.default_rng(seed)
    if y is None:
        y = random_unit_vector(rng)
    for _ in range(REGULAR_RETRIES + 1):
        try:
            return int(np.sum(sphere_preimage_signs(m, y)))
        except NonRegularValue:
            y = random_unit_vector(rng)
    raise NonRegularValue(f"no regular value found in {REGULAR_RETRIES} retries")


# -- radial extension -----------------------------------------------------


def radial_extension_gauss_map(v: ModelField, level: int = 3, seed: int = 0) -> SphereMap:
    """Gauss map of w(x, y, z) = (v(x, y), z) on a refined icosahedral sphere."""
    if level < 2:
        raise ValueError("level must be >= 2")
    if not v.vanishes_at_origin():
        raise NoIsolatedZero("field does not vanish at the origin")
    K = refined_icosahedron(level)
    for attempt in range(2):
        P = K.vertices
        w = np.column_stack([v(P[:, :2]), P[:, 2]])
        if np.all(np.linalg.norm(w, axis=1) > 0):
            return SphereMap.from_vectors(K, w)
        if attempt == 0:
            R = Rotation.random(random_state=seed)
            K = build_complex(R.apply(P), K.triangles)
    raise ZeroFieldOnSphere("extended field vanishes at a sample vertex")


@dataclass(frozen=True)
class LemmaReport:
    planar: int
    solid_angle: int
    regular_value: int
    residual: float

    @property
    def passed(self) -> bool:
        return self.planar == self.solid_angle == self.regular_value


def verify_extension_lemma(v: ModelField, level: int = 3, seed: int = 0,
                           radius: float = 0.5, samples: int = 256) -> LemmaReport:
    """Compare the planar index of ``v`` with the degree of its radial extension."""
    m = radial_extension_gauss_map(v, level, seed)
    turns = solid_angle_turns(m)
    return LemmaReport(
        planar=planar_index(v, radius, samples),
        solid_angle=_round_guarded(turns, "solid-angle total"),
        regular_value=sphere_degree_regular_value(m, seed=seed),
        residual=abs(turns - round(turns)),
    )

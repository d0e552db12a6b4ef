"""Model planar fields, PL functions, the Hopf field and two index algorithms."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .chart import LoopSamples, star_chart, star_loop, winding_number
from .complex import SurfaceComplex, euler_characteristic
from .errors import (
    IndexMismatch,
    MalformedInput,
    NonGenericFunction,
    NonGenericGeometry,
    UndersampledLoop,
    ZeroGradientTriangle,
)
from .subdivide import SubdividedComplex, barycentric

# -- planar model fields --------------------------------------------------


class ModelField:
    """A planar vector field evaluated on an ``(N, 2)`` array of points."""

    def __call__(self, xy) -> np.ndarray:
        raise NotImplementedError

    def vanishes_at_origin(self) -> bool:
        return bool(np.all(self(np.zeros((1, 2))) == 0))


def _as_complex(xy) -> np.ndarray:
    xy = np.asarray(xy, dtype=float).reshape(-1, 2)
    return xy[:, 0] + 1j * xy[:, 1]


def _as_pairs(z: np.ndarray) -> np.ndarray:
    return np.stack([z.real, z.imag], axis=1)


@dataclass(frozen=True)
class Power(ModelField):
    """z -> z**k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Power needs k >= 1")

    def __call__(self, xy):
        return _as_pairs(_as_complex(xy) ** self.k)


@dataclass(frozen=True)
class ConjPower(ModelField):
    """z -> conj(z)**k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("ConjPower needs k >= 1")

    def __call__(self, xy):
        return _as_pairs(np.conj(_as_complex(xy)) ** self.k)


@dataclass(frozen=True)
class Constant(ModelField):
    direction: tuple = (1.0, 0.0)

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        n = np.hypot(*d)
        if n == 0:
            raise ValueError("Constant needs a nonzero direction")
        object.__setattr__(self, "direction", tuple((d / n).tolist()))

    def __call__(self, xy):
        n = len(np.asarray(xy, dtype=float).reshape(-1, 2))
        return np.tile(np.asarray(self.direction), (n, 1))


@dataclass(frozen=True, eq=False)
class Sampled(ModelField):
    """A field known only on a table of samples.

    Evaluation returns the vector of the nearest tabulated point. As a loop,
    the table is read in order of polar angle about the query center.
    """

    points: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=float).reshape(-1, 2))
        object.__setattr__(self, "vectors", np.asarray(self.vectors, dtype=float).reshape(-1, 2))
        if len(self.points) != len(self.vectors):
            raise ValueError("points and vectors must have the same length")

    def __call__(self, xy):
        xy = np.asarray(xy, dtype=float).reshape(-1, 2)
        d = np.linalg.norm(xy[:, None, :] - self.points[None, :, :], axis=2)
        return self.vectors[np.argmin(d, axis=1)]

    def loop(self, center=(0.0, 0.0)) -> LoopSamples:
        rel = self.points - np.asarray(center, dtype=float)
        order = np.argsort(np.arctan2(rel[:, 1], rel[:, 0]), kind="stable")
        return LoopSamples(self.points[order], self.vectors[order])


def load_field_csv(path) -> Sampled:
    """Read ``x,y,vx,vy`` rows (a header line is optional)."""
    rows = []
    with open(path, newline="") as fh:
        for n, row in enumerate(csv.reader(fh)):
            if not row or row[0].lstrip().startswith("#"):
                continue
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                if n == 0:
                    continue
                raise MalformedInput(f"bad CSV row {n}: {row!r}") from None
            if len(rows[-1]) != 4:
                raise MalformedInput(f"CSV row {n} needs 4 columns x,y,vx,vy")
    if not rows:
        raise MalformedInput("CSV field file has no rows")
    arr = np.array(rows)
    return Sampled(arr[:, :2], arr[:, 2:])


def parse_field(spec: str) -> ModelField:
    """``power:k``, ``conj:k``, ``const`` / ``const:angle`` or ``csv:path``."""
    name, _, arg = spec.partition(":")
    try:
        if name == "power":
            return Power(int(arg))
        if name == "conj":
            return ConjPower(int(arg))
        if name == "const":
            a = float(arg) if arg else 0.0
            return Constant((np.cos(a), np.sin(a)))
    except ValueError as exc:
        raise MalformedInput(f"bad field spec {spec!r}: {exc}") from None
    if name == "csv" and arg:
        return load_field_csv(arg)
    raise MalformedInput(f"unknown field spec {spec!r}")


def planar_index(f: ModelField, radius: float = 1.0, samples: int = 64, center=(0.0, 0.0)) -> int:
    """Index of ``f`` at ``center``: winding of ``f`` along a circle around it.

    The sample count is doubled on an undersampled loop, up to 2**16 samples.
    Tabulated fields are used as-is; ``radius`` and ``samples`` are ignored.
    """
    if isinstance(f, Sampled):
        return winding_number(f.loop(center))
    if radius <= 0:
        raise ValueError("radius must be positive")
    c = np.asarray(center, dtype=float)
    while True:
        th = 2 * np.pi * np.arange(samples) / samples
        pts = c + radius * np.stack([np.cos(th), np.sin(th)], axis=1)
        try:
            return winding_number(LoopSamples(pts, f(pts)))
        except UndersampledLoop:
            if samples >= 2**16:
                raise
            samples *= 2


# -- PL functions and combinatorial index ---------------------------------


@dataclass(frozen=True, eq=False)
class PLFunction:
    """Per-vertex values of a piecewise-linear function.

    With ``tiebreak`` (the default) vertices are compared by
    ``(value, vertex id)``, which makes every function generic.
    """

    values: np.ndarray
    tiebreak: bool = True

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def above(self, w: int, v: int) -> bool:
        """Whether ``w`` is strictly above ``v`` in the comparison order."""
        fw, fv = self.values[w], self.values[v]
        if fw != fv:
            return bool(fw > fv)
        if not self.tiebreak or w == v:
            raise NonGenericFunction(f"f({w}) == f({v}) == {fv}")
        return w > v


def random_function(K: SurfaceComplex, rng: np.random.Generator) -> PLFunction:
    return PLFunction(rng.uniform(0.0, 1.0, K.n_vertices))


def hopf_function(Kp: SubdividedComplex) -> PLFunction:
    """Barycenter kind as a PL function; its ascending gradient is the Hopf field."""
    return PLFunction(Kp.kind.astype(float))


def banchoff_index(K: SurfaceComplex, f: PLFunction, v: int) -> int:
    """1 - s/2 with s the sign changes of f - f(v) around the link of v."""
    up = [f.above(w, v) for w in K.neighbors(v)]
    s = sum(a != b for a, b in zip(up, up[1:] + up[:1]))
    return 1 - s // 2


def star_gradients(K: SurfaceComplex, f: PLFunction, v: int):
    """Chart of the star of ``v`` and the constant gradient of ``f`` on each triangle."""
    chart = star_chart(K, v)
    vals = f.values
    fv = vals[v]
    grads = []
    for k in range(len(chart.link)):
        p, q = chart.link[k], chart.link[(k + 1) % len(chart.link)]
        if vals[p] == fv or vals[q] == fv:
            raise NonGenericFunction(f"f is flat along an edge at vertex {v}")
        A = np.array(chart.corners(k))
        g = np.linalg.solve(A, [vals[p] - fv, vals[q] - fv])
        if not np.any(g):
            raise ZeroGradientTriangle(f"zero gradient on triangle {chart.ordered_star[k]}")
        grads.append(g)
    return chart, np.array(grads)


def gradient_index(K: SurfaceComplex, f: PLFunction, v: int, per_triangle: int = 16) -> int:
    """Winding of the per-triangle gradients of ``f`` around ``v`` in its star chart."""
    chart, grads = star_gradients(K, f, v)
    while True:
        try:
            return winding_number(star_loop(chart, grads, per_triangle))
        except UndersampledLoop as exc:
            if per_triangle >= 2**10:
                raise NonGenericGeometry(f"gradients at vertex {v} jump by pi or more") from exc
            per_triangle *= 2


def morse_sum(K: SurfaceComplex, f: PLFunction) -> int:
    return sum(banchoff_index(K, f, v) for v in range(K.n_vertices))


@dataclass(frozen=True)
class IndexEntry:
    vertex: int
    kind: int
    index: int


@dataclass(frozen=True)
class IndexReport:
    entries: tuple
    euler: int
    subdivision: SubdividedComplex | None = field(default=None, compare=False, repr=False)

    @property
    def total(self) -> int:
        return sum(e.index for e in self.entries)

    def by_kind(self) -> dict[int, set[int]]:
        out: dict[int, set[int]] = {}
        for e in self.entries:
            out.setdefault(e.kind, set()).add(e.index)
        return out

    def counts(self) -> dict[int, int]:
        """Number of singularities of each kind."""
        out = {0: 0, 1: 0, 2: 0}
        for e in self.entries:
            out[e.kind] += 1
        return out


def hopf_index_report(K: SurfaceComplex, cross_check: bool = True) -> IndexReport:
    """Index of the Hopf field at every vertex of the barycentric subdivision.

    With ``cross_check`` every combinatorial index is compared against the
    gradient winding index and :class:`IndexMismatch` is raised on the first
    disagreement.
    """
    Kp = barycentric(K)
    C = Kp.complex
    f = hopf_function(Kp)
    entries = []
    for v in range(C.n_vertices):
        idx = banchoff_index(C, f, v)
        if cross_check:
            g = gradient_index(C, f, v)
            if g != idx:
                raise IndexMismatch(f"vertex {v}: combinatorial {idx}, gradient winding {g}")
        entries.append(IndexEntry(v, int(Kp.kind[v]), idx))
    return IndexReport(tuple(entries), euler_characteristic(K), Kp)

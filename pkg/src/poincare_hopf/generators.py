"""Built-in triangulations of the sphere, torus, Klein bottle and projective plane."""

from __future__ import annotations

import numpy as np

from .complex import SurfaceComplex, build_complex, edge_key
from .errors import GridTooSmall


def tetrahedron() -> SurfaceComplex:
    pts = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float) / np.sqrt(3)
    tris = [[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]
    return build_complex(pts, tris)


def octahedron() -> SurfaceComplex:
    pts = [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
    tris = [[0, 2, 4], [2, 1, 4], [1, 3, 4], [3, 0, 4],
            [2, 0, 5], [1, 2, 5], [3, 1, 5], [0, 3, 5]]
    return build_complex(pts, tris)


def cube_sphere() -> SurfaceComplex:
    """Cube surface, each square face cut along one diagonal (8, 18, 12)."""
    pts = np.array([[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float)
    # vertex id = 4*(x>0) + 2*(y>0) + (z>0); quads listed counter-clockwise from outside
    quads = [
        (0, 1, 3, 2),  # x = -1
        (4, 6, 7, 5),  # x = +1
        (0, 4, 5, 1),  # y = -1
        (2, 3, 7, 6),  # y = +1
        (0, 2, 6, 4),  # z = -1
        (1, 5, 7, 3),  # z = +1
    ]
    tris = []
    for a, b, c, d in quads:
        tris += [[a, b, c], [a, c, d]]
    return build_complex(pts / np.sqrt(3), tris)


def _icosahedron_data():
    h = 1 / np.sqrt(5)
    r = 2 / np.sqrt(5)
    pts = [[0.0, 0.0, 1.0]]
    pts += [[r * np.cos(2 * np.pi * k / 5), r * np.sin(2 * np.pi * k / 5), h] for k in range(5)]
    pts += [[r * np.cos(2 * np.pi * k / 5 + np.pi / 5), r * np.sin(2 * np.pi * k / 5 + np.pi / 5), -h]
            for k in range(5)]
    pts.append([0.0, 0.0, -1.0])
    up = lambda k: 1 + k % 5  # noqa: E731
    lo = lambda k: 6 + k % 5  # noqa: E731
    tris = []
    for k in range(5):
        tris.append([0, up(k), up(k + 1)])
        tris.append([up(k), lo(k), up(k + 1)])
        tris.append([up(k + 1), lo(k), lo(k + 1)])
        tris.append([11, lo(k + 1), lo(k)])
    return np.array(pts), tris


def icosahedron() -> SurfaceComplex:
    """Regular icosahedron on the unit sphere with vertices at both poles."""
    return build_complex(*_icosahedron_data())


def refined_icosahedron(level: int) -> SurfaceComplex:
    """Icosahedron split 1-to-4 ``level`` times, new vertices pushed to the unit sphere."""
    if level < 0:
        raise ValueError("level must be >= 0")
    pts, tris = _icosahedron_data()
    pts = [np.asarray(p) for p in pts]
    for _ in range(level):
        mid: dict[tuple[int, int], int] = {}

        def midpoint(a, b):
            key = edge_key(a, b)
            if key not in mid:
                m = pts[a] + pts[b]
                pts.append(m / np.linalg.norm(m))
                mid[key] = len(pts) - 1
            return mid[key]

        new = []
        for a, b, c in tris:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new += [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
        tris = new
    return build_complex(np.array(pts), tris)


def _grid_triangles(m: int, n: int, vid) -> list[list[int]]:
    tris = []
    for i in range(m):
        for j in range(n):
            a, b = vid(i, j), vid(i + 1, j)
            c, d = vid(i + 1, j + 1), vid(i, j + 1)
            tris += [[a, b, c], [a, c, d]]
    return tris


def torus_grid(m: int, n: int) -> SurfaceComplex:
    """m x n grid on a square with opposite sides identified, embedded as a ring torus."""
    if m < 3 or n < 3:
        raise GridTooSmall(f"torus grid needs m, n >= 3, got {m}x{n}")
    u = 2 * np.pi * np.arange(m)[:, None] / m
    v = 2 * np.pi * np.arange(n)[None, :] / n
    R, r = 2.0, 1.0
    x = (R + r * np.cos(v)) * np.cos(u)
    y = (R + r * np.cos(v)) * np.sin(u)
    z = r * np.sin(v) * np.ones_like(u)
    pts = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    tris = _grid_triangles(m, n, lambda i, j: (i % m) * n + j % n)
    return build_complex(pts, tris)


def klein_grid(m: int, n: int) -> SurfaceComplex:
    """m x n grid with one pair of sides identified with a flip.

    Crossing ``i = m`` sends row ``j`` to ``-j (mod n)``. Coordinates come
    from the figure-8 immersion, which respects exactly that identification.
    """
    if m < 3 or n < 3:
        raise GridTooSmall(f"Klein grid needs m, n >= 3, got {m}x{n}")

    def vid(i, j):
        if i >= m:
            i, j = i - m, -j
        return i * n + j % n

    u = 2 * np.pi * np.arange(m)[:, None] / m
    v = 2 * np.pi * np.arange(n)[None, :] / n
    R = 3.0
    rad = R + np.cos(u / 2) * np.sin(v) - np.sin(u / 2) * np.sin(2 * v)
    x = rad * np.cos(u)
    y = rad * np.sin(u)
    z = np.sin(u / 2) * np.sin(v) + np.cos(u / 2) * np.sin(2 * v)
    pts = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    return build_complex(pts, _grid_triangles(m, n, vid))


def projective_plane_6() -> SurfaceComplex:
    """Antipodal quotient of the icosahedron (6, 15, 10).

    Each antipodal vertex pair is represented by its northern member, so the
    coordinates are the upper hemisphere model.
    """
    pts, tris = _icosahedron_data()
    n = len(pts)
    antipode = [int(np.argmin(np.linalg.norm(pts + pts[i], axis=1))) for i in range(n)]
    rep = {}
    for i in range(n):
        north = i if pts[i][2] > 0 else antipode[i]
        rep[i] = north
    reps = sorted(set(rep.values()))
    cls = {i: reps.index(rep[i]) for i in range(n)}
    seen = set()
    out = []
    for tri in tris:
        key = frozenset(cls[v] for v in tri)
        if key in seen:
            continue
        seen.add(key)
        out.append([cls[v] for v in tri])
    return build_complex(pts[reps], out)


"""Orientation double cover of a surface complex."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .complex import SurfaceComplex, build_complex, edge_key, is_connected
from .errors import DisconnectedComplex, TopologyError
from .fields import PLFunction


@dataclass(frozen=True, eq=False)
class DoubleCover:
    """The cover together with its projection and deck involution.

    Cover vertex ``2a + s`` (``s`` in {0, 1}) lies over base vertex ``a``,
    so ``projection[c] == c // 2`` and ``deck[c] == c ^ 1``.
    """

    cover: SurfaceComplex
    projection: np.ndarray
    deck: np.ndarray
    base: SurfaceComplex


def _oriented_copy(tri, sheet: int):
    a, b, c = tri
    return (a, b, c) if sheet == 0 else (a, c, b)


def orientation_double_cover(K: SurfaceComplex, offset: float = 0.05) -> DoubleCover:
    """Glue two oppositely oriented copies of every triangle along edges.

    Copies ``(t, s)`` and ``(u, r)`` are glued across a shared base edge when
    they traverse it in opposite directions. Cover vertices are the classes
    of triangle corners under these gluings. Coordinates are the base ones
    pushed by ``offset`` times the mean edge length along the sheet normal.
    """
    if not is_connected(K):
        raise DisconnectedComplex("double cover requires a connected base")
    tris = K.triangles.tolist()
    corners = DisjointSet((t, s, v) for t in range(len(tris)) for s in (0, 1) for v in tris[t])

    for (a, b), (t, u) in K.edges.items():
        for s in (0, 1):
            ct = _oriented_copy(tris[t], s)
            forward = ct[(ct.index(a) + 1) % 3] == b
            for r in (0, 1):
                cu = _oriented_copy(tris[u], r)
                if (cu[(cu.index(a) + 1) % 3] == b) != forward:
                    corners.merge((t, s, a), (u, r, a))
                    corners.merge((t, s, b), (u, r, b))

    # number classes so that the two lifts of base vertex a are 2a and 2a + 1
    lifts: dict[int, list] = {v: [] for v in range(K.n_vertices)}
    for t, tri in enumerate(tris):
        for s in (0, 1):
            for v in tri:
                root = corners[(t, s, v)]
                if root not in lifts[v]:
                    lifts[v].append(root)
    cover_id = {}
    for v, roots in lifts.items():
        if len(roots) != 2:
            raise TopologyError(f"base vertex {v} has {len(roots)} lifts, expected 2")
        for i, root in enumerate(roots):
            cover_id[root] = 2 * v + i

    cover_tris = []
    for t, tri in enumerate(tris):
        for s in (0, 1):
            cover_tris.append([cover_id[corners[(t, s, v)]] for v in _oriented_copy(tri, s)])
    cover_tris = np.array(cover_tris)

    n = 2 * K.n_vertices
    V = K.vertices
    pts = np.repeat(V, 2, axis=0)
    normals = np.zeros((n, 3))
    P = V[cover_tris // 2]
    face_n = np.cross(P[:, 1] - P[:, 0], P[:, 2] - P[:, 0])
    for k in range(3):
        np.add.at(normals, cover_tris[:, k], face_n)
    norm = np.linalg.norm(normals, axis=1, keepdims=True)
    normals = np.divide(normals, norm, out=np.zeros_like(normals), where=norm > 0)
    E = np.array(K.edge_list)
    h = offset * float(np.mean(np.linalg.norm(V[E[:, 0]] - V[E[:, 1]], axis=1)))
    pts = pts + h * normals

    ids = np.arange(n)
    return DoubleCover(build_complex(pts, cover_tris), ids // 2, ids ^ 1, K)


def lift_function(dc: DoubleCover, f: PLFunction) -> PLFunction:
    return PLFunction(f.values[dc.projection], tiebreak=f.tiebreak)


def format_cover_csv(dc: DoubleCover) -> str:
    buf = io.StringIO()
    buf.write("cover_id,base_id,deck_id\n")
    for c, (b, d) in enumerate(zip(dc.projection.tolist(), dc.deck.tolist())):
        buf.write(f"{c},{b},{d}\n")
    return buf.getvalue()


def write_cover_csv(dc: DoubleCover, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_cover_csv(dc))

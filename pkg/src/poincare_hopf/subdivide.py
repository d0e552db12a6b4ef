"""Barycentric subdivision with barycenter labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complex import SurfaceComplex, build_complex, edge_key


@dataclass(frozen=True, eq=False)
class SubdividedComplex:
    """The subdivision K' of a surface K.

    ``kind[v]`` is the dimension of the simplex of K whose barycenter is
    vertex ``v`` of K', and ``parent[v]`` is that simplex as a sorted tuple
    of K-vertex ids (length ``kind[v] + 1``).

    Vertex ids of K' are allocated as: the n0 original vertices (same ids),
    then one per edge in K's edge-table order, then one per triangle.
    """

    complex: SurfaceComplex
    kind: np.ndarray
    parent: tuple
    base: SurfaceComplex


def barycentric(K: SurfaceComplex) -> SubdividedComplex:
    n0, n1, n2 = K.counts
    V = K.vertices
    edge_id = {e: n0 + i for i, e in enumerate(K.edge_list)}
    tri_id = n0 + n1 + np.arange(n2)

    pts = np.empty((n0 + n1 + n2, 3))
    pts[:n0] = V
    E = np.array(K.edge_list, dtype=np.int64).reshape(-1, 2)
    pts[n0:n0 + n1] = V[E].mean(axis=1)
    pts[n0 + n1:] = V[K.triangles].mean(axis=1)

    kind = np.concatenate([np.zeros(n0, int), np.ones(n1, int), np.full(n2, 2)])
    parent = tuple(
        [(v,) for v in range(n0)]
        + list(K.edge_list)
        + [tuple(sorted(t)) for t in K.triangles.tolist()]
    )

    tris = []
    for t, (a, b, c) in enumerate(K.triangles.tolist()):
        ct = int(tri_id[t])
        ab, bc, ca = edge_id[edge_key(a, b)], edge_id[edge_key(b, c)], edge_id[edge_key(c, a)]
        # six pieces, each inheriting the orientation of (a, b, c)
        tris += [[a, ab, ct], [ab, b, ct], [b, bc, ct], [bc, c, ct], [c, ca, ct], [ca, a, ct]]

    kind.setflags(write=False)
    return SubdividedComplex(build_complex(pts, tris), kind, parent, K)

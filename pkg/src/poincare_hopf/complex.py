"""Closed triangulated surfaces: validation, Euler characteristic, orientation, genus."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateTriangle,
    DisconnectedComplex,
    NonManifoldEdge,
    PinchedVertex,
    TopologyError,
)


def edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True, eq=False)
class SurfaceComplex:
    """A closed combinatorial surface with carried vertex coordinates.

    Instances are produced by :func:`build_complex`, which checks the closed
    2-manifold conditions; do not construct directly.

    Attributes
    ----------
    vertices : ndarray, shape (n0, 3)
        Vertex coordinates. Only geometric routines (charts, sphere maps)
        read these; everything combinatorial ignores them.
    triangles : ndarray, shape (n2, 3)
        Ordered vertex-id triples. The order of a triple is its orientation.
    edges : dict
        ``(i, j)`` with ``i < j`` mapped to the ids of the two incident
        triangles. Insertion order is the edge-table order used to allocate
        ids elsewhere (first appearance scanning triangles, sides
        ``(a, b), (b, c), (c, a)``).
    """

    vertices: np.ndarray
    triangles: np.ndarray
    edges: dict

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    @property
    def counts(self) -> tuple[int, int, int]:
        return self.n_vertices, self.n_edges, self.n_triangles

    @cached_property
    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.edges)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def vertex_triangles(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for t, tri in enumerate(self.triangles.tolist()):
            for v in tri:
                out[v].append(t)
        return out

    def neighbors(self, v: int) -> list[int]:
        """Link vertices of ``v`` in cyclic order."""
        return [p for _, p, _ in self.star(v)]

    def star(self, v: int) -> list[tuple[int, int, int]]:
        """Cyclically ordered star of ``v`` as ``(triangle, p, q)`` triples.

        ``p`` and ``q`` are the two other corners of the triangle, and ``q`` of
        one entry is ``p`` of the next. The walk starts at the lowest-id
        incident triangle and follows that triangle's own orientation.
        """
        cache = self.__dict__.setdefault("_star_cache", {})
        if v in cache:
            return cache[v]
        tris = self.triangles
        first = min(self.vertex_triangles[v])
        out = []
        t = first
        a, b, c = tris[t].tolist()
        p, q = (b, c) if a == v else (c, a) if b == v else (a, b)
        while True:
            out.append((t, p, q))
            t0, t1 = self.edges[edge_key(v, q)]
            t = t1 if t0 == t else t0
            if t == first:
                break
            x, y = (u for u in tris[t].tolist() if u != v)
            p, q = q, (y if x == q else x)
        cache[v] = out
        return out


def _check_link(v: int, link_edges: list[tuple[int, int]]) -> None:
    adj: dict[int, list[int]] = {}
    for a, b in link_edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if len(link_edges) < 3 or len(adj) != len(link_edges):
        raise PinchedVertex(v)
    if any(len(nb) != 2 for nb in adj.values()):
        raise PinchedVertex(v)
    # walk one cycle and make sure it covers the whole link
    start = next(iter(adj))
    prev, cur, seen = None, start, 1
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        prev, cur = cur, nxt
        seen += 1
        if seen > len(adj):
            raise PinchedVertex(v)
    if seen != len(adj):
        raise PinchedVertex(v)


def build_complex(points, tris) -> SurfaceComplex:
    """Validate a triangle soup as a closed surface and build its edge table.

    Raises
    ------
    DegenerateTriangle
        A triangle repeats a vertex id.
    NonManifoldEdge
        Some edge does not have exactly two incident triangles.
    PinchedVertex
        A vertex link is not one simple cycle (this includes unused vertices).
    """
    vertices = np.array(points, dtype=float)
    if vertices.ndim != 2 or vertices.shape[1] != 3:
        raise TopologyError("points must be an (n, 3) array")
    triangles = np.array(tris, dtype=np.int64).reshape(-1, 3)
    n = len(vertices)
    if n < 4:
        raise TopologyError(f"a closed surface needs at least 4 vertices, got {n}")
    if triangles.size and (triangles.min() < 0 or triangles.max() >= n):
        raise TopologyError("triangle references a vertex id out of range")

    edges: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(triangles.tolist()):
        if a == b or b == c or a == c:
            raise DegenerateTriangle(t)
        for u, w in ((a, b), (b, c), (c, a)):
            edges.setdefault(edge_key(u, w), []).append(t)
    for e, ts in edges.items():
        if len(ts) != 2:
            raise NonManifoldEdge(e, len(ts))

    links: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b, c in triangles.tolist():
        links[a].append((b, c))
        links[b].append((c, a))
        links[c].append((a, b))
    for v in range(n):
        _check_link(v, links[v])

    vertices.setflags(write=False)
    triangles.setflags(write=False)
    return SurfaceComplex(vertices, triangles, {e: tuple(ts) for e, ts in edges.items()})


def euler_characteristic(K: SurfaceComplex) -> int:
    n0, n1, n2 = K.counts
    return n0 - n1 + n2


def triangle_components(K: SurfaceComplex) -> list[list[int]]:
    """Connected components as sorted lists of triangle ids."""
    comp = -np.ones(K.n_triangles, dtype=np.int64)
    adj = _triangle_adjacency(K)
    out = []
    for s in range(K.n_triangles):
        if comp[s] >= 0:
            continue
        comp[s] = len(out)
        members = [s]
        queue = deque([s])
        while queue:
            t = queue.popleft()
            for u, _ in adj[t]:
                if comp[u] < 0:
                    comp[u] = len(out)
                    members.append(u)
                    queue.append(u)
        out.append(sorted(members))
    return out


def is_connected(K: SurfaceComplex) -> bool:
    return len(triangle_components(K)) == 1


def component_euler_characteristics(K: SurfaceComplex) -> list[int]:
    out = []
    for comp in triangle_components(K):
        tris = K.triangles[comp]
        verts = np.unique(tris)
        edges = {edge_key(u, w) for a, b, c in tris.tolist() for u, w in ((a, b), (b, c), (c, a))}
        out.append(len(verts) - len(edges) + len(comp))
    return out


def _triangle_adjacency(K: SurfaceComplex) -> list[list[tuple[int, tuple[int, int]]]]:
    cache = K.__dict__.get("_tri_adj")
    if cache is not None:
        return cache
    adj: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in range(K.n_triangles)]
    for t, (a, b, c) in enumerate(K.triangles.tolist()):
        for u, w in ((a, b), (b, c), (c, a)):
            t0, t1 = K.edges[edge_key(u, w)]
            adj[t].append((t1 if t0 == t else t0, edge_key(u, w)))
    K.__dict__["_tri_adj"] = adj
    return adj


def _runs_forward(tri, a: int, b: int) -> bool:
    """True if the ordered triple traverses ``a -> b``."""
    i = list(tri).index(a)
    return tri[(i + 1) % 3] == b


def relative_flip(K: SurfaceComplex, t: int, u: int, edge: tuple[int, int]) -> bool:
    """Whether ``u`` must have the opposite flip of ``t`` for coherence across ``edge``."""
    a, b = edge
    tt, tu = K.triangles[t].tolist(), K.triangles[u].tolist()
    return _runs_forward(tt, a, b) == _runs_forward(tu, a, b)


@dataclass(frozen=True, eq=False)
class OrientationResult:
    """Outcome of :func:`orient`.

    ``flips[t]`` says whether triangle ``t`` must be reversed to join a
    coherent orientation. When the surface is non-orientable ``flips`` is the
    partial BFS assignment at the moment of conflict and ``witness`` is a
    closed chain of adjacent triangles along which coherence propagation
    flips parity an odd number of times.
    """

    orientable: bool
    flips: np.ndarray
    witness: tuple[int, ...] | None = None

    def oriented_triangles(self, K: SurfaceComplex) -> np.ndarray:
        if not self.orientable:
            raise TopologyError("surface is not orientable")
        tris = np.array(K.triangles)
        tris[self.flips] = tris[self.flips][:, ::-1]
        return tris


def orient(K: SurfaceComplex, start: int = 0) -> OrientationResult:
    """Propagate triangle orientations breadth-first across shared edges.

    Each component is seeded from its lowest-id triangle, except the one
    containing ``start`` which is seeded there (unflipped).
    """
    adj = _triangle_adjacency(K)
    n = K.n_triangles
    flips = np.zeros(n, dtype=bool)
    parent = -np.ones(n, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seeds = [start] + [t for t in range(n) if t != start]
    for seed in seeds:
        if seen[seed]:
            continue
        seen[seed] = True
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            for u, e in adj[t]:
                want = flips[t] ^ relative_flip(K, t, u, e)
                if not seen[u]:
                    seen[u] = True
                    flips[u] = want
                    parent[u] = t
                    queue.append(u)
                elif flips[u] != want:
                    return OrientationResult(False, flips, _witness(parent, t, u))
    return OrientationResult(True, flips)


def _witness(parent: np.ndarray, t: int, u: int) -> tuple[int, ...]:
    def path(x):
        out = [x]
        while parent[x] >= 0:
            x = int(parent[x])
            out.append(x)
        return out

    pt, pu = path(t), path(u)
    on_u = {x: i for i, x in enumerate(pu)}
    i = next(i for i, x in enumerate(pt) if x in on_u)
    j = on_u[pt[i]]
    # lca -> ... -> t, then u -> ... -> child of lca
    return tuple(pt[: i + 1][::-1] + pu[:j])


@dataclass(frozen=True)
class GenusReport:
    orientable: bool
    euler: int
    genus: int


def genus(K: SurfaceComplex) -> GenusReport:
    """Genus g (orientable, chi = 2 - 2g) or non-orientable genus k (chi = 2 - k)."""
    if not is_connected(K):
        raise DisconnectedComplex("genus is only defined for a connected surface")
    chi = euler_characteristic(K)
    orientable = orient(K).orientable
    if orientable:
        if chi % 2:
            raise TopologyError(f"orientable surface with odd Euler characteristic {chi}")
        return GenusReport(True, chi, (2 - chi) // 2)
    return GenusReport(False, chi, 2 - chi)

"""ASCII OFF reader and writer for triangulated surfaces."""

from __future__ import annotations

import io
import os

import numpy as np

from .complex import SurfaceComplex, build_complex
from .errors import MalformedInput, NonTriangleFace


def _tokens(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line


def parse_off(text: str) -> SurfaceComplex:
    lines = list(_tokens(text))
    if not lines or not lines[0].startswith("OFF"):
        raise MalformedInput("missing OFF header")
    head = lines[0][3:].split()
    rest = lines[1:]
    if not head:
        if not rest:
            raise MalformedInput("missing counts line")
        head, rest = rest[0].split(), rest[1:]
    try:
        nv, nf = int(head[0]), int(head[1])
    except (IndexError, ValueError):
        raise MalformedInput(f"bad counts line: {' '.join(head)!r}") from None
    if len(rest) < nv + nf:
        raise MalformedInput(f"expected {nv} vertex and {nf} face lines, got {len(rest)} lines")
    try:
        verts = np.array([[float(x) for x in ln.split()[:3]] for ln in rest[:nv]])
    except ValueError as exc:
        raise MalformedInput(f"bad vertex line: {exc}") from None
    if verts.shape != (nv, 3):
        raise MalformedInput("every vertex line needs three coordinates")
    faces = []
    for k, ln in enumerate(rest[nv:nv + nf]):
        try:
            vals = [int(x) for x in ln.split()]
        except ValueError:
            raise MalformedInput(f"bad face line {k}: {ln!r}") from None
        if vals[0] != 3 or len(vals) < 4:
            raise NonTriangleFace(f"face {k} has {vals[0]} vertices")
        faces.append(vals[1:4])
    return build_complex(verts, faces)


def read_off(path) -> SurfaceComplex:
    with open(path) as fh:
        return parse_off(fh.read())


def format_off(K: SurfaceComplex) -> str:
    buf = io.StringIO()
    buf.write("OFF\n")
    buf.write(f"{K.n_vertices} {K.n_triangles} {K.n_edges}\n")
    for x, y, z in K.vertices.tolist():
        buf.write(f"{x:.17g} {y:.17g} {z:.17g}\n")
    for a, b, c in K.triangles.tolist():
        buf.write(f"3 {a} {b} {c}\n")
    return buf.getvalue()


def write_off(K: SurfaceComplex, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_off(K))

"""Command-line front end: every subcommand prints one JSON report.

Exit codes: 0 when the report passes, 2 when the computation ran but a
mathematical check failed, 1 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import generators
from .complex import (
    SurfaceComplex,
    component_euler_characteristics,
    euler_characteristic,
    genus,
    is_connected,
    orient,
    triangle_components,
)
from .cover import lift_function, orientation_double_cover, write_cover_csv
from .degree import (
    CircleMap,
    SphereMap,
    antipodal_map,
    circle_crossings,
    circle_degree_regular_value,
    circle_degree_winding,
    identity_map,
    radial_extension_gauss_map,
    solid_angle_turns,
    sphere_degree_regular_value,
    verify_extension_lemma,
)
from .errors import NonRegularValue, TopologyError
from .fields import (
    ConjPower,
    Constant,
    Power,
    gradient_index,
    hopf_function,
    hopf_index_report,
    morse_sum,
    parse_field,
    planar_index,
    random_function,
)
from .off import format_off, read_off, write_off
from .subdivide import barycentric

SCHEMA = 1


class InputError(Exception):
    pass


def _sha256(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _grid(arg: str) -> tuple[int, int]:
    try:
        m, n = arg.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise InputError(f"grid size must look like MxN, got {arg!r}") from None


def load_mesh(spec: str) -> tuple[SurfaceComplex, str]:
    """Load a mesh from an OFF path or a built-in name.

    Built-ins: tetrahedron, cube_sphere, octahedron, icosahedron, ico:L,
    torus:MxN, klein:MxN, rp2.
    """
    if os.path.exists(spec):
        with open(spec, "rb") as fh:
            data = fh.read()
        return read_off(spec), _sha256(data)
    name, _, arg = spec.partition(":")
    simple = {
        "tetrahedron": generators.tetrahedron,
        "cube_sphere": generators.cube_sphere,
        "octahedron": generators.octahedron,
        "icosahedron": generators.icosahedron,
        "rp2": generators.projective_plane_6,
    }
    if name in simple and not arg:
        K = simple[name]()
    elif name == "ico":
        K = generators.refined_icosahedron(int(arg))
    elif name == "torus":
        K = generators.torus_grid(*_grid(arg))
    elif name == "klein":
        K = generators.klein_grid(*_grid(arg))
    else:
        raise InputError(f"no such file or built-in mesh: {spec!r}")
    return K, _sha256(format_off(K).encode())


def _counts(K: SurfaceComplex) -> dict:
    n0, n1, n2 = K.counts
    return {"vertices": n0, "edges": n1, "triangles": n2}


# -- subcommands ----------------------------------------------------------
# each returns (results, passed, digest)


def cmd_audit(args):
    K, digest = load_mesh(args.mesh)
    res = orient(K)
    out = {
        "counts": _counts(K),
        "euler": euler_characteristic(K),
        "orientable": res.orientable,
        "components": len(triangle_components(K)),
        "component_euler": component_euler_characteristics(K),
        "validation": "ok",
    }
    if res.witness is not None:
        out["non_orientable_witness"] = list(res.witness)
    if is_connected(K):
        g = genus(K)
        out["genus"] = g.genus
        out["genus_kind"] = "orientable" if g.orientable else "non-orientable"
    return out, True, digest


def cmd_hopf(args):
    K, digest = load_mesh(args.mesh)
    report = hopf_index_report(K, cross_check=False)
    C = report.subdivision.complex
    f = hopf_function(report.subdivision)
    mismatches = [e.vertex for e in report.entries if gradient_index(C, f, e.vertex) != e.index]
    out = {
        "euler": report.euler,
        "total": report.total,
        "singularities": report.counts(),
        "index_by_kind": {str(k): sorted(v) for k, v in report.by_kind().items()},
        "table": [[e.vertex, e.kind, e.index] for e in report.entries],
        "gradient_mismatches": mismatches,
    }
    return out, report.total == report.euler and not mismatches, digest


def _expected_index(f):
    if isinstance(f, Power):
        return f.k
    if isinstance(f, ConjPower):
        return -f.k
    if isinstance(f, Constant):
        return 0
    return None


def cmd_index(args):
    f = parse_field(args.field)
    if args.field.startswith("csv:"):
        with open(args.field[4:], "rb") as fh:
            digest = _sha256(fh.read())
    else:
        digest = _sha256(args.field.encode())
    idx = planar_index(f, args.radius, args.samples)
    idx_half = planar_index(f, args.radius / 2, args.samples)
    expected = _expected_index(f)
    out = {"index": idx, "index_half_radius": idx_half, "expected": expected}
    passed = idx == idx_half and (expected is None or idx == expected)
    return out, passed, digest


def _circle_map(spec: str, n: int) -> CircleMap:
    name, _, arg = spec.partition(":")
    try:
        if name == "identity" and not arg:
            return CircleMap.identity(n)
        if name == "mult":
            return CircleMap.multiply(int(arg), n)
        if name == "sine":
            return CircleMap.sine(float(arg) if arg else 1.5, n)
    except ValueError as exc:
        raise InputError(f"bad circle map {spec!r}: {exc}") from None
    raise InputError(f"unknown circle map {spec!r}")


def cmd_degree_s1(args):
    m = _circle_map(args.map, args.samples)
    rng = np.random.default_rng(args.seed)
    y = args.value if args.value is not None else float(rng.uniform(0, 2 * np.pi))
    for _ in range(65):
        try:
            crossings = circle_crossings(m, y)
            break
        except NonRegularValue:
            y = float(rng.uniform(0, 2 * np.pi))
    else:
        raise NonRegularValue("no regular value found")
    winding = circle_degree_winding(m)
    regular = circle_degree_regular_value(m, y)
    out = {
        "winding": winding,
        "regular_value": regular,
        "value": y,
        "crossing_signs": [c.sign for c in crossings],
        "turning_points": m.turning_points(),
    }
    return out, winding == regular, _sha256(f"{args.map}|{args.samples}".encode())


def _sphere_map(spec: str, level: int, seed: int) -> SphereMap:
    if spec == "identity":
        return identity_map(level)
    if spec == "antipodal":
        return antipodal_map(level)
    if spec.startswith("gauss:"):
        return radial_extension_gauss_map(parse_field(spec[6:]), level, seed)
    raise InputError(f"unknown sphere map {spec!r}")


def cmd_degree_s2(args):
    m = _sphere_map(args.map, args.level, args.seed)
    turns = solid_angle_turns(m)
    solid = int(round(turns))
    regular = sphere_degree_regular_value(m, seed=args.seed)
    out = {
        "solid_angle": solid,
        "residual": abs(turns - solid),
        "regular_value": regular,
    }
    passed = out["residual"] < 1e-6 and solid == regular
    return out, passed, _sha256(f"{args.map}|{args.level}".encode())


def cmd_lemma(args):
    rep = verify_extension_lemma(parse_field(args.field), args.level, seed=args.seed)
    out = {
        "planar": rep.planar,
        "solid_angle": rep.solid_angle,
        "regular_value": rep.regular_value,
        "residual": rep.residual,
    }
    return out, rep.passed, _sha256(f"{args.field}|{args.level}".encode())


def cmd_cover(args):
    K, digest = load_mesh(args.mesh)
    dc = orientation_double_cover(K)
    C = dc.cover
    chi, chi_c = euler_characteristic(K), euler_characteristic(C)
    Kp = barycentric(K)
    dcp = orientation_double_cover(Kp.complex)
    lifted = morse_sum(dcp.cover, lift_function(dcp, hopf_function(Kp)))
    fibers = np.bincount(dc.projection, minlength=K.n_vertices)
    checks = {
        "two_preimages": bool(np.all(fibers == 2)),
        "deck_involution": bool(np.array_equal(dc.deck[dc.deck], np.arange(C.n_vertices))),
        "deck_over_base": bool(np.array_equal(dc.projection[dc.deck], dc.projection)),
        "euler_doubles": chi_c == 2 * chi,
        "cover_orientable": orient(C).orientable,
        "lifted_hopf_sum": lifted == 2 * chi,
        "connected_iff_non_orientable": is_connected(C) != orient(K).orientable,
    }
    out = {
        "base": {"counts": _counts(K), "euler": chi, "orientable": orient(K).orientable},
        "cover": {
            "counts": _counts(C),
            "euler": chi_c,
            "orientable": checks["cover_orientable"],
            "connected": is_connected(C),
            "components": len(triangle_components(C)),
        },
        "lifted_hopf_sum": lifted,
        "checks": checks,
    }
    if args.output:
        write_off(C, args.output)
    if args.csv:
        write_cover_csv(dc, args.csv)
    return out, all(checks.values()), digest


def cmd_verify(args):
    K, digest = load_mesh(args.mesh)
    chi = euler_characteristic(K)
    report = hopf_index_report(K)
    rng = np.random.default_rng(args.seed)
    sums = [morse_sum(K, random_function(K, rng)) for _ in range(args.trials)]
    ok = sum(s == chi for s in sums)
    out = {
        "euler": chi,
        "hopf_total": report.total,
        "hopf_singularities": report.counts(),
        "trials": args.trials,
        "trials_passed": ok,
        "morse_sums": sorted(set(sums)),
    }
    return out, report.total == chi and ok == args.trials, digest


# -- plumbing -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poincare-hopf", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.set_defaults(func=func)
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS)
        return sp

    sp = add("audit", cmd_audit, "Euler characteristic, orientability and genus")
    sp.add_argument("mesh")
    sp = add("hopf", cmd_hopf, "indices of the Hopf field on the barycentric subdivision")
    sp.add_argument("mesh")
    sp = add("index", cmd_index, "index of a planar model field at the origin")
    sp.add_argument("--field", required=True, help="power:k | conj:k | const[:angle] | csv:path")
    sp.add_argument("--radius", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=64)
    sp = add("degree-s1", cmd_degree_s1, "degree of a circle map, two ways")
    sp.add_argument("--map", default="identity", help="identity | mult:k | sine:a")
    sp.add_argument("--samples", type=int, default=64)
    sp.add_argument("--value", type=float, default=None)
    sp = add("degree-s2", cmd_degree_s2, "degree of a sphere map, two ways")
    sp.add_argument("--map", default="identity",
                    help="identity | antipodal | gauss:power:k | gauss:conj:k")
    sp.add_argument("--level", type=int, default=3)
    sp = add("lemma", cmd_lemma, "planar index vs degree of the radial extension")
    sp.add_argument("--field", required=True)
    sp.add_argument("--level", type=int, default=3)
    sp = add("cover", cmd_cover, "orientation double cover")
    sp.add_argument("mesh")
    sp.add_argument("-o", "--output", help="write the cover as OFF")
    sp.add_argument("--csv", help="write cover_id,base_id,deck_id rows")
    sp = add("verify", cmd_verify, "Hopf field plus random PL functions against chi")
    sp.add_argument("mesh")
    sp.add_argument("--trials", type=int, default=100)
    return p


def run(argv=None) -> tuple[dict, int]:
    """Parse ``argv``, run the subcommand and return ``(report, exit code)``."""
    args = build_parser().parse_args(argv)
    echo = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    report = {"schema": SCHEMA, "command": args.command, "args": echo, "seed": args.seed}
    t0 = time.perf_counter()
    try:
        results, passed, digest = args.func(args)
    except (InputError, TopologyError, OSError, ValueError) as exc:
        report.update(error=f"{type(exc).__name__}: {exc}", input_digest=None, results=None)
        report["pass"] = False
        code = 1
    else:
        report.update(input_digest=digest, results=results)
        report["pass"] = bool(passed)
        code = 0 if passed else 2
    report["wall_time_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return report, code


def main(argv=None) -> int:
    report, code = run(argv)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

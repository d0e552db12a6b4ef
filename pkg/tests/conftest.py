import numpy as np
import pytest

from poincare_hopf import generators
from poincare_hopf.complex import build_complex

MESHES = {
    "tetrahedron": generators.tetrahedron,
    "octahedron": generators.octahedron,
    "cube_sphere": generators.cube_sphere,
    "icosahedron": generators.icosahedron,
    "torus_3x3": lambda: generators.torus_grid(3, 3),
    "torus_4x4": lambda: generators.torus_grid(4, 4),
    "torus_3x5": lambda: generators.torus_grid(3, 5),
    "klein_3x3": lambda: generators.klein_grid(3, 3),
    "klein_4x4": lambda: generators.klein_grid(4, 4),
    "klein_5x3": lambda: generators.klein_grid(5, 3),
    "rp2": generators.projective_plane_6,
}

CHI = {
    "tetrahedron": 2, "octahedron": 2, "cube_sphere": 2, "icosahedron": 2,
    "torus_3x3": 0, "torus_4x4": 0, "torus_3x5": 0,
    "klein_3x3": 0, "klein_4x4": 0, "klein_5x3": 0,
    "rp2": 1,
}


@pytest.fixture(params=sorted(MESHES))
def named_mesh(request):
    return request.param, MESHES[request.param]()


def flat_fan(n=6, apex_depth=1.0):
    """Closed surface whose vertex 0 sits at the center of a flat regular n-gon fan."""
    th = 2 * np.pi * np.arange(n) / n
    ring = np.stack([np.cos(th), np.sin(th), np.zeros(n)], axis=1)
    pts = np.vstack([[0, 0, 0], ring, [0, 0, -apex_depth]])
    tris = [[0, 1 + i, 1 + (i + 1) % n] for i in range(n)]
    tris += [[n + 1, 1 + (i + 1) % n, 1 + i] for i in range(n)]
    return build_complex(pts, tris)


# -- acceptance summary ---------------------------------------------------

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    mark = _criteria_marks.get(report.nodeid)
    if mark is None:
        return
    n, text = mark
    prev = _criteria.get(n, (text, True))
    _criteria[n] = (text, prev[1] and report.passed)


_criteria_marks: dict = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _criteria_marks[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        text, ok = _criteria[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {text}")

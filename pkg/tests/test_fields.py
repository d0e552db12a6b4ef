import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from poincare_hopf import generators
from poincare_hopf.complex import build_complex, euler_characteristic
from poincare_hopf.errors import MalformedInput, NonGenericFunction
from poincare_hopf.fields import (
    ConjPower,
    Constant,
    PLFunction,
    Power,
    Sampled,
    banchoff_index,
    gradient_index,
    hopf_function,
    hopf_index_report,
    load_field_csv,
    morse_sum,
    parse_field,
    planar_index,
    random_function,
)
from poincare_hopf.subdivide import barycentric

from conftest import CHI, MESHES, flat_fan


@pytest.mark.parametrize("field,expected", [(Power(1), 1), (ConjPower(1), -1), (Power(2), 2)])
def test_planar_index_examples(field, expected):
    assert planar_index(field, 1.0, 64) == expected


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("radius", [0.5, 1.0])
def test_planar_index_powers(k, radius):
    assert planar_index(Power(k), radius, 64) == k
    assert planar_index(ConjPower(k), radius, 64) == -k


def test_planar_index_refines_undersampled_loop():
    assert planar_index(Power(4), 1.0, 8) == 4


@pytest.mark.parametrize("center", [(0, 0), (0.3, -0.2), (5, 5)])
def test_constant_field_has_index_zero(center):
    assert planar_index(Constant((0.6, 0.8)), 0.5, 64, center=center) == 0


def test_index_zero_away_from_the_zero():
    assert planar_index(Power(2), 0.5, 64, center=(2.0, 0.0)) == 0


def test_model_field_values():
    xy = np.array([[1.0, 1.0]])
    np.testing.assert_allclose(Power(2)(xy), [[0.0, 2.0]], atol=1e-15)
    np.testing.assert_allclose(ConjPower(2)(xy), [[0.0, -2.0]], atol=1e-15)
    assert Power(1).vanishes_at_origin()
    assert not Constant().vanishes_at_origin()
    with pytest.raises(ValueError):
        Power(0)
    with pytest.raises(ValueError):
        Constant((0, 0))


def test_sampled_field_from_csv(tmp_path):
    th = 2 * np.pi * np.arange(40) / 40
    rows = ["x,y,vx,vy"] + [f"{np.cos(t)},{np.sin(t)},{np.cos(-3 * t)},{np.sin(-3 * t)}" for t in th[::-1]]
    path = tmp_path / "field.csv"
    path.write_text("\n".join(rows) + "\n")
    f = load_field_csv(path)
    assert isinstance(f, Sampled)
    assert planar_index(f) == -3
    assert planar_index(parse_field(f"csv:{path}")) == -3
    np.testing.assert_allclose(f([[1.0, 0.01]]), [[1.0, 0.0]])


def test_bad_csv(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1,2,3\n")
    with pytest.raises(MalformedInput):
        load_field_csv(path)


@pytest.mark.parametrize("spec,expected", [("power:3", Power(3)), ("conj:2", ConjPower(2)),
                                           ("const", Constant((1.0, 0.0)))])
def test_parse_field(spec, expected):
    assert parse_field(spec) == expected


@pytest.mark.parametrize("spec", ["power:x", "nope", "csv:"])
def test_parse_field_errors(spec):
    with pytest.raises(MalformedInput):
        parse_field(spec)


# -- PL functions ---------------------------------------------------------


def test_hopf_function_values(named_mesh):
    _, K = named_mesh
    Kp = barycentric(K)
    f = hopf_function(Kp)
    assert set(f.values.tolist()) == {0.0, 1.0, 2.0}
    corners = np.sort(f.values[Kp.complex.triangles], axis=1)
    assert np.all(corners == [0, 1, 2])


def test_hopf_tetrahedron_singularities():
    r = hopf_index_report(generators.tetrahedron())
    assert r.counts() == {0: 4, 1: 6, 2: 4}
    assert r.by_kind() == {0: {1}, 1: {-1}, 2: {1}}
    assert r.total == 4 - 6 + 4 == 2


def test_hopf_torus_sum_zero():
    r = hopf_index_report(generators.torus_grid(3, 3))
    c = r.counts()
    assert c[0] - c[1] + c[2] == 0
    assert r.total == 0


@pytest.mark.parametrize("name,total", [("tetrahedron", 2), ("rp2", 1), ("klein_4x4", 0)])
def test_hopf_index_report_totals(name, total):
    assert hopf_index_report(MESHES[name]()).total == total


def test_hopf_indices_by_kind_both_algorithms(named_mesh):
    name, K = named_mesh
    Kp = barycentric(K)
    C, f = Kp.complex, hopf_function(Kp)
    expected = {0: 1, 1: -1, 2: 1}
    for v in range(C.n_vertices):
        b = banchoff_index(C, f, v)
        assert b == expected[int(Kp.kind[v])]
        assert gradient_index(C, f, v) == b
    assert morse_sum(C, f) == CHI[name]


def test_banchoff_rejects_ties_without_tiebreak():
    K = generators.icosahedron()
    f = PLFunction(np.zeros(K.n_vertices), tiebreak=False)
    with pytest.raises(NonGenericFunction):
        banchoff_index(K, f, 0)
    with pytest.raises(NonGenericFunction):
        gradient_index(K, PLFunction(np.zeros(K.n_vertices)), 0)


def test_tiebreak_makes_constant_function_generic():
    # with (value, id) ordering a constant function is the vertex-id function
    K = generators.icosahedron()
    f = PLFunction(np.zeros(K.n_vertices))
    g = PLFunction(np.arange(K.n_vertices, dtype=float))
    assert [banchoff_index(K, f, v) for v in range(12)] == [banchoff_index(K, g, v) for v in range(12)]
    assert morse_sum(K, f) == 2


def test_linear_function_on_flat_fan_is_regular():
    K = flat_fan(6)
    f = PLFunction(K.vertices @ np.array([1.0, 0.3, 0.0]))
    assert gradient_index(K, f, 0) == 0
    assert banchoff_index(K, f, 0) == 0


def test_gradient_matches_banchoff_on_random_icosahedron():
    K = generators.icosahedron()
    rng = np.random.default_rng(20240601)
    for _ in range(100):
        f = random_function(K, rng)
        for v in range(K.n_vertices):
            assert gradient_index(K, f, v) == banchoff_index(K, f, v)


def test_gradient_matches_banchoff_on_subdivisions(named_mesh):
    _, K = named_mesh
    C = barycentric(K).complex
    rng = np.random.default_rng(7)
    for _ in range(3):
        f = random_function(C, rng)
        for v in range(C.n_vertices):
            assert gradient_index(C, f, v) == banchoff_index(C, f, v)


def test_height_function_on_rotated_icosahedron():
    R = Rotation.random(random_state=12345)
    ico = generators.icosahedron()
    K = build_complex(R.apply(ico.vertices), ico.triangles)
    f = PLFunction(K.vertices[:, 2])
    assert len(set(f.values.tolist())) == K.n_vertices
    # direct count from neighbor comparisons
    minima = [v for v in range(12) if all(f.values[w] > f.values[v] for w in K.neighbors(v))]
    maxima = [v for v in range(12) if all(f.values[w] < f.values[v] for w in K.neighbors(v))]
    assert len(minima) == 1 and len(maxima) == 1
    idx = [banchoff_index(K, f, v) for v in range(12)]
    assert sorted(idx) == [0] * 10 + [1, 1]
    assert idx[minima[0]] == idx[maxima[0]] == 1
    assert morse_sum(K, f) == 2


def test_random_functions_on_torus_sum_to_zero():
    K = generators.torus_grid(4, 4)
    rng = np.random.default_rng(4)
    assert {morse_sum(K, random_function(K, rng)) for _ in range(100)} == {0}


def test_morse_sum_equals_chi(named_mesh):
    name, K = named_mesh
    rng = np.random.default_rng(11)
    for _ in range(25):
        assert morse_sum(K, random_function(K, rng)) == CHI[name] == euler_characteristic(K)


def test_index_report_total_is_entry_sum():
    r = hopf_index_report(generators.cube_sphere())
    assert r.total == sum(e.index for e in r.entries)
    assert r.euler == 2
    assert len(r.entries) == 8 + 18 + 12

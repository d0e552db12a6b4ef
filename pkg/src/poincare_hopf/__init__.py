"""Computational checks of the Poincare-Hopf theorem on closed triangulated surfaces."""

from .chart import Chart, LoopSamples, star_chart, winding_number
from .complex import (
    GenusReport,
    OrientationResult,
    SurfaceComplex,
    build_complex,
    euler_characteristic,
    genus,
    orient,
)
from .cover import DoubleCover, lift_function, orientation_double_cover
from .degree import (
    CircleMap,
    LemmaReport,
    SphereMap,
    circle_degree_regular_value,
    circle_degree_winding,
    radial_extension_gauss_map,
    sphere_degree_regular_value,
    sphere_degree_solid_angle,
    verify_extension_lemma,
)
from .fields import (
    ConjPower,
    Constant,
    IndexReport,
    ModelField,
    PLFunction,
    Power,
    Sampled,
    banchoff_index,
    gradient_index,
    hopf_function,
    hopf_index_report,
    morse_sum,
    planar_index,
)
from .generators import (
    cube_sphere,
    icosahedron,
    klein_grid,
    octahedron,
    projective_plane_6,
    refined_icosahedron,
    tetrahedron,
    torus_grid,
)
from .off import read_off, write_off
from .subdivide import SubdividedComplex, barycentric

__version__ = "0.1.0"

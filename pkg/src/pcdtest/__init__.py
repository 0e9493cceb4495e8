"""Proximity catch digraph tests of spatial segregation and association."""

from .altdist import (
    AltSpec,
    d2mu_assoc_cs,
    d2mu_assoc_pe,
    d2mu_seg_cs,
    d2mu_seg_pe,
    is_degenerate_seg_pe,
    mu_cs_assoc,
    mu_cs_seg,
    pae,
    pae_multi,
)
from .digraph import DigraphSummary, build_digraph, kernel_h
from .errors import (
    CocircularAmbiguity,
    DegenerateInput,
    DegenerateVariance,
    InsufficientInteriorPoints,
    InvalidParam,
    InvalidWeights,
    OutsideTriangle,
    ParseError,
    PCDError,
    TooFewPoints,
)
from .estimator import SegregationTest
from .geometry import (
    STANDARD_TRIANGLE,
    AffineMap,
    Triangle,
    Triangulation,
    barycentric,
    convex_hull,
    delaunay_triangulate,
    edge_region_index,
    to_standard_equilateral,
    vertex_region_index,
)
from .harness import ExperimentGrid, simulate_grid
from .inference import (
    TestResult,
    analyze,
    asymptotic_power,
    corrected_stat,
    hull_correction,
    normal_cdf,
    normal_quantile,
    randomization_test,
    standardized_stat,
)
from .nulldist import Moments, mu_cs, mu_pe, multi_moments, nu_cs, nu_pe, omega_cs, omega_pe, var_rho
from .proximity import PcdConfig, RegionPolygon, ncs_contains, ncs_region, npe_contains, npe_region
from .sampler import (
    kappa_from_eps,
    make_rng,
    sample_alt_hull,
    sample_association,
    sample_null_hull,
    sample_segregation,
    sample_uniform_triangle,
)

__version__ = "0.1.0"

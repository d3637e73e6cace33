"""Strebel critical graphs, their spectral covers and the cone spherical metrics they induce."""
from .constructors import (
    ExcludedCaseError,
    SurgeryTrace,
    ThreePoleClass,
    TraceStep,
    bridge_handle,
    build,
    build_sphere_simple,
    build_three_pole,
    build_torus_gadget,
    three_pole_class,
)
from .metric import (
    Admissibility,
    MetricRibbonGraph,
    NotStrebelError,
    ResidueVector,
    ZeroPartition,
    residue_vector,
    strebel_admissible,
    zero_partition,
)
from .numeric import (
    BranchTrackingError,
    ContourError,
    ThreePoleDifferential,
    classify_crosscheck,
    curvature_probe,
    pole_monodromy_numeric,
    q_poly,
)
from .ribbon import (
    DisconnectedGraphError,
    FaceWalk,
    InvalidGraphError,
    RibbonGraph,
    ValidationReport,
    canonical_form,
    disjoint_union,
    enumerate_small,
    face_cycles,
    genus,
    relabel,
    validate,
    vertex_valencies,
)
from .spectral import BranchPointError, SpectralCoverResult, cycle_holonomy, degeneracy_check
from .spherical import (
    Reducibility,
    ReducibilityVerdict,
    SphericalDivisorData,
    divisor_and_angles,
    gauss_bonnet_check,
    reducibility_classify,
    spherical_report,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

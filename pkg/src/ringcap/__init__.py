"""Conformal capacity of ring domains by boundary integral equations.

The library maps doubly connected domains onto annuli q < |w| < 1 by
solving a boundary integral equation with a generalized Neumann-type
kernel; the capacity is 2 pi / log(1/q).  Slit, half-plane and strip
condensers are carried onto Jordan-curve rings by auxiliary conformal maps
(including a fixed-point preimage iteration for a strip with an interior
slit), and hyperbolic/elliptic capacities of compact sets come from the
same machinery.
"""

from .annmap import AnnulusMap, annq, cauchy_eval, phi_boundary, phi_eval
from .boundary import (
    BoundaryCurve,
    Mesh,
    RingDomain,
    amoeba,
    circle,
    confocal_ellipse,
    domain_from_dict,
    ellipse,
    grade_curve,
    mesh_equidistant,
    mesh_graded,
    polygon,
    rectangle,
    regular_polygon,
    samples_curve,
    shape,
    transform_curve,
    winding_number,
)
from .capacity import (
    CapacityReport,
    CompactSet,
    cap_family,
    cape,
    cape_interval,
    caph,
    caph_interval,
    exact_oracle,
)
from .errors import (
    ArgumentError,
    BranchError,
    ConvergenceError,
    DomainError,
    EvaluationError,
    GeometryError,
    MeshError,
    NoOracleError,
    RingcapError,
    SingularityError,
)
from .slitmap import (
    PreimageState,
    SlitSpec,
    StripMap,
    halfplane_to_disk,
    joukowski,
    joukowski_inverse,
    mobius,
    strip_canonical_map,
    strip_slit_preimage,
    strip_to_disk,
)
from .specfun import EllipticArg, complete_E, complete_K, incomplete_E, incomplete_F, mu, mu_inv

__version__ = "0.1.0"

__all__ = [
    "AnnulusMap",
    "annq",
    "cauchy_eval",
    "phi_boundary",
    "phi_eval",
    "BoundaryCurve",
    "Mesh",
    "RingDomain",
    "amoeba",
    "circle",
    "confocal_ellipse",
    "domain_from_dict",
    "ellipse",
    "grade_curve",
    "mesh_equidistant",
    "mesh_graded",
    "polygon",
    "rectangle",
    "regular_polygon",
    "samples_curve",
    "shape",
    "transform_curve",
    "winding_number",
    "CapacityReport",
    "CompactSet",
    "cap_family",
    "cape",
    "cape_interval",
    "caph",
    "caph_interval",
    "exact_oracle",
    "ArgumentError",
    "BranchError",
    "ConvergenceError",
    "DomainError",
    "EvaluationError",
    "GeometryError",
    "MeshError",
    "NoOracleError",
    "RingcapError",
    "SingularityError",
    "PreimageState",
    "SlitSpec",
    "StripMap",
    "halfplane_to_disk",
    "joukowski",
    "joukowski_inverse",
    "mobius",
    "strip_canonical_map",
    "strip_slit_preimage",
    "strip_to_disk",
    "EllipticArg",
    "complete_E",
    "complete_K",
    "incomplete_E",
    "incomplete_F",
    "mu",
    "mu_inv",
    "__version__",
]

"""Exact coincidence Lefschetz and Reidemeister trace invariants for
closed oriented manifolds presented by their integral cohomology rings."""

__version__ = "0.1.0"

from .errors import (
    ComputationError,
    InputError,
    ModelInvalid,
    ToolkitError,
)
from .exact_linalg import (
    AbelianGroup,
    GradedAbelianGroup,
    IntMatrix,
    SNFDecomposition,
    cokernel,
    cokernel_coordinates,
    exterior_power,
    kernel_basis,
    snf,
)
from .graded_ring import (
    CohomologyClass,
    CohomologyModel,
    DualBasis,
    Generator,
    HomologyClass,
    RingMap,
    compose_maps,
    cup,
    dual_basis,
    euler_characteristic,
    evaluate,
    identity_map,
    map_degree,
    pair,
    poincare_dual,
    poincare_dual_inverse,
    pullback,
    tensor_map,
    tensor_model,
    unit_volume_class,
    validate_map,
    validate_model,
)
from .coincidence import (
    CoincidenceReport,
    SelfMapHomology,
    coincidence_class,
    coincidence_report,
    homology_self_map,
    lefschetz_number,
    linear_coincidence_index,
    linear_fixed_point_index,
    self_coincidence_class,
)
from .spectral import (
    GysinResult,
    S1BundleReport,
    TwoRowE2,
    TwoRowResult,
    bundle_projection_map,
    euler_from_diagonal,
    gysin_cohomology,
    s1_bundle_e2,
    s1_bundle_gysin_residue,
    s1_bundle_reidemeister,
    s1_bundle_spectral_residue,
    total_space_model,
    two_row_homology,
)
from .sphere_example import (
    SphereCoincidenceInput,
    SphereTraceReport,
    sphere_reidemeister,
)
from .manifests import (
    load_map,
    load_space,
    map_to_dict,
    parse_map_dict,
    parse_space_dict,
    space_to_dict,
)
from .zoo import (
    builtin_spaces,
    circle,
    complex_projective,
    cp_scaling_map,
    orientable_surface,
    sphere,
    sphere_degree_map,
    sphere_product,
    torus,
    torus_map,
)

__all__ = [
    "__version__",
    "ToolkitError", "InputError", "ModelInvalid", "ComputationError",
    "IntMatrix", "SNFDecomposition", "snf", "kernel_basis",
    "AbelianGroup", "GradedAbelianGroup", "cokernel",
    "cokernel_coordinates", "exterior_power",
    "Generator", "CohomologyModel", "CohomologyClass", "HomologyClass",
    "DualBasis", "RingMap", "cup", "evaluate", "pair", "dual_basis",
    "pullback", "poincare_dual", "poincare_dual_inverse",
    "tensor_model", "tensor_map", "euler_characteristic",
    "unit_volume_class", "map_degree", "identity_map", "compose_maps",
    "validate_model", "validate_map",
    "SelfMapHomology", "lefschetz_number", "homology_self_map",
    "CoincidenceReport", "coincidence_class", "self_coincidence_class",
    "coincidence_report", "linear_fixed_point_index",
    "linear_coincidence_index",
    "TwoRowE2", "TwoRowResult", "two_row_homology",
    "GysinResult", "gysin_cohomology", "s1_bundle_e2",
    "s1_bundle_spectral_residue", "total_space_model",
    "bundle_projection_map", "s1_bundle_gysin_residue",
    "S1BundleReport", "s1_bundle_reidemeister", "euler_from_diagonal",
    "SphereCoincidenceInput", "SphereTraceReport", "sphere_reidemeister",
    "parse_space_dict", "space_to_dict", "parse_map_dict", "map_to_dict",
    "load_space", "load_map",
    "builtin_spaces", "sphere", "circle", "complex_projective", "torus",
    "orientable_surface", "sphere_product", "sphere_degree_map",
    "cp_scaling_map", "torus_map",
]

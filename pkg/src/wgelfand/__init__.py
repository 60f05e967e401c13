"""Weighted convolution algebras on finite groups: Gelfand pair detection,
spherical functions, the weighted spherical Fourier transform and multipliers."""

from .errors import (
    BiInvarianceError,
    DegenerateSpectrumError,
    InputSpecError,
    NotAutomorphismError,
    NotGelfandError,
    NotInvolutiveError,
    NotMultiplierError,
    PreconditionError,
    SizeLimitError,
    WGelfandError,
)
from .fourier import (
    FourierTable,
    MultiplierOperator,
    MultiplierSymbol,
    build_fourier_table,
    extract_symbol,
    injectivity_check,
    is_multiplier,
    multiplier_from_kernel,
    multiplier_from_spec,
    spherical_transform,
    verify_commutation,
    verify_convolution_theorem,
)
from .groups import (
    DoubleCosetPartition,
    GroupAutomorphism,
    GroupTable,
    SubgroupEmbedding,
    build_group_from_generators,
    check_automorphism,
    cyclic_group,
    dihedral_group,
    double_cosets,
    group_from_spec,
    group_from_table,
    inner_automorphism,
    inversion_automorphism,
    point_stabilizer,
    subgroup_closure,
    subgroup_from_spec,
    symmetric_group,
    symmetric_group_generators,
    theta_in_KxinvK,
    automorphism_from_spec,
    validate_group,
)
from .hecke import (
    GelfandReport,
    StructureConstants,
    check_rap_condition,
    check_unimodularity_identity,
    hecke_structure_constants,
    is_weighted_gelfand,
)
from .spherical import (
    Character,
    SphericalFunction,
    SphericalSet,
    classical_correspondence,
    enumerate_spherical,
    verify_eigen_property,
    verify_functional_equation,
)
from .weighted import (
    BiInvariantFunction,
    Weight,
    WeightFlags,
    classical_convolve,
    gamma,
    is_bi_invariant,
    is_left_invariant,
    multiplication_operator,
    reflect,
    sharp_projection,
    theta_pullback,
    translate,
    uniform_weight,
    weight_checks,
    weight_from_spec,
    weighted_convolve,
    weighted_l1_norm,
)

__version__ = "0.1.0"

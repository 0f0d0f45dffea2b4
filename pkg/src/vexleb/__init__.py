"""vexleb: weighted variable-exponent Lebesgue analysis on discretized
quasimetric measure spaces.

The package computes Luxemburg norms, applies Hardy-type, maximal, potential
and singular operators, evaluates the two-weight sufficient-condition
functionals that govern their boundedness, and verifies the corresponding
norm inequalities empirically through refinement studies and necessity
probes.
"""

__version__ = "0.1.0"

from .conditions import (
    ConditionReport,
    ProfilePair,
    annulus_weight_comparison,
    classify_trend,
    distance_potential_conditions,
    finite_hint,
    hardy_condition,
    hardy_tail_condition,
    log_adjusted_weight_pair,
    maximal_singular_conditions,
    maximal_to_hardy_weights,
    muckenhoupt_ar,
    potential_conditions,
    potential_to_hardy_weights,
    power_weight_pair,
    radial_condition,
    variable_order_conditions,
)
from .errors import DomainError, PreconditionError, ValidationError
from .exponents import (
    ClassReport,
    LocalExponents,
    PointFunction,
    class_check,
    conjugate,
    extrema_over,
    field_from_spec,
    local_exponents,
    sobolev_exponent,
)
from .norms import NormResult, holder_check, luxemburg_norm, modular
from .operators import (
    KernelSpec,
    OperatorOutput,
    ball_potential,
    distance_potential,
    explicit_kernel,
    hardy_tail_transform,
    hardy_transform,
    hilbert_kernel,
    kernel_from_spec,
    kernel_regularity_check,
    maximal_function,
    power_dist_kernel,
    power_modulus,
    singular_integral,
    table_modulus,
)
from .scenario import Materialized, Scenario
from .space import (
    BallView,
    DiscreteSpace,
    GeometryReport,
    RadialPartition,
    ahlfors_regularity,
    ball,
    cantor_space,
    comparison_annulus,
    doubling_reverse_doubling,
    explicit_space,
    geometry_constants,
    radial_partition,
    space_from_spec,
    uniform_grid,
)
from .verify import (
    NormEstimate,
    StudyReport,
    empirical_ratio,
    necessity_probe,
    power_iteration_pq,
    refinement_study,
)

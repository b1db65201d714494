"""Multiset metrics over bounded finite metric spaces."""

from .baselines import bag_distance, matching_distance, mu_metric
from .errors import (
    EnumerationLimitError,
    FormatError,
    MetricAxiomError,
    SpaceMismatchError,
    ThetaThresholdWarning,
)
from .ground import (
    GroundSpace,
    check_axioms,
    discrete_space,
    euclidean_space,
    kendall_tau_space,
    load_space,
    table_space,
    theta,
)
from .model_e import (
    counterexample_triangle,
    d_E,
    d_E_oracle,
    d_E_plan,
    d_Em,
    reduce_disjoint,
)
from .model_f import APoint, E0, FPrimeSet, counterexample_triangle_A, d_A, d_Am, d_F, d_Fm, hausdorff
from .model_g import (
    DistanceInterval,
    GClass,
    class_members,
    d_G,
    d_G_lower,
    d_G_upper,
    distinct_partitions,
    is_uniformly_discrete,
    project,
)
from .multiset import (
    Multiset,
    cardinality,
    difference,
    intersection,
    is_submultiset,
    root_set,
    symmetric_difference,
    union,
)
from .transport import Flow, TransportInstance, build_instance, solve_min_cost, verify_flow

__version__ = "0.1.0"

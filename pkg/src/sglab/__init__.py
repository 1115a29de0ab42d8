"""Numerical laboratory for operator-semigroup approximation on truncated
sequence spaces: counterexample operator families, semigroups and
resolvents by independent routes, and convergence measurement in the
norm, strong, and weak operator topologies."""

from .linalg import (
    DenseOperator,
    LinalgError,
    NormEstimate,
    SequenceVector,
    SingularOperatorError,
    apply,
    basis_vector,
    identity,
    matrix_exp,
    op_norm,
    p_norm,
    solve,
    vector,
    zero_operator,
    zero_vector,
)
from .operators import (
    BlockSwapSpec,
    CogeneratorSpec,
    block_swap,
    cayley_generator,
    contraction_v,
    rescaled_generator,
)
from .semigroup import (
    OperatorFamilyLimit,
    SemigroupFamily,
    evaluate,
    growth_bound_check,
    semigroup_law_residual,
)
from .resolvent import (
    ContourSpec,
    QuadratureSpec,
    SpectrumError,
    dunford_evaluate,
    resolvent_direct,
    resolvent_power_direct,
    resolvent_power_laplace,
)
from .topology import (
    ConvergenceReport,
    TestVectorSet,
    default_test_set,
    measure_convergence,
    measure_convergence_on_grid,
    weak_pairing,
)
from .trotter_kato import (
    TKInstance,
    TKReport,
    check_condition_a,
    check_condition_b,
    check_condition_c,
    check_condition_d,
    default_suite,
    implication_matrix,
    run_suite,
)

__version__ = "0.1.0"

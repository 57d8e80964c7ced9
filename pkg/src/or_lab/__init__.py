"""Exact construction and verification of conformally covariant bidifferential operators."""
from .coeffs import (
    Case,
    ClassificationError,
    CoeffTable,
    LinearCoeffTable,
    Normalization,
    PropagationError,
    SpaceClassification,
    WeightConfig,
    basis_tables,
    check_recursion,
    classify,
    closed_form_entries,
    linear_operator_coeffs,
    symmetric_operator_table,
    tables_from_json,
    tables_to_csv,
    tables_to_json,
)
from .rational import format_rational, parse_rational, pochhammer
from .sphere import (
    SphereFunction,
    dirichlet_form,
    evaluate_linear_operator,
    evaluate_or_operator,
    integrate,
    random_sphere_function,
    sphere_multiply,
)
from .ambient import (
    AmbientElement,
    apply_bidifferential_ambient,
    apply_linear_ambient,
    cone_restrict,
    harmonic_extend,
)
from .verify import (
    VerificationReport,
    verify_commutator_identity,
    verify_cross_agreement,
    verify_formal_self_adjointness,
    verify_gjms_reduction,
    verify_linear_fsa,
    verify_tangentiality,
)

__version__ = "0.1.0"

"""comono: exact-arithmetic coalgebra toolkit with monomorphism checking.

Represents finite-dimensional coalgebras, comodules and coalgebra morphisms
by structure constants over the rationals or a prime field, computes
cotensor products as kernels, and decides whether a coalgebra morphism is a
monomorphism through several independently implemented, cross-validated
criteria (including a dual-algebra ring-epimorphism oracle).
"""

from .errors import (
    CoalgebraMismatchError,
    ComonoError,
    FieldMismatchError,
    InternalConsistencyError,
    NotAlgebraMapError,
    NotCoidealError,
    NotComoduleMapError,
    ParseError,
    ShapeError,
    TheoremViolationError,
)
from .fields import GF, QQ, Field, PrimeField, RationalField, is_prime
from .linalg import (
    Matrix,
    Subspace,
    hstack,
    image_basis,
    inverse,
    kernel_basis,
    kron,
    pair_index,
    solve_right,
    subspace_leq,
    vstack,
)
from .coalgebra import (
    Bicomodule,
    Coalgebra,
    CoalgebraMorphism,
    LeftComodule,
    LeftComoduleMorphism,
    RightComodule,
    RightComoduleMorphism,
    ValidationReport,
    Violation,
    coalgebra_change_field,
    corestrict,
    corestrict_bicomodule,
    corestrict_left,
    format_combination,
    has_integer_constants,
    identity_morphism,
    kernel_bicomodule,
    morphism_change_field,
    regular_comodules,
    tensor_labels,
    validate_bicomodule,
    validate_coalgebra,
    validate_comodule,
    validate_left_comodule_map,
    validate_morphism,
    validate_right_comodule_map,
)
from .cotensor import (
    CotensorSpace,
    coinduced_space,
    cotensor,
    cotensor_defining_matrix,
    cotensor_map,
    kernel_bicomodule_cotensor,
    nu_map,
    self_cotensor,
    self_cotensor_bicomodule,
    unit_map,
)
from .monocheck import (
    CriterionResult,
    H0Space,
    MonoVerdict,
    TensorWitness,
    TFunctionalResult,
    counit_balance_criterion,
    h0,
    h0_equal_criterion,
    is_monomorphism,
    kernel_cotensor_criterion,
    t_functional,
    unit_iso_check,
    unit_surjectivity_criterion,
)
from .constructions import (
    Algebra,
    AlgebraMorphism,
    CoextensionResult,
    CoidealCertificate,
    EpiCheckResult,
    algebra_epi_check,
    beta_map,
    comatrix,
    direct_sum,
    dual_algebra,
    dual_morphism,
    grouplike,
    is_coideal,
    quotient,
    random_bicomodule,
    random_comodule,
    random_morphism,
    trivial_coextension,
    validate_algebra,
    validate_algebra_morphism,
)

__version__ = "0.1.0"

"""quotient-forms: exact classification of products on regular quotient rings."""

from .errors import (
    DegreeMismatch,
    DifferentBase,
    EmptyTruncationForInfinitePresentation,
    InconsistentCoefficients,
    MultipleInvertibleGenerators,
    NoIrreducibleFound,
    NonPrime,
    NotAlternating,
    NotAProduct,
    NotSmooth,
    NotSymmetric,
    OddDegreeGenerator,
    OddSequenceDegree,
    QuotientFormsError,
    SchemaError,
    UnsupportedParams,
)
from .fields import FFElement, FiniteField, PLocalIntegers, make_field
from .graded import (
    FiniteSlice,
    Generator,
    GradedRing,
    Infinite,
    RingElement,
    RingMap,
    Truncation,
    format_element,
    homogeneous_slice,
    make_graded_ring,
    parse_element,
)
from .forms import (
    BilinearForm,
    DiagonalizationResult,
    FormClassification,
    QuadraticForm,
    QuotientPresentation,
    base_change,
    bil_space,
    chi,
    classify_form,
    congruence_diagonalize,
    congruence_diagonalize_matrix,
    enumerate_forms,
    make_quotient,
    pull_back,
    quad_lift,
    random_form,
)
from .calculus import (
    BaseProduct,
    EndoElement,
    LambdaElement,
    LambdaTensor,
    ProductTensor,
    act,
    characteristic_form,
    characteristic_form_from_model,
    expand_action,
    factorize,
    identity_tensor,
    is_associative,
    lambda_multiply,
    opposite,
    product_identity_42,
    relative_transform,
    theta,
    theta_inverse,
    verify_mult_equiv,
)
from .classify import (
    CensusReport,
    CommutativeReport,
    DiagReport,
    EquivalenceReport,
    MapData,
    MapReport,
    census,
    commutative_analysis,
    diagonalizability,
    enumerate_products,
    equivalence,
    map_multiplicativity,
    multiplicative_twist_family,
    witness_family,
)
from . import catalog, suites

__version__ = "0.1.0"

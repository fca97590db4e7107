"""Entanglement criteria with non-hermitian operators on truncated spaces."""

from .linalg import (
    EigenDecomposition,
    NonHermitianError,
    herm_eig,
    kron,
    mat_exp,
    partial_trace,
    partial_transpose,
    schmidt,
)
from .spaces import (
    DensityMatrix,
    Factor,
    LabeledOperator,
    LeakageError,
    SignatureError,
    SpaceSignature,
    StateVector,
    basis_state,
    boson,
    embed,
    embed_many,
    evolve,
    expectation,
    product_state,
    qubit,
    signature,
    validate_density,
)
from .witnesses import (
    PptCrosscheck,
    WitnessMatrix,
    WitnessReport,
    bilinear_form,
    cond1,
    cond2,
    eig2_positive,
    lur_value,
    ppt_crosscheck,
    ppt_min_eig,
    product_from_two_positive,
    product_vector_scan,
    reduced_criterion,
    witness_matrix_expand_a,
    witness_matrix_expand_b,
    xv_slice,
)
from .search import threshold_scan

__version__ = "0.1.0"

__all__ = [
    "EigenDecomposition",
    "NonHermitianError",
    "herm_eig",
    "kron",
    "mat_exp",
    "partial_trace",
    "partial_transpose",
    "schmidt",
    "DensityMatrix",
    "Factor",
    "LabeledOperator",
    "LeakageError",
    "SignatureError",
    "SpaceSignature",
    "StateVector",
    "basis_state",
    "boson",
    "embed",
    "embed_many",
    "evolve",
    "expectation",
    "product_state",
    "qubit",
    "signature",
    "validate_density",
    "PptCrosscheck",
    "WitnessMatrix",
    "WitnessReport",
    "bilinear_form",
    "cond1",
    "cond2",
    "eig2_positive",
    "lur_value",
    "ppt_crosscheck",
    "ppt_min_eig",
    "product_from_two_positive",
    "product_vector_scan",
    "reduced_criterion",
    "witness_matrix_expand_a",
    "witness_matrix_expand_b",
    "xv_slice",
    "threshold_scan",
    "__version__",
]

"""Unitary similarity of quaternion matrices: canonical forms and supporting linear algebra."""

from .config import DEFAULT_TOL, Tolerance
from .errors import (
    BadShape,
    ChainFailure,
    Derogatory,
    InternalOrderViolation,
    MatrixFormatError,
    NoConvergence,
    NonRealSpectrum,
    NotAnEigenvalue,
    NotBlockDiagonal,
    NotIdempotent,
    NotSquareZero,
    QCanonError,
    ShapeMismatch,
    SingularInput,
)
from .quaternion import I, J, K, ONE, Quaternion, standardize, standardizing_conjugator, succeq
from .qmatrix import QMatrix, adjoint_complex
from .decomp import gram_schmidt_qr, null_space, rank, row_reduce, svd
from .eigen import right_eigenvalues
from .schur import (
    Partition,
    SchurRealForm,
    conjugate_partition,
    modified_jordan,
    strengthened_schur,
    weyr_characteristic,
)
from .special import BlockSummary, assemble_blocks, projector_canonical, square_zero_canonical
from .relations import RelationTracker
from .littlewood import (
    CanonicalResult,
    Decomposition,
    canonical_form,
    decompose,
    graph,
    is_nonderogatory,
    triangularize,
    unitarily_similar,
)

__version__ = "0.1.0"

__all__ = [
    "BadShape",
    "BlockSummary",
    "CanonicalResult",
    "ChainFailure",
    "DEFAULT_TOL",
    "Decomposition",
    "Derogatory",
    "I",
    "InternalOrderViolation",
    "J",
    "K",
    "MatrixFormatError",
    "NoConvergence",
    "NonRealSpectrum",
    "NotAnEigenvalue",
    "NotBlockDiagonal",
    "NotIdempotent",
    "NotSquareZero",
    "ONE",
    "Partition",
    "QCanonError",
    "QMatrix",
    "Quaternion",
    "RelationTracker",
    "SchurRealForm",
    "ShapeMismatch",
    "SingularInput",
    "Tolerance",
    "adjoint_complex",
    "assemble_blocks",
    "canonical_form",
    "conjugate_partition",
    "decompose",
    "gram_schmidt_qr",
    "graph",
    "is_nonderogatory",
    "modified_jordan",
    "null_space",
    "projector_canonical",
    "rank",
    "right_eigenvalues",
    "row_reduce",
    "square_zero_canonical",
    "standardize",
    "standardizing_conjugator",
    "strengthened_schur",
    "succeq",
    "svd",
    "triangularize",
    "unitarily_similar",
    "weyr_characteristic",
]

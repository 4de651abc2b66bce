"""Quantum matrices, their determinants, and Dieudonne-style factorizations."""

from .errors import (
    QDError, ContextError, NonInvertibleError, ParseError, ResourceLimitError,
    RewriteSystemError, PivotError, GradingError, InconsistencyError, UnknownIdentityError,
)
from .laurent import LaurentPoly, ParamSpace, Q_SPACE, qpoly
from .ncalg import NCPoly, RewriteSystem, Alphabet, GeneratorId, apply_hom, confluence_probe
from .qmatrix import (
    QContext, QMatrix, make_qcontext, qdet, minor_qdet, cofactor_matrix, laplace_expand,
    row_reduce, relations_check, coproduct, verify_identity,
)
from .report import CheckRecord, CheckReport

__version__ = "0.1.0"

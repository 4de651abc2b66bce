class QDError(Exception):
    pass


class ContextError(QDError):
    """Operands belong to different parameter spaces or alphabets."""


class NonInvertibleError(QDError):
    pass


class ParseError(QDError, ValueError):
    pass


class ResourceLimitError(QDError):
    """A reduction exceeded its monomial budget."""


class RewriteSystemError(QDError):
    """A rewrite system failed a construction-time check."""


class PivotError(QDError):
    pass


class GradingError(QDError):
    pass


class InconsistencyError(QDError):
    """A result that theory says cannot happen."""


class UnknownIdentityError(QDError, KeyError):
    pass

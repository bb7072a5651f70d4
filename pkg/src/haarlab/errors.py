"""Exception types raised by the engines.

The CLI reports the class name of any of these in its ``error`` field.
"""


class HaarlabError(Exception):
    """Base class for engine errors."""


class SingularMatrix(HaarlabError, ArithmeticError):
    pass


class SingularGram(SingularMatrix):
    """Gram matrix of a partition basis is not invertible (N too small)."""


class NoConvergence(HaarlabError, RuntimeError):
    pass


class EvaluationOutsideDomain(HaarlabError, ValueError):
    pass


class ComplexAtoms(HaarlabError, ValueError):
    pass


class UnsupportedFamily(HaarlabError, ValueError):
    pass


class NonHermitianEnsemble(HaarlabError, ValueError):
    pass


class IndexOutOfRange(HaarlabError, IndexError):
    pass

"""Exception hierarchy.

Every error carries a short machine-readable ``code`` that the command line
front end reports verbatim.
"""

from __future__ import annotations


class StructuralError(Exception):
    code = "structural-error"


class PointNotInScale(StructuralError, ValueError):
    code = "point-not-in-scale"


class SideNotDense(StructuralError, ValueError):
    code = "side-not-dense"


class NotInKappa(StructuralError, ValueError):
    code = "not-in-kappa"


class EvaluationError(StructuralError, ArithmeticError):
    """A target or structural function could not be evaluated (or gave NaN/inf)."""

    code = "evaluation-error"


class PowUndefined(EvaluationError):
    code = "pow-undefined"


class DomainError(EvaluationError):
    code = "domain-error"


class StructuralDegenerate(StructuralError, ArithmeticError):
    """The structural function does not separate the two points of a quotient."""

    code = "structural-degenerate"


class DenseLimitDiverged(StructuralError, ArithmeticError):
    code = "dense-limit-diverged"


class ZeroDenominator(StructuralError, ArithmeticError):
    code = "zero-denominator"


class DegenerateCase(StructuralError, ValueError):
    code = "degenerate-case"

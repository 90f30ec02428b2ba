"""
Troplin Exceptions
Error hierarchy shared by every app; each error carries a stable code
"""


class TroplinError(Exception):
    code = 'troplin_error'

    def __init__(self, message=None, code=None):
        super().__init__(message or self.code.replace('_', ' '))
        if code is not None:
            self.code = code


class InvalidModelError(TroplinError):
    code = 'invalid_model'


class PointOffCurveError(TroplinError):
    code = 'point_off_curve'


class InvalidSubgraphError(TroplinError):
    code = 'invalid_subgraph'


class EmptySubgraphError(InvalidSubgraphError):
    code = 'empty_subgraph'


class NoPrincipalDivisorError(TroplinError):
    code = 'no_principal_divisor'


class ConflictingInfinityError(TroplinError):
    code = 'conflicting_infinity'


class NonIntegerSlopeError(TroplinError):
    code = 'non_integer_slope'


class InvalidIsometryError(TroplinError):
    code = 'invalid_isometry'


class InvalidGroupError(TroplinError):
    code = 'invalid_group'


class GroupNotFiniteError(InvalidGroupError):
    code = 'group_not_finite'


class NotStableError(TroplinError):
    code = 'model_not_stable'


class NotHarmonicError(TroplinError):
    code = 'not_harmonic'


class MembershipError(TroplinError):
    """Raised when an operation's membership precondition does not hold."""
    code = 'membership_precondition'


class EmptyLinearSystemError(MembershipError):
    code = 'empty_linear_system'


class NonInvariantDivisorError(MembershipError):
    code = 'non_invariant_divisor'


class SearchLimitError(TroplinError):
    code = 'search_limit'


class MissingGeneratorError(TroplinError):
    code = 'missing_generator'


class InvalidFunctionError(TroplinError):
    code = 'invalid_function'

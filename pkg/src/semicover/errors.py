"""Exception hierarchy.

Validators never raise for bad data; they return violation lists.  The
exceptions below are for constructors and operations whose preconditions
fail.
"""


class SemicoverError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(SemicoverError, ValueError):
    pass


class SignatureMismatch(SemicoverError):
    pass


class MissingWitness(SemicoverError):
    pass


class BoundTooLarge(SemicoverError):
    pass


class NotAGroup(SemicoverError):
    pass


class NotTransitive(SemicoverError):
    pass


class NotASubgroup(SemicoverError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASubalgebra(SemicoverError):
    def __init__(self, message, op=None, args=None):
        super().__init__(message)
        self.op = op
        self.args_tuple = args


class CharacteristicGroupNotSubalgebra(NotASubalgebra):
    pass


class ClosureViolation(SemicoverError):
    """A subset that must be closed (by construction) is not; the input is corrupt."""


class WellDefinednessFailure(SemicoverError):
    def __init__(self, message, op=None, cosets=None, values=None):
        super().__init__(message)
        self.op = op
        self.cosets = cosets
        self.values = values


class ActionInvalid(SemicoverError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NoEquivalence(SemicoverError):
    pass


class BasePointError(SemicoverError, ValueError):
    pass


class InternalConsistencyError(SemicoverError):
    """A construction produced output failing its own postcondition."""


class DocumentError(SemicoverError, ValueError):
    """A JSON document does not match its schema."""


class NotACovering(SemicoverError):
    pass

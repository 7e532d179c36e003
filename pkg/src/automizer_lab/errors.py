"""Exception hierarchy. Every error carries enough context to locate the fault."""


class GroupError(Exception):
    """Base class for all errors raised by automizer_lab.

    ``witness`` optionally holds the offending element, pair or triple.
    """

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidTable(GroupError):
    pass


class NotLatinSquare(InvalidTable):
    pass


class NotAssociative(InvalidTable):
    pass


class NoIdentity(InvalidTable):
    pass


class NoInverse(InvalidTable):
    pass


class NotAPermutation(GroupError):
    pass


class OrderCapExceeded(GroupError):
    pass


class LatticeBlowup(GroupError):
    pass


class InvalidAction(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotCentral(GroupError):
    pass


class ParentMismatch(GroupError):
    pass


class ParameterOutOfRange(GroupError):
    pass


class NoOrderQAutomorphism(GroupError):
    pass


class SchemaError(GroupError):
    pass


class CatalogIoError(GroupError):
    pass

"""Exception hierarchy shared by the library and the command line."""


class CdgaError(ValueError):
    """An algebra, element or morphism failed validation."""

    code = "invalid"


class ParentMismatchError(CdgaError):
    code = "parent-mismatch"


class DegreeMismatchError(CdgaError):
    code = "degree-mismatch"

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class DifferentialSquareError(CdgaError):
    code = "d-squared"

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class RelationError(CdgaError):
    code = "relation"


class ChainMapError(CdgaError):
    """Morphism does not commute with the differentials or kill relations."""

    code = "not-chain-map"

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class PreconditionError(Exception):
    """An invariant was requested outside the regime where it is defined."""


class NotSurjectiveError(PreconditionError):
    def __init__(self, degree):
        super().__init__(f"morphism is not surjective in degree {degree}")
        self.degree = degree


class PoincareDualityError(PreconditionError):
    pass

"""Exception types shared across the package."""


class QuiverAlgebraError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatch(QuiverAlgebraError):
    """Scalars or matrices over different fields were combined."""


class ShapeError(QuiverAlgebraError):
    """Matrix dimensions are incompatible with the requested operation."""


class UnknownVertex(QuiverAlgebraError):
    """A vertex id does not belong to the quiver."""


class UnknownArrow(QuiverAlgebraError):
    """An arrow id does not belong to the quiver."""


class InvalidAttachment(QuiverAlgebraError):
    """An attachment map violates one of its invariants; the message
    names the failed condition."""


class InvalidParameters(QuiverAlgebraError):
    """Numeric parameters outside their admissible range."""


class NonUniformRelation(QuiverAlgebraError):
    """A relation mixes paths with different sources or targets, or
    contains a path of length < 2."""


class NotAdmissibleAtBound(QuiverAlgebraError):
    """Some path of length `bound` does not reduce to zero.  Either the
    algebra is infinite dimensional or the bound is too small; the
    witness path is attached."""

    def __init__(self, witness, bound):
        self.witness = witness
        self.bound = bound
        super().__init__(
            f"path {witness} of length {bound} does not reduce to 0; "
            "the algebra may be infinite dimensional, or retry with a larger bound"
        )


class NotNilpotent(QuiverAlgebraError):
    """The bimodule's tensor powers over the base algebra do not vanish
    below the configured cap."""

    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"tensor power {degree} is still nonzero")


class RelativeCycle(QuiverAlgebraError):
    """A relative cycle among the new arrows obstructs finite
    dimensionality; the witness arrow sequence is attached."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"relative cycle through new arrows {witness}")


class NotInert(QuiverAlgebraError):
    """The arrow to delete appears in a relation."""


class InfiniteDimensional(QuiverAlgebraError):
    """A finiteness precondition (corner space vanishing) fails."""


class CapExceeded(QuiverAlgebraError):
    """A size cap was hit; the message carries the diagnostic."""


class OrientedCycleError(QuiverAlgebraError):
    """The quiver has an oriented cycle where none is allowed."""


class SpecSyntaxError(QuiverAlgebraError):
    """Positioned syntax error in a quiver description document."""

    def __init__(self, line, col, expectation):
        self.line = line
        self.col = col
        self.expectation = expectation
        super().__init__(f"line {line}, col {col}: expected {expectation}")


class SpecSemanticError(QuiverAlgebraError):
    """The document parsed but names an unknown vertex/arrow or carries
    an ill-formed relation."""

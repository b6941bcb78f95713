"""Exception types shared across the engine."""


class QuotientFormsError(Exception):
    """Base class for all engine-specific errors."""


class NonPrime(QuotientFormsError):
    def __init__(self, value):
        super().__init__(f"{value} is not prime")
        self.value = value


class NoIrreducibleFound(QuotientFormsError):
    """Defensive: the modulus search exhausted all candidates."""


class OddDegreeGenerator(QuotientFormsError):
    pass


class MultipleInvertibleGenerators(QuotientFormsError):
    pass


class EmptyTruncationForInfinitePresentation(QuotientFormsError):
    """An untruncated ring presentation with an infinite generator tail."""


class InconsistentCoefficients(QuotientFormsError):
    """A regular-sequence generator survives into the declared coefficient ring."""


class OddSequenceDegree(QuotientFormsError):
    pass


class DegreeMismatch(QuotientFormsError):
    pass


class NotSymmetric(QuotientFormsError):
    pass


class NotAlternating(QuotientFormsError):
    pass


class NotAProduct(QuotientFormsError):
    """A unital tensor that lies outside the orbit of the base product.

    Carries the first obstruction term (I, J, value) of minimal |I| + |J|.
    """

    def __init__(self, index_left, index_right, value):
        self.index_left = tuple(index_left)
        self.index_right = tuple(index_right)
        self.value = value
        super().__init__(
            f"residual term at ({self.index_left}, {self.index_right}): {value}"
        )


class DifferentBase(QuotientFormsError):
    pass


class NotSmooth(QuotientFormsError):
    """The induced module map is not injective; the criterion does not apply."""


class UnsupportedParams(QuotientFormsError):
    pass


class SchemaError(QuotientFormsError):
    """An input document does not match the expected shape."""

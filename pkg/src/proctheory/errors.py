"""Exception types shared across the toolkit."""


class ProcTheoryError(Exception):
    """Base class for toolkit errors."""


class TypeMismatch(ProcTheoryError):
    """Sequential composition attempted across unequal boundary types."""


class UnboundGenerator(ProcTheoryError):
    """A diagram references a generator name missing from the environment."""


class DimensionMismatch(ProcTheoryError):
    """Matrix or vector dimensions do not match the declared types."""


class NotAProductType(ProcTheoryError):
    """A marginal was requested on a state that is not a product-system state."""


class NotCausal(ProcTheoryError):
    """A matrix fails the causality (normalization) condition."""


class CPTPViolation(ProcTheoryError):
    """A Choi matrix fails complete positivity or trace preservation."""


class MixedBackends(ProcTheoryError):
    """Stochastic and quantum objects were mixed in one operation."""


class NotDistinguishable(ProcTheoryError):
    """A programmer was requested for a family that is not distinguishable."""


class IndexMismatch(ProcTheoryError):
    """State and gate families do not share the same index set."""


class MappingMismatch(ProcTheoryError):
    """A claimed channel does not map the given states as declared."""


class FactorizationFailure(ProcTheoryError):
    """A channel does not satisfy the side-information equation for a family."""


class DuplicateStates(ProcTheoryError):
    """An operation that needs pairwise-distinct states received duplicates."""


class DimensionOverflow(ProcTheoryError):
    """A tensor power would exceed the configured dimension cap."""


class NotPure(ProcTheoryError):
    """A pure state was required."""


class InvariantViolation(ProcTheoryError):
    """An internal invariant failed; indicates a falsified proposition or a bug."""


class ModelError(ProcTheoryError):
    """Base class for model-file errors; carries a source location."""

    def __init__(self, message, line=None, column=None, expected=()):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(expected)

    def __str__(self):
        loc = ""
        if self.line is not None:
            loc = f"line {self.line}"
            if self.column is not None:
                loc += f", column {self.column}"
            loc = f" ({loc})"
        exp = ""
        if self.expected:
            exp = "; expected " + " | ".join(self.expected)
        return f"{self.message}{loc}{exp}"


class ModelSyntaxError(ModelError):
    """Malformed model-file text."""


class ResolutionError(ModelError):
    """A name in a model file does not resolve to a declaration."""


class DimensionError(ModelError):
    """A payload in a model file does not match the declared dimensions."""

"""Exception types shared across the package."""


class FitzError(Exception):
    """Base class for every error raised by fitzprops."""


# -- monoids -----------------------------------------------------------------

class MonoidError(FitzError, ValueError):
    pass


class NotAssociative(MonoidError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"associativity fails at ({i}*{j})*{k} != {i}*({j}*{k})")


class NoIdentity(MonoidError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element 0 is not a two-sided identity (fails against {element})")


class IndexOutOfRange(MonoidError):
    def __init__(self, position, value, order):
        self.position = position
        self.value = value
        super().__init__(f"table entry {value} at position {position} is outside [0, {order})")


class ParentMismatch(FitzError, ValueError):
    pass


# -- algebras ----------------------------------------------------------------

class AlgebraError(FitzError, ValueError):
    pass


class TableLengthMismatch(AlgebraError):
    pass


class EntryOutOfRange(AlgebraError):
    pass


class EmptyCarrierWithConstants(AlgebraError):
    pass


class SignatureMismatch(AlgebraError):
    pass


class IncompatiblePartition(AlgebraError):
    pass


class NotASubalgebra(AlgebraError):
    pass


class SizeLimitExceeded(FitzError):
    def __init__(self, size, limit):
        self.size = size
        self.limit = limit
        super().__init__(f"carrier size {size} exceeds the configured limit {limit}")


# -- properties --------------------------------------------------------------

class TransferViolation(FitzError, AssertionError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("transfer implication violated: " + "; ".join(self.violations))


# -- presentations -----------------------------------------------------------

class PresentationError(FitzError, ValueError):
    pass


class PresentationSyntaxError(PresentationError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class UnknownGenerator(PresentationError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        super().__init__(f"unknown generator {name!r}")


class BoundExceeded(FitzError):
    """Realization did not close within the element/word-length bounds."""

    def __init__(self, elements_found, frontier_size, growth, reason=""):
        self.elements_found = elements_found
        self.frontier_size = frontier_size
        self.growth = growth
        self.reason = reason
        super().__init__(
            f"bound exceeded ({reason}): {elements_found} elements found, "
            f"frontier of {frontier_size} words still open"
        )


class RewriteBudgetExceeded(FitzError):
    """The bounded word-problem strategy could not settle the presentation."""

    def __init__(self, word, budget, detail=None):
        self.word = word
        self.budget = budget
        super().__init__(detail or f"rewrite search for {word!r} exhausted its budget of {budget} words")


# -- search ------------------------------------------------------------------

class OrderLimitExceeded(FitzError, ValueError):
    pass


class BudgetExceeded(FitzError, ValueError):
    pass

"""Exception hierarchy shared by every polyifs module."""


class PolyIfsError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InvalidParamsError(PolyIfsError, ValueError):
    pass


class InvalidWordError(PolyIfsError, ValueError):
    pass


class BudgetExceededError(PolyIfsError):
    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"point budget exceeded: need {required} points, budget is {budget} "
            f"(raise it with POLYIFS_BUDGET={required} or lower the depth)"
        )


class AmbiguousTieError(PolyIfsError):
    pass


class RationalRequiredError(PolyIfsError):
    def __init__(self, what="this operation"):
        super().__init__(f"{what} requires exact rational angle (give --phi as p/q)")


class NotAFaceError(PolyIfsError, ValueError):
    pass


class StructureError(PolyIfsError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""

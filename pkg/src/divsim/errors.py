"""Exception types shared across the package."""


class DivsimError(Exception):
    """Base class for every error raised by this package."""


class UnknownAction(DivsimError):
    """A plan referenced an action id that the problem does not declare."""

    def __init__(self, name):
        super().__init__(f"unknown action: {name!r}")
        self.name = name


class InapplicableAction(DivsimError):
    """An action was applied in a state where its preconditions do not hold.

    ``index`` is the plan position when the error comes from replaying a plan,
    and None when a domain step was called directly.
    """

    def __init__(self, reason, index=None):
        msg = reason if index is None else f"plan step {index}: {reason}"
        super().__init__(msg)
        self.reason = reason
        self.index = index


class CostBoundExceeded(DivsimError):
    def __init__(self, cost, bound):
        super().__init__(f"cost {cost} exceeds bound {bound}")
        self.cost = cost
        self.bound = bound


class NotAGoalPlan(DivsimError):
    """A behaviour was requested for a plan whose final state is not a goal."""


class ParseError(DivsimError):
    """Malformed formula or instance text.

    ``position`` is a character offset into the input when known, and
    ``expected`` describes what the parser was looking for.
    """

    def __init__(self, message, position=None, expected=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
        self.expected = expected


class LevelInvalid(DivsimError):
    """A tile level violates a structural invariant (unsettled, pre-matched...)."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class ScenarioInvalid(DivsimError):
    """A network scenario violates a structural invariant."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class BudgetExceeded(DivsimError):
    """A search ran out of wall-clock time or generated-node budget.

    Distinguishable from genuine exhaustion: exhaustion is a normal return,
    this is an error carrying the budget kind and, when raised by a top-level
    planner, the partial result assembled so far.
    """

    def __init__(self, kind, partial=None):
        super().__init__(f"search budget exceeded ({kind})")
        self.kind = kind
        self.partial = partial


class OracleTooLarge(DivsimError):
    """The brute-force enumeration guard tripped."""

    def __init__(self, estimate, limit):
        super().__init__(
            f"estimated enumeration size {estimate} exceeds oracle guard {limit}"
        )
        self.estimate = estimate
        self.limit = limit

"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """A builder or extender was called with arguments outside its domain."""


class NoPairingExists(ValueError):
    """The vertex set has odd order, so it admits no pairing."""


class InternalInvariantViolation(RuntimeError):
    """A construction step produced something its own invariants forbid."""


class BudgetExceeded(RuntimeError):
    """A search ran out of its node budget before reaching a decision."""

    def __init__(self, nodes_visited: int, budget: int):
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.nodes_visited = nodes_visited
        self.budget = budget

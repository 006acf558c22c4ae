"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """An exhaustive-enumeration routine was asked to exceed its budget."""


class InvalidFamilyError(ValueError):
    """A code family violates the nesting (shared generator prefix) contract."""

    def __init__(self, level: int, reason: str):
        self.level = level
        super().__init__(f"nesting violated at level {level}: {reason}")

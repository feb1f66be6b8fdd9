class HyperplantError(Exception):
    """Base error; `exit_code` is what the CLI returns for it."""

    exit_code = 1


class InvalidArgumentError(HyperplantError, ValueError):
    exit_code = 2


class BudgetExceededError(HyperplantError):
    """An exhaustive routine would exceed its configured budget ("too large")."""

    exit_code = 3


class MotifNotFoundError(HyperplantError):
    exit_code = 3

    def __init__(self, target: str, budget: str):
        super().__init__(f"No balanced motif with ratio {target} found within budget ({budget})")
        self.target = target
        self.budget = budget


class RegimeError(HyperplantError):
    exit_code = 4


class InfeasibleParametersError(HyperplantError):
    exit_code = 4

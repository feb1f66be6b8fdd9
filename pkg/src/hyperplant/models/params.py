from pydantic import ValidationError

from hyperplant.core.errors import InvalidArgumentError
from hyperplant.core.schemas import ProblemParams


def _first_message(error: ValidationError) -> str:
    details = error.errors()
    if not details:
        return str(error)
    msg = details[0].get("msg", str(error))
    return msg.removeprefix("Value error, ")


def derive_params(n: int, r: int, alpha: float, beta: float, gamma: float, relaxed: bool = False) -> ProblemParams:
    """Validated ProblemParams; a violated constraint becomes InvalidArgumentError naming it."""
    try:
        return ProblemParams(n=n, r=r, alpha=alpha, beta=beta, gamma=gamma, relaxed=relaxed)
    except ValidationError as e:
        raise InvalidArgumentError(_first_message(e)) from e

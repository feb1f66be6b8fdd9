from fractions import Fraction
from typing import Sequence

import mpmath


def logsumexp(logs: Sequence) -> mpmath.mpf:
    """log(sum(exp(x))) at the current mpmath precision; -inf for an empty sequence."""
    if not logs:
        return mpmath.ninf
    top = max(logs)
    if mpmath.isinf(top):
        return top
    return top + mpmath.log(mpmath.fsum(mpmath.exp(x - top) for x in logs))


def mp_fraction(value: Fraction) -> mpmath.mpf:
    return mpmath.mpf(value.numerator) / value.denominator

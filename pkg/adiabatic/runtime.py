"""
Adiabatic run-time formulas
"""

import math

from core.exceptions import InvalidParam


def runtime_bound(Lambda: float, delta: float, eta: float, a: int = 1, b: int = 2) -> float:
    """T = a * Lambda^(b-1) / (eta * delta^b)"""
    if Lambda <= 0 or delta <= 0 or eta <= 0:
        raise InvalidParam("Lambda, delta and eta must all be positive")
    if int(a) != a or int(b) != b or a < 1 or b < 1:
        raise InvalidParam(f"a and b must be integers >= 1, got a={a}, b={b}")
    return a * Lambda ** (b - 1) / (eta * delta ** b)


def predicted_runtime(n: int, eps: float, b: int = 2) -> float:
    """T = eps^-2 (ln ln n)^(b-1) (ln n)^b, natural logarithms throughout"""
    if n < 3:
        raise InvalidParam(f"n must be >= 3 so that ln ln n > 0, got {n}")
    if not 0.0 < eps < 1.0:
        raise InvalidParam(f"eps must lie in (0, 1), got {eps}")
    if b < 1:
        raise InvalidParam(f"b must be >= 1, got {b}")
    log_n = math.log(n)
    return eps ** -2 * math.log(log_n) ** (b - 1) * log_n ** b

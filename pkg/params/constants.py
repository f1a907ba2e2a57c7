# params/constants.py

import logging
import math
from functools import lru_cache

from scipy.optimize import bisect

from config import main_config

logger = logging.getLogger(__name__)


def lambda_objective(x: float) -> float:
    """(1 - e^-x) / sqrt(x), the function whose maximum over x > 0 is lambda."""
    if x <= 0:
        raise ValueError(f"objective is defined for x > 0, got {x}")
    return -math.expm1(-x) / math.sqrt(x)


def stationarity(x: float) -> float:
    """e^x - 2x - 1; its positive root is the maximiser of lambda_objective."""
    return math.expm1(x) - 2.0 * x


@lru_cache(maxsize=1)
def lambda_constant() -> tuple[float, float]:
    """
    Computes the maximiser x* and the maximum lambda of (1 - e^-x)/sqrt(x).

    Setting the derivative to zero gives e^x = 2x + 1, whose unique positive
    root is bracketed by LAMBDA_BRACKET and found by bisection.

    Returns:
        tuple[float, float]: (x_star, lambda).
    """
    lo, hi = main_config.LAMBDA_BRACKET
    x_star = bisect(
        stationarity,
        lo,
        hi,
        xtol=1e-15,
        maxiter=main_config.LAMBDA_BISECTION_ITERATIONS,
    )
    residual = abs(stationarity(x_star))
    if residual > main_config.ROOT_RESIDUAL_TOLERANCE:
        raise ArithmeticError(f"x* residual {residual:.3e} above tolerance")
    lam = lambda_objective(x_star)
    logger.debug(f"x* = {x_star:.15f}, lambda = {lam:.15f}, residual = {residual:.2e}")
    return x_star, lam

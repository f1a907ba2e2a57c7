# params/derive.py

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

from config import main_config
from params.constants import lambda_constant

logger = logging.getLogger(__name__)

RECORD_KEYS = ("epsilon", "x_star", "b", "p", "alpha", "beta", "d", "t", "ell", "s", "r")
INTEGER_KEYS = ("d", "t", "s", "r")


class Diagnostic(NamedTuple):
    """A finite-d inequality from the proofs, evaluated at concrete parameters."""

    name: str
    lhs: float
    rhs: float
    holds: bool


class DegreeTargets(NamedTuple):
    intermediate: float
    headline: float
    half_epsilon_intermediate: float
    lemma_guarantee: float
    intermediate_meets_headline: bool


@dataclass(frozen=True)
class ConstructionParams:
    """
    Parameter tuple for the blowup construction.

    `ell` is kept as a real number; the integer size cap of an ell-set is
    `ell_cap` = floor(ell).
    """

    epsilon: float
    x_star: float
    b: float
    p: float
    alpha: float
    beta: float
    d: int
    t: int
    ell: float
    s: int
    r: int

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.d < 1:
            raise ValueError(f"d must be a positive integer, got {self.d}")
        if self.t < self.d + 1:
            raise ValueError(f"t must be at least d + 1 = {self.d + 1}, got {self.t}")
        if self.s < 1 or self.r < 1:
            raise ValueError(f"s and r must be positive, got s={self.s}, r={self.r}")
        if self.ell <= 0:
            raise ValueError(f"ell must be positive, got {self.ell}")

    @property
    def ell_cap(self) -> int:
        """Largest size of an ell-set."""
        return math.floor(self.ell)

    @property
    def capacity(self) -> int:
        """|V(G)| = d * r, the total blob size allowed in a blobbing."""
        return self.d * self.r

    @property
    def d_neg_alpha(self) -> float:
        return self.d ** (-self.alpha)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_record(self) -> str:
        """Flat `key=value` record, floats with 12 significant digits."""
        digits = main_config.PARAMS_SIGNIFICANT_DIGITS
        lines = []
        for key in RECORD_KEYS:
            value = getattr(self, key)
            text = str(value) if key in INTEGER_KEYS else format(value, f".{digits}g")
            lines.append(f"{key}={text}")
        return "\n".join(lines) + "\n"

    def diagnostics(self) -> list[Diagnostic]:
        """
        Evaluates the inequalities the proofs obtain from "d sufficiently
        large". Desk-scale parameters usually violate several of them.
        """
        eps, d, t, ell = self.epsilon, self.d, self.t, self.ell
        cap = self.ell_cap
        log_tail = -(d ** (self.beta - self.alpha)) * (self.s - 1) / 16
        log_union = -math.log(2) - self.s * (math.log(2) + ell * math.log(d))
        ell_sets = sum(math.comb(d, i) for i in range(1, cap + 1))
        host = d * self.r
        return [
            Diagnostic("ell_set_nonempty", cap, 1, cap >= 1),
            Diagnostic("host_vertex_bound", host, (1 - eps / 4) * ell * t, host < (1 - eps / 4) * ell * t),
            Diagnostic("blob_overlap_room", ell * self.r * self.s, eps * t / 20, ell * self.r * self.s <= eps * t / 20),
            Diagnostic("star_tail_vs_union", log_tail, log_union, log_tail <= log_union),
            Diagnostic("ell_set_count", ell_sets, 2 * d**ell, ell_sets <= 2 * d**ell),
            Diagnostic("s_at_most_d", self.s, d, self.s <= d),
        ]

    def check_identities(self, theorem_instance: bool = True) -> None:
        """
        Asserts the identity chain tying b, p, ell and alpha together.

        Raises:
            ArithmeticError: If an identity fails by more than the tolerance.
        """
        tol = main_config.IDENTITY_TOLERANCE
        if not math.isclose(self.b * (1 - self.p), 1.0, rel_tol=tol):
            raise ArithmeticError("b != (1 - p)^-1")
        lhs = (1 - self.p) ** (self.ell**2)
        rhs = self.d_neg_alpha
        if not math.isclose(lhs, rhs, rel_tol=tol):
            raise ArithmeticError(f"(1 - p)^(ell^2) = {lhs} differs from d^-alpha = {rhs}")
        if theorem_instance:
            got = (1 - self.epsilon / 2) * math.sqrt(self.alpha)
            if not math.isclose(got, 1 - self.epsilon, rel_tol=tol):
                raise ArithmeticError(f"(1 - eps/2) sqrt(alpha) = {got} != 1 - eps")


def parse_params_record(text: str) -> dict:
    """Parses a `key=value` params record back into a plain dict."""
    values = {}
    for line in text.strip().splitlines():
        key, _, raw = line.partition("=")
        if key not in RECORD_KEYS:
            raise ValueError(f"unknown params key {key!r}")
        values[key] = int(raw) if key in INTEGER_KEYS else float(raw)
    missing = [k for k in RECORD_KEYS if k not in values]
    if missing:
        raise ValueError(f"params record is missing {missing}")
    return values


def ell_for(p: float, alpha: float, d: int) -> float:
    """ell = sqrt(alpha * log_b d) with b = (1 - p)^-1."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    x = -math.log1p(-p)
    return math.sqrt(alpha * math.log(d) / x)


def _validate_common(epsilon: float, d: int, t: int) -> None:
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    if d == 1:
        raise ValueError("d = 1 gives ln d = 0 and therefore ell = 0")
    if not isinstance(t, int) or t < d + 1:
        raise ValueError(f"t must be an integer with t >= d + 1 = {d + 1}, got {t!r}")


def _assemble(epsilon: float, x: float, alpha: float, beta: float | None, d: int, t: int) -> ConstructionParams:
    if beta is None:
        beta = (alpha + 1) / 2
    if not alpha < beta < 1:
        raise ValueError(f"beta must lie in (alpha, 1) = ({alpha}, 1), got {beta}")
    b = math.exp(x)
    p = -math.expm1(-x)
    ell = math.sqrt(alpha * math.log(d) / x)
    s = math.ceil(d**beta)
    r = math.ceil((1 - epsilon / 2) * t * ell / d)
    return ConstructionParams(
        epsilon=epsilon, x_star=x, b=b, p=p, alpha=alpha, beta=beta,
        d=d, t=t, ell=ell, s=s, r=r,
    )


def _log_violations(params: ConstructionParams) -> None:
    for diag in params.diagnostics():
        if not diag.holds:
            logger.warning(
                f"Finite-d inequality '{diag.name}' fails at d={params.d}, t={params.t}: "
                f"lhs={diag.lhs:.6g}, rhs={diag.rhs:.6g}"
            )


def lemma_params(p: float, epsilon: float, alpha: float, d: int, t: int, beta: float | None = None) -> ConstructionParams:
    """
    Parameters for the blowup construction with an arbitrary edge probability.

    Args:
        p (float): Edge probability of G0, in (0, 1).
        epsilon (float): Slack in (0, 1).
        alpha (float): Exponent in (0, 1).
        d (int): Number of vertices of G0, at least 2.
        t (int): Number of vertices of H, at least d + 1.
        beta (float | None): Exponent in (alpha, 1); defaults to (alpha + 1)/2.

    Returns:
        ConstructionParams: The derived tuple.
    """
    _validate_common(epsilon, d, t)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    params = _assemble(epsilon, -math.log1p(-p), alpha, beta, d, t)
    params.check_identities(theorem_instance=False)
    _log_violations(params)
    return params


def derive_params(epsilon: float, d: int, t: int, beta: float | None = None) -> ConstructionParams:
    """
    Parameters for the headline construction: x = x*, p = 1 - e^-x*,
    alpha = ((1 - eps)/(1 - eps/2))^2.
    """
    _validate_common(epsilon, d, t)
    x_star, _ = lambda_constant()
    alpha = ((1 - epsilon) / (1 - epsilon / 2)) ** 2
    params = _assemble(epsilon, x_star, alpha, beta, d, t)
    params.check_identities(theorem_instance=True)
    _log_violations(params)
    return params


def is_theorem_instance(params: ConstructionParams) -> bool:
    x_star, _ = lambda_constant()
    tol = main_config.IDENTITY_TOLERANCE
    alpha = ((1 - params.epsilon) / (1 - params.epsilon / 2)) ** 2
    return math.isclose(params.x_star, x_star, rel_tol=tol) and math.isclose(params.alpha, alpha, rel_tol=tol)


def target_average_degree(params: ConstructionParams) -> DegreeTargets:
    """
    Average-degree targets for the host graph.

    `intermediate` is (1 - eps/2)^2 p t ell, the bound the blowup chain gives
    when the lemma runs with the same eps. The headline instance runs the lemma
    with eps/2, whose intermediate (1 - eps/4)^2 p t ell always dominates the
    headline (1 - eps) lambda t sqrt(ln d); that inequality is asserted.
    """
    _, lam = lambda_constant()
    eps, p, t, ell = params.epsilon, params.p, params.t, params.ell
    intermediate = (1 - eps / 2) ** 2 * p * t * ell
    headline = (1 - eps) * lam * t * math.sqrt(math.log(params.d))
    half_eps = (1 - eps / 4) ** 2 * p * t * ell
    guarantee = (1 - eps / 2) * p * t * ell
    if is_theorem_instance(params):
        slack = main_config.IDENTITY_TOLERANCE * headline
        assert half_eps + slack >= headline, "eps/2 intermediate fell below the headline"
        assert math.isclose(guarantee, headline, rel_tol=1e-9), "lemma guarantee != headline"
    return DegreeTargets(
        intermediate=intermediate,
        headline=headline,
        half_epsilon_intermediate=half_eps,
        lemma_guarantee=guarantee,
        intermediate_meets_headline=intermediate >= headline,
    )

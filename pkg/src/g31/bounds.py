"""Lower bounds and asymptotic targets for the minimum induced edge count r(l)."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from .errors import InvalidParameterError
from .graph import GraphParams, make_params
from .independence import EXACT_MODE, alpha_reference

RIGOROUS = "rigorous"
ASYMPTOTIC_ONLY = "asymptotic-only"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def turan_lb(m: int, alpha: int) -> int:
    """Fewest edges any m vertices can span when independence number <= alpha.

    Complement form of Turán's theorem: ``m^2/(2 alpha) - m/2``, rounded up.
    """
    if m < 0:
        raise InvalidParameterError(f"m must be >= 0, got {m}")
    if alpha < 1:
        raise InvalidParameterError(f"alpha must be >= 1, got {alpha}")
    return max(0, _ceil_div(m * (m - alpha), 2 * alpha))


def regime3_bounds(l: int, alpha: int) -> tuple[int, float]:
    """``(ceil(l^2/alpha), 5 l^2/alpha)``; the lower end is asymptotic only."""
    if l < 1 or alpha < 1:
        raise InvalidParameterError("l and alpha must be >= 1")
    return _ceil_div(l * l, alpha), 5.0 * l * l / alpha


@dataclass(frozen=True)
class BoundReport:
    n: int
    l: int
    alpha_used: int
    alpha_mode: str
    lower_bound: int
    formula_id: str
    asymptotic_target: float
    rigor: str

    def as_dict(self) -> dict:
        return asdict(self)


def regime4_lb(params: GraphParams, l: int, alpha: int,
               alpha_mode: str = EXACT_MODE) -> BoundReport:
    """Edge-deficit bound obtained by deleting ``|V_n| - l`` vertices.

    Deleting a set D removes ``d_n |D| - e(D)`` edges, so any l-set keeps at
    least ``|E_n| - d_n |D| + turan_lb(|D|, alpha)`` of them.
    """
    if not 0 <= l <= params.vertex_count:
        raise InvalidParameterError(
            f"l={l} outside [0, {params.vertex_count}] for n={params.n}"
        )
    removed = params.vertex_count - l
    lb = params.total_edges - params.degree * removed + turan_lb(removed, alpha)
    targets = asymptotic_targets(params.n, l)
    return BoundReport(
        n=params.n, l=l, alpha_used=alpha, alpha_mode=alpha_mode,
        lower_bound=max(0, lb), formula_id="regime4-deficit",
        asymptotic_target=targets.regime4,
        rigor=RIGOROUS if alpha_mode == EXACT_MODE else ASYMPTOTIC_ONLY,
    )


@dataclass(frozen=True)
class AsymptoticTargets:
    n: int
    l: int
    c: float
    half_turan: float
    regime3: float
    regime3_upper: float
    regime4: float

    def as_dict(self) -> dict:
        return asdict(self)


def regime4_polynomial(c: float) -> float:
    return 1 / 8 - c / 4 + c * c / 72


def asymptotic_targets(n: int, l: int) -> AsymptoticTargets:
    """Target functions with the proxy ``alpha = n``.

    ``c = 1 - l / C(n,3)`` is the fraction of deleted vertices.
    """
    if n < 3:
        raise InvalidParameterError(f"n must be >= 3, got {n}")
    total = math.comb(n, 3)
    if not 0 <= l <= total:
        raise InvalidParameterError(f"l={l} outside [0, {total}]")
    c = 1 - l / total
    return AsymptoticTargets(
        n=n, l=l, c=c,
        half_turan=l * l / (2 * n),
        regime3=l * l / n,
        regime3_upper=5 * l * l / n,
        regime4=max(0.0, n**5 * regime4_polynomial(c)),
    )


def bound_report(n: int, l: int, regime: int, alpha_mode: str = EXACT_MODE) -> BoundReport:
    """Lower bound for one regime, labelled with the alpha it relied on."""
    params = make_params(n)
    if not 0 <= l <= params.vertex_count:
        raise InvalidParameterError(f"l={l} outside [0, {params.vertex_count}]")
    alpha = alpha_reference(n, alpha_mode)
    rigorous = alpha.mode == EXACT_MODE
    if regime in (1, 2):
        return BoundReport(n, l, alpha.value, alpha.mode, turan_lb(l, alpha.value),
                           "turan", l * l / (2 * alpha.value),
                           RIGOROUS if rigorous else ASYMPTOTIC_ONLY)
    if regime == 3:
        if l < 1:
            raise InvalidParameterError("regime 3 needs l >= 1")
        lb, upper = regime3_bounds(l, alpha.value)
        return BoundReport(n, l, alpha.value, alpha.mode, lb, "regime3-distance-turan",
                           upper, ASYMPTOTIC_ONLY)
    if regime == 4:
        return regime4_lb(params, l, alpha.value, alpha.mode)
    raise InvalidParameterError(f"regime must be 1..4, got {regime}")

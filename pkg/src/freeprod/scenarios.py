"""Numeric reproductions of the two boundary-of-validity constructions.

``sharpness``: a two-scale connected sum of circle bundles modeled by
Z * Z with generator lengths 2*pi*eps and 2*pi/eps'.  Its systole is
2*pi*eps while the diameter grows like pi/eps', so shrinking both
parameters keeps the entropy bounded while systole -> 0 and
diameter -> infinity; the diameter-aware systole bound is attained in
the limit (the estimate is sharp, and the diameter hypothesis cannot
be dropped).

``torsion``: Z_p * Z with torsion generator length 2*pi*eps/p.  The
shortest letter collapses as eps -> 0, yet the growth rate stays below
a ceiling independent of eps - with torsion, no systole bound in terms
of entropy and diameter alone can hold.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from typing import IO, Iterable, Sequence

from .bounds import systole_lb
from .entropy import critical_exponent, solve_h_f2, solve_weight_sum
from .factors import FactorSpec, LengthAssignment
from .growth import WeightedGenSet
from .words import FreeProduct

TWO_PI = 2.0 * math.pi


class ScenarioError(ValueError):
    """Raised on out-of-range scenario parameters."""


@dataclass(frozen=True)
class SharpnessPoint:
    eps: float
    eps_prime: float
    sys: float
    diam_lo: float
    diam_hi: float
    h: float
    thm_bound: float
    sharpness_ratio: float


@dataclass(frozen=True)
class TorsionCollapsePoint:
    p: int
    eps: float
    b_length: float
    torsion_letter_length: float
    h: float
    ceiling: float


def run_sharpness(eps: float, eps_prime: float) -> SharpnessPoint:
    """Evaluate the two-scale model at (eps, eps')."""
    _check_unit_interval(eps=eps, eps_prime=eps_prime)
    sys = TWO_PI * eps
    diam_lo = math.pi / eps_prime + 1.0
    diam_hi = diam_lo + math.pi * eps
    h = solve_h_f2(TWO_PI * eps, TWO_PI / eps_prime).h
    thm_bound = systole_lb(h, diam_hi)
    return SharpnessPoint(
        eps=eps,
        eps_prime=eps_prime,
        sys=sys,
        diam_lo=diam_lo,
        diam_hi=diam_hi,
        h=h,
        thm_bound=thm_bound,
        sharpness_ratio=sys / thm_bound,
    )


# The diagonal eps = eps' family keeps its growth rate below 1/pi; a sweep
# that violated this would indicate a solver defect.
DIAGONAL_ENTROPY_CEILING = 1.0 / math.pi


def sweep_sharpness(params: Sequence[tuple[float, float]]) -> list[SharpnessPoint]:
    """Per-point results, with the diagonal entropy ceiling asserted."""
    if not params:
        raise ScenarioError("empty parameter list")
    points = [run_sharpness(e, ep) for e, ep in params]
    for pt in points:
        if pt.eps == pt.eps_prime and pt.h > DIAGONAL_ENTROPY_CEILING + 1e-12:
            raise ScenarioError(
                f"diagonal point eps={pt.eps} exceeds the 1/pi entropy ceiling: {pt.h}"
            )
    return points


def run_torsion_collapse(p: int, eps: float, b_length: float = 1.0) -> TorsionCollapsePoint:
    """Evaluate the torsion model Z_p * Z at scale eps.

    The torsion generator gets length 2*pi*eps/p and the infinite factor
    generator length b_length.  The ceiling solves W_B(c) = 1/(p-1): the
    torsion factor contributes at most p-1 to the weight product no
    matter how short its letters get, so the growth rate can never pass
    it.
    """
    if p < 2:
        raise ScenarioError(f"torsion order must be >= 2, got {p}")
    _check_unit_interval(eps=eps)
    if b_length <= 0:
        raise ScenarioError("b_length must be positive")
    letter = TWO_PI * eps / p
    product = FreeProduct(
        FactorSpec.finite_cyclic(p, label="a"), FactorSpec.infinite_cyclic(label="b")
    )
    gen_set = WeightedGenSet(
        product,
        LengthAssignment(generator_length=letter),
        LengthAssignment(generator_length=b_length),
    )
    h = critical_exponent(gen_set).h
    ceiling = solve_weight_sum(
        product.factor_b, LengthAssignment(generator_length=b_length), 1.0 / (p - 1)
    )
    return TorsionCollapsePoint(
        p=p,
        eps=eps,
        b_length=b_length,
        torsion_letter_length=letter,
        h=h,
        ceiling=ceiling,
    )


def sweep_torsion_collapse(
    p: int, eps_values: Iterable[float], b_length: float = 1.0
) -> list[TorsionCollapsePoint]:
    points = [run_torsion_collapse(p, eps, b_length) for eps in eps_values]
    if not points:
        raise ScenarioError("empty parameter list")
    return points


def write_points_csv(points: Sequence, stream: IO[str]) -> None:
    """One CSV row per sweep point, all result fields as columns."""
    if not points:
        raise ScenarioError("nothing to write")
    rows = [asdict(pt) for pt in points]
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)


def _check_unit_interval(**values: float) -> None:
    for name, value in values.items():
        if not 0 < value <= 1:
            raise ScenarioError(f"{name} must lie in (0, 1], got {value}")

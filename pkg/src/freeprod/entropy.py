"""Closed-form growth-rate solvers for weighted free products.

For the free group on two generators with letter lengths l1, l2 the
growth rate h of the weighted word metric is the unique positive root
of (e^{h l1} - 1)(e^{h l2} - 1) = 4.  For a general weighted free
product the rate is the critical exponent of the length-weighted
series, i.e. the root of W_A(c) * W_B(c) = 1 where W_F sums
e^{-c length(x)} over the non-identity elements of the factor F.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from .factors import FactorSpec, LengthAssignment
from .growth import WeightedGenSet, factor_weight_sum


class EntropyError(ValueError):
    """Raised on invalid solver inputs."""


@dataclass(frozen=True)
class EntropySolution:
    """A solved growth rate with its defining-equation residual."""

    h: float
    residual: float
    bracket: tuple[float, float]
    zero_entropy: bool = False


_EPS0 = 1e-15


def _bracket_root(fn, lo: float = _EPS0, hi: float = 1.0) -> tuple[float, float]:
    """Expand/shrink until fn(lo) < 0 < fn(hi); fn must be increasing."""
    while fn(hi) <= 0:
        hi *= 2.0
        if hi > 1e12:
            raise EntropyError("failed to bracket the root from above")
    while fn(lo) >= 0:
        lo /= 2.0
        if lo < 1e-300:
            raise EntropyError("failed to bracket the root from below")
    return lo, hi


def solve_h_f2(l1: float, l2: float) -> EntropySolution:
    """Growth rate of the rank-2 free group with generator lengths l1, l2.

    F(h) = (e^{h l1} - 1)(e^{h l2} - 1) - 4 is strictly increasing with
    F(0+) = -4, so bracketed root finding is unconditionally convergent.
    expm1 keeps the factors accurate when h*l is tiny (the sweeps mix
    lengths differing by several orders of magnitude).
    """
    if l1 <= 0 or l2 <= 0:
        raise EntropyError("generator lengths must be positive")

    # Solve in log space: log expm1(h l1) + log expm1(h l2) = log 4 has the
    # same unique root but cannot overflow when the lengths differ by
    # orders of magnitude.
    def f(h: float) -> float:
        return _log_expm1(h * l1) + _log_expm1(h * l2) - math.log(4.0)

    lo, hi = _bracket_root(f, _EPS0, 1.0 / min(l1, l2))
    h = float(brentq(f, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200))
    residual = math.expm1(h * l1) * math.expm1(h * l2) / 4.0 - 1.0
    return EntropySolution(h=h, residual=residual, bracket=(lo, hi))


def _log_expm1(x: float) -> float:
    if x > 40.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def critical_exponent(gen_set: WeightedGenSet) -> EntropySolution:
    """Critical exponent of the length-weighted series of a free product.

    Solves W_A(c) * W_B(c) = 1.  When both factors have exactly two
    elements the product stays below 1 for every c > 0 and the group has
    linear growth; that case is reported as an explicit zero-entropy
    result rather than an error.
    """
    spec_a = gen_set.product.factor_a
    spec_b = gen_set.product.factor_b
    if spec_a.size == 2 and spec_b.size == 2:
        return EntropySolution(h=0.0, residual=0.0, bracket=(0.0, 0.0), zero_entropy=True)

    def g(c: float) -> float:
        # Increasing in -c; negate so _bracket_root sees an increasing map.
        return -(
            math.log(factor_weight_sum(spec_a, gen_set.length_a, c))
            + math.log(factor_weight_sum(spec_b, gen_set.length_b, c))
        )

    lo, hi = _bracket_root(g, 1e-6, 1.0)
    h = float(brentq(g, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200))
    w_a = factor_weight_sum(spec_a, gen_set.length_a, h)
    w_b = factor_weight_sum(spec_b, gen_set.length_b, h)
    return EntropySolution(h=h, residual=w_a * w_b - 1.0, bracket=(lo, hi))


def solve_weight_sum(
    spec: FactorSpec, lengths: LengthAssignment, target: float
) -> float:
    """The c > 0 with W(c) == target for one factor; W is strictly decreasing."""
    if target <= 0:
        raise EntropyError("target must be positive")

    def g(c: float) -> float:
        return -(math.log(factor_weight_sum(spec, lengths, c)) - math.log(target))

    lo, hi = _bracket_root(g, 1e-6, 1.0)
    return float(brentq(g, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=200))

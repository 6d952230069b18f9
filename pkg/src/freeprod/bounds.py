"""Closed-form geometric bound evaluators.

Every function is a stateless evaluator of one displayed inequality:
lower bounds for diastole, homotopy systole and volume in terms of an
entropy bound H and a diameter bound D, the packing count used in the
precompactness argument, and the Besson-Courtois-Gallot comparison
bound for transitive-commutation groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)


class BoundError(ValueError):
    """Raised on non-positive or otherwise invalid inputs."""


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise BoundError(f"{name} must be positive, got {value}")


def diastole_lb(H: float) -> float:
    """Diastole lower bound log(3) / (6 H) for decomposable 2-torsionless groups."""
    _require_positive(H=H)
    return LOG3 / (6.0 * H)


def systole_lb(H: float, D: float) -> float:
    """Homotopy-systole lower bound (1/H) log(1 + 4 / (e^{2DH} - 1))."""
    _require_positive(H=H, D=D)
    x = 2.0 * D * H
    if x > 700.0:  # expm1 would overflow; the -1 is negligible here
        return math.log1p(4.0 * math.exp(-x)) / H
    return math.log1p(4.0 / math.expm1(x)) / H


@dataclass(frozen=True)
class LsePair:
    """Both readings of the pairwise length inequality.

    ``displayed`` drops the -1 in the denominator (the weaker reading of
    the intermediate display); ``sharp`` keeps it, matching the defining
    equation and the final bound.  Exposing both keeps the discrepancy
    auditable.
    """

    displayed: float
    sharp: float


def pair_inequality_lse(H: float, l2: float) -> LsePair:
    _require_positive(H=H, l2=l2)
    displayed = math.log1p(4.0 * math.exp(-H * l2)) / H
    sharp = math.log1p(4.0 / math.expm1(H * l2)) / H
    return LsePair(displayed=displayed, sharp=sharp)


def bcg_diastole_lb(delta: float, H: float) -> float:
    """Comparison bound delta log(2) / ((4 + delta) H) for delta-nonabelian groups."""
    _require_positive(delta=delta, H=H)
    return delta * LOG2 / ((4.0 + delta) * H)


def bcg_crossover_delta() -> float:
    """The delta below which diastole_lb beats bcg_diastole_lb (any common H)."""
    return 4.0 * LOG3 / (6.0 * LOG2 - LOG3)


def volume_lb(n: int, H: float, D: float, c_n: float) -> float:
    """Volume lower bound C_n * systole_lb(H, D)^n for 1-essential manifolds.

    C_n is the isosystolic constant and must be supplied by the caller;
    no sharp universal default exists.
    """
    if n < 2:
        raise BoundError(f"dimension must be >= 2, got {n}")
    _require_positive(H=H, D=D, c_n=c_n)
    return c_n * systole_lb(H, D) ** n


def packing_count_ub(V: float, eps: float, c_n: float, n: int) -> float:
    """Upper bound V / (C_n eps^n) on disjoint eps-balls in volume V."""
    if n < 2:
        raise BoundError(f"dimension must be >= 2, got {n}")
    _require_positive(V=V, eps=eps, c_n=c_n)
    return V / (c_n * eps**n)


def l0_combine(l: float, H: float, D: float) -> float:
    """min(l, systole_lb(H, D)): the geodesic-loop floor used for packing."""
    _require_positive(l=l)
    return min(l, systole_lb(H, D))


def sgl_combine(sys_bound: float, sgl_cover: float) -> float:
    """Shortest geodesic loop downstairs: min of systole and the cover's sgl."""
    _require_positive(sys_bound=sys_bound, sgl_cover=sgl_cover)
    return min(sys_bound, sgl_cover)

"""Exact ball and sphere counting for weighted free products.

The counts are the brute-force side of the toolkit: a dynamic program
over the last-letter factor gives exact sphere sizes on a rational
weight lattice (arbitrary-precision integers throughout), and a fitted
slope of log N(R) estimates the growth rate empirically.  The closed
form of the length-weighted generating series is evaluated here as
well; its critical exponent lives in the entropy module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable

import numpy as np

from .factors import (
    FINITE_CYCLIC,
    FINITE_TABLE,
    INFINITE_CYCLIC,
    FactorSpec,
    LengthAssignment,
    as_exact,
)
from .words import FreeProduct

DEFAULT_STEP_CAP = 10**6


class GrowthError(ValueError):
    """Raised on uncountable configurations or out-of-range queries."""


@dataclass(frozen=True)
class WeightedGenSet:
    """A free product together with letter lengths for both factors."""

    product: FreeProduct
    length_a: LengthAssignment
    length_b: LengthAssignment

    def __post_init__(self) -> None:
        self.length_a.validate_for(self.product.factor_a)
        self.length_b.validate_for(self.product.factor_b)

    def assignment(self, tag: str) -> LengthAssignment:
        return self.length_a if tag == "A" else self.length_b

    def lattice_unit(self) -> Fraction:
        """Largest u with every letter length an integer multiple of u."""
        base: list[Fraction] = []
        for spec, la in (
            (self.product.factor_a, self.length_a),
            (self.product.factor_b, self.length_b),
        ):
            if spec.kind == FINITE_TABLE:
                base.extend(as_exact(v) for v in la.element_lengths[1:])
            else:
                base.append(as_exact(la.generator_length))
        denom = math.lcm(*(f.denominator for f in base))
        numer = math.gcd(*(f.numerator * (denom // f.denominator) for f in base))
        return Fraction(numer, denom)

    @classmethod
    def with_unit_lengths(cls, product: FreeProduct) -> "WeightedGenSet":
        return cls(product, LengthAssignment.unit(), LengthAssignment.unit())


@dataclass(frozen=True)
class GrowthTable:
    """Exact sphere counts c(n) on the lattice n * unit, n = 0..n_max."""

    unit: Fraction
    counts: tuple[int, ...]

    def weight(self, n: int) -> Fraction:
        return n * self.unit

    @property
    def max_weight(self) -> Fraction:
        return (len(self.counts) - 1) * self.unit

    def cumulative_below(self, radius) -> int:
        """N(R) = number of elements with weighted length strictly below R."""
        r = Fraction(radius)
        if r > self.max_weight + self.unit:
            raise GrowthError(f"radius {radius} beyond the computed table")
        return sum(c for n, c in enumerate(self.counts) if n * self.unit < r)

    def ball(self, radius) -> int:
        """Number of elements with weighted length <= R."""
        r = Fraction(radius)
        if r > self.max_weight:
            raise GrowthError(f"radius {radius} beyond the computed table")
        return sum(c for n, c in enumerate(self.counts) if n * self.unit <= r)

    def write_csv(self, stream: IO[str]) -> None:
        import csv

        writer = csv.writer(stream)
        writer.writerow(["n", "weight", "sphere_count", "cumulative"])
        total = 0
        for n, c in enumerate(self.counts):
            total += c
            writer.writerow([n, float(n * self.unit), c, total])


def sphere_counts(factor_a: FactorSpec, factor_b: FactorSpec, n_max: int) -> GrowthTable:
    """Exact unit-length sphere sizes for a free product of finite factors.

    Alternation gives the two-state recurrence
    s_A(n) = (|A|-1) * s_B(n-1), s_B(n) = (|B|-1) * s_A(n-1).
    """
    if not (factor_a.is_finite and factor_b.is_finite):
        raise GrowthError("sphere_counts needs finite factors; use weighted_counts")
    ka = factor_a.size - 1
    kb = factor_b.size - 1
    s_a, s_b = ka, kb
    counts = [1]
    for n in range(1, n_max + 1):
        if n > 1:
            s_a, s_b = ka * s_b, kb * s_a
        counts.append(s_a + s_b)
    return GrowthTable(Fraction(1), tuple(counts))


def _letter_step_counts(
    spec: FactorSpec, lengths: LengthAssignment, unit: Fraction, n_max: int
) -> dict[int, int]:
    """Multiset of letter weights (in lattice steps), truncated at n_max."""
    steps: dict[int, int] = {}

    def add(step: int, mult: int = 1) -> None:
        if step <= n_max:
            steps[step] = steps.get(step, 0) + mult

    if spec.kind == INFINITE_CYCLIC:
        w = int(as_exact(lengths.generator_length) / unit)
        j = 1
        while j * w <= n_max:
            add(j * w, 2)
            j += 1
    elif spec.kind == FINITE_CYCLIC:
        w = int(as_exact(lengths.generator_length) / unit)
        for j in range(1, spec.order):
            add(min(j, spec.order - j) * w)
    else:
        for payload in range(1, spec.size):
            add(int(as_exact(lengths.element_lengths[payload]) / unit))
    return steps


def weighted_counts(
    gen_set: WeightedGenSet, r_max, step_cap: int = DEFAULT_STEP_CAP
) -> GrowthTable:
    """Exact counts of reduced words by weighted length, up to r_max.

    Dynamic program over the factor of the last letter; counts are exact
    integers (they grow exponentially, so machine words would overflow
    around n = 40 already for rank-2 free groups).
    """
    unit = gen_set.lattice_unit()
    n_max = math.ceil(Fraction(r_max) / unit)
    if n_max > step_cap:
        raise GrowthError(f"{n_max} lattice steps exceed the cap {step_cap}")
    wa = _letter_step_counts(gen_set.product.factor_a, gen_set.length_a, unit, n_max)
    wb = _letter_step_counts(gen_set.product.factor_b, gen_set.length_b, unit, n_max)

    # end_a[n] counts words of weight n whose last letter is in A; the seed
    # end_a[0] = end_b[0] = 1 stands for the empty prefix.
    end_a = [0] * (n_max + 1)
    end_b = [0] * (n_max + 1)
    end_a[0] = end_b[0] = 1
    for n in range(1, n_max + 1):
        end_a[n] = sum(mult * end_b[n - w] for w, mult in wa.items() if w <= n)
        end_b[n] = sum(mult * end_a[n - w] for w, mult in wb.items() if w <= n)
    counts = [1] + [end_a[n] + end_b[n] for n in range(1, n_max + 1)]
    return GrowthTable(unit, tuple(counts))


@dataclass(frozen=True)
class PoincareEvaluation:
    """Closed-form value of the length-weighted series at decay rate c."""

    c: float
    w_a: float
    w_b: float
    value: float | None
    diverges: bool


def factor_weight_sum(spec: FactorSpec, lengths: LengthAssignment, c: float) -> float:
    """Sum of e^{-c * length(x)} over the non-identity elements of one factor."""
    if c <= 0:
        raise GrowthError("the decay rate c must be positive")
    if spec.kind == INFINITE_CYCLIC:
        ell = float(lengths.generator_length)
        return 2.0 / math.expm1(c * ell)
    if spec.kind == FINITE_CYCLIC:
        ell = float(lengths.generator_length)
        p = spec.order
        return sum(math.exp(-c * min(j, p - j) * ell) for j in range(1, p))
    return sum(math.exp(-c * float(v)) for v in lengths.element_lengths[1:])


def poincare_I(gen_set: WeightedGenSet, c: float) -> PoincareEvaluation:
    """Evaluate the series over all reduced words in closed form.

    Splitting by first letter gives the alternating-word identity
    I = 1 + (W_A + W_B + 2 W_A W_B) / (1 - W_A W_B), finite exactly when
    W_A * W_B < 1.
    """
    w_a = factor_weight_sum(gen_set.product.factor_a, gen_set.length_a, c)
    w_b = factor_weight_sum(gen_set.product.factor_b, gen_set.length_b, c)
    if w_a * w_b >= 1:
        return PoincareEvaluation(c, w_a, w_b, None, True)
    value = 1.0 + (w_a + w_b + 2.0 * w_a * w_b) / (1.0 - w_a * w_b)
    return PoincareEvaluation(c, w_a, w_b, value, False)


def truncated_poincare_sum(table: GrowthTable, c: float) -> float:
    """Direct summation of e^{-c * weight} over the counted words."""
    return sum(cnt * math.exp(-c * float(n * table.unit)) for n, cnt in enumerate(table.counts))


def empirical_entropy(table: GrowthTable, window: tuple[float, float]) -> float:
    """Least-squares slope of log N(R) over lattice points in the window."""
    r_lo, r_hi = window
    if r_hi <= r_lo:
        raise GrowthError("window must satisfy R2 > R1")
    if Fraction(r_hi) > table.max_weight:
        raise GrowthError("window extends beyond the computed table")
    xs: list[float] = []
    ys: list[float] = []
    total = 0
    for n, c in enumerate(table.counts):
        total += c
        w = n * table.unit
        if r_lo <= w <= r_hi:
            xs.append(float(w))
            ys.append(math.log(total))
    if len(xs) < 2:
        raise GrowthError("window contains fewer than two lattice points")
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)

"""Factor groups of a free product and arithmetic on their elements.

A factor is either infinite cyclic, finite cyclic of order p, or an
explicit finite group given by its multiplication table.  Elements are
carried around as (tag, payload) pairs where the tag names the factor
("A" or "B") and the payload is an exponent for cyclic factors or a
table index otherwise.  The factor identity is never represented as a
``FactorElement``; operations that can produce it return ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

Scalar = int | float | Fraction

INFINITE_CYCLIC = "infinite-cyclic"
FINITE_CYCLIC = "finite-cyclic"
FINITE_TABLE = "finite-table"


class FactorError(ValueError):
    """Raised on invalid factor specifications or element operations."""


@dataclass(frozen=True)
class FactorElement:
    """A non-identity letter of a free product word."""

    tag: str
    payload: int


@dataclass(frozen=True)
class FactorSpec:
    """One factor group of a free product.

    ``order`` is set for finite cyclic factors, ``table`` for explicit
    finite groups.  Table factors use index 0 as the identity and are
    checked to be actual groups at construction time.
    """

    kind: str
    generator_label: str = "a"
    order: int | None = None
    table: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind == INFINITE_CYCLIC:
            if self.order is not None or self.table is not None:
                raise FactorError("infinite cyclic factor takes no order or table")
        elif self.kind == FINITE_CYCLIC:
            if self.order is None or self.order < 2:
                raise FactorError("finite cyclic factor needs order >= 2")
        elif self.kind == FINITE_TABLE:
            if self.table is None:
                raise FactorError("finite-table factor needs a table")
            _check_group_table(self.table)
        else:
            raise FactorError(f"unknown factor kind: {self.kind!r}")

    @classmethod
    def infinite_cyclic(cls, label: str = "a") -> "FactorSpec":
        return cls(INFINITE_CYCLIC, generator_label=label)

    @classmethod
    def finite_cyclic(cls, order: int, label: str = "a") -> "FactorSpec":
        return cls(FINITE_CYCLIC, generator_label=label, order=order)

    @classmethod
    def finite_table(cls, table, label: str = "a") -> "FactorSpec":
        rows = tuple(tuple(row) for row in table)
        return cls(FINITE_TABLE, generator_label=label, table=rows)

    @classmethod
    def parse(cls, text: str, label: str = "a") -> "FactorSpec":
        """Parse the plain-text factor grammar: ``Z``, ``Z/5``, ``table:<path>``."""
        text = text.strip()
        if text == "Z":
            return cls.infinite_cyclic(label)
        if text.startswith("Z/"):
            try:
                p = int(text[2:])
            except ValueError:
                raise FactorError(f"bad finite cyclic order in {text!r}") from None
            return cls.finite_cyclic(p, label)
        if text.startswith("table:"):
            return cls.finite_table(_load_table(Path(text[6:])), label)
        raise FactorError(f"cannot parse factor spec {text!r}")

    @property
    def size(self) -> int | None:
        """Number of elements, or None for the infinite cyclic factor."""
        if self.kind == INFINITE_CYCLIC:
            return None
        if self.kind == FINITE_CYCLIC:
            return self.order
        return len(self.table)

    @property
    def is_finite(self) -> bool:
        return self.kind != INFINITE_CYCLIC

    def canonical(self, payload: int) -> int | None:
        """Canonical payload representative; None when it is the identity."""
        if self.kind == FINITE_CYCLIC:
            payload %= self.order
        elif self.kind == FINITE_TABLE:
            if not 0 <= payload < len(self.table):
                raise FactorError(f"table index {payload} out of range")
        return payload if payload != 0 else None

    def mul_payload(self, x: int, y: int) -> int | None:
        if self.kind == FINITE_TABLE:
            return self.canonical(self.table[x][y])
        return self.canonical(x + y)

    def inv_payload(self, x: int) -> int:
        if self.kind == FINITE_TABLE:
            row = self.table[x]
            return row.index(0)
        if self.kind == FINITE_CYCLIC:
            return (-x) % self.order
        return -x

    def nonidentity_payloads(self) -> list[int]:
        if not self.is_finite:
            raise FactorError("infinite cyclic factor has infinitely many elements")
        return list(range(1, self.size))

    def describe(self) -> str:
        if self.kind == INFINITE_CYCLIC:
            return "Z"
        if self.kind == FINITE_CYCLIC:
            return f"Z/{self.order}"
        return f"table[{len(self.table)}]"


@dataclass(frozen=True)
class LengthAssignment:
    """Positive letter lengths for one factor.

    Cyclic factors take a single generator length; table factors take an
    explicit length per element, indexed by payload (slot 0 is unused).
    """

    generator_length: Scalar | None = None
    element_lengths: tuple[Scalar, ...] | None = None

    def validate_for(self, spec: FactorSpec) -> None:
        if spec.kind == FINITE_TABLE:
            if self.element_lengths is None:
                raise FactorError("table factor needs per-element lengths")
            n = spec.size
            if len(self.element_lengths) != n:
                raise FactorError(f"expected {n} element lengths, got {len(self.element_lengths)}")
            for i in range(1, n):
                if self.element_lengths[i] <= 0:
                    raise FactorError("element lengths must be positive")
                j = spec.inv_payload(i)
                if self.element_lengths[i] != self.element_lengths[j]:
                    raise FactorError("element lengths must satisfy length(x) == length(x^-1)")
        else:
            if self.generator_length is None or self.generator_length <= 0:
                raise FactorError("cyclic factor needs a positive generator length")

    @classmethod
    def unit(cls) -> "LengthAssignment":
        return cls(generator_length=1)


def f_mul(spec: FactorSpec, x: FactorElement, y: FactorElement) -> FactorElement | None:
    """Group product inside a factor; None marks the identity result."""
    if x.tag != y.tag:
        raise FactorError(f"factor tags differ: {x.tag} vs {y.tag}")
    p = spec.mul_payload(x.payload, y.payload)
    return None if p is None else FactorElement(x.tag, p)


def f_inv(spec: FactorSpec, x: FactorElement) -> FactorElement:
    return FactorElement(x.tag, spec.inv_payload(x.payload))


def f_length(spec: FactorSpec, x: FactorElement, lengths: LengthAssignment) -> Scalar:
    """Factor-internal word-metric length of a non-identity element."""
    if spec.canonical(x.payload) is None:
        raise FactorError("the identity has no letter length")
    if spec.kind == INFINITE_CYCLIC:
        return abs(x.payload) * lengths.generator_length
    if spec.kind == FINITE_CYCLIC:
        j = x.payload % spec.order
        return min(j, spec.order - j) * lengths.generator_length
    return lengths.element_lengths[x.payload]


def _check_group_table(table: tuple[tuple[int, ...], ...]) -> None:
    n = len(table)
    if n < 1:
        raise FactorError("empty multiplication table")
    for row in table:
        if len(row) != n or any(not 0 <= v < n for v in row):
            raise FactorError("multiplication table is not closed on 0..n-1")
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise FactorError("index 0 is not a two-sided identity")
    for i in range(n):
        if 0 not in table[i]:
            raise FactorError(f"element {i} has no inverse")
        j = table[i].index(0)
        if table[j][i] != 0:
            raise FactorError(f"element {i} has no two-sided inverse")
    for i in range(n):
        for j in range(n):
            tij = table[i][j]
            for k in range(n):
                if table[tij][k] != table[i][table[j][k]]:
                    raise FactorError("multiplication table is not associative")


def _load_table(path: Path) -> tuple[tuple[int, ...], ...]:
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    n = int(lines[0])
    if len(lines) != n + 1:
        raise FactorError(f"table file should have {n} rows after the header")
    return tuple(tuple(int(v) for v in ln.split()) for ln in lines[1:])


def as_exact(value: Scalar) -> Fraction:
    """Exact rational view of a length; floats are rejected.

    The lattice rescaling used for exact counting needs honest rationals;
    a float that merely looks like 0.1 is not one.
    """
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        raise FactorError(
            f"length {value!r} is a float; pass a Fraction or int for exact counting"
        )
    return Fraction(value)

"""Normal forms and structural algorithms on free product elements.

Elements of A*B are stored as their unique reduced form: an alternating
tuple of non-identity factor letters.  On top of the group operations
this module provides cyclic reduction, exact power lengths, primitive
root extraction and a classifier for subgroups generated by small sets
(conjugate of a factor / infinite cyclic / contains a free pair).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .factors import (
    FactorElement,
    FactorError,
    FactorSpec,
    LengthAssignment,
    Scalar,
    f_length,
)


class WordError(ValueError):
    """Raised on malformed words or operations outside their domain."""


@dataclass(frozen=True)
class Word:
    """A reduced word; the empty tuple is the identity."""

    letters: tuple[FactorElement, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def sort_key(self):
        return (len(self.letters), tuple((lt.tag, lt.payload) for lt in self.letters))


IDENTITY = Word()


@dataclass(frozen=True)
class CyclicDecomposition:
    """x = conjugator . core . conjugator^-1 with the core cyclically reduced."""

    conjugator: Word
    core: Word


@dataclass(frozen=True)
class FactorConjugate:
    """All elements lie in conjugator . (factor `which`) . conjugator^-1."""

    which: str
    conjugator: Word


@dataclass(frozen=True)
class InfiniteCyclic:
    """All elements are powers of one primitive root."""

    root: Word


@dataclass(frozen=True)
class ContainsFreePair:
    """Two witnesses generating a subgroup matching neither other case."""

    witnesses: tuple[Word, Word]


SubgroupClass = FactorConjugate | InfiniteCyclic | ContainsFreePair

_TOKEN = re.compile(r"^(?P<label>[A-Za-z_]\w*?)(?:\^(?P<exp>-?\d+))?$")


class FreeProduct:
    """The free product of two factor groups, with word calculus."""

    def __init__(self, factor_a: FactorSpec, factor_b: FactorSpec):
        self.factor_a = factor_a
        self.factor_b = factor_b
        self._specs = {"A": factor_a, "B": factor_b}

    @classmethod
    def parse_group(cls, text: str) -> "FreeProduct":
        """Parse e.g. ``"Z * Z/5"`` into a free product."""
        parts = text.split("*")
        if len(parts) != 2:
            raise WordError(f"group spec {text!r} must have exactly two factors")
        a = FactorSpec.parse(parts[0], label="a")
        b = FactorSpec.parse(parts[1], label="b")
        return cls(a, b)

    def spec(self, tag: str) -> FactorSpec:
        try:
            return self._specs[tag]
        except KeyError:
            raise WordError(f"unknown factor tag {tag!r}") from None

    def letter(self, tag: str, payload: int) -> FactorElement:
        p = self.spec(tag).canonical(payload)
        if p is None:
            raise WordError("a letter cannot be the factor identity")
        return FactorElement(tag, p)

    def word(self, raw: Iterable[FactorElement | None]) -> Word:
        return self.reduce(raw)

    # -- group operations -------------------------------------------------

    def reduce(self, raw: Iterable[FactorElement | None]) -> Word:
        """The unique normal form of an arbitrary letter sequence."""
        stack: list[FactorElement] = []
        for lt in raw:
            if lt is None:
                continue
            spec = self.spec(lt.tag)
            p = spec.canonical(lt.payload)
            if p is None:
                continue
            if stack and stack[-1].tag == lt.tag:
                merged = spec.mul_payload(stack[-1].payload, p)
                stack.pop()
                if merged is not None:
                    stack.append(FactorElement(lt.tag, merged))
            else:
                stack.append(FactorElement(lt.tag, p))
        return Word(tuple(stack))

    def mul(self, x: Word, y: Word) -> Word:
        return self.reduce(x.letters + y.letters)

    def inv(self, x: Word) -> Word:
        letters = tuple(
            FactorElement(lt.tag, self.spec(lt.tag).inv_payload(lt.payload))
            for lt in reversed(x.letters)
        )
        return Word(letters)

    def pow(self, x: Word, k: int) -> Word:
        """x**k by repeated squaring on normal forms."""
        if k < 0:
            return self.pow(self.inv(x), -k)
        acc = IDENTITY
        base = x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def conjugate(self, x: Word, g: Word) -> Word:
        """g . x . g^-1 in normal form."""
        return self.mul(self.mul(g, x), self.inv(g))

    # -- lengths -----------------------------------------------------------

    @staticmethod
    def word_length(x: Word) -> int:
        return len(x.letters)

    def weighted_length(
        self, x: Word, length_a: LengthAssignment, length_b: LengthAssignment
    ) -> Scalar:
        assignments = {"A": length_a, "B": length_b}
        total: Scalar = 0
        for lt in x.letters:
            total += f_length(self.spec(lt.tag), lt, assignments[lt.tag])
        return total

    # -- cyclic structure --------------------------------------------------

    def cyclic_reduce(self, x: Word) -> CyclicDecomposition:
        """Shortest conjugator u and cyclically reduced core d with x = u d u^-1."""
        if x.is_identity:
            raise WordError("cannot cyclically reduce the identity")
        ls = list(x.letters)
        u: list[FactorElement] = []
        while len(ls) >= 3:
            first, last = ls[0], ls[-1]
            if first.tag == last.tag and self.spec(first.tag).mul_payload(
                last.payload, first.payload
            ) is None:
                u.append(first)
                ls = ls[1:-1]
            else:
                break
        return CyclicDecomposition(Word(tuple(u)), Word(tuple(ls)))

    def core_length(self, x: Word) -> int:
        return len(self.cyclic_reduce(x).core) if not x.is_identity else 0

    def power_length(self, x: Word, k: int) -> int:
        """Exact reduced length of x**k, without expanding the power.

        With conjugator length N1 and core length m: even cores give
        2*N1 + |k|*m; odd cores merge one junction letter per repeat,
        giving 2*N1 + |k|*m - (|k|-1).  The merged junction letters never
        cancel because the core is cyclically reduced, so the result is
        always >= |k|.
        """
        if k == 0:
            raise WordError("exponent must be nonzero")
        dec = self.cyclic_reduce(x)
        m = len(dec.core)
        if m <= 1:
            raise WordError("power_length needs a cyclic core of length >= 2")
        n1 = len(dec.conjugator)
        if m % 2 == 0:
            return 2 * n1 + abs(k) * m
        return 2 * n1 + abs(k) * m - (abs(k) - 1)

    # -- primitive roots ---------------------------------------------------

    def primitive_root(self, x: Word) -> tuple[Word, int]:
        """Primitive root r and maximal exponent e >= 1 with r**e == x.

        Requires a cyclic core of length >= 2 (elements inside a factor
        conjugate have no well-defined primitive root when the factor has
        torsion, so they are excluded altogether).
        """
        dec = self.cyclic_reduce(x)
        core = dec.core.letters
        if len(core) <= 1:
            raise WordError("primitive_root needs a cyclic core of length >= 2")
        sigma, exponent = self._core_root(core)
        root = self.mul(self.mul(dec.conjugator, sigma), self.inv(dec.conjugator))
        return root, exponent

    def _core_root(self, core: tuple[FactorElement, ...]) -> tuple[Word, int]:
        m = len(core)
        if m % 2 == 0:
            # Concatenation powers of an even cyclically reduced word never
            # merge, so the root is the minimal rotation period.
            for d in _divisors(m):
                if all(core[i] == core[i % d] for i in range(m)):
                    return Word(core[:d]), m // d
            raise AssertionError("period m always matches")
        # Odd core: a power sigma**k of an odd word sigma of length t has
        # reduced length k*t - (k-1) = m, i.e. t = 1 + (m-1)/k, and its
        # first t-1 letters and its final letter are sigma's own.  Generate
        # each candidate and accept on exact power verification.
        for k in sorted((d for d in _divisors(m - 1) if d >= 2), reverse=True):
            t = 1 + (m - 1) // k
            candidate = self.reduce(core[: t - 1] + (core[-1],))
            if len(candidate) < 2:
                continue
            if self.pow(candidate, k) == Word(core):
                sub_root, sub_exp = self._core_root(candidate.letters)
                return sub_root, sub_exp * k
        return Word(core), 1

    def canonical_root(self, root: Word) -> Word:
        """Pick the smaller of root and root^-1 under a fixed total order."""
        other = self.inv(root)
        return min(root, other, key=Word.sort_key)

    def power_of(self, base: Word, x: Word) -> int | None:
        """An integer k with base**k == x, or None.  base must have core >= 2."""
        if x.is_identity:
            return 0
        for sign in (1, -1):
            b = base if sign == 1 else self.inv(base)
            acc = b
            k = 1
            while len(acc) <= len(x):
                if acc == x:
                    return sign * k
                acc = self.mul(acc, b)
                k += 1
        return None

    # -- the small-set classifier ------------------------------------------

    def classify_small_set(self, elements: Sequence[Word]) -> SubgroupClass:
        """Trichotomy for the subgroup generated by a finite set.

        Either every element lies in a common conjugate of one factor, or
        all elements are powers of a single primitive root, or two
        witnesses exhibit a subgroup that is neither.
        """
        elems = list(elements)
        if not elems:
            raise WordError("classify_small_set needs a nonempty set")
        if any(e.is_identity for e in elems):
            raise WordError("classify_small_set excludes the identity")

        decs = [self.cyclic_reduce(e) for e in elems]
        if all(len(d.core) == 1 for d in decs):
            return self._classify_factor_case(elems, decs)

        # Some element has core >= 2; the only remaining cyclic possibility
        # is a common primitive root.
        idx = next(i for i, d in enumerate(decs) if len(d.core) >= 2)
        root, _ = self.primitive_root(elems[idx])
        for i, e in enumerate(elems):
            if len(decs[i].core) <= 1 or self.power_of(root, e) is None:
                return ContainsFreePair((elems[idx], e))
        return InfiniteCyclic(self.canonical_root(root))

    def _classify_factor_case(
        self, elems: list[Word], decs: list[CyclicDecomposition]
    ) -> SubgroupClass:
        tags = [d.core.letters[0].tag for d in decs]
        u0 = decs[0].conjugator
        for i in range(1, len(elems)):
            if tags[i] != tags[0]:
                return ContainsFreePair((elems[0], elems[i]))
            # Valid conjugators for element i form the coset u_i . factor, so
            # a common one exists iff u0^-1 u_i lies in the factor.
            shift = self.mul(self.inv(u0), decs[i].conjugator)
            if len(shift) > 1 or (len(shift) == 1 and shift.letters[0].tag != tags[0]):
                return ContainsFreePair((elems[0], elems[i]))
        return FactorConjugate(tags[0], u0)

    # -- text grammar -------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        """Parse whitespace-separated letters ``a^k`` / ``b^k`` (``e`` = identity)."""
        labels = {
            self.factor_a.generator_label: "A",
            self.factor_b.generator_label: "B",
        }
        if len(labels) != 2:
            raise WordError("factors need distinct generator labels for parsing")
        letters: list[FactorElement | None] = []
        for token in text.split():
            if token == "e":
                continue
            m = _TOKEN.match(token)
            if not m or m.group("label") not in labels:
                raise WordError(f"unknown letter {token!r}")
            tag = labels[m.group("label")]
            exp = int(m.group("exp") or 1)
            if exp == 0:
                raise WordError(f"zero exponent in {token!r}")
            letters.append(FactorElement(tag, exp))
        return self.reduce(letters)

    def format_word(self, x: Word) -> str:
        if x.is_identity:
            return "e"
        labels = {"A": self.factor_a.generator_label, "B": self.factor_b.generator_label}
        parts = []
        for lt in x.letters:
            label = labels[lt.tag]
            parts.append(label if lt.payload == 1 else f"{label}^{lt.payload}")
        return " ".join(parts)

    def describe(self) -> str:
        return f"{self.factor_a.describe()} * {self.factor_b.describe()}"


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out

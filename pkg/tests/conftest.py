"""Shared fixtures and independent brute-force oracles."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from freeprod.factors import (
    INFINITE_CYCLIC,
    FactorElement,
    FactorSpec,
    LengthAssignment,
    f_length,
)
from freeprod.words import FreeProduct, Word


def s3_table() -> tuple[tuple[int, ...], ...]:
    """Multiplication table of the symmetric group on 3 points, identity first."""
    perms = [(0, 1, 2)] + [p for p in itertools.permutations(range(3)) if p != (0, 1, 2)]
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    return tuple(tuple(index[compose(p, q)] for q in perms) for p in perms)


@pytest.fixture(scope="session")
def zz():
    return FreeProduct.parse_group("Z * Z")


@pytest.fixture(scope="session")
def z2z2():
    return FreeProduct.parse_group("Z/2 * Z/2")


@pytest.fixture(scope="session")
def z2z3():
    return FreeProduct.parse_group("Z/2 * Z/3")


@pytest.fixture(scope="session")
def z3z3():
    return FreeProduct.parse_group("Z/3 * Z/3")


@pytest.fixture(scope="session")
def z5z():
    return FreeProduct.parse_group("Z/5 * Z")


@pytest.fixture(scope="session")
def s3z():
    return FreeProduct(FactorSpec.finite_table(s3_table(), label="a"),
                       FactorSpec.infinite_cyclic(label="b"))


# -- oracles ---------------------------------------------------------------


def enumerate_words_below(fp: FreeProduct, length_a: LengthAssignment,
                          length_b: LengthAssignment, r_max) -> list[Word]:
    """All reduced words with weighted length strictly below r_max (BFS)."""
    budget_total = Fraction(r_max)
    assign = {"A": length_a, "B": length_b}
    out = [Word()]

    def letters_within(tag: str, budget: Fraction):
        spec = fp.spec(tag)
        if spec.kind == INFINITE_CYCLIC:
            ell = Fraction(assign[tag].generator_length)
            k = 1
            while k * ell < budget:
                yield FactorElement(tag, k), k * ell
                yield FactorElement(tag, -k), k * ell
                k += 1
        else:
            for p in spec.nonidentity_payloads():
                lt = FactorElement(tag, p)
                w = Fraction(f_length(spec, lt, assign[tag]))
                if w < budget:
                    yield lt, w

    def extend(prefix: tuple, last_tag: str | None, budget: Fraction) -> None:
        for tag in ("A", "B"):
            if tag == last_tag:
                continue
            for lt, w in letters_within(tag, budget):
                word = prefix + (lt,)
                out.append(Word(word))
                extend(word, tag, budget - w)

    extend((), None, budget_total)
    return out


def words_by_letter_count(fp: FreeProduct, max_len: int,
                          payloads: dict[str, list[int]]) -> list[Word]:
    """All reduced words with at most max_len letters drawn from payloads."""
    out = [Word()]

    def extend(prefix: tuple, last_tag: str | None) -> None:
        if len(prefix) == max_len:
            return
        for tag in ("A", "B"):
            if tag == last_tag:
                continue
            for p in payloads[tag]:
                word = prefix + (fp.letter(tag, p),)
                out.append(Word(word))
                extend(word, tag)

    extend((), None)
    return out


def random_word(fp: FreeProduct, rng, max_len: int = 4) -> Word:
    """A random reduced word (possibly the identity)."""
    n = rng.randrange(max_len + 1)
    letters = []
    tag = rng.choice(["A", "B"])
    for _ in range(n):
        spec = fp.spec(tag)
        if spec.is_finite:
            payload = rng.randrange(1, spec.size)
        else:
            payload = rng.choice([-3, -2, -1, 1, 2, 3])
        letters.append(FactorElement(tag, payload))
        tag = "B" if tag == "A" else "A"
    return fp.reduce(letters)


def random_nonidentity_word(fp: FreeProduct, rng, max_len: int = 4) -> Word:
    while True:
        w = random_word(fp, rng, max_len)
        if not w.is_identity:
            return w

import cmath
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from winding_kernel.characters import (
    BraidCharacter,
    IntegerCharacter,
    Permutation,
    SymmetricCharacter,
    Z2Character,
    assemble,
    char_eval,
    parity,
)
from winding_kernel.errors import ElementOutOfDomain, InputError, NotABijection


def inversion_sign(images):
    """Oracle: sign from a brute-force inversion count."""
    inv = sum(1 for i, j in itertools.combinations(range(len(images)), 2) if images[i] > images[j])
    return -1 if inv % 2 else 1


def test_char_eval_examples():
    assert char_eval(SymmetricCharacter(3, "sign"), Permutation.transposition(3, 0, 1)) == -1
    assert char_eval(IntegerCharacter(0.7), 0) == 1
    assert abs(char_eval(IntegerCharacter(math.pi), 3) - (-1)) < 1e-15
    assert abs(char_eval(IntegerCharacter(0.3), 2) - cmath.exp(-0.6j)) < 1e-15
    assert abs(char_eval(BraidCharacter(0.3), 2) - cmath.exp(0.6j)) < 1e-15
    assert char_eval(Z2Character("sign"), 1) == -1
    assert char_eval(Z2Character("trivial"), 1) == 1


def test_domain_errors():
    with pytest.raises(ElementOutOfDomain):
        IntegerCharacter(1.0)(1.5)
    with pytest.raises(ElementOutOfDomain):
        Z2Character("sign")(2)
    with pytest.raises(ElementOutOfDomain):
        SymmetricCharacter(3)(Permutation.identity(4))
    with pytest.raises(ElementOutOfDomain):
        SymmetricCharacter(2)(1)
    with pytest.raises(InputError):
        SymmetricCharacter(3, "standard")  # S_n has only two 1-D characters


def test_parity_examples():
    assert parity(Permutation.identity(5)) == 1
    assert parity(Permutation.transposition(3, 0, 1)) == -1
    three_cycle = Permutation.from_cycle(3, (0, 1, 2))
    assert parity(three_cycle) == inversion_sign(three_cycle.images) == 1


def test_parity_matches_inversions_exhaustively():
    for n in range(1, 7):
        for images in itertools.permutations(range(n)):
            assert parity(Permutation(images)) == inversion_sign(images)


def test_permutation_validation():
    with pytest.raises(NotABijection):
        Permutation((0, 0, 1))
    with pytest.raises(NotABijection):
        Permutation((0, 3))


def test_permutation_algebra():
    p = Permutation((2, 0, 1, 3))
    q = Permutation((1, 0, 3, 2))
    assert (p * q)(0) == p(q(0))
    assert p * p.inverse() == Permutation.identity(4)


def test_assemble_examples():
    amps = [(w, complex(w + 1, -w)) for w in range(-2, 3)]
    assert assemble(IntegerCharacter(0.0), amps) == sum(a for _, a in amps)
    assert assemble(IntegerCharacter(1.1), [(3, 2 + 1j)]) == IntegerCharacter(1.1)(3) * (2 + 1j)
    a, b = 0.7 + 0.1j, -0.2 + 0.4j
    assert assemble(Z2Character("sign"), [(0, a), (1, b)]) == a - b


def test_assemble_order_is_the_given_order():
    terms = [(0, 1e16), (0, 1.0), (0, -1e16)]
    assert assemble(Z2Character(), terms) == (1e16 + 1.0) - 1e16


def _random_element(kind, rng, n=5):
    if kind in ("Z", "braid"):
        return int(rng.integers(-10**6, 10**6))
    if kind == "Z2":
        return int(rng.integers(0, 2))
    return Permutation(tuple(rng.permutation(n)))


def _variants():
    yield "Z", IntegerCharacter(0.0)
    yield "Z", IntegerCharacter(math.pi)
    yield "Z", IntegerCharacter(2.345)
    yield "Z2", Z2Character("trivial")
    yield "Z2", Z2Character("sign")
    for n in (1, 2, 5, 7):
        yield f"S{n}", SymmetricCharacter(n, "trivial")
        yield f"S{n}", SymmetricCharacter(n, "sign")
    yield "braid", BraidCharacter(0.0)
    yield "braid", BraidCharacter(math.pi)
    yield "braid", BraidCharacter(0.917)


@pytest.mark.parametrize("kind,chi", list(_variants()), ids=lambda v: str(v))
def test_multiplicative_and_unitary(kind, chi, rng):
    n = int(kind[1:]) if kind.startswith("S") else 0
    for _ in range(1000):
        g = _random_element("S" if n else kind, rng, n)
        h = _random_element("S" if n else kind, rng, n)
        gh = chi.compose(g, h)
        assert abs(chi(gh) - chi(g) * chi(h)) < 1e-12
        assert abs(abs(chi(g)) - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9), st.floats(0, 2 * math.pi, exclude_max=True))
def test_integer_character_property(g, h, delta):
    chi = IntegerCharacter(delta)
    assert abs(chi(g + h) - chi(g) * chi(h)) < 1e-12
    assert abs(abs(chi(g)) - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(6)), st.permutations(range(6)))
def test_parity_multiplicative_property(a, b):
    p, q = Permutation(tuple(a)), Permutation(tuple(b))
    assert parity(p * q) == parity(p) * parity(q)

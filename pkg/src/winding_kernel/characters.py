"""One-dimensional unitary characters of fundamental groups.

A total propagator on a multiply-connected space is assembled as a weighted
sum of partial amplitudes, one per homotopy class, with weights given by a
one-dimensional unitary representation of the fundamental group. This module
provides the characters used in the package:

========================  ========================  ==========================
group                     element type              value
========================  ========================  ==========================
integers (circle, ring)   ``int``                   ``exp(-1j * n * delta)``
Z2 (SO(3))                ``0`` or ``1``            ``1`` or ``+-1``
S_n (identical particles) ``Permutation``           ``1`` or ``sign(p)``
braid group, abelianised  ``int`` (net exchanges)   ``exp(1j * n * theta)``
========================  ========================  ==========================

The symmetric group has exactly two one-dimensional unitary representations,
which is why ``SymmetricCharacter.kind`` only admits ``"trivial"`` and
``"sign"``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ElementOutOfDomain, InputError, NotABijection

__all__ = [
    "Permutation",
    "parity",
    "IntegerCharacter",
    "Z2Character",
    "SymmetricCharacter",
    "BraidCharacter",
    "char_eval",
    "assemble",
]

TWO_PI = 2 * math.pi
_KINDS = ("trivial", "sign")


def _as_int(element) -> int:
    if isinstance(element, bool):
        raise ElementOutOfDomain(f"{element!r} is not an integer group element")
    try:
        n = int(element)
    except (TypeError, ValueError):
        raise ElementOutOfDomain(f"{element!r} is not an integer group element") from None
    if n != element and not hasattr(element, "__index__"):
        raise ElementOutOfDomain(f"{element!r} is not an integer group element")
    return n


def _phase(n: int, angle: float) -> complex:
    """``exp(1j * n * angle)`` with the product formed exactly.

    Rounding ``n * angle`` costs ``|n * angle| * 2**-53`` in the phase, which
    is visible for large class indices; the rounding remainder is applied as
    a second factor.
    """
    hi = n * angle
    if abs(n) < 1024:
        return cmath.exp(1j * hi)
    lo = float(Fraction(n) * Fraction(angle) - Fraction(hi))
    return cmath.exp(1j * hi) * cmath.exp(1j * lo)


def _check_kind(kind):
    if kind not in _KINDS:
        raise InputError(f"kind must be one of {_KINDS}, got {kind!r}")


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0, ..., n-1}``; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(len(imgs))):
            raise NotABijection(f"{self.images!r} is not a permutation of 0..{len(imgs) - 1}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        imgs = list(range(n))
        imgs[i], imgs[j] = imgs[j], imgs[i]
        return cls(tuple(imgs))

    @classmethod
    def from_cycle(cls, n: int, cycle: Sequence[int]) -> "Permutation":
        imgs = list(range(n))
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            imgs[a] = b
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) == self(other(i))``."""
        if self.n != other.n:
            raise ElementOutOfDomain("cannot compose permutations of different size")
        return Permutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        out = []
        for start in range(self.n):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i]
            out.append(tuple(cyc))
        return out


def parity(p: Permutation) -> int:
    """Sign of a permutation from its cycle decomposition: +1 even, -1 odd."""
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    transpositions = sum(len(c) - 1 for c in p.cycles())
    return -1 if transpositions % 2 else 1


@dataclass(frozen=True)
class IntegerCharacter:
    """Character of the integers, ``n -> exp(-i n delta)``."""

    delta: float = 0.0

    def __post_init__(self):
        d = float(self.delta)
        if not math.isfinite(d):
            raise InputError("delta must be finite")
        object.__setattr__(self, "delta", d % TWO_PI)

    def __call__(self, element) -> complex:
        n = _as_int(element)
        if n == 0 or self.delta == 0.0:
            return 1 + 0j
        return _phase(-n, self.delta)

    @staticmethod
    def compose(g, h):
        return _as_int(g) + _as_int(h)


@dataclass(frozen=True)
class Z2Character:
    """Character of Z2 = {0, 1}; ``sign`` maps the nontrivial element to -1."""

    kind: str = "trivial"

    def __post_init__(self):
        _check_kind(self.kind)

    def __call__(self, element) -> complex:
        if isinstance(element, bool) or element not in (0, 1):
            raise ElementOutOfDomain(f"{element!r} is not an element of Z2")
        if self.kind == "sign" and element == 1:
            return -1 + 0j
        return 1 + 0j

    @staticmethod
    def compose(g, h):
        return (int(g) + int(h)) % 2


@dataclass(frozen=True)
class SymmetricCharacter:
    """Bose (``trivial``) or Fermi (``sign``) character of S_n."""

    n: int
    kind: str = "trivial"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InputError(f"n must be a positive integer, got {self.n!r}")
        _check_kind(self.kind)

    def __call__(self, element) -> complex:
        if not isinstance(element, Permutation) or element.n != self.n:
            raise ElementOutOfDomain(f"{element!r} is not an element of S_{self.n}")
        if self.kind == "sign":
            return complex(parity(element))
        return 1 + 0j

    @staticmethod
    def compose(g, h):
        return g * h


@dataclass(frozen=True)
class BraidCharacter:
    """Abelianised braid-group character: each elementary exchange contributes ``exp(i theta)``.

    Group elements are the net exchange count (the image of a braid word in Z).
    """

    theta: float = 0.0

    def __post_init__(self):
        t = float(self.theta)
        if not math.isfinite(t):
            raise InputError("theta must be finite")
        object.__setattr__(self, "theta", t % TWO_PI)

    def __call__(self, element) -> complex:
        n = _as_int(element)
        if n == 0 or self.theta == 0.0:
            return 1 + 0j
        return _phase(n, self.theta)

    @staticmethod
    def compose(g, h):
        return _as_int(g) + _as_int(h)


def char_eval(rep, element) -> complex:
    return rep(element)


def assemble(rep, partials: Iterable) -> complex:
    """Character-weighted sum of class-partial amplitudes.

    Parameters
    ----------
    rep : character
        Any character object of this module.
    partials : iterable of (element, amplitude)
        Truncated class sum. Terms are accumulated strictly in the given
        order so the floating-point result is reproducible.

    Returns
    -------
    complex
    """
    total = 0j
    for element, amp in partials:
        total += rep(element) * amp
    return total

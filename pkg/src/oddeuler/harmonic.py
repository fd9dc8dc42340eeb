"""Harmonic-type prefix sums, exact and streamed.

Two families, one over all integers and one over odd integers only:

    H(n, k) = sum_{i<=k} 1/i^n          (parity 'even', meaning full range)
    h(n, k) = sum_{i<=k} 1/(2i-1)^n     (parity 'odd')

Both are empty (zero) at k = 0 by convention, and the two are linked by
the exact split H(n, 2k) = h(n, k) + 2^{-n} H(n, k), which is also how
every odd-kind asymptotic expansion here is produced from the even one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .numerics import HighFloat, Rational, bernoulli, constant

_EXACT_LIMIT = 10 ** 5

_PARITIES = ("even", "odd")


@dataclass(frozen=True)
class HarmonicKind:
    """One prefix-sum family: parity ('even' full / 'odd') and order n >= 1."""

    parity: str
    order: int

    def __post_init__(self):
        if self.parity not in _PARITIES:
            raise ValueError(f"parity must be one of {_PARITIES}, got {self.parity!r}")
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")

    @staticmethod
    def even(n: int) -> "HarmonicKind":
        return HarmonicKind("even", n)

    @staticmethod
    def odd(n: int) -> "HarmonicKind":
        return HarmonicKind("odd", n)

    @property
    def label(self) -> str:
        return ("H" if self.parity == "even" else "h") + str(self.order)

    @staticmethod
    def from_label(text: str) -> "HarmonicKind":
        if len(text) >= 2 and text[0] in "hH" and text[1:].isdigit():
            return HarmonicKind("even" if text[0] == "H" else "odd", int(text[1:]))
        raise ValueError(f"not a harmonic label: {text!r}")

    def term(self, i: int) -> Fraction:
        base = i if self.parity == "even" else 2 * i - 1
        return Fraction(1, base ** self.order)


# ---- exact prefixes ------------------------------------------------------

_prefix_cache: dict[HarmonicKind, list[Fraction]] = {}


def harmonic_exact(kind: HarmonicKind, k: int) -> Rational:
    """Exact prefix value as a Fraction; prefixes are memoised per kind.

    >>> harmonic_exact(HarmonicKind.even(1), 4)
    Fraction(25, 12)
    >>> harmonic_exact(HarmonicKind.odd(1), 3)
    Fraction(23, 15)
    >>> harmonic_exact(HarmonicKind.odd(2), 2)
    Fraction(10, 9)
    """
    if k == 0:
        raise ValueError("empty sum: exact prefix is zero at k = 0 by convention, "
                         "pass k >= 1")
    if k < 0:
        raise ValueError(f"k must be positive, got {k}")
    if k > _EXACT_LIMIT:
        raise ValueError(f"exact rationals are capped at k = {_EXACT_LIMIT}; "
                         "use PrefixStream for larger k")
    prefix = _prefix_cache.setdefault(kind, [Fraction(0)])
    while len(prefix) <= k:
        prefix.append(prefix[-1] + kind.term(len(prefix)))
    return prefix[k]


def even_odd_split(n: int, k: int) -> tuple[Rational, Rational]:
    """Both sides of H(n, 2k) = h(n, k) + 2^{-n} H(n, k), exactly.

    Returns (lhs, rhs); the two Fractions are equal for every n, k.
    """
    lhs = harmonic_exact(HarmonicKind.even(n), 2 * k)
    rhs = harmonic_exact(HarmonicKind.odd(n), k) + \
        Fraction(1, 2 ** n) * harmonic_exact(HarmonicKind.even(n), k)
    return lhs, rhs


# ---- streamed prefixes ---------------------------------------------------


class PrefixStream:
    """Incrementally updated float prefixes for several kinds at once.

    Values live at a fixed decimal precision chosen at construction; one
    advance() appends the k-th term of every kind.  The stream never
    rounds twice: each increment is computed and added at the working
    precision.
    """

    def __init__(self, kinds: tuple[HarmonicKind, ...], digits: int):
        if digits < 10:
            raise ValueError("precision too low: digits must be >= 10")
        self.kinds = tuple(kinds)
        self.digits = digits
        self._k = 0
        with mp.workdps(digits):
            self._vals = [mp.mpf(0) for _ in self.kinds]

    @property
    def k(self) -> int:
        return self._k

    def advance(self) -> int:
        self._k += 1
        i = self._k
        with mp.workdps(self.digits):
            for idx, kind in enumerate(self.kinds):
                base = i if kind.parity == "even" else 2 * i - 1
                self._vals[idx] += mp.mpf(base) ** (-kind.order)
        return self._k

    def value(self, kind: HarmonicKind) -> HighFloat:
        return self._vals[self.kinds.index(kind)]

    def values(self) -> tuple[HighFloat, ...]:
        return tuple(self._vals)


# ---- asymptotic tails ----------------------------------------------------


def _even_pieces(n: int, x: HighFloat) -> list:
    # For n >= 2 the pieces add up to the tail zeta(n) - H(n, x); for
    # n = 1 they add up to H(1, x) itself (there is no finite limit).
    if n == 1:
        g = constant("euler_gamma", mp.mp.dps)
        out = [mp.log(x), g, 1 / (2 * x)]
        for r in (1, 2, 3):
            b = bernoulli(2 * r)
            out.append(-mp.mpf(b.numerator) / (b.denominator * 2 * r) * x ** (-2 * r))
        return out
    out = [x ** (1 - n) / (n - 1), -(x ** (-n)) / 2]
    poch = n
    fact = 2
    for r in (1, 2, 3, 4):
        if r > 1:
            poch *= (n + 2 * r - 3) * (n + 2 * r - 2)
            fact *= (2 * r - 1) * (2 * r)
        b = bernoulli(2 * r)
        out.append(mp.mpf(b.numerator * poch) / (b.denominator * fact) * x ** (1 - n - 2 * r))
    return out


def tail_expansion(kind: HarmonicKind, k: int, terms: int, digits: int = 40) -> HighFloat:
    """Truncated asymptotic expansion with `terms` leading pieces.

    Order 1 returns the expansion of the prefix value itself; order >= 2
    returns the expansion of the remaining tail (limit minus prefix).
    Odd kinds are always assembled from the even expansion through the
    split identity, never expanded independently.

    >>> v = tail_expansion(HarmonicKind.even(2), 10, 3)
    >>> abs(v - mp.mpf('0.0951666666666666')) < 1e-15
    True
    """
    if k < 10:
        raise ValueError(f"k must be at least 10 for the asymptotic tail, got {k}")
    if not 1 <= terms <= 6:
        raise ValueError(f"terms must be between 1 and 6, got {terms}")
    if digits < 10:
        raise ValueError("precision too low: digits must be >= 10")
    n = kind.order
    with mp.workdps(digits + 5):
        if kind.parity == "even":
            pieces = _even_pieces(n, mp.mpf(k))[:terms]
        else:
            at_2k = _even_pieces(n, mp.mpf(2 * k))
            at_k = _even_pieces(n, mp.mpf(k))
            scale = mp.mpf(2) ** (-n)
            pieces = [a - scale * b for a, b in zip(at_2k, at_k)][:terms]
        total = mp.fsum(pieces)
    with mp.workdps(digits):
        return +total

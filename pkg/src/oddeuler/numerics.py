"""Exact rationals, precision-tagged floats, and self-contained constants.

Two number kinds flow through the rest of the package: `Rational` (exact,
never rounded) and mpmath floats created at an explicit decimal precision.
The constants zeta(n), ln 2 and Euler's gamma are computed here from
truncated series with Bernoulli-number corrections rather than pulled from
a library table, so the test suite can cross-check them against a second,
independent evaluation route.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

# Exact arithmetic is deliberately the standard library type: lowest terms
# and positive denominators are guaranteed by construction.
Rational = Fraction

# High precision floats are mpmath floats.  Every public function that
# returns one takes an explicit decimal digit count; nothing in this
# package reads or mutates the global mpmath precision outside a workdps
# block.
HighFloat = mp.mpf

_GUARD = 10
_MIN_DIGITS = 10


# ---- Bernoulli numbers -------------------------------------------------

_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_1 = -1/2 convention).

    >>> bernoulli(2)
    Fraction(1, 6)
    >>> bernoulli(12)
    Fraction(-691, 2730)
    """
    if n < 0:
        raise ValueError("Bernoulli index must be nonnegative")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        if m % 2 == 1:
            _bernoulli_cache.append(Fraction(0))
            continue
        # sum_{j=0}^{m} C(m+1, j) B_j = 0 solved for B_m
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[n]


# ---- constants from scratch --------------------------------------------


def _require_digits(digits: int) -> None:
    if digits < _MIN_DIGITS:
        raise ValueError(f"precision too low: digits must be >= {_MIN_DIGITS}, got {digits}")


def _zeta_series(n: int, dps: int) -> mp.mpf:
    # Truncated sum plus integral, half-term and Bernoulli corrections.
    # The correction loop runs until the next term drops below the target,
    # with at least four corrections applied.
    with mp.workdps(dps):
        big_k = max(100, 2 * dps)
        target = mp.mpf(10) ** (-(dps + 2))
        partial = mp.mpf(0)
        for k in range(big_k, 0, -1):
            partial += mp.mpf(k) ** (-n)
        kf = mp.mpf(big_k)
        total = partial + kf ** (1 - n) / (n - 1) - kf ** (-n) / 2
        poch = n  # (n)_{2r-1} as an exact integer
        fact = 2  # (2r)!
        r = 0
        prev = mp.inf
        while True:
            r += 1
            if r > 1:
                poch *= (n + 2 * r - 3) * (n + 2 * r - 2)
                fact *= (2 * r - 1) * (2 * r)
            b = bernoulli(2 * r)
            term = (mp.mpf(b.numerator * poch) / (b.denominator * fact)) * kf ** (1 - n - 2 * r)
            if abs(term) >= prev:
                raise ArithmeticError("correction terms stopped decreasing")
            total += term
            prev = abs(term)
            if r >= 4 and abs(term) < target:
                break
        return total


def _ln2_series(dps: int) -> mp.mpf:
    # ln 2 = 2 atanh(1/3); the ratio test gives one digit per ~0.95 terms.
    with mp.workdps(dps):
        target = mp.mpf(10) ** (-(dps + 2))
        x2 = mp.mpf(1) / 9
        power = mp.mpf(1) / 3
        total = mp.mpf(0)
        j = 0
        while True:
            term = power / (2 * j + 1)
            total += term
            if term < target:
                break
            power *= x2
            j += 1
        return 2 * total


def _euler_gamma_series(dps: int) -> mp.mpf:
    # gamma = H_K - ln K - 1/(2K) + sum_r B_{2r}/(2r) K^{-2r} with K a
    # power of two, so ln K reduces to an integer multiple of ln 2.
    with mp.workdps(dps):
        a = max(7, int(math.ceil(math.log2(2 * dps))))
        big_k = 2 ** a
        target = mp.mpf(10) ** (-(dps + 2))
        h = mp.mpf(0)
        for k in range(big_k, 0, -1):
            h += mp.mpf(1) / k
        kf = mp.mpf(big_k)
        total = h - a * _ln2_series(dps) - 1 / (2 * kf)
        prev = mp.inf
        r = 0
        while True:
            r += 1
            b = bernoulli(2 * r)
            term = (mp.mpf(b.numerator) / (b.denominator * 2 * r)) * kf ** (-2 * r)
            if abs(term) >= prev:
                raise ArithmeticError("correction terms stopped decreasing")
            total += term
            prev = abs(term)
            if r >= 4 and abs(term) < target:
                break
        return total


@lru_cache(maxsize=None)
def _constant_cached(name: str, digits: int) -> mp.mpf:
    dps = digits + _GUARD
    if name == "ln2":
        value = _ln2_series(dps)
    elif name == "euler_gamma":
        value = _euler_gamma_series(dps)
    elif name.startswith("zeta(") and name.endswith(")"):
        inner = name[5:-1]
        try:
            n = int(inner)
        except ValueError:
            raise ValueError(f"unknown constant {name!r}") from None
        if n == 1:
            raise ValueError("zeta(1) divergent")
        if n < 1:
            raise ValueError(f"zeta argument must be >= 2, got {n}")
        value = _zeta_series(n, dps)
    else:
        raise ValueError(f"unknown constant {name!r}")
    with mp.workdps(digits):
        return +value


def constant(name: str, digits: int) -> HighFloat:
    """Named constant at the requested decimal precision.

    Accepted names: ``zeta(n)`` for integer n >= 2, ``ln2``,
    ``euler_gamma``.  Asking for ``zeta(1)`` raises (divergent), as does
    any request below 10 digits.

    >>> mp.nstr(constant("zeta(2)", 17), 17)
    '1.6449340668482264'
    >>> mp.nstr(constant("ln2", 17), 17)
    '0.69314718055994531'
    """
    _require_digits(digits)
    return _constant_cached(name, digits)


class ConstantsTable:
    """Lazy cache of the constants needed to evaluate closed forms.

    All values share one digit count fixed at construction.  The table is
    cheap to build; individual constants are computed on first use and
    memoised process-wide.
    """

    def __init__(self, digits: int = 40):
        _require_digits(digits)
        self.digits = digits

    def zeta(self, n: int) -> HighFloat:
        return constant(f"zeta({n})", self.digits)

    @property
    def ln2(self) -> HighFloat:
        return constant("ln2", self.digits)

    @property
    def euler_gamma(self) -> HighFloat:
        return constant("euler_gamma", self.digits)

    def lam(self, n: int) -> HighFloat:
        """Odd-denominator zeta value sum over (2k-1)^{-n}, n >= 2.

        Kept as a derived quantity: (1 - 2^{-n}) zeta(n).  It is never a
        standalone symbol anywhere in the package.
        """
        if n < 2:
            raise ValueError("lam requires n >= 2")
        with mp.workdps(self.digits):
            return (1 - mp.mpf(2) ** (-n)) * self.zeta(n)

    def __repr__(self) -> str:
        return f"ConstantsTable(digits={self.digits})"

"""Verification toolkit for Euler sums built on odd harmonic numbers.

The package evaluates infinite sums of products of harmonic-type prefix
sums against denominators k^p (2k-1)^q, carries closed forms as exact
polynomials in zeta values and ln 2, and checks a catalog of identities
numerically at configurable precision.
"""

__version__ = "0.1.0"

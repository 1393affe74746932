"""Exact scalar fields: the rationals and prime fields.

A Field object canonicalizes scalars (``promote``), parses and prints them,
and supplies the array-level arithmetic kernels that ``linalg`` builds on.
Rational scalars are ``fractions.Fraction`` values (plain ints are accepted
as exact rationals); prime-field scalars are ints reduced to [0, p).  All
matrix data lives in numpy arrays: dtype object over the rationals, int64
over small prime fields.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import FieldMismatchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# int64 row operations stay exact as long as p*p*rows fits comfortably
_INT64_PRIME_LIMIT = 1 << 20


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of RationalField and PrimeField."""

    name = "?"

    def promote(self, x):
        raise NotImplementedError

    def parse_scalar(self, text):
        """Parse an integer or a fraction ``a/b`` into a canonical scalar."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar {text!r}: {exc}") from None
        return self.promote(value)

    def scalar_str(self, x):
        return str(x)

    # array layer ------------------------------------------------------

    def array(self, rows):
        """Build a canonical 2-D array from nested scalar-like data."""
        data = [[self.promote(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("rows of unequal length")
        a = np.empty((len(data), ncols), dtype=self.dtype)
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                a[i, j] = x
        return a

    def zeros(self, r, c):
        return np.zeros((r, c), dtype=self.dtype)

    def identity(self, n):
        return np.identity(n, dtype=self.dtype)

    def post(self, a):
        """Reduce an array produced by ring operations to canonical form."""
        return a

    def rref(self, a):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class RationalField(Field):
    """The field of rational numbers with arbitrary-precision arithmetic."""

    name = "Q"
    dtype = object
    zero = Fraction(0)
    one = Fraction(1)

    def promote(self, x):
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Fraction(x)
        raise ValueError(f"not an exact rational: {x!r} of type {type(x).__name__}")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / x

    def rref(self, a):
        return _rref_rational(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


class PrimeField(Field):
    """The prime field of integers mod p; p is validated to be prime."""

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p!r} is not a prime number")
        self.p = p
        self.name = f"F{p}"
        self.dtype = np.int64 if p < _INT64_PRIME_LIMIT else object
        self.zero = 0
        self.one = 1 % p

    def promote(self, x):
        p = self.p
        if isinstance(x, bool):
            raise ValueError(f"not an exact scalar: {x!r}")
        if isinstance(x, (int, np.integer)):
            return int(x) % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise FieldMismatchError(
                    f"denominator of {x} vanishes mod {p}; not representable in {self.name}"
                )
            return x.numerator * pow(x.denominator, -1, p) % p
        raise ValueError(f"not an exact scalar: {x!r} of type {type(x).__name__}")

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def post(self, a):
        return a % self.p

    def rref(self, a):
        return _rref_mod(a, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


QQ = RationalField()

_prime_fields = {}


def GF(p):
    """The prime field with p elements (cached, so GF(p) is GF(p))."""
    field = _prime_fields.get(p)
    if field is None:
        field = _prime_fields[p] = PrimeField(p)
    return field


def _rref_rational(a):
    """Reduced row echelon form over the rationals; returns (array, pivot cols).

    Row updates go through numpy outer products so the per-entry Fraction
    work runs in C loops; pivots with unit numerator and denominator are
    preferred to limit fraction growth.
    """
    a = np.array(a, dtype=object)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        pick = int(nz[0])
        for k in nz:
            v = a[r + int(k), c]
            if v == 1 or v == -1:
                pick = int(k)
                break
        i = r + pick
        if i != r:
            a[[r, i]] = a[[i, r]]
        pv = a[r, c]
        if pv != 1:
            a[r] = a[r] * (Fraction(1) / Fraction(pv))
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col != 0)
        if idx.size:
            a[idx] = a[idx] - np.outer(col[idx], a[r])
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def _rref_mod(a, p):
    """Reduced row echelon form mod p; returns (array, pivot cols)."""
    a = np.array(a) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = a[r] * inv % p
        col = a[:, c].copy()
        col[r] = 0
        idx = np.flatnonzero(col)
        if idx.size:
            a[idx] = (a[idx] - np.outer(col[idx], a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)

"""Exact scalar domains: arbitrary-precision rationals and prime fields.

Rationals are gmpy2's ``mpq`` (always reduced, positive denominator, and
much faster than stdlib Fraction in the polynomial inner loops); they
interoperate freely with ints and ``fractions.Fraction``.  Prime-field
elements are a small wrapper around ints mod p with the same operator
surface, so polynomials and series can be generic over either domain.
"""

from __future__ import annotations

import numbers
from math import factorial

from gmpy2 import mpq

from .errors import DenominatorDivisibleByP, NonUnitConstantTerm

Rational = mpq

# deterministic Miller-Rabin witnesses, valid for all n < 2^64
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FpElem:
    """An element of F_p, reduced to [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise ValueError("mixed moduli %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return FpElem(other, self.p)
        if isinstance(other, numbers.Rational):
            return reduce_mod_p(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value - other.value, self.p)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(other.value - self.value, self.p)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElem(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return FpElem(-self.value, self.p)

    def __pow__(self, n: int):
        return FpElem(pow(self.value, n, self.p), self.p)

    def inverse(self) -> "FpElem":
        if self.value == 0:
            raise ZeroDivisionError("inverse of 0 in F_%d" % self.p)
        return FpElem(pow(self.value, self.p - 2, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "%d mod %d" % (self.value, self.p)


class RationalField:
    """Domain descriptor for Q.  A single shared instance is exported as QQ."""

    char = 0

    zero = mpq(0)
    one = mpq(1)

    @staticmethod
    def from_int(n: int) -> mpq:
        return mpq(n)

    @staticmethod
    def sample(rng) -> mpq:
        return mpq(rng.randint(-9, 9), rng.randint(1, 9))

    @staticmethod
    def invert(x: mpq) -> mpq:
        if x == 0:
            raise NonUnitConstantTerm("0 is not invertible in Q")
        return 1 / x

    @staticmethod
    def format(x) -> str:
        return str(x)

    @staticmethod
    def parse(text: str) -> mpq:
        return mpq(text)

    def __repr__(self):
        return "QQ"


QQ = RationalField()

_gf_cache: dict[int, "PrimeField"] = {}


class PrimeField:
    """Domain descriptor for F_p.  Use the GF(p) factory to construct."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.char = p
        self.zero = FpElem(0, p)
        self.one = FpElem(1, p)

    def from_int(self, n: int) -> FpElem:
        return FpElem(n, self.p)

    def sample(self, rng) -> FpElem:
        return FpElem(rng.randrange(self.p), self.p)

    def invert(self, x: FpElem) -> FpElem:
        if x.value == 0:
            raise NonUnitConstantTerm("0 is not invertible in F_%d" % self.p)
        return x.inverse()

    def format(self, x: FpElem) -> str:
        return "%d mod %d" % (x.value, x.p)

    def parse(self, text: str) -> FpElem:
        v, _, p = text.partition(" mod ")
        return FpElem(int(v), int(p))

    def __repr__(self):
        return "GF(%d)" % self.p


def GF(p: int) -> PrimeField:
    field = _gf_cache.get(p)
    if field is None:
        field = _gf_cache[p] = PrimeField(p)
    return field


def gen_binomial(a, k: int) -> mpq:
    """Generalized binomial coefficient prod_{i<k} (a - i) / k!, exact."""
    a = mpq(a)
    num = mpq(1)
    for i in range(k):
        num *= a - i
    return num / factorial(k)


def denom_is_2_power(q) -> bool:
    """True iff the reduced denominator of q is a power of 2 (incl. 1)."""
    d = int(q.denominator)
    return d & (d - 1) == 0


def reduce_mod_p(q, p: int) -> FpElem:
    """Image of the rational q in F_p; requires p to not divide denom(q)."""
    num, den = int(q.numerator), int(q.denominator)
    if den % p == 0:
        raise DenominatorDivisibleByP(
            "cannot reduce %s mod %d: denominator divisible by %d" % (q, p, p)
        )
    return FpElem(num * pow(den % p, p - 2, p), p)


def format_scalar(x) -> str:
    """Serialize a scalar: "num/den" for rationals, "v mod p" for F_p."""
    if isinstance(x, FpElem):
        return "%d mod %d" % (x.value, x.p)
    return str(x)


def parse_scalar(text: str, domain):
    return domain.parse(text)

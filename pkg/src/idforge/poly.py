"""Dense univariate polynomials over an exact scalar domain.

Coefficients are stored lowest degree first with trailing zeros trimmed;
the zero polynomial has an empty coefficient list and degree -inf.
"""

from __future__ import annotations

from .errors import NonUnitConstantTerm
from .scalars import format_scalar

NEG_INF = float("-inf")


class Poly:
    __slots__ = ("dom", "coeffs")

    def __init__(self, dom, coeffs):
        while coeffs and not coeffs[-1]:
            coeffs = coeffs[:-1]
        self.dom = dom
        self.coeffs = list(coeffs)

    @classmethod
    def zero(cls, dom):
        return cls(dom, [])

    @classmethod
    def one(cls, dom):
        return cls(dom, [dom.one])

    @classmethod
    def const(cls, dom, c):
        return cls(dom, [c])

    @classmethod
    def var(cls, dom):
        """The polynomial t."""
        return cls(dom, [dom.zero, dom.one])

    @classmethod
    def from_ints(cls, dom, ints):
        return cls(dom, [dom.from_int(n) for n in ints])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.dom.zero

    def __add__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.dom, out)

    def __sub__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = list(a) + [self.dom.zero] * (len(b) - len(a))
        for i, c in enumerate(b):
            out[i] = out[i] - c
        return Poly(self.dom, out)

    def __neg__(self):
        return Poly(self.dom, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.dom)
        out = [self.dom.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
        return Poly(self.dom, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        if not c:
            return Poly.zero(self.dom)
        return Poly(self.dom, [a * c for a in self.coeffs])

    def __pow__(self, n: int):
        out = Poly.one(self.dom)
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by t^k."""
        if not self.coeffs:
            return self
        return Poly(self.dom, [self.dom.zero] * k + self.coeffs)

    def eval(self, x):
        """Horner evaluation at a scalar of the same domain."""
        if not self.coeffs:
            return self.dom.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(
            self.dom,
            [self.coeffs[i] * self.dom.from_int(i) for i in range(1, len(self.coeffs))],
        )

    def map_coeffs(self, fn, dom=None):
        return Poly(dom if dom is not None else self.dom, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def to_json(self):
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, dom, data):
        return cls(dom, [dom.parse(c) for c in data])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = format_scalar(c)
            if i == 0:
                parts.append(cs)
            else:
                mono = "t" if i == 1 else "t^%d" % i
                parts.append(mono if cs == "1" else "%s*%s" % (cs, mono))
        return " + ".join(parts)


class PolyRing:
    """Ring descriptor so series can take Poly coefficients."""

    def __init__(self, dom, sample_degree: int = 4):
        self.dom = dom
        self.char = dom.char
        self.zero = Poly.zero(dom)
        self.one = Poly.one(dom)
        self.sample_degree = sample_degree

    def from_int(self, n: int) -> Poly:
        return Poly.const(self.dom, self.dom.from_int(n))

    def sample(self, rng) -> Poly:
        deg = rng.randint(0, self.sample_degree)
        return Poly(self.dom, [self.dom.sample(rng) for _ in range(deg + 1)])

    def invert(self, f: Poly) -> Poly:
        if f.degree != 0:
            raise NonUnitConstantTerm("%r is not a unit of %r" % (f, self))
        return Poly(self.dom, [self.dom.invert(f.coeffs[0])])

    def __repr__(self):
        return "%r[t]" % self.dom

"""Truncated power series over an arbitrary coefficient ring.

Every series carries its precision explicitly: ``coeffs`` has length
``prec + 1`` and nothing beyond index ``prec`` is ever claimed.  Binary
operations truncate to the minimum of the operand precisions, and equality
compares coefficients up to that same minimum, so silent precision loss
cannot produce a wrong answer, only a shorter one.

The coefficient ring is a descriptor object providing ``zero``, ``one``,
``from_int``, ``char``, and ``invert`` (which raises NonUnitConstantTerm
on non-units); scalar domains, PolyRing, and the curve rings all qualify.
"""

from __future__ import annotations

from math import comb

from .errors import (
    CharTwo,
    ConstantTermNotOne,
    CrossCheckMismatch,
    NonUnitConstantTerm,
    NotASimpleRoot,
    PositiveCharacteristic,
)
from .poly import Poly, PolyRing
from .scalars import format_scalar


class TruncSeries:
    __slots__ = ("ring", "coeffs", "prec", "var")

    def __init__(self, ring, coeffs, prec=None, var="t"):
        if prec is None:
            prec = len(coeffs) - 1
        if len(coeffs) != prec + 1:
            raise ValueError("need %d coefficients, got %d" % (prec + 1, len(coeffs)))
        self.ring = ring
        self.coeffs = list(coeffs)
        self.prec = prec
        self.var = var

    @classmethod
    def zero(cls, ring, prec, var="t"):
        return cls(ring, [ring.zero] * (prec + 1), prec, var)

    @classmethod
    def constant(cls, ring, value, prec, var="t"):
        return cls(ring, [value] + [ring.zero] * prec, prec, var)

    @classmethod
    def one(cls, ring, prec, var="t"):
        return cls.constant(ring, ring.one, prec, var)

    @classmethod
    def variable(cls, ring, prec, var="t"):
        """The series for the formal variable itself."""
        c = [ring.zero] * (prec + 1)
        if prec >= 1:
            c[1] = ring.one
        return cls(ring, c, prec, var)

    @classmethod
    def from_poly(cls, ring, poly: Poly, prec, var="t"):
        c = [poly[i] for i in range(prec + 1)]
        return cls(ring, c, prec, var)

    def __getitem__(self, n: int):
        if n > self.prec:
            raise IndexError("coefficient %d beyond precision %d" % (n, self.prec))
        return self.coeffs[n]

    def constant_term(self):
        return self.coeffs[0]

    def order(self):
        """Index of the first nonzero coefficient, or prec + 1 if none seen."""
        zero = self.ring.zero
        for i, c in enumerate(self.coeffs):
            if not (c == zero):
                return i
        return self.prec + 1

    def truncate(self, prec: int) -> "TruncSeries":
        if prec > self.prec:
            raise ValueError("cannot extend precision %d to %d" % (self.prec, prec))
        if prec == self.prec:
            return self
        return TruncSeries(self.ring, self.coeffs[: prec + 1], prec, self.var)

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        return TruncSeries(
            self.ring,
            [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)],
            n,
            self.var,
        )

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        return TruncSeries(
            self.ring,
            [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)],
            n,
            self.var,
        )

    def __neg__(self):
        return TruncSeries(self.ring, [-c for c in self.coeffs], self.prec, self.var)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        zero = self.ring.zero
        # rings with costly addition (denominator alignment) can sum each
        # output index in one pass instead of pairwise
        sum_terms = getattr(self.ring, "sum_terms", None)
        if sum_terms is not None:
            buckets = [[] for _ in range(n + 1)]
            for i, a in enumerate(self.coeffs[: n + 1]):
                if a == zero:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not (b == zero):
                        buckets[i + j].append(a * b)
            out = [sum_terms(bucket) if bucket else zero for bucket in buckets]
        else:
            out = [zero] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if a == zero:
                    continue
                for j in range(n + 1 - i):
                    b = other.coeffs[j]
                    if not (b == zero):
                        out[i + j] += a * b
        return TruncSeries(self.ring, out, n, self.var)

    def scale(self, c) -> "TruncSeries":
        """Multiply every coefficient by the scalar c."""
        if self.coeffs and hasattr(self.coeffs[0], "scale"):
            out = [a.scale(c) for a in self.coeffs]
        else:
            out = [a * c for a in self.coeffs]
        return TruncSeries(self.ring, out, self.prec, self.var)

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by var^k, keeping the precision."""
        c = [self.ring.zero] * k + self.coeffs
        return TruncSeries(self.ring, c[: self.prec + 1], self.prec, self.var)

    def __pow__(self, n: int):
        out = TruncSeries.one(self.ring, self.prec, self.var)
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert(self, const_inverse=None) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a unit.

        ``const_inverse`` short-circuits the unit test when the caller
        already knows the inverse of the constant term.
        """
        if const_inverse is None:
            const_inverse = self.ring.invert(self.coeffs[0])
        n = self.prec
        out = [const_inverse] + [self.ring.zero] * n
        for k in range(1, n + 1):
            acc = self.ring.zero
            for i in range(1, k + 1):
                acc += self.coeffs[i] * out[k - i]
            out[k] = -(const_inverse * acc)
        return TruncSeries(self.ring, out, n, self.var)

    def derivative(self) -> "TruncSeries":
        if self.prec == 0:
            return TruncSeries(self.ring, [self.ring.zero], 0, self.var)
        c = [
            self.coeffs[i + 1] * self.ring.from_int(i + 1) for i in range(self.prec)
        ]
        return TruncSeries(self.ring, c, self.prec - 1, self.var)

    def integrate(self) -> "TruncSeries":
        """Antiderivative with constant term 0; precision grows by one."""
        if self.ring.char != 0:
            raise PositiveCharacteristic("integration divides by arbitrary integers")
        c = [self.ring.zero] + [
            self.coeffs[i] / self.ring.from_int(i + 1) for i in range(self.prec + 1)
        ]
        return TruncSeries(self.ring, c, self.prec + 1, self.var)

    def map_coeffs(self, fn, ring=None):
        return TruncSeries(
            ring if ring is not None else self.ring,
            [fn(c) for c in self.coeffs],
            self.prec,
            self.var,
        )

    def __eq__(self, other):
        """Coefficient-wise equality up to the minimum precision."""
        if not isinstance(other, TruncSeries):
            return NotImplemented
        n = min(self.prec, other.prec)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    __hash__ = None

    def is_zero(self) -> bool:
        zero = self.ring.zero
        return all(c == zero for c in self.coeffs)

    def to_json(self):
        return {
            "var": self.var,
            "prec": self.prec,
            "coeffs": [_coeff_json(c) for c in self.coeffs],
        }

    def __repr__(self):
        terms = []
        zero = self.ring.zero
        for i, c in enumerate(self.coeffs):
            if c == zero:
                continue
            if len(terms) >= 6:
                terms.append("...")
                break
            mono = "" if i == 0 else (self.var if i == 1 else "%s^%d" % (self.var, i))
            cs = repr(c) if not hasattr(c, "numerator") else format_scalar(c)
            terms.append(("(%s)%s" % (cs, mono)) if mono else "(%s)" % cs)
        body = " + ".join(terms) if terms else "0"
        return "%s + O(%s^%d)" % (body, self.var, self.prec + 1)


def _coeff_json(c):
    if hasattr(c, "to_json"):
        return c.to_json()
    return format_scalar(c)


class SeriesRing:
    """Ring descriptor for series coefficients (series of series, etc.)."""

    def __init__(self, inner, default_prec: int, var="t"):
        self.inner = inner
        self.char = inner.char
        self.default_prec = default_prec
        self.var = var
        self.zero = TruncSeries.zero(inner, default_prec, var)
        self.one = TruncSeries.one(inner, default_prec, var)

    def from_int(self, n: int) -> TruncSeries:
        return TruncSeries.constant(self.inner, self.inner.from_int(n), self.default_prec, self.var)

    def invert(self, f: TruncSeries) -> TruncSeries:
        return f.invert()

    def sample(self, rng) -> TruncSeries:
        return TruncSeries(
            self.inner,
            [self.inner.sample(rng) for _ in range(self.default_prec + 1)],
            self.default_prec,
            self.var,
        )

    def __repr__(self):
        return "%r[[%s]]/prec %d" % (self.inner, self.var, self.default_prec)


class BiTruncSeries:
    """A rectangular truncated series in two variables (U, T).

    ``grid[i][j]`` is the coefficient of U^i T^j; truncation is tracked per
    variable.  Used for the two paths of the iteration-rule diagram.
    """

    __slots__ = ("ring", "grid", "prec_u", "prec_t")

    def __init__(self, ring, grid, prec_u=None, prec_t=None):
        if prec_u is None:
            prec_u = len(grid) - 1
        if prec_t is None:
            prec_t = len(grid[0]) - 1
        if len(grid) != prec_u + 1 or any(len(row) != prec_t + 1 for row in grid):
            raise ValueError("grid is not (%d+1)x(%d+1)" % (prec_u, prec_t))
        self.ring = ring
        self.grid = [list(row) for row in grid]
        self.prec_u = prec_u
        self.prec_t = prec_t

    @classmethod
    def zero(cls, ring, prec_u, prec_t):
        grid = [[ring.zero] * (prec_t + 1) for _ in range(prec_u + 1)]
        return cls(ring, grid, prec_u, prec_t)

    def __getitem__(self, ij):
        i, j = ij
        return self.grid[i][j]

    def __eq__(self, other):
        if not isinstance(other, BiTruncSeries):
            return NotImplemented
        nu = min(self.prec_u, other.prec_u)
        nt = min(self.prec_t, other.prec_t)
        return all(
            self.grid[i][j] == other.grid[i][j]
            for i in range(nu + 1)
            for j in range(nt + 1)
        )

    __hash__ = None

    def first_mismatch(self, other):
        """The smallest (i, j) where the grids differ, or None."""
        nu = min(self.prec_u, other.prec_u)
        nt = min(self.prec_t, other.prec_t)
        for total in range(nu + nt + 1):
            for i in range(min(total, nu) + 1):
                j = total - i
                if j > nt:
                    continue
                if not (self.grid[i][j] == other.grid[i][j]):
                    return (i, j)
        return None


def compose_poly(p: Poly, x: TruncSeries) -> TruncSeries:
    """p(x) for a scalar polynomial p and a series x over the same domain."""
    ring = x.ring
    acc = TruncSeries.constant(ring, p[len(p.coeffs) - 1] if p.coeffs else ring.zero, x.prec, x.var)
    for i in range(len(p.coeffs) - 2, -1, -1):
        acc = acc * x + TruncSeries.constant(ring, p.coeffs[i], x.prec, x.var)
    return acc


def shift_substitute(f, prec: int, var="T"):
    """Expand f(t + T) by the binomial theorem, truncated at T^prec.

    For a Poly input the result is a series over the polynomial ring whose
    T^n coefficient is sum_i a_i C(i, n) t^(i-n).  For a TruncSeries input
    the T^n coefficient is a series in t of precision f.prec - n: shifting
    cannot create knowledge beyond the input truncation.
    """
    if isinstance(f, Poly):
        dom = f.dom
        ring = PolyRing(dom)
        out = []
        for n in range(prec + 1):
            c = [f[i] * dom.from_int(comb(i, n)) for i in range(n, len(f.coeffs))]
            out.append(Poly(dom, c))
        return TruncSeries(ring, out, prec, var)
    if isinstance(f, TruncSeries):
        p = min(prec, f.prec)
        dom = f.ring
        out = []
        for n in range(p + 1):
            c = [
                f.coeffs[i] * dom.from_int(comb(i, n))
                for i in range(n, f.prec + 1)
            ]
            out.append(TruncSeries(dom, c, f.prec - n, f.var))
        return TruncSeries(SeriesRing(dom, f.prec, f.var), out, p, var)
    raise TypeError("expected Poly or TruncSeries, got %r" % type(f))


def sqrt_unit(f: TruncSeries, prec=None) -> TruncSeries:
    """The square root g of f with g(0) = 1, by Newton iteration on g^2 - f."""
    if f.ring.char == 2:
        raise CharTwo("square roots need characteristic != 2")
    if not (f.coeffs[0] == f.ring.one):
        raise ConstantTermNotOne("sqrt expects constant term 1, got %r" % f.coeffs[0])
    if prec is None:
        prec = f.prec
    f = f.truncate(min(prec, f.prec))
    prec = f.prec
    half = f.ring.invert(f.ring.from_int(2))
    g = TruncSeries.one(f.ring, prec, f.var)
    known = 1
    while known <= prec:
        g = (g + f * g.invert(f.ring.one)).scale(half)
        known *= 2
    assert g * g == f
    return g


def newton_solve(coeffs, seed, prec: int, var="t") -> TruncSeries:
    """The unique series root x of P(X) = sum coeffs[i] X^i with x(0) = seed.

    ``coeffs`` are TruncSeries over a scalar domain.  Requires P(seed) = 0
    and P'(seed) a unit at order 0 (simple-root condition); convergence is
    quadratic, so the working precision doubles each step.
    """
    dom = coeffs[0].ring
    p0 = sum((c.coeffs[0] * seed**i for i, c in enumerate(coeffs)), dom.zero)
    if not (p0 == dom.zero):
        raise NotASimpleRoot("P(seed) != 0 at order 0: %r" % p0)
    dp0 = sum(
        (c.coeffs[0] * dom.from_int(i) * seed ** (i - 1) for i, c in enumerate(coeffs) if i >= 1),
        dom.zero,
    )
    try:
        dp0_inv = dom.invert(dp0)
    except NonUnitConstantTerm:
        raise NotASimpleRoot("P'(seed) is not a unit at order 0") from None

    coeffs = [c.truncate(min(prec, c.prec)) for c in coeffs]
    if any(c.prec < prec for c in coeffs):
        raise ValueError("coefficient precision below requested root precision")
    dcoeffs = [
        coeffs[i].scale(dom.from_int(i)) for i in range(1, len(coeffs))
    ]

    def horner(cs, x):
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * x + c
        return acc

    x = TruncSeries.constant(dom, seed, prec, var)
    known = 1
    while known <= prec:
        px = horner(coeffs, x)
        dpx = horner(dcoeffs, x)
        x = x - px * dpx.invert(dp0_inv)
        known *= 2
    if not horner(coeffs, x).is_zero():
        raise CrossCheckMismatch("Newton iterate does not satisfy P to precision")
    return x

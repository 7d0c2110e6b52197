"""The rank-1 module over the curve ring presented by two generators.

M = <f1, f2> with relations t f1 - s f2 = 0 and (s^2-1) f1 - t f2 = 0; it
is isomorphic to the non-principal ideal <s, t> by f1 -> s, f2 -> t, which
is how equality is decided: coordinates are redundant, ideal images are
not.  The derivation family sends f1 to b f1 + ((3s^2+1)/(3s^2-1)) f2 and
f2 to s f1 + b f2, one derivation for every ring element b.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .curve import CurveElem, CurveRing, ThetaTable, curve_ring, solve_theta_s, theta1
from .errors import PositiveCharacteristic
from .scalars import QQ


class ModuleElem:
    """alpha f1 + beta f2; equality via the ideal image alpha s + beta t."""

    __slots__ = ("ring", "alpha", "beta")

    def __init__(self, ring: CurveRing, alpha: CurveElem, beta: CurveElem):
        self.ring = ring
        self.alpha = alpha
        self.beta = beta

    def __add__(self, other):
        if not isinstance(other, ModuleElem):
            return NotImplemented
        return ModuleElem(self.ring, self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ModuleElem(self.ring, -self.alpha, -self.beta)

    def scaled(self, x: CurveElem) -> "ModuleElem":
        """The module action x * m."""
        return ModuleElem(self.ring, x * self.alpha, x * self.beta)

    def scale(self, c) -> "ModuleElem":
        return ModuleElem(self.ring, self.alpha.scale(c), self.beta.scale(c))

    def ideal_image(self) -> CurveElem:
        return self.alpha * self.ring.s + self.beta * self.ring.t

    def __eq__(self, other):
        if not isinstance(other, ModuleElem):
            return NotImplemented
        return self.ideal_image() == other.ideal_image()

    __hash__ = None

    def is_zero(self) -> bool:
        return self.ideal_image().is_zero()

    def to_json(self):
        return {"f1": self.alpha.to_json(), "f2": self.beta.to_json()}

    @classmethod
    def from_json(cls, ring, data):
        return cls(
            ring,
            CurveElem.from_json(ring, data["f1"]),
            CurveElem.from_json(ring, data["f2"]),
        )

    def __repr__(self):
        return "(%r) f1 + (%r) f2" % (self.alpha, self.beta)


def gen_f1(ring: CurveRing = None) -> ModuleElem:
    ring = ring or curve_ring(QQ)
    return ModuleElem(ring, ring.one, ring.zero)


def gen_f2(ring: CurveRing = None) -> ModuleElem:
    ring = ring or curve_ring(QQ)
    return ModuleElem(ring, ring.zero, ring.one)


def relation_pairs(ring: CurveRing = None):
    """The two presentation relations as module elements (both are 0)."""
    ring = ring or curve_ring(QQ)
    return (
        ModuleElem(ring, ring.t, -ring.s),
        ModuleElem(ring, ring.s * ring.s - ring.one, -ring.t),
    )


def derivation_matrix(b: CurveElem):
    """Images of the generators under the derivation with parameter b."""
    ring = b.ring
    coeff = (ring.s * ring.s).scale(ring.dom.from_int(3)) + ring.one
    df1 = ModuleElem(ring, b, coeff.mul_dinv())
    df2 = ModuleElem(ring, ring.s, b)
    return df1, df2


def apply_derivation(b: CurveElem, m: ModuleElem, table: ThetaTable = None) -> ModuleElem:
    """Leibniz expansion of the derivation on alpha f1 + beta f2."""
    ring = m.ring
    if table is None:
        table = solve_theta_s(1, ring.dom)
    df1, df2 = derivation_matrix(b)
    out = ModuleElem(ring, theta1(m.alpha, table), theta1(m.beta, table))
    out = out + df1.scaled(m.alpha) + df2.scaled(m.beta)
    return out


def iterate_divided(b: CurveElem, m: ModuleElem, n: int, table: ThetaTable = None) -> ModuleElem:
    """The n-th divided power (1/n!) d^n of the derivation, char 0 only."""
    ring = m.ring
    if ring.char != 0:
        raise PositiveCharacteristic("divided powers need characteristic 0")
    if table is None:
        table = solve_theta_s(1, ring.dom)
    out = m
    for _ in range(n):
        out = apply_derivation(b, out, table)
    return out.scale(ring.dom.one / ring.dom.from_int(factorial(n)))


@dataclass
class FreenessCertificates:
    """The exact local-freeness data consumed by the PV generator recipe.

    Inverting x1 = s makes f1 a basis, inverting x2 = s^2 - 1 makes f2 one;
    the certificates are the unimodular combination s*s - (s^2-1) = 1 and
    the containments s f2 = t f1 and (s^2-1) f1 = t f2, with exponent 1 on
    both localized generators.
    """

    unimodular: bool
    x1_containment: bool
    x2_containment: bool
    n1: int = 1
    n2: int = 1

    @property
    def passed(self) -> bool:
        return self.unimodular and self.x1_containment and self.x2_containment

    def to_json(self):
        return {
            "unimodular": self.unimodular,
            "x1_containment": self.x1_containment,
            "x2_containment": self.x2_containment,
            "n1": self.n1,
            "n2": self.n2,
            "passed": self.passed,
        }


def local_freeness_certificates(ring: CurveRing = None) -> FreenessCertificates:
    ring = ring or curve_ring(QQ)
    s, t, one = ring.s, ring.t, ring.one
    x2 = s * s - one
    f1, f2 = gen_f1(ring), gen_f2(ring)
    return FreenessCertificates(
        unimodular=(s * s - x2 == one),
        x1_containment=(f2.scaled(s) == f1.scaled(t)),
        x2_containment=(f1.scaled(x2) == f2.scaled(t)),
    )

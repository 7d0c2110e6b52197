"""Iterative derivations as checkable objects.

An instance bundles a coefficient ring descriptor with the map
x -> sum theta^(n)(x) T^n; the checkers verify, on seeded samples, that the
map is a ring homomorphism and that the two paths of the substitution
diagram U -> U + T agree coefficient-wise, which is the same as the
composition law theta^(i) o theta^(j) = C(i+j, i) theta^(i+j).

Four instances are bundled (the derivation by t on polynomials and on
truncated series, the trivial derivation, and the derivation on the curve
ring) together with deliberately corrupted mutants that the test suite
expects to fail with a concrete counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
import random

from .curve import curve_ring, solve_theta_s, theta_series
from .errors import PrecisionExceeded
from .poly import Poly, PolyRing
from .scalars import QQ
from .series import BiTruncSeries, SeriesRing, TruncSeries, shift_substitute


@dataclass
class AxiomReport:
    law: str
    instance: str
    samples: int
    passed: bool
    counterexample: dict | None = None

    def to_json(self):
        return {
            "law": self.law,
            "instance": self.instance,
            "samples": self.samples,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


class IterativeDerivation:
    """A named iterative derivation on a ring descriptor."""

    def __init__(self, name, ring, apply, max_prec=64, base_samples=None):
        self.name = name
        self.ring = ring
        self._apply = apply
        self.max_prec = max_prec
        self._base_samples = base_samples or []

    def apply(self, x, prec: int) -> TruncSeries:
        if prec > self.max_prec:
            raise PrecisionExceeded(
                "%s supports precision %d, got %d" % (self.name, self.max_prec, prec)
            )
        return self._apply(x, prec)

    def nth_component(self, x, n: int):
        return self.apply(x, n)[n]

    def sample_elements(self, count: int, seed: int):
        """The fixed monomial samples followed by seeded random ones."""
        rng = random.Random(seed)
        out = list(self._base_samples)
        while len(out) < count:
            out.append(self.ring.sample(rng))
        return out[:count]


def check_hom(theta: IterativeDerivation, samples: int, prec: int, seed: int = 0) -> AxiomReport:
    """Additivity, the product rule, and theta^(0) = id, on sample pairs."""
    elems = theta.sample_elements(samples, seed)
    pairs = list(zip(elems, reversed(elems)))
    for idx, (x, y) in enumerate(pairs):
        tx = theta.apply(x, prec)
        ty = theta.apply(y, prec)
        if not (tx[0] == x):
            return AxiomReport(
                "homomorphism", theta.name, len(pairs), False,
                {"reason": "theta^(0) != id", "x": repr(x), "sample": idx, "seed": seed},
            )
        ts = theta.apply(x + y, prec)
        if not (ts == tx + ty):
            n = _first_coeff_mismatch(ts, tx + ty)
            return AxiomReport(
                "homomorphism", theta.name, len(pairs), False,
                {"reason": "additivity", "x": repr(x), "y": repr(y),
                 "coefficient": n, "sample": idx, "seed": seed},
            )
        tp = theta.apply(x * y, prec)
        if not (tp == tx * ty):
            n = _first_coeff_mismatch(tp, tx * ty)
            return AxiomReport(
                "homomorphism", theta.name, len(pairs), False,
                {"reason": "product rule", "x": repr(x), "y": repr(y),
                 "coefficient": n, "sample": idx, "seed": seed},
            )
    return AxiomReport("homomorphism", theta.name, len(pairs), True)


def check_iteration(
    theta: IterativeDerivation, samples: int, bidegree=(6, 6), seed: int = 0
) -> AxiomReport:
    """Both paths of the substitution diagram, compared to the bidegree.

    Path one substitutes U -> U + T in theta_U(x), giving the grid
    C(i+j, i) theta^(i+j)(x); path two applies theta_U to every coefficient
    of theta(x).  Coefficients are compared for all i <= N_U, j <= N_T.
    """
    nu, nt = bidegree
    if nu + nt > theta.max_prec:
        raise PrecisionExceeded(
            "bidegree (%d, %d) exceeds supported precision %d" % (nu, nt, theta.max_prec)
        )
    ring = theta.ring
    elems = theta.sample_elements(samples, seed)
    for idx, x in enumerate(elems):
        deep = theta.apply(x, nu + nt)
        path1 = BiTruncSeries.zero(ring, nu, nt)
        for i in range(nu + 1):
            for j in range(nt + 1):
                c = ring.from_int(comb(i + j, i))
                path1.grid[i][j] = deep[i + j] * c
        path2 = BiTruncSeries.zero(ring, nu, nt)
        for j in range(nt + 1):
            col = theta.apply(deep[j], nu)
            for i in range(nu + 1):
                path2.grid[i][j] = col[i]
        if not (path1 == path2):
            i, j = path1.first_mismatch(path2)
            return AxiomReport(
                "iteration", theta.name, len(elems), False,
                {"x": repr(x), "i": i, "j": j, "sample": idx, "seed": seed},
            )
    return AxiomReport("iteration", theta.name, len(elems), True)


def constants_check(theta: IterativeDerivation, x, prec: int) -> bool:
    """True iff every component 1..prec of theta(x) vanishes."""
    out = theta.apply(x, prec)
    zero = theta.ring.zero
    return all(out[n] == zero for n in range(1, prec + 1))


def _first_coeff_mismatch(a: TruncSeries, b: TruncSeries):
    for n in range(min(a.prec, b.prec) + 1):
        if not (a.coeffs[n] == b.coeffs[n]):
            return n
    return None


# ---------------------------------------------------------------------------
# bundled instances


def derivation_on_polys(dom=QQ) -> IterativeDerivation:
    """The derivation by t on the polynomial ring: f(t) -> f(t + T)."""
    ring = PolyRing(dom)
    t = Poly.var(dom)
    base = [Poly.one(dom), t, t**2, t**3, t**4]
    return IterativeDerivation(
        "ct", ring, lambda f, prec: shift_substitute(f, prec),
        max_prec=10**9, base_samples=base,
    )


def derivation_on_series(dom=QQ, sample_prec: int = 20) -> IterativeDerivation:
    """The derivation by t on truncated power series.

    Checking to bidegree (N_U, N_T) consumes N_U + N_T orders of the input
    truncation, so samples carry sample_prec coefficients and the largest
    supported T-precision is sample_prec itself.
    """
    ring = SeriesRing(dom, sample_prec)
    base = [
        TruncSeries.one(dom, sample_prec),
        TruncSeries.variable(dom, sample_prec),
        TruncSeries.variable(dom, sample_prec) ** 2,
    ]
    return IterativeDerivation(
        "cpowert", ring, lambda f, prec: shift_substitute(f, prec),
        max_prec=sample_prec, base_samples=base,
    )


def derivation_trivial(dom=QQ) -> IterativeDerivation:
    """theta(r) = r T^0 on the polynomial ring; every element is constant."""
    ring = PolyRing(dom)
    t = Poly.var(dom)

    def apply(f, prec):
        return TruncSeries.constant(ring, f, prec, "T")

    return IterativeDerivation(
        "trivial", ring, apply, max_prec=10**9,
        base_samples=[Poly.one(dom), t, t**2],
    )


def derivation_on_curve(dom=QQ, depth: int = 12) -> IterativeDerivation:
    """The unique extension of the derivation by t to the curve ring."""
    ring = curve_ring(dom)
    table = solve_theta_s(depth, dom)
    s, t = ring.s, ring.t
    base = [ring.one, s, t, s * t, s * s, t * t, s * s * t * t, ring.dinv]
    return IterativeDerivation(
        "s", ring, lambda x, prec: theta_series(x, prec, table),
        max_prec=depth, base_samples=base,
    )


def standard_instances(dom=QQ) -> dict:
    return {
        "ct": derivation_on_polys(dom),
        "cpowert": derivation_on_series(dom),
        "trivial": derivation_trivial(dom),
        "s": derivation_on_curve(dom),
    }


def _scaled_component(inner: IterativeDerivation, name: str, index: int, factor: int):
    ring = inner.ring
    c = ring.from_int(factor)

    def apply(x, prec):
        out = inner.apply(x, prec)
        coeffs = list(out.coeffs)
        if index <= out.prec:
            coeffs[index] = coeffs[index] * c
        return TruncSeries(out.ring, coeffs, out.prec, out.var)

    return IterativeDerivation(
        name, ring, apply, max_prec=inner.max_prec, base_samples=inner._base_samples
    )


def mutant_instances(dom=QQ) -> dict:
    """Deliberately broken derivations; every checker must catch them."""
    ct = derivation_on_polys(dom)
    curve = derivation_on_curve(dom, depth=8)
    ring = PolyRing(dom)

    def doubled_identity(f, prec):
        return TruncSeries.constant(ring, f + f, prec, "T")

    return {
        # first component corrupted: the product rule breaks at T^2
        "ct-corrupt-a1": _scaled_component(ct, "ct-corrupt-a1", 1, 2),
        # second component doubled: iteration fails first at (i, j) = (1, 1)
        "ct-scale-theta2": _scaled_component(ct, "ct-scale-theta2", 2, 2),
        "s-corrupt-a1": _scaled_component(curve, "s-corrupt-a1", 1, 2),
        # theta^(0) != id: caught by the homomorphism check
        "trivial-doubled": IterativeDerivation(
            "trivial-doubled", ring, doubled_identity, max_prec=10**9,
            base_samples=[Poly.one(dom), Poly.var(dom)],
        ),
    }

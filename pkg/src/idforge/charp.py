"""Reduction of the module derivation to positive characteristic.

Over the rationals, the derivation with parameter -3st/(3s^2-1) acts on
the generator f1 through the multiplier series u = theta(sqrt(s))/sqrt(s),
whose binomial expansion has only powers of 2 in its scalar denominators.
That certificate (checked, not assumed) makes the whole structure reduce
mod any odd prime: the component table, u, and the action on f2 obtained
from f2 = (t/s) f1.  Iterativity and stability of the reduced module are
then verified order by order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from gmpy2 import mpq

from .curve import (
    CurveElem,
    CurveFraction,
    fraction_ring,
    solve_theta_s,
    theta_series_fraction,
)
from .derivations import AxiomReport
from .errors import PEqualsTwo
from .poly import Poly
from .scalars import GF, QQ, denom_is_2_power, gen_binomial, is_prime, reduce_mod_p
from .series import TruncSeries


def sqrt_multiplier_series(prec: int, table=None) -> TruncSeries:
    """u = sum_k C(1/2, k) (theta(s)/s - 1)^k over the fraction ring.

    theta(s) - s has positive order in T, so each T-order receives finitely
    many summands and the truncated sum at order prec is exact.
    """
    if table is None:
        table = solve_theta_s(prec, QQ)
    fring = fraction_ring(QQ)
    ring = fring.base
    q_coeffs = [fring.zero] + [
        CurveFraction(fring, table[n], 1) for n in range(1, prec + 1)
    ]
    q = TruncSeries(fring, q_coeffs, prec, "T")
    u = TruncSeries.zero(fring, prec, "T")
    power = TruncSeries.one(fring, prec, "T")
    for k in range(prec + 1):
        u += power.scale(gen_binomial(mpq(1, 2), k))
        power = power * q
    return u


def certify_dyadic_denominators(u: TruncSeries) -> AxiomReport:
    """Every rational scalar anywhere in u has a power-of-2 denominator."""
    checked = 0
    for n, frac in enumerate(u.coeffs):
        for coord, poly in enumerate((frac.elem.c0, frac.elem.c1, frac.elem.c2)):
            for i, c in enumerate(poly.coeffs):
                checked += 1
                if not denom_is_2_power(c):
                    return AxiomReport(
                        "dyadic-denominators", "sqrt-multiplier", checked, False,
                        {"order": n, "coordinate": coord, "t_degree": i, "value": str(c)},
                    )
    return AxiomReport("dyadic-denominators", "sqrt-multiplier", checked, True)


def _reduce_fraction(frac: CurveFraction, fring_p) -> CurveFraction:
    ring_p = fring_p.base
    dom_p = ring_p.dom
    polys = [
        Poly(dom_p, [reduce_mod_p(c, dom_p.p) for c in poly.coeffs])
        for poly in (frac.elem.c0, frac.elem.c1, frac.elem.c2)
    ]
    elem = CurveElem(ring_p, polys[0], polys[1], polys[2], frac.elem.k)
    return CurveFraction(fring_p, elem, frac.m)


@dataclass
class ModPModule:
    """The reduced module with its derivation components on both generators.

    Components are stored as f1-coordinates: theta_M^(n)(f1) = u_n f1 and
    theta_M^(n)(f2) = v_n f1 with v = theta(t/s) u, both over F_p.
    """

    p: int
    prec: int
    f1_components: list
    f2_components: list
    table: object  # ThetaTable over F_p
    u: TruncSeries

    @property
    def fring(self):
        return self.u.ring

    def theta_m_f1_coord(self, x: CurveFraction, n: int) -> CurveFraction:
        """theta_M^(n)(x f1) = sum_{i+j=n} theta^(i)(x) u_j, as an f1-coordinate."""
        tx = theta_series_fraction(x, n, self.table)
        acc = []
        for i in range(n + 1):
            term = tx[i] * self.u.coeffs[n - i]
            if not term.is_zero():
                acc.append(term)
        return self.fring.sum_terms(acc)


def reduce_module_mod_p(p: int, prec: int = 10) -> ModPModule:
    """Reduce the table and multiplier mod an odd prime and assemble the
    derivation on both generators."""
    if p == 2:
        raise PEqualsTwo("the multiplier series has dyadic denominators")
    if not is_prime(p):
        raise ValueError("%d is not prime" % p)
    u_q = sqrt_multiplier_series(prec)
    report = certify_dyadic_denominators(u_q)
    if not report.passed:  # pragma: no cover - the certificate is a theorem
        raise ArithmeticError("dyadic certificate failed: %r" % report.counterexample)

    dom_p = GF(p)
    fring_p = fraction_ring(dom_p)
    u_p = TruncSeries(
        fring_p, [_reduce_fraction(c, fring_p) for c in u_q.coeffs], prec, "T"
    )
    table_p = solve_theta_s(prec, dom_p)

    # theta(t/s) over F_p, then v = theta(t/s) * u gives the f2 components
    ring_p = fring_p.base
    t_over_s = CurveFraction(fring_p, ring_p.t, 1)
    v = theta_series_fraction(t_over_s, prec, table_p) * u_p
    return ModPModule(
        p=p,
        prec=prec,
        f1_components=list(u_p.coeffs),
        f2_components=list(v.coeffs),
        table=table_p,
        u=u_p,
    )


def check_module_iteration(mp: ModPModule, max_total: int = None) -> AxiomReport:
    """theta_M^(i) o theta_M^(j) = C(i+j, i) theta_M^(i+j) on both generators."""
    n = mp.prec if max_total is None else max_total
    dom = GF(mp.p)
    checked = 0
    for gen_name, comps in (("f1", mp.f1_components), ("f2", mp.f2_components)):
        for j in range(n + 1):
            cj = comps[j]
            for i in range(n - j + 1):
                checked += 1
                lhs = mp.theta_m_f1_coord(cj, i)
                rhs = comps[i + j].scale(dom.from_int(comb(i + j, i)))
                if not (lhs == rhs):
                    return AxiomReport(
                        "mod-p-iteration", "p=%d" % mp.p, checked, False,
                        {"generator": gen_name, "i": i, "j": j},
                    )
    return AxiomReport("mod-p-iteration", "p=%d" % mp.p, checked, True)


def _component_stable(mp: ModPModule, c: CurveFraction):
    """Whether the ideal image of c f1 lands in the reduced module.

    In f1-coordinates the ideal image is c * s; stability means the
    s-denominators cancel (the fraction normalizes to an honest ring
    element) and the result lies in the ideal <s, t>, i.e. has residue 0
    at the origin.
    """
    ring = mp.fring.base
    dom = ring.dom
    image = c * mp.fring.from_elem(ring.s)
    elem = image.as_elem()
    if elem is None:
        return False, "s-denominator survives"
    if not (elem.evaluate(dom.zero, dom.zero) == dom.zero):
        return False, "image not in <s, t>"
    return True, None


def stability_by_order(mp: ModPModule):
    """Per-order stability of both generators, for reporting."""
    out = []
    for n in range(mp.prec + 1):
        ok1, _ = _component_stable(mp, mp.f1_components[n])
        ok2, _ = _component_stable(mp, mp.f2_components[n])
        out.append({"order": n, "f1": ok1, "f2": ok2})
    return out


def check_stability(mp: ModPModule) -> AxiomReport:
    """Every component of both generators lands back in the reduced module."""
    checked = 0
    for gen_name, comps in (("f1", mp.f1_components), ("f2", mp.f2_components)):
        for n, c in enumerate(comps):
            checked += 1
            ok, reason = _component_stable(mp, c)
            if not ok:
                return AxiomReport(
                    "mod-p-stability", "p=%d" % mp.p, checked, False,
                    {"generator": gen_name, "order": n, "reason": reason},
                )
    return AxiomReport("mod-p-stability", "p=%d" % mp.p, checked, True)


def first_component_nilpotent(mp: ModPModule) -> bool:
    """(theta_M^(1))^p kills f1 over F_p, by the composition law."""
    x = mp.fring.one
    for _ in range(mp.p):
        x = mp.theta_m_f1_coord(x, 1)
    return x.is_zero()

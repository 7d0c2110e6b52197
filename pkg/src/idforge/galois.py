"""Rank-1 Galois classification by bounded exact witness search.

The group is mu_n exactly when y^n is the image of a ring element; the
search solves, for each n in turn, the linear system matching a candidate
numerator (degree-bounded in t, s-degree < 3) against y^n times the d-power
it is allowed to carry.  A hit is re-embedded and re-compared before it is
reported; a miss is only a statement about the bounds used, which the
verdict carries, since transcendence itself is not decided here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import CurveElem, curve_ring
from .embedding import Embedding, solve_y
from .errors import InsufficientPrecision, CrossCheckMismatch, PositiveCharacteristic
from .linalg import ExactMatrix, solve_linear
from .poly import Poly
from .series import TruncSeries


def soundness_margin(deg: int, dpow: int) -> int:
    return 3 * (deg + 2 * dpow) + 8


@dataclass(frozen=True)
class SearchBounds:
    n_max: int = 6
    deg: int = 8
    dpow: int = 2
    prec: int = 64

    def __post_init__(self):
        need = soundness_margin(self.deg, self.dpow)
        if self.prec < need:
            raise InsufficientPrecision(
                "precision %d below the soundness margin %d for deg=%d dpow=%d"
                % (self.prec, need, self.deg, self.dpow)
            )

    def to_json(self):
        return {"n_max": self.n_max, "deg": self.deg, "dpow": self.dpow, "prec": self.prec}


@dataclass
class GaloisVerdict:
    kind: str  # "mu" or "no-relation"
    bounds: SearchBounds
    n: int | None = None
    witness: CurveElem | None = None

    def to_json(self):
        out = {"verdict": self.kind, "bounds": self.bounds.to_json()}
        if self.kind == "mu":
            out["n"] = self.n
            out["witness"] = self.witness.to_json()
        return out


def series_in_ring(f: TruncSeries, E: Embedding, deg: int = 8, dpow: int = 2):
    """A ring element w with embed(w) = f, of bounded shape, or None.

    The unknown is (c0 + c1 s + c2 s^2) / d^dpow with deg_t(ci) <= deg; the
    linear system matches series coefficients of embed(numerator) against
    f * embed(d)^dpow on every available order, so it is overdetermined by
    the margin built into the bounds.  Returned witnesses are re-verified.
    """
    need = soundness_margin(deg, dpow)
    if f.prec < need:
        raise InsufficientPrecision(
            "series precision %d below the soundness margin %d" % (f.prec, need)
        )
    rows = min(f.prec, E.prec)
    dom = E.dom

    sigma_powers = [TruncSeries.one(dom, rows), E.sigma.truncate(rows)]
    sigma_powers.append(sigma_powers[1] * sigma_powers[1])
    t_im = E.t_image.truncate(rows)

    columns = []
    for i in range(3):
        col = sigma_powers[i]
        for j in range(deg + 1):
            columns.append(col)
            col = col * t_im
    d_im = (E.sigma.truncate(rows) * E.sigma.truncate(rows)).scale(
        dom.from_int(3)
    ) - TruncSeries.one(dom, rows)
    rhs_series = f.truncate(rows) * d_im**dpow

    matrix = ExactMatrix(
        [[columns[c].coeffs[r] for c in range(len(columns))] for r in range(rows + 1)]
    )
    sol = solve_linear(matrix, rhs_series.coeffs)
    if sol is None:
        return None

    ring = curve_ring(dom)
    coords = [Poly(dom, sol[i * (deg + 1) : (i + 1) * (deg + 1)]) for i in range(3)]
    witness = CurveElem(ring, coords[0], coords[1], coords[2], dpow)
    if not (E.embed(witness) == f):
        raise CrossCheckMismatch("witness solved the system but fails re-embedding")
    return witness


def classify(b: CurveElem, E: Embedding, bounds: SearchBounds = None) -> GaloisVerdict:
    """mu_n with the least witnessed n, else no-relation up to the bounds."""
    if E.dom.char != 0:
        raise PositiveCharacteristic("classification runs over characteristic 0")
    if bounds is None:
        bounds = SearchBounds()
    y = solve_y(E, b, bounds.prec)
    power = TruncSeries.one(E.dom, bounds.prec)
    for n in range(1, bounds.n_max + 1):
        power = power * y
        witness = series_in_ring(power, E, bounds.deg, bounds.dpow)
        if witness is not None:
            return GaloisVerdict("mu", bounds, n, witness)
    return GaloisVerdict("no-relation", bounds)

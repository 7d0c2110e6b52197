import random

import pytest
from gmpy2 import mpq

from idforge.curve import CurveFraction, curve_ring, fraction_ring
from idforge.embedding import (
    Embedding,
    EmbeddingPoint,
    b_star,
    build_embedding,
    check_embedding_compat,
    constant_basis_check,
    ode_coefficient,
    pv_generators,
    solve_y,
)
from idforge.errors import (
    DenominatorVanishes,
    InsufficientPrecision,
    NonUnitDenominator,
    NotOnCurve,
    PositiveCharacteristic,
)
from idforge.scalars import GF, QQ
from idforge.series import TruncSeries, sqrt_unit

RING = curve_ring(QQ)
S, T = RING.s, RING.t


class TestPoints:
    def test_presets(self):
        p = EmbeddingPoint.plus()
        m = EmbeddingPoint.minus()
        assert (p.a, p.b) == (1, 0)
        assert (m.a, m.b) == (-1, 0)

    def test_off_curve_rejected(self):
        with pytest.raises(NotOnCurve):
            EmbeddingPoint(mpq(0), mpq(1))

    def test_bad_denominator_rejected(self):
        dom = GF(23)
        with pytest.raises(DenominatorVanishes):
            EmbeddingPoint(dom.from_int(10), dom.from_int(1), dom)

    def test_origin_is_a_valid_point(self):
        EmbeddingPoint(mpq(0), mpq(0))


class TestBuildEmbedding:
    def test_sigma_at_plus(self):
        E = build_embedding(EmbeddingPoint.plus(), 8)
        assert E.sigma.coeffs[:6] == [1, 0, mpq(1, 2), 0, mpq(-3, 8), 0]

    def test_sigma_at_minus(self):
        E = build_embedding(EmbeddingPoint.minus(), 8)
        assert E.sigma.coeffs[0] == -1
        assert E.sigma.coeffs[2] == mpq(1, 2)
        assert E.sigma.coeffs[4] == mpq(3, 8)

    def test_t_maps_to_t(self):
        E = build_embedding(EmbeddingPoint.plus(), 8)
        out = E.embed(T)
        assert out.coeffs[:3] == [0, 1, 0]

    def test_relation_maps_to_zero(self):
        E = build_embedding(EmbeddingPoint.plus(), 12)
        assert E.embed(S * S * S - S - T * T).is_zero()

    def test_d_image_constant_term(self):
        E = build_embedding(EmbeddingPoint.plus(), 8)
        assert E.embed(RING.d).coeffs[0] == 2
        assert E.embed(RING.dinv) * E.embed(RING.d) == TruncSeries.one(QQ, 8)

    def test_cross_check_at_both_presets_prec_32(self):
        for point in (EmbeddingPoint.plus(), EmbeddingPoint.minus()):
            E = build_embedding(point, 32)
            assert E.prec == 32  # CrossCheckMismatch would have been raised

    def test_is_ring_homomorphism(self):
        E = build_embedding(EmbeddingPoint.plus(), 16)
        rng = random.Random(1)
        for _ in range(15):
            x, y = RING.sample(rng), RING.sample(rng)
            assert E.embed(x * y) == E.embed(x) * E.embed(y)
            assert E.embed(x + y) == E.embed(x) + E.embed(y)

    def test_theta_compat(self):
        E = build_embedding(EmbeddingPoint.plus(), 16)
        report = check_embedding_compat(E, samples=16, orders=6, seed=0)
        assert report.passed, report.counterexample

    def test_general_point_embeds_t_shifted(self):
        # (0, 0) is on the curve; t embeds as t itself there as well
        E = build_embedding(EmbeddingPoint(mpq(0), mpq(0)), 8)
        assert E.embed(T).coeffs[:2] == [0, 1]
        assert E.sigma.coeffs[0] == 0
        with pytest.raises(NonUnitDenominator):
            E.embed(CurveFraction(fraction_ring(QQ), RING.one, 1))


class TestSolveY:
    def test_b_star_gives_square_root_of_sigma(self):
        E = build_embedding(EmbeddingPoint.plus(), 32)
        y = solve_y(E, b_star(RING), 32)
        assert y.coeffs[0] == 1
        assert y * y == E.sigma
        # independent route: Newton square root of sigma
        assert y == sqrt_unit(E.sigma)

    def test_b_star_ode_collapses(self):
        # -3st/d + (3s^2+1)/d * t/s == t/(d s)
        fring = fraction_ring(QQ)
        rate = ode_coefficient(b_star(RING))
        expected = CurveFraction(fring, T.mul_dinv(), 1)
        assert rate == expected

    def test_b_star_at_minus_gives_root_of_minus_sigma(self):
        E = build_embedding(EmbeddingPoint.minus(), 32)
        y = solve_y(E, b_star(RING), 32)
        assert y * y == -E.sigma

    def test_normalization(self):
        E = build_embedding(EmbeddingPoint.plus(), 16)
        rng = random.Random(2)
        for _ in range(5):
            y = solve_y(E, RING.sample(rng), 16)
            assert y.coeffs[0] == 1

    def test_b_zero_solution_solves_the_ode(self):
        E = build_embedding(EmbeddingPoint.plus(), 32)
        y = solve_y(E, RING.zero, 32)
        assert y.coeffs[1] == 0  # the series starts 1 + y_2 t^2 + ...
        g = E.embed(ode_coefficient(RING.zero))
        assert y.derivative() == (g * y).truncate(31)
        # fixed-point form with the integration backend as the oracle
        assert TruncSeries.one(QQ, 32) + (g * y).truncate(31).integrate() == y

    def test_char_p_rejected(self):
        dom = GF(5)
        ring5 = curve_ring(dom)
        E = build_embedding(EmbeddingPoint(dom.one, dom.zero, dom), 8)
        with pytest.raises(PositiveCharacteristic):
            solve_y(E, ring5.zero, 8)

    def test_insufficient_precision(self):
        E = build_embedding(EmbeddingPoint.plus(), 8)
        with pytest.raises(InsufficientPrecision):
            solve_y(E, RING.zero, 16)


class TestConstantBasis:
    @pytest.mark.parametrize("b_name", ["star", "zero"])
    def test_constancy_holds(self, b_name):
        b = b_star(RING) if b_name == "star" else RING.zero
        E = build_embedding(EmbeddingPoint.plus(), 48)
        report = constant_basis_check(E, b, prec=16)
        assert report.passed, report.counterexample

    def test_mutant_fails_at_first_order(self):
        E = build_embedding(EmbeddingPoint.plus(), 48)
        b = b_star(RING)
        y = solve_y(E, b, 40)
        corrupted = y + TruncSeries.variable(QQ, 40)
        report = constant_basis_check(E, b, prec=8, y=corrupted)
        assert not report.passed


class TestPVGenerators:
    def test_products(self):
        E = build_embedding(EmbeddingPoint.plus(), 32)
        gens = pv_generators(E, RING.zero, 24)
        sigma = E.sigma.truncate(24)
        t_im = E.t_image.truncate(24)
        assert gens.y * gens.s_over_y == sigma
        assert gens.yt_over_s * gens.s_over_y == t_im
        assert gens.y * gens.t_over_y == t_im

    def test_b_star_collapses_generators(self):
        E = build_embedding(EmbeddingPoint.plus(), 32)
        gens = pv_generators(E, b_star(RING), 24)
        assert gens.s_over_y == gens.y
        assert gens.yt_over_s == gens.t_over_y

import pytest

from idforge.curve import curve_ring
from idforge.derivations import (
    check_hom,
    check_iteration,
    constants_check,
    derivation_on_curve,
    derivation_on_polys,
    mutant_instances,
    standard_instances,
)
from idforge.errors import PrecisionExceeded
from idforge.poly import Poly
from idforge.scalars import QQ
from idforge.series import TruncSeries


class TestComponents:
    def test_nth_component_on_polys(self):
        th = derivation_on_polys()
        t = Poly.var(QQ)
        assert th.nth_component(t * t, 1) == t.scale(QQ.from_int(2))
        assert th.nth_component(t * t, 0) == t * t

    def test_component_zero_is_identity_everywhere(self):
        for th in standard_instances().values():
            x = th._base_samples[1] if len(th._base_samples) > 1 else th.ring.one
            assert th.nth_component(x, 0) == x

    def test_trivial_higher_components_vanish(self):
        th = standard_instances()["trivial"]
        t = Poly.var(QQ)
        for n in range(1, 5):
            assert th.nth_component(t * t, n) == th.ring.zero

    def test_precision_guard(self):
        th = derivation_on_curve(depth=4)
        with pytest.raises(PrecisionExceeded):
            th.nth_component(th.ring.s, 5)
        with pytest.raises(PrecisionExceeded):
            check_iteration(th, 1, (3, 3))


class TestAxiomChecks:
    @pytest.mark.parametrize("name", ["ct", "cpowert", "trivial", "s"])
    def test_hom_passes(self, name):
        th = standard_instances()[name]
        report = check_hom(th, samples=16, prec=6, seed=0)
        assert report.passed, report.counterexample
        assert report.law == "homomorphism"

    @pytest.mark.parametrize("name", ["ct", "cpowert", "trivial", "s"])
    def test_iteration_passes(self, name):
        th = standard_instances()[name]
        report = check_iteration(th, samples=8, bidegree=(6, 6), seed=0)
        assert report.passed, report.counterexample

    def test_constants(self):
        insts = standard_instances()
        five = Poly.const(QQ, QQ.from_int(5))
        assert constants_check(insts["ct"], five, 6)
        assert not constants_check(insts["ct"], Poly.var(QQ), 6)
        assert not constants_check(insts["s"], curve_ring(QQ).s, 6)
        assert constants_check(insts["trivial"], Poly.var(QQ), 6)

    def test_report_json_round_trips(self):
        report = check_hom(standard_instances()["ct"], 4, 4)
        data = report.to_json()
        assert data["passed"] is True and data["law"] == "homomorphism"


class TestMutants:
    def test_all_mutants_fail_with_counterexample(self):
        for name, mut in mutant_instances().items():
            hom = check_hom(mut, samples=16, prec=4, seed=0)
            it = check_iteration(mut, samples=8, bidegree=(3, 3), seed=0)
            assert not (hom.passed and it.passed), name
            failing = hom if not hom.passed else it
            assert failing.counterexample, name

    def test_corrupt_a1_fails_hom(self):
        mut = mutant_instances()["ct-corrupt-a1"]
        report = check_hom(mut, samples=16, prec=4, seed=0)
        assert not report.passed
        assert report.counterexample["reason"] == "product rule"

    def test_scaled_theta2_fails_iteration_at_1_1(self):
        mut = mutant_instances()["ct-scale-theta2"]
        report = check_iteration(mut, samples=8, bidegree=(3, 3), seed=0)
        assert not report.passed
        assert (report.counterexample["i"], report.counterexample["j"]) == (1, 1)

    def test_doubled_identity_fails_identity_check(self):
        mut = mutant_instances()["trivial-doubled"]
        report = check_hom(mut, samples=4, prec=2, seed=0)
        assert not report.passed
        assert report.counterexample["reason"] == "theta^(0) != id"


class TestSeriesInstancePrecision:
    def test_components_carry_reduced_precision(self):
        th = standard_instances()["cpowert"]
        f = TruncSeries.variable(QQ, 20) ** 2
        out = th.apply(f, 6)
        assert out[0].prec == 20
        assert out[3].prec == 17

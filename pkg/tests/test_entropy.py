import math

import pytest

from freeprod.entropy import (
    EntropyError,
    critical_exponent,
    solve_h_f2,
    solve_weight_sum,
)
from freeprod.factors import FactorSpec, LengthAssignment
from freeprod.growth import WeightedGenSet, factor_weight_sum


def gen_set(fp, la, lb):
    return WeightedGenSet(fp, LengthAssignment(generator_length=la),
                          LengthAssignment(generator_length=lb))


class TestSolveHF2:
    def test_unit_lengths_log3(self):
        sol = solve_h_f2(1.0, 1.0)
        assert sol.h == pytest.approx(math.log(3), rel=1e-12)
        assert abs(sol.residual) < 1e-12

    def test_double_lengths_halve(self):
        assert solve_h_f2(2.0, 2.0).h == pytest.approx(math.log(3) / 2, rel=1e-12)

    def test_asymmetric_pinned_value(self):
        # root of (e^h - 1)(e^{2h} - 1) = 4, frozen from a 50-digit evaluation
        assert solve_h_f2(1.0, 2.0).h == pytest.approx(0.7563076126159647, abs=1e-13)

    def test_symmetry(self):
        assert solve_h_f2(1.0, 5.0).h == pytest.approx(solve_h_f2(5.0, 1.0).h, rel=1e-14)

    @pytest.mark.parametrize("lam", [0.5, 3.0, 17.0])
    def test_scaling(self, lam):
        base = solve_h_f2(1.0, 2.0).h
        assert solve_h_f2(lam, 2 * lam).h == pytest.approx(base / lam, rel=1e-10)

    def test_monotone_in_lengths(self):
        hs = [solve_h_f2(1.0, l2).h for l2 in (0.5, 1.0, 2.0, 5.0, 20.0)]
        assert hs == sorted(hs, reverse=True)

    def test_rearranged_identity(self):
        # the defining equation rearranges to h*l1 = log(1 + 4/(e^{h l2} - 1))
        for l1, l2 in [(1.0, 1.0), (0.3, 7.0), (2.0, 2.5)]:
            h = solve_h_f2(l1, l2).h
            assert h * l1 == pytest.approx(math.log1p(4.0 / math.expm1(h * l2)), rel=1e-10)

    def test_extreme_length_ratio(self):
        # lengths spanning four orders of magnitude must not overflow
        sol = solve_h_f2(2 * math.pi * 0.01, 2 * math.pi / 0.01)
        assert 0 < sol.h < 1.0
        assert abs(sol.residual) < 1e-9

    @pytest.mark.parametrize("l1,l2", [(0.0, 1.0), (1.0, -2.0)])
    def test_bad_lengths(self, l1, l2):
        with pytest.raises(EntropyError):
            solve_h_f2(l1, l2)


class TestCriticalExponent:
    def test_free_group_matches_f2_solver(self, zz):
        for la, lb in [(1, 1), (1, 2), (2, 3)]:
            sol = critical_exponent(gen_set(zz, la, lb))
            assert sol.h == pytest.approx(solve_h_f2(float(la), float(lb)).h, rel=1e-12)
            assert abs(sol.residual) < 1e-10

    def test_z2z3_half_log2(self, z2z3):
        sol = critical_exponent(WeightedGenSet.with_unit_lengths(z2z3))
        assert sol.h == pytest.approx(0.5 * math.log(2), rel=1e-12)

    def test_z2z2_zero_entropy(self, z2z2):
        sol = critical_exponent(WeightedGenSet.with_unit_lengths(z2z2))
        assert sol.zero_entropy
        assert sol.h == 0.0

    def test_weight_product_is_one_at_root(self, z5z):
        g = gen_set(z5z, 1, 1)
        sol = critical_exponent(g)
        w = factor_weight_sum(z5z.factor_a, g.length_a, sol.h) * factor_weight_sum(
            z5z.factor_b, g.length_b, sol.h
        )
        assert w == pytest.approx(1.0, abs=1e-12)

    def test_short_torsion_letter_bounded(self, z5z):
        # shrinking the torsion letter cannot push h past the value where
        # the infinite factor alone satisfies W_B = 1/(p-1)
        cap = solve_weight_sum(z5z.factor_b, LengthAssignment(generator_length=1), 1.0 / 4)
        assert cap == pytest.approx(math.log(9), rel=1e-12)
        h = critical_exponent(gen_set(z5z, 0.01, 1)).h
        assert h < cap

    def test_torsion_cap_monotone(self, z5z):
        hs = [critical_exponent(gen_set(z5z, eps, 1)).h for eps in (1, 0.1, 0.01, 0.001)]
        assert hs == sorted(hs)
        assert hs[-1] < math.log(9)


class TestSolveWeightSum:
    def test_infinite_cyclic_closed_form(self):
        # W(c) = 2/(e^{c b} - 1) = t  <=>  c = log(1 + 2/t)/b
        spec = FactorSpec.infinite_cyclic()
        for b, t in [(1.0, 1.0), (2.0, 0.25), (0.5, 3.0)]:
            c = solve_weight_sum(spec, LengthAssignment(generator_length=b), t)
            assert c == pytest.approx(math.log1p(2.0 / t) / b, rel=1e-12)

    def test_finite_cyclic_consistency(self):
        spec = FactorSpec.finite_cyclic(5)
        la = LengthAssignment(generator_length=0.7)
        c = solve_weight_sum(spec, la, 0.8)
        assert factor_weight_sum(spec, la, c) == pytest.approx(0.8, rel=1e-12)

    def test_bad_target(self):
        with pytest.raises(EntropyError):
            solve_weight_sum(FactorSpec.infinite_cyclic(),
                             LengthAssignment(generator_length=1), -1.0)

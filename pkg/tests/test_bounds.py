import math
import random

import pytest

from freeprod.bounds import (
    BoundError,
    bcg_crossover_delta,
    bcg_diastole_lb,
    diastole_lb,
    l0_combine,
    packing_count_ub,
    pair_inequality_lse,
    sgl_combine,
    systole_lb,
    volume_lb,
)


def mp_oracles():
    """Recompute the frozen reference values with 50-digit arithmetic."""
    import mpmath as mp

    with mp.workdps(50):
        one = mp.mpf(1)
        return {
            "systole_1_1": float(mp.log1p(4 / mp.expm1(2 * one)) / one),
            "diastole_1": float(mp.log(3) / 6),
            "bcg_1_1": float(mp.log(2) / 5),
            "lse_displayed_1_2": float(mp.log1p(4 * mp.exp(-2 * one))),
            "lse_sharp_1_2": float(mp.log1p(4 / mp.expm1(2 * one))),
            "volume_2_1_1_1": float((mp.log1p(4 / mp.expm1(2 * one))) ** 2),
            "crossover": float(4 * mp.log(3) / (6 * mp.log(2) - mp.log(3))),
        }


class TestFrozenValues:
    """Each bound at reference inputs, against an independent 50-digit oracle."""

    def test_systole(self):
        assert systole_lb(1.0, 1.0) == pytest.approx(0.4861664117819902, abs=1e-15)
        assert systole_lb(1.0, 1.0) == pytest.approx(mp_oracles()["systole_1_1"], abs=1e-6)

    def test_diastole(self):
        assert diastole_lb(1.0) == pytest.approx(0.18310204811135157, abs=1e-15)
        assert diastole_lb(1.0) == pytest.approx(mp_oracles()["diastole_1"], abs=1e-6)

    def test_bcg(self):
        assert bcg_diastole_lb(1.0, 1.0) == pytest.approx(0.13862943611198905, abs=1e-15)
        assert bcg_diastole_lb(1.0, 1.0) == pytest.approx(mp_oracles()["bcg_1_1"], abs=1e-6)

    def test_lse_pair(self):
        pair = pair_inequality_lse(1.0, 2.0)
        assert pair.displayed == pytest.approx(0.4326529029917915, abs=1e-15)
        assert pair.displayed == pytest.approx(mp_oracles()["lse_displayed_1_2"], abs=1e-6)
        assert pair.sharp == pytest.approx(mp_oracles()["lse_sharp_1_2"], abs=1e-6)

    def test_volume(self):
        assert volume_lb(2, 1.0, 1.0, 1.0) == pytest.approx(0.23635777994497568, abs=1e-15)
        assert volume_lb(2, 1.0, 1.0, 1.0) == pytest.approx(
            mp_oracles()["volume_2_1_1_1"], abs=1e-6
        )

    def test_crossover(self):
        assert bcg_crossover_delta() == pytest.approx(1.4359674190582031, abs=1e-15)
        assert bcg_crossover_delta() == pytest.approx(mp_oracles()["crossover"], abs=1e-6)


class TestIdentities:
    def test_systole_closure(self):
        # sys = systole_lb(H, D) inverts to (e^{H sys} - 1)(e^{2DH} - 1) = 4
        rng = random.Random(11)
        for _ in range(50):
            H = rng.uniform(0.05, 5.0)
            D = rng.uniform(0.05, 5.0)
            s = systole_lb(H, D)
            assert math.expm1(H * s) * math.expm1(2 * D * H) == pytest.approx(4.0, rel=1e-10)

    def test_homogeneity(self):
        # scaling the metric by lambda: (H, D) -> (lambda H, D / lambda)
        for lam in (0.25, 2.0, 10.0):
            assert systole_lb(lam * 1.3, 0.7 / lam) == pytest.approx(
                systole_lb(1.3, 0.7) / lam, rel=1e-12
            )
            assert diastole_lb(lam * 1.3) == pytest.approx(diastole_lb(1.3) / lam, rel=1e-12)

    def test_lse_sharp_dominates_displayed(self):
        for H, l2 in [(1.0, 2.0), (0.3, 5.0), (2.0, 0.5)]:
            pair = pair_inequality_lse(H, l2)
            assert pair.sharp > pair.displayed

    def test_lse_sharp_at_diameter_matches_systole(self):
        # with l2 = 2D the sharp reading is exactly the systole bound
        for H, D in [(1.0, 1.0), (0.5, 3.0)]:
            assert pair_inequality_lse(H, 2 * D).sharp == pytest.approx(
                systole_lb(H, D), rel=1e-14
            )

    def test_crossover_separates_bounds(self):
        delta_star = bcg_crossover_delta()
        H = 0.8
        assert bcg_diastole_lb(delta_star, H) == pytest.approx(diastole_lb(H), rel=1e-12)
        assert bcg_diastole_lb(0.9 * delta_star, H) < diastole_lb(H)
        assert bcg_diastole_lb(1.1 * delta_star, H) > diastole_lb(H)

    def test_systole_decreasing_in_diameter(self):
        vals = [systole_lb(1.0, D) for D in (0.5, 1.0, 2.0, 5.0, 20.0)]
        assert vals == sorted(vals, reverse=True)
        assert vals[-1] < 1e-8


class TestCombinators:
    def test_packing_count(self):
        assert packing_count_ub(10.0, 0.5, 2.0, 3) == pytest.approx(40.0)

    def test_volume_uses_systole_power(self):
        s = systole_lb(0.7, 1.4)
        assert volume_lb(3, 0.7, 1.4, 2.5) == pytest.approx(2.5 * s**3, rel=1e-14)

    def test_l0_combine(self):
        s = systole_lb(1.0, 1.0)
        assert l0_combine(10.0, 1.0, 1.0) == pytest.approx(s)
        assert l0_combine(0.01, 1.0, 1.0) == 0.01

    def test_sgl_combine(self):
        assert sgl_combine(0.4, 0.9) == 0.4
        assert sgl_combine(0.9, 0.4) == 0.4


class TestValidation:
    @pytest.mark.parametrize("call", [
        lambda: diastole_lb(0.0),
        lambda: systole_lb(-1.0, 1.0),
        lambda: systole_lb(1.0, 0.0),
        lambda: bcg_diastole_lb(0.0, 1.0),
        lambda: volume_lb(1, 1.0, 1.0, 1.0),
        lambda: volume_lb(2, 1.0, 1.0, -1.0),
        lambda: packing_count_ub(1.0, 0.0, 1.0, 2),
        lambda: l0_combine(0.0, 1.0, 1.0),
        lambda: sgl_combine(-0.1, 1.0),
    ])
    def test_rejects_bad_inputs(self, call):
        with pytest.raises(BoundError):
            call()

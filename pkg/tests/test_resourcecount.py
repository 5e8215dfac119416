import math

import pytest

from mobell.exceptions import InvalidParameterError
from mobell.resourcecount import (
    CountingScenario,
    blocks_needed,
    ghz_cost,
    ring_cost_linear_optics,
    scaling_curves,
    scaling_to_csv,
)


class TestGhzCost:
    def test_reference_value(self):
        assert ghz_cost(CountingScenario()) == pytest.approx(192.0)

    def test_unit_success(self):
        assert ghz_cost(CountingScenario(ghz_success=1.0)) == 6.0

    def test_half_success(self):
        assert ghz_cost(CountingScenario(ghz_success=0.5)) == 12.0


class TestRingCost:
    def test_reference_value(self):
        assert ring_cost_linear_optics(CountingScenario()) == pytest.approx(4608.0)

    def test_perfect_fusion(self):
        s = CountingScenario(fusion_success=1.0)
        assert ring_cost_linear_optics(s) == pytest.approx(576.0)

    def test_single_ghz_no_fusion(self):
        s = CountingScenario(n_ghz_per_ring=1, n_fusions=1, fusion_success=1.0)
        assert ring_cost_linear_optics(s) == pytest.approx(192.0)

    def test_monotone_in_success_probabilities(self):
        base = ring_cost_linear_optics(CountingScenario())
        assert ring_cost_linear_optics(CountingScenario(fusion_success=0.6)) < base
        assert ring_cost_linear_optics(CountingScenario(ghz_success=0.05)) < base


class TestBlocksNeeded:
    def test_reference_value(self):
        assert blocks_needed(6, 0.2) == 60

    def test_unit_probability(self):
        assert blocks_needed(6, 1.0) == 12

    def test_small_ring(self):
        assert blocks_needed(3, 0.5) == 12

    def test_ceiling_bound(self):
        for ring in (3, 6, 7, 12):
            for p in (0.07, 0.2, 0.33, 1.0):
                n = blocks_needed(ring, p)
                assert n * p >= 2 * ring - p - 1e-9

    def test_margin_configurable(self):
        assert blocks_needed(6, 0.2, margin=1.0) == 30

    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            blocks_needed(0, 0.5)
        with pytest.raises(InvalidParameterError):
            blocks_needed(6, 0.0)


class TestScalingCurves:
    def test_reference_row(self):
        rows = scaling_curves([6], CountingScenario())
        assert rows[0].ring_size == 6
        assert rows[0].blocks_needed == 60
        assert rows[0].linear_optics_photons == pytest.approx(4608.0)

    def test_blocks_scale_linearly(self):
        rows = scaling_curves([6, 12, 24], CountingScenario())
        assert rows[1].blocks_needed == 2 * rows[0].blocks_needed
        assert rows[2].blocks_needed == 2 * rows[1].blocks_needed

    def test_linear_optics_grows_superlinearly(self):
        rows = scaling_curves([6, 12, 24], CountingScenario())
        r1 = rows[1].linear_optics_photons / rows[0].linear_optics_photons
        r2 = rows[2].linear_optics_photons / rows[1].linear_optics_photons
        assert r1 > 2.0
        assert r2 > r1

    def test_linear_when_fusion_perfect(self):
        rows = scaling_curves([6, 12], CountingScenario(fusion_success=1.0))
        assert rows[1].linear_optics_photons == pytest.approx(
            2 * rows[0].linear_optics_photons
        )

    def test_csv_layout(self, tmp_path):
        rows = scaling_curves([6, 12], CountingScenario())
        out = tmp_path / "counts.csv"
        scaling_to_csv(rows, out)
        lines = out.read_text().splitlines()
        assert lines[0] == "ring_size,blocks_needed,linear_optics_photons"
        assert lines[1] == "6,60,4608"


class TestScenarioValidation:
    def test_probability_bounds(self):
        with pytest.raises(InvalidParameterError):
            CountingScenario(fusion_success=0.0)
        with pytest.raises(InvalidParameterError):
            CountingScenario(ghz_success=1.5)

    def test_integer_bounds(self):
        with pytest.raises(InvalidParameterError):
            CountingScenario(ghz_photons=0)

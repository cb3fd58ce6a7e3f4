import pytest

from llm_ens.harness import (format_cell, format_pct, improvement_pct,
                             mark_best, mean_std)
from llm_ens.harness.stats import format_number, rank


class TestMeanStd:

    def test_sample_std(self):
        mean, std = mean_std([1, 2, 3, 4, 5])
        assert mean == 3.0
        assert std == pytest.approx(1.5811, abs=1e-4)

    def test_constant(self):
        assert mean_std([5, 5, 5]) == (5.0, 0.0)

    def test_single_value(self):
        assert mean_std([7.5]) == (7.5, 0.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            mean_std([])

    def test_scaling(self):
        mean, std = mean_std([1, 2, 4])
        scaled_mean, scaled_std = mean_std([10, 20, 40])
        assert scaled_mean == pytest.approx(10 * mean)
        assert scaled_std == pytest.approx(10 * std)


class TestImprovement:

    @pytest.mark.parametrize("candidate,baseline,expected", [
        (10400, 8600, 20.9),
        (1116, 738, 51.2),
        (12575, 10400, 20.9),
        (11000, 7275, 51.2),
        (11, 6, 83.3),
        (5, 6, -16.7),
        (6, 6, 0.0),
    ])
    def test_percent(self, candidate, baseline, expected):
        assert improvement_pct(candidate, baseline) == expected

    @pytest.mark.parametrize("baseline", [0, -3])
    def test_undefined_baseline(self, baseline):
        assert improvement_pct(5, baseline) is None


class TestRanking:

    def test_best_and_second(self):
        assert mark_best({"a": 1.0, "b": 3.0, "c": 2.0}) == ("b", "c")

    def test_ensemble_row(self):
        row = {"llm-ens": 10400, "aggregate": 8600, "majority": 5000}
        assert mark_best(row) == ("llm-ens", "aggregate")

    def test_ties_go_to_smaller_name(self):
        assert rank({"llm-ens": 5.0, "best-single": 5.0, "rank": 1.0}) == [
            "best-single", "llm-ens", "rank"]

    def test_needs_two(self):
        with pytest.raises(ValueError):
            mark_best({"a": 1.0})


class TestFormatting:

    @pytest.mark.parametrize("value,expected", [
        (10400, "10400"),
        (4159.3333, "4159.33"),
        (5.5, "5.5"),
        (0.004, "0"),
        (-0.001, "0"),
        (-2.25, "-2.25"),
    ])
    def test_number(self, value, expected):
        assert format_number(value) == expected

    def test_cell(self):
        assert format_cell(10400, 4159.33333) == "10400(4159.33)"

    def test_pct(self):
        assert format_pct(20.9) == "20.9"
        assert format_pct(0.0) == "0.0"
        assert format_pct(None) == "n/a"

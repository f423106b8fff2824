"""Event scoring, tier evaluation, cohort pass rates, and impact screens."""

import math

import pytest

from regaudit import (
    Cohort,
    DegenerateError,
    EventStandard,
    InputError,
    ScoringStandard,
    difficulty_ratio,
    evaluate,
    impact_ratio,
    io,
    pass_rates,
    score_event,
    wathen_1rm,
)


@pytest.fixture(scope="module")
def acft():
    return io.load_standard(io.asset_path("acft_standard.json"))


@pytest.fixture(scope="module")
def demo_cohort():
    return io.load_cohort(io.asset_path("demo_cohort.csv"))


def tiny_standard():
    return ScoringStandard(
        events=(
            EventStandard("lift", "lb", "higher_is_better", ((100, 300.0), (60, 100.0), (0, 20.0))),
            EventStandard("run", "s", "lower_is_better", ((100, 600.0), (60, 900.0), (0, 1200.0))),
        ),
        tiers={"basic": 60, "elite": 90},
    )


class TestEventStandard:
    def test_direction_coerced_from_string(self):
        event = EventStandard("x", "u", "higher_is_better", ((100, 10.0), (0, 0.0)))
        assert event.direction.value == "higher_is_better"

    def test_needs_two_anchors(self):
        with pytest.raises(InputError):
            EventStandard("x", "u", "higher_is_better", ((100, 10.0),))

    def test_points_strictly_descending(self):
        with pytest.raises(InputError):
            EventStandard("x", "u", "higher_is_better", ((100, 10.0), (100, 5.0), (0, 0.0)))

    def test_thresholds_follow_direction(self):
        with pytest.raises(InputError):
            EventStandard("x", "u", "higher_is_better", ((100, 10.0), (0, 20.0)))
        with pytest.raises(InputError):
            EventStandard("x", "u", "lower_is_better", ((100, 20.0), (0, 10.0)))

    def test_best_and_worst_points(self):
        event = EventStandard("x", "u", "higher_is_better", ((100, 10.0), (60, 5.0), (0, 0.0)))
        assert event.best_points == 100
        assert event.worst_points == 0


class TestScoringStandard:
    def test_duplicate_event_names(self):
        event = EventStandard("x", "u", "higher_is_better", ((100, 10.0), (0, 0.0)))
        with pytest.raises(InputError):
            ScoringStandard(events=(event, event), tiers={"t": 50})

    def test_needs_tiers(self):
        event = EventStandard("x", "u", "higher_is_better", ((100, 10.0), (0, 0.0)))
        with pytest.raises(InputError):
            ScoringStandard(events=(event,), tiers={})

    def test_tier_must_be_achievable_on_every_event(self):
        capped = EventStandard("low", "u", "higher_is_better", ((70, 10.0), (0, 0.0)))
        full = EventStandard("high", "u", "higher_is_better", ((100, 10.0), (0, 0.0)))
        with pytest.raises(InputError):
            ScoringStandard(events=(capped, full), tiers={"t": 80})

    def test_tier_lookup(self):
        standard = tiny_standard()
        assert standard.tier_minimum("basic") == 60
        with pytest.raises(InputError):
            standard.tier_minimum("platinum")

    def test_event_lookup(self):
        standard = tiny_standard()
        assert standard.event("run").units == "s"
        with pytest.raises(InputError):
            standard.event("swim")


class TestWathen:
    def test_reference_value(self):
        assert wathen_1rm(185.0, 5) == pytest.approx(215.67763, abs=1e-4)

    def test_single_rep_factor(self):
        assert wathen_1rm(100.0, 1) == pytest.approx(101.3042, abs=1e-3)

    def test_linear_in_weight(self):
        assert wathen_1rm(200.0, 3) == pytest.approx(2.0 * wathen_1rm(100.0, 3))

    def test_increasing_in_reps(self):
        values = [wathen_1rm(150.0, r) for r in range(1, 15)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_domain(self):
        with pytest.raises(InputError):
            wathen_1rm(-5.0, 3)
        with pytest.raises(InputError):
            wathen_1rm(100.0, 0)
        assert wathen_1rm(0.0, 3) == 0.0


class TestScoreEvent:
    def test_anchor_values_exact(self, acft):
        assert score_event(acft, "deadlift", 340.0) == 100
        assert score_event(acft, "deadlift", 200.0) == 70
        assert score_event(acft, "deadlift", 140.0) == 60
        assert score_event(acft, "run", 810.0) == 100
        assert score_event(acft, "run", 1080.0) == 70

    def test_beyond_best_clamps(self, acft):
        assert score_event(acft, "deadlift", 500.0) == 100
        assert score_event(acft, "run", 600.0) == 100

    def test_beyond_worst_clamps(self, acft):
        assert score_event(acft, "deadlift", 50.0) == 0
        assert score_event(acft, "run", 1500.0) == 0

    def test_interpolation_floors(self, acft):
        # deadlift 170 sits 3/4 of the way from 140 (60 pts) to 180 (65 pts)
        assert score_event(acft, "deadlift", 170.0) == 63
        # run 1100 sits 2/3 of the way from 1140 (65) to 1080 (70)
        assert score_event(acft, "run", 1100.0) == 68

    def test_lower_is_better_orientation(self, acft):
        fast = score_event(acft, "run", 900.0)
        slow = score_event(acft, "run", 1200.0)
        assert fast > slow

    def test_points_above_hundred_clamped(self):
        inflated = ScoringStandard(
            events=(EventStandard("x", "u", "higher_is_better", ((120, 10.0), (0, 0.0))),),
            tiers={"t": 50},
        )
        assert score_event(inflated, "x", 10.0) == 100

    def test_negative_points_clamped(self):
        sunk = ScoringStandard(
            events=(EventStandard("x", "u", "higher_is_better", ((50, 10.0), (-20, 0.0))),),
            tiers={"t": 0},
        )
        assert score_event(sunk, "x", 0.0) == 0

    def test_unknown_event(self, acft):
        with pytest.raises(InputError):
            score_event(acft, "swim", 1.0)


class TestEvaluate:
    def test_all_events_must_reach_minimum(self):
        standard = tiny_standard()
        ok, points = evaluate(standard, "basic", {"lift": 300.0, "run": 600.0})
        assert ok and points == {"lift": 100, "run": 100}
        ok, points = evaluate(standard, "basic", {"lift": 300.0, "run": 1100.0})
        assert not ok
        assert points["lift"] == 100 and points["run"] < 60

    def test_no_compensation_between_events(self):
        # a perfect lift cannot buy back a failed run
        standard = tiny_standard()
        ok, _ = evaluate(standard, "elite", {"lift": 300.0, "run": 899.0})
        assert not ok

    def test_missing_events_raise(self):
        with pytest.raises(InputError):
            evaluate(tiny_standard(), "basic", {"lift": 300.0})


class TestCohort:
    def test_group_cells_kept_as_text(self):
        cohort = Cohort(columns=("group:site", "x"), rows=(("7", "1.5"),))
        assert cohort.rows[0] == ("7", 1.5)

    def test_event_cells_must_be_numeric(self):
        with pytest.raises(InputError):
            Cohort(columns=("group:site", "x"), rows=(("a", "fast"),))

    def test_row_width_checked(self):
        with pytest.raises(InputError):
            Cohort(columns=("group:site", "x"), rows=(("a",),))

    def test_column_partition(self, demo_cohort):
        assert demo_cohort.group_columns == ("group:gender",)
        assert set(demo_cohort.event_columns) == {
            "deadlift", "power_throw", "run", "push_ups", "leg_tuck", "sdc",
        }


class TestPassRates:
    def test_demo_cohort_gold(self, acft, demo_cohort):
        report = pass_rates(demo_cohort, acft, "gold", "group:gender")
        assert report.tier == "gold"
        by_group = {g.group: g for g in report.groups}
        assert by_group["male"].size == 12
        assert by_group["male"].overall == pytest.approx(11.0 / 12.0)
        assert by_group["female"].overall == pytest.approx(4.0 / 12.0)

    def test_first_seen_group_order(self, acft, demo_cohort):
        report = pass_rates(demo_cohort, acft, "gold", "group:gender")
        assert [g.group for g in report.groups] == ["male", "female"]

    def test_per_event_rates_bound_overall(self, acft, demo_cohort):
        # conjunctive scoring: the overall rate cannot beat any single event
        report = pass_rates(demo_cohort, acft, "gold", "group:gender")
        for group in report.groups:
            assert group.overall <= min(rate for _, rate in group.per_event) + 1e-12

    def test_empty_labels_warned_and_skipped(self, acft):
        cohort = Cohort(
            columns=("group:gender", "deadlift", "power_throw", "run", "push_ups", "leg_tuck", "sdc"),
            rows=(
                ("male", 340, 12.5, 810, 60, 20, 93),
                ("", 340, 12.5, 810, 60, 20, 93),
            ),
        )
        with pytest.warns(UserWarning):
            report = pass_rates(cohort, acft, "gold", "group:gender")
        assert [g.group for g in report.groups] == ["male"]
        assert report.groups[0].size == 1

    def test_group_column_must_have_prefix(self, acft, demo_cohort):
        with pytest.raises(InputError):
            pass_rates(demo_cohort, acft, "gold", "deadlift")

    def test_missing_event_columns(self, acft):
        cohort = Cohort(columns=("group:gender", "deadlift"), rows=(("male", 340),))
        with pytest.raises(InputError):
            pass_rates(cohort, acft, "gold", "group:gender")


class TestImpactRatio:
    def test_reference_rates(self):
        report = impact_ratio({"female": 0.32, "male": 0.89})
        assert report.ratio == pytest.approx(0.35955056, abs=1e-7)
        assert report.flagged

    def test_boundary_not_flagged(self):
        report = impact_ratio({"a": 0.4, "b": 0.5})
        assert report.ratio == pytest.approx(0.8)
        assert not report.flagged

    def test_needs_two_groups(self):
        with pytest.raises(InputError):
            impact_ratio({"only": 0.5})

    def test_rates_must_be_fractions(self):
        with pytest.raises(InputError):
            impact_ratio({"a": 0.5, "b": 32.0})

    def test_all_zero_rates_degenerate(self):
        with pytest.raises(DegenerateError):
            impact_ratio({"a": 0.0, "b": 0.0})

    def test_more_than_two_groups(self):
        report = impact_ratio({"a": 0.9, "b": 0.6, "c": 0.3})
        assert report.ratio == pytest.approx(1.0 / 3.0)


class TestDifficultyRatio:
    def test_reference_counts(self):
        # legacy test vs current test failure rates, by gender
        assert difficulty_ratio((68, 112), (3, 101)) == pytest.approx(20.440476, abs=1e-4)
        assert difficulty_ratio((46, 77), (45, 95)) == pytest.approx(1.2611833, abs=1e-5)

    def test_zero_baseline_failures(self):
        with pytest.raises(DegenerateError):
            difficulty_ratio((5, 100), (0, 100))

    def test_count_validation(self):
        with pytest.raises(InputError):
            difficulty_ratio((5, 0), (1, 10))
        with pytest.raises(InputError):
            difficulty_ratio((11, 10), (1, 10))

    def test_equal_rates_give_one(self):
        assert difficulty_ratio((10, 100), (5, 50)) == pytest.approx(1.0)


def test_wathen_rounding_matches_published_convention():
    # typical gym chart values land on whole pounds after rounding
    assert round(wathen_1rm(225.0, 3)) == 245
    assert math.isclose(wathen_1rm(135.0, 10), 135.0 * wathen_1rm(1.0, 10))

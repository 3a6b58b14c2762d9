"""Velocity and sociality scores, closed forms and monotonicity."""

import math

import pytest

from transit_equity.gtfs import Stop
from transit_equity.hexgrid import build_grid, hexagon_area_km2
from transit_equity.router import TravelTimeField, build_timetable
from transit_equity.scores import (
    DEFAULT_BUDGETS_MIN,
    ScoreParams,
    reachable_set,
    score_city,
    sociality_score,
    velocity_score,
)

from conftest import equator_circle, equator_rect
from feedgen import make_feed

HEX_AREA = hexagon_area_km2(500.0)


def field_from_times(avg_minutes, origin=(0, 0)) -> TravelTimeField:
    return TravelTimeField(origin=origin, departures=(0,), arrival_s=({},), avg_minutes=avg_minutes)


def only_origin_velocity(budgets=DEFAULT_BUDGETS_MIN, area=HEX_AREA) -> float:
    radius = math.sqrt(area / math.pi)
    return radius * sum(60.0 / t for t in budgets) / len(budgets)


class TestReachableSet:
    def test_budget_below_everything_keeps_origin(self):
        field = field_from_times({(0, 0): 0.0, (1, 0): 12.0, (2, 0): 30.0})
        assert reachable_set(field, 5.0) == {(0, 0)}

    def test_huge_budget_takes_all(self):
        times = {(0, 0): 0.0, (1, 0): 12.0, (2, 0): 30.0}
        assert reachable_set(field_from_times(times), 1e9) == set(times)

    def test_mixed_budget_25(self):
        times = {(0, 0): 0.0, (1, 0): 10.0, (2, 0): 20.0, (3, 0): 40.0}
        assert reachable_set(field_from_times(times), 25.0) == {(0, 0), (1, 0), (2, 0)}

    def test_nesting(self):
        times = {(i, 0): float(i * 7) for i in range(20)}
        field = field_from_times(times)
        budgets = [1, 5, 15, 35, 60, 200]
        for small, large in zip(budgets, budgets[1:]):
            assert reachable_set(field, small) <= reachable_set(field, large)


class TestVelocityScore:
    def test_only_origin_closed_form(self):
        field = field_from_times({(0, 0): 0.0})
        v = velocity_score(field, DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        assert v == pytest.approx(only_origin_velocity(), abs=1e-12)
        assert v == pytest.approx(0.947, abs=5e-4)

    def test_constant_speed_city_recovers_10_kmh(self):
        # reachable counts sized so the equivalent radius is (10 km/h)*t
        counts = {t: round(math.pi * (10.0 * t / 60.0) ** 2 / HEX_AREA) for t in (15, 30, 45, 60)}
        times = {}
        i = 0
        for budget, minutes in ((15, 10.0), (30, 25.0), (45, 40.0), (60, 55.0)):
            while i < counts[budget]:
                times[(i, 0)] = 0.0 if i == 0 else minutes
                i += 1
        field = field_from_times(times)
        v = velocity_score(field, DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        assert v == pytest.approx(10.0, rel=0.02)

    def test_doubling_counts_scales_by_sqrt2(self):
        times = {(i, 0): float(3 * i) for i in range(12)}
        doubled = dict(times)
        doubled.update({(i, 1): float(3 * i) for i in range(12)})
        v1 = velocity_score(field_from_times(times), DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        v2 = velocity_score(field_from_times(doubled, origin=(0, 0)), DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        assert v2 == pytest.approx(math.sqrt(2.0) * v1, rel=1e-12)

    def test_id_relabeling_is_irrelevant(self):
        times = {(i, 0): float(5 * i) for i in range(9)}
        relabeled = {(9 - i, 7): m for (i, _), m in times.items()}
        v1 = velocity_score(field_from_times(times, origin=(0, 0)), DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        v2 = velocity_score(field_from_times(relabeled, origin=(9, 7)), DEFAULT_BUDGETS_MIN, hex_area_km2=HEX_AREA)
        assert v1 == v2


class TestSocialityScore:
    def test_zero_population_everywhere(self):
        field = field_from_times({(0, 0): 0.0, (1, 0): 5.0})
        assert sociality_score(field, DEFAULT_BUDGETS_MIN, pop={}) == 0.0

    def test_everything_inside_15_minutes(self):
        times = {(i, 0): float(i) for i in range(5)}
        pop = {(i, 0): 1000.0 for i in range(5)}
        assert sociality_score(field_from_times(times), DEFAULT_BUDGETS_MIN, pop=pop) == 5000.0

    def test_hand_average_partial_reachability(self):
        times = {(0, 0): 0.0, (1, 0): 40.0}  # B only within the 45/60 budgets
        pop = {(0, 0): 100.0, (1, 0): 300.0}
        s = sociality_score(field_from_times(times), DEFAULT_BUDGETS_MIN, pop=pop)
        assert s == pytest.approx((100 + 100 + 400 + 400) / 4.0, rel=1e-12)

    def test_monotone_in_population_and_budget(self):
        times = {(i, 0): float(10 * i) for i in range(6)}
        pop = {(i, 0): 50.0 * i for i in range(6)}
        field = field_from_times(times)
        base = sociality_score(field, DEFAULT_BUDGETS_MIN, pop=pop)
        richer = {h: c + 5.0 for h, c in pop.items()}
        assert sociality_score(field, DEFAULT_BUDGETS_MIN, pop=richer) >= base
        wider = tuple(b + 10 for b in DEFAULT_BUDGETS_MIN)
        assert sociality_score(field, wider, pop=pop) >= base


class TestScoreCity:
    def test_single_hexagon_city(self):
        grid = build_grid(equator_rect(50, 50), 500.0)
        tt = build_timetable(make_feed([], []), grid)
        field = score_city(grid, tt, {(0, 0): 1234.0})
        assert set(field.v_kmh) == {(0, 0)}
        assert field.v_kmh[(0, 0)] == pytest.approx(only_origin_velocity(area=grid.hex_area_km2), rel=1e-12)
        assert field.s_pop[(0, 0)] == 1234.0
        assert field.pop[(0, 0)] == 1234.0

    def test_rosette_outer_hexagons_score_equally(self):
        grid = build_grid(equator_circle(900), 500.0)
        assert len(grid) == 7
        tt = build_timetable(make_feed([], []), grid, max_walk_m=1400.0)
        pop = {h: 10.0 for h in grid.ids()}
        field = score_city(grid, tt, pop, ScoreParams(window=(28800, 28800), step_s=1200))
        outer = [h for h in grid.ids() if h != (0, 0)]
        v_values = [field.v_kmh[h] for h in outer]
        s_values = [field.s_pop[h] for h in outer]
        assert max(v_values) - min(v_values) <= 1e-9
        assert max(s_values) - min(s_values) <= 1e-9
        assert field.v_kmh[(0, 0)] > max(v_values)
        assert field.s_pop[(0, 0)] > max(s_values)

    def test_faster_connection_never_hurts(self):
        grid = build_grid(equator_rect(6_000, 2_000), 500.0)
        origin = grid.hexagons[(0, 0)]
        far = grid.hexagons[(3, 0)]
        stops = [Stop("X", origin.center_lon, origin.center_lat), Stop("W", far.center_lon, far.center_lat)]
        params = ScoreParams(window=(28800, 30000), step_s=1200)
        pop = {h: 25.0 for h in grid.ids()}
        base = score_city(grid, build_timetable(make_feed(stops, []), grid), pop, params)
        express = make_feed(stops, [("fast", [("X", 29000, 29000), ("W", 29200, 29200)])])
        upgraded = score_city(grid, build_timetable(express, grid), pop, params)
        for hex_id in grid.ids():
            assert upgraded.v_kmh[hex_id] >= base.v_kmh[hex_id] - 1e-12
            assert upgraded.s_pop[hex_id] >= base.s_pop[hex_id] - 1e-12
        assert upgraded.v_kmh[(0, 0)] > base.v_kmh[(0, 0)]

    def test_score_averaging_modes_agree_on_static_network(self):
        grid = build_grid(equator_rect(2_000, 2_000), 500.0)
        tt = build_timetable(make_feed([], []), grid)
        pop = {h: 7.0 for h in grid.ids()}
        by_times = score_city(grid, tt, pop, ScoreParams(window=(28800, 32400), step_s=1800))
        by_scores = score_city(
            grid, tt, pop, ScoreParams(window=(28800, 32400), step_s=1800, averaging="scores")
        )
        for hex_id in grid.ids():
            assert by_times.v_kmh[hex_id] == pytest.approx(by_scores.v_kmh[hex_id], rel=1e-12)
            assert by_times.s_pop[hex_id] == pytest.approx(by_scores.s_pop[hex_id], rel=1e-12)

    def test_invalid_params_rejected(self):
        with pytest.raises(ValueError):
            ScoreParams(budgets_min=())
        with pytest.raises(ValueError):
            ScoreParams(averaging="geometric")

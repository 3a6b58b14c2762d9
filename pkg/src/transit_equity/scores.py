"""Per-hexagon accessibility scores from travel-time fields.

Two scores per origin hexagon, each a mean over a set of time budgets:

* velocity (km/h): the equivalent-radius speed.  For budget ``t`` the
  reachable hexagons cover area ``A(t)``; the score contribution is
  ``sqrt(A(t)/pi) / t``, the speed needed to cover an equally large disc
  in a straight line.
* sociality (persons): total population of the reachable hexagons.

Budgets default to 15/30/45/60 minutes.  By default reachability is judged
on departure-averaged travel times; the alternative mode scores each
sampled departure separately and averages the scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .hexgrid import HexGrid
from .router import TravelTimeField, Timetable, average_travel_times

DEFAULT_BUDGETS_MIN = (15.0, 30.0, 45.0, 60.0)


@dataclass(frozen=True)
class ScoreParams:
    """Knobs for a city scoring run."""

    window: tuple[int, int] = (6 * 3600, 20 * 3600)
    step_s: int = 1200
    budgets_min: tuple[float, ...] = DEFAULT_BUDGETS_MIN
    averaging: str = "times"  # "times": average travel times, then score;
    # "scores": score each departure, then average

    def __post_init__(self) -> None:
        if not self.budgets_min or any(b <= 0 for b in self.budgets_min):
            raise ValueError("budgets must be a non-empty list of positive minutes")
        if self.averaging not in ("times", "scores"):
            raise ValueError(f"averaging must be 'times' or 'scores', got {self.averaging!r}")


@dataclass(frozen=True)
class AccessibilityField:
    """Velocity and sociality scores plus population for every grid hexagon."""

    grid: HexGrid = field(repr=False)
    v_kmh: Mapping[tuple[int, int], float]
    s_pop: Mapping[tuple[int, int], float]
    pop: Mapping[tuple[int, int], float]


def reachable_set(field: TravelTimeField, budget_min: float) -> set[tuple[int, int]]:
    """Hexagons whose average travel time fits the budget; always contains
    the origin."""
    if budget_min <= 0:
        raise ValueError(f"budget must be positive, got {budget_min}")
    reached = {h for h, minutes in field.avg_minutes.items() if minutes <= budget_min}
    reached.add(field.origin)
    return reached


def velocity_score(
    field: TravelTimeField,
    budgets_min: tuple[float, ...] = DEFAULT_BUDGETS_MIN,
    *,
    hex_area_km2: float,
) -> float:
    """Equivalent-radius speed in km/h, averaged over the budgets."""
    if hex_area_km2 <= 0:
        raise ValueError(f"hexagon area must be positive, got {hex_area_km2}")
    _check_budgets(budgets_min)
    return _velocity_from_times(field.avg_minutes, field.origin, budgets_min, hex_area_km2)


def sociality_score(
    field: TravelTimeField,
    budgets_min: tuple[float, ...] = DEFAULT_BUDGETS_MIN,
    *,
    pop: Mapping[tuple[int, int], float],
) -> float:
    """Mean reachable population over the budgets."""
    _check_budgets(budgets_min)
    return _sociality_from_times(field.avg_minutes, field.origin, budgets_min, pop)


def _check_budgets(budgets_min) -> None:
    if not budgets_min or any(b <= 0 for b in budgets_min):
        raise ValueError("budgets must be a non-empty list of positive minutes")


def score_city(
    grid: HexGrid,
    timetable: Timetable,
    pop: Mapping[tuple[int, int], float],
    params: ScoreParams = ScoreParams(),
) -> AccessibilityField:
    """Route from every hexagon center and score the whole grid."""
    area = grid.hex_area_km2
    budgets = params.budgets_min
    v_kmh: dict[tuple[int, int], float] = {}
    s_pop: dict[tuple[int, int], float] = {}
    for origin in grid.ids():
        tt_field = average_travel_times(timetable, origin, params.window, params.step_s)
        if params.averaging == "times":
            v_kmh[origin] = _velocity_from_times(tt_field.avg_minutes, origin, budgets, area)
            s_pop[origin] = _sociality_from_times(tt_field.avg_minutes, origin, budgets, pop)
        else:
            v_samples, s_samples = [], []
            for depart, arrivals in zip(tt_field.departures, tt_field.arrival_s):
                minutes = {h: (t - depart) / 60.0 for h, t in arrivals.items()}
                v_samples.append(_velocity_from_times(minutes, origin, budgets, area))
                s_samples.append(_sociality_from_times(minutes, origin, budgets, pop))
            v_kmh[origin] = sum(v_samples) / len(v_samples)
            s_pop[origin] = sum(s_samples) / len(s_samples)
    populations = {h: float(pop.get(h, 0.0)) for h in grid.ids()}
    return AccessibilityField(grid=grid, v_kmh=v_kmh, s_pop=s_pop, pop=populations)


def _reachable(minutes: Mapping[tuple[int, int], float], origin, budget_min: float):
    reached = {h for h, m in minutes.items() if m <= budget_min}
    reached.add(origin)
    return reached


def _velocity_from_times(minutes, origin, budgets_min, hex_area_km2: float) -> float:
    speeds = []
    for budget in budgets_min:
        area = len(_reachable(minutes, origin, budget)) * hex_area_km2
        radius_km = math.sqrt(area / math.pi)
        speeds.append(radius_km / (budget / 60.0))
    return sum(speeds) / len(speeds)


def _sociality_from_times(minutes, origin, budgets_min, pop) -> float:
    totals = []
    for budget in budgets_min:
        totals.append(sum(pop.get(h, 0.0) for h in _reachable(minutes, origin, budget)))
    return sum(totals) / len(totals)

"""Transit accessibility scoring and spatial equity metrics.

Pipeline: parse a GTFS feed, tessellate the study area into 500 m-side
hexagons, route from every hexagon center over a daily departure window,
convert travel times into velocity/sociality accessibility scores, and
quantify their spatial distribution with Lorenz curves, Gini indices,
top-share ratios and cross-city rankings.
"""

from .equity import (
    GiniTable,
    LorenzCurve,
    gini,
    lorenz_hexagon,
    lorenz_population,
    normalize_across_cities,
    rank_cities,
    top_share_ratio,
)
from .errors import DegenerateDataError, InputDataError, TransitEquityError
from .gtfs import Feed, parse_feed, parse_gtfs_time
from .hexgrid import HexGrid, Hexagon, StudyArea, build_grid, load_boundary, locate
from .population import PopulationCell, assign_population, load_population
from .router import Connection, Timetable, TravelTimeField, average_travel_times, build_timetable, earliest_arrivals
from .scores import AccessibilityField, ScoreParams, reachable_set, score_city, sociality_score, velocity_score

__version__ = "0.1.0"

__all__ = [
    "AccessibilityField",
    "Connection",
    "DegenerateDataError",
    "Feed",
    "GiniTable",
    "HexGrid",
    "Hexagon",
    "InputDataError",
    "LorenzCurve",
    "PopulationCell",
    "ScoreParams",
    "StudyArea",
    "Timetable",
    "TransitEquityError",
    "TravelTimeField",
    "assign_population",
    "average_travel_times",
    "build_grid",
    "build_timetable",
    "earliest_arrivals",
    "gini",
    "load_boundary",
    "load_population",
    "locate",
    "lorenz_hexagon",
    "lorenz_population",
    "normalize_across_cities",
    "parse_feed",
    "parse_gtfs_time",
    "rank_cities",
    "reachable_set",
    "score_city",
    "sociality_score",
    "top_share_ratio",
    "velocity_score",
]

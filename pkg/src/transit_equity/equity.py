"""Lorenz curves, Gini indices, top-share ratios and city comparison.

Stakeholders are either hexagons (one each) or residents (each hexagon
weighted by its population, every resident inheriting the hexagon score).
Stakeholders are sorted worst to best; the curve accumulates the score
share against the stakeholder share, with (0, 0) prepended, so it runs
from (0, 0) to (1, 1) under the equity diagonal.

The Gini index is twice the area between the diagonal and the curve,
computed with the trapezoidal rule on the discrete points.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDataError

GINI_METRICS = ("G_v_hex", "G_s_hex", "G_v_ind", "G_s_ind")


@dataclass(frozen=True)
class LorenzCurve:
    """Cumulative-share curve; ``points`` runs from (0, 0) to (1, 1)."""

    points: tuple[tuple[float, float], ...]
    kind: str = "hexagon"  # "hexagon" or "population"
    score_kind: str = "velocity"  # "velocity" or "sociality"


@dataclass(frozen=True)
class GiniTable:
    """Gini index per city and metric column."""

    rows: dict[str, dict[str, float]]

    def __post_init__(self) -> None:
        for city, values in self.rows.items():
            for metric in GINI_METRICS:
                value = values.get(metric)
                if value is None or not np.isfinite(value) or not (0.0 <= value < 1.0):
                    raise ValueError(f"city {city!r}: {metric} must be finite in [0, 1), got {value}")

    def cities(self) -> list[str]:
        return list(self.rows)

    def column(self, metric: str) -> dict[str, float]:
        if metric not in GINI_METRICS:
            raise ValueError(f"unknown metric {metric!r}, expected one of {GINI_METRICS}")
        return {city: values[metric] for city, values in self.rows.items()}


def lorenz_hexagon(scores, kind: str = "hexagon", score_kind: str = "velocity") -> LorenzCurve:
    """Lorenz curve with each score holder as one equally-weighted stakeholder.

    Ties keep input (id) order, which does not affect the curve but fixes
    the sort deterministically.
    """
    values = np.asarray(list(scores), dtype=float)
    if values.size == 0:
        raise DegenerateDataError("cannot build a Lorenz curve from zero stakeholders")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise ValueError("scores must be finite and non-negative")
    order = np.argsort(values, kind="stable")
    cumulative = np.cumsum(values[order])
    total = cumulative[-1]
    if total <= 0.0:
        raise DegenerateDataError("all scores are zero; the share curve is undefined")
    n = values.size
    x = np.arange(1, n + 1) / n
    if np.all(values == values[0]):
        y = x  # equal stakeholders hold equal shares: exact diagonal
    else:
        y = cumulative / total
    points = [(0.0, 0.0)] + list(zip(x.tolist(), y.tolist()))
    return LorenzCurve(points=tuple(points), kind=kind, score_kind=score_kind)


def lorenz_population(scores, weights, score_kind: str = "velocity") -> LorenzCurve:
    """Lorenz curve weighting each hexagon by its population.

    Equivalent to enumerating residents one by one (each with their
    hexagon's score) and grouping equal runs; zero-weight hexagons carry no
    stakeholders and are dropped.
    """
    values = np.asarray(list(scores), dtype=float)
    w = np.asarray(list(weights), dtype=float)
    if values.shape != w.shape:
        raise ValueError(f"{values.size} scores vs {w.size} weights")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and non-negative")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise ValueError("scores must be finite and non-negative")
    keep = w > 0
    values, w = values[keep], w[keep]
    if values.size == 0 or w.sum() <= 0.0:
        raise DegenerateDataError("total population is zero; no stakeholders")
    order = np.argsort(values, kind="stable")
    values, w = values[order], w[order]
    cum_w = np.cumsum(w)
    cum_wa = np.cumsum(w * values)
    if cum_wa[-1] <= 0.0:
        raise DegenerateDataError("population-weighted score total is zero")
    x = cum_w / cum_w[-1]
    if np.all(values == values[0]):
        y = x  # one shared score: exact diagonal for any weights
    else:
        y = cum_wa / cum_wa[-1]
    points = [(0.0, 0.0)] + list(zip(x.tolist(), y.tolist()))
    return LorenzCurve(points=tuple(points), kind="population", score_kind=score_kind)


def gini(curve: LorenzCurve) -> float:
    """Twice the area between the diagonal and the curve, in [0, 1)."""
    pts = np.asarray(curve.points)
    x, y = pts[:, 0], pts[:, 1]
    area = float(np.trapezoid(y, x))
    return max(0.0, (0.5 - area) / 0.5)


def top_share_ratio(scores, weights=None, fraction: float = 0.01) -> float:
    """Mean score of the best ``fraction`` of total weight over the overall mean.

    The stakeholder straddling the cutoff is included fractionally, so the
    ratio is continuous in ``fraction``.  Unit weights by default.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    values = np.asarray(list(scores), dtype=float)
    w = np.ones_like(values) if weights is None else np.asarray(list(weights), dtype=float)
    if values.shape != w.shape:
        raise ValueError(f"{values.size} scores vs {w.size} weights")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite and non-negative")
    keep = w > 0
    values, w = values[keep], w[keep]
    if values.size == 0:
        raise DegenerateDataError("total weight is zero")
    order = np.argsort(-values, kind="stable")  # best first
    values, w = values[order], w[order]
    cum_w = np.cumsum(w)
    cum_wa = np.cumsum(w * values)
    total_w, total_wa = float(cum_w[-1]), float(cum_wa[-1])
    if total_wa <= 0.0:
        raise DegenerateDataError("weighted score total is zero")
    target = fraction * total_w
    if target >= total_w:  # fraction == 1 (or rounds up to it): everyone is in
        top_sum, target = total_wa, total_w
    else:
        k = int(np.searchsorted(cum_w, target, side="left"))
        prev_w = float(cum_w[k - 1]) if k > 0 else 0.0
        prev_wa = float(cum_wa[k - 1]) if k > 0 else 0.0
        top_sum = prev_wa + (target - prev_w) * float(values[k])
    top_mean = top_sum / target
    overall_mean = total_wa / total_w
    return float(top_mean / overall_mean)


def normalize_across_cities(table: GiniTable, mode: str = "table4") -> dict[str, dict[str, float]]:
    """Per-column normalization for cross-city comparison.

    ``table4`` (default): (x - column mean) / (column max - column min),
    a mean-centered range scaling.  ``minmax``: (x - min) / (max - min).
    Constant columns normalize to all zeros with a warning.
    """
    if mode not in ("table4", "minmax"):
        raise ValueError(f"unknown normalization mode {mode!r}")
    cities = table.cities()
    if len(cities) < 2:
        raise ValueError("normalization needs at least 2 cities")
    normalized: dict[str, dict[str, float]] = {city: {} for city in cities}
    for metric in GINI_METRICS:
        column = table.column(metric)
        values = np.array([column[city] for city in cities])
        spread = values.max() - values.min()
        if spread == 0.0:
            warnings.warn(f"column {metric} is constant across cities; normalized to 0")
            for city in cities:
                normalized[city][metric] = 0.0
            continue
        origin = values.mean() if mode == "table4" else values.min()
        for city, value in zip(cities, values):
            normalized[city][metric] = float((value - origin) / spread)
    return normalized


def rank_cities(table: GiniTable, metric: str) -> list[str]:
    """Cities ordered worst (highest Gini) to best; ties break by name."""
    column = table.column(metric)
    return sorted(column, key=lambda city: (-column[city], city))

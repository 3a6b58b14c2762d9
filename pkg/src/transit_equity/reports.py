"""Readers and writers for the pipeline's file artifacts.

All writers are deterministic: rows are sorted by hexagon axial id, JSON
keys are sorted, and numbers are rounded before serialization (coordinates
to 6 decimal places, everything else to 6 significant digits).
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .equity import GINI_METRICS, LorenzCurve
from .errors import InputDataError
from .scores import AccessibilityField

SCORES_HEADER = ["hex_q", "hex_r", "center_lon", "center_lat", "population", "velocity_kmh", "sociality"]

TOP_SHARE_KEYS = ("top_share_v_hex", "top_share_s_hex", "top_share_v_ind", "top_share_s_ind")


def sig6(value: float) -> str:
    """6-significant-digit decimal rendering used in CSV cells."""
    return f"{value:.6g}"


def round_sig6(value: float) -> float:
    """Round a float through the 6-significant-digit representation."""
    return float(f"{value:.6g}")


def _dump_json(obj, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=2)
        fh.write("\n")


@dataclass(frozen=True)
class ScoreRow:
    """One hexagon row of scores.csv."""

    hex_q: int
    hex_r: int
    center_lon: float
    center_lat: float
    population: float
    velocity_kmh: float
    sociality: float


def write_scores_csv(field: AccessibilityField, path: str | Path) -> None:
    grid = field.grid
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCORES_HEADER)
        for hex_id in grid.ids():
            hexagon = grid.hexagons[hex_id]
            writer.writerow(
                [
                    str(hexagon.q),
                    str(hexagon.r),
                    f"{hexagon.center_lon:.6f}",
                    f"{hexagon.center_lat:.6f}",
                    sig6(field.pop[hex_id]),
                    sig6(field.v_kmh[hex_id]),
                    sig6(field.s_pop[hex_id]),
                ]
            )


def read_scores_csv(path: str | Path) -> list[ScoreRow]:
    path = Path(path)
    if not path.is_file():
        raise InputDataError(f"scores file not found: {path}")
    rows: list[ScoreRow] = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != SCORES_HEADER:
            raise InputDataError(f"{path}: unexpected header {header!r}")
        for rownum, row in enumerate(reader, start=2):
            if len(row) != len(SCORES_HEADER):
                raise InputDataError(f"{path} row {rownum}: expected {len(SCORES_HEADER)} columns")
            try:
                rows.append(
                    ScoreRow(
                        hex_q=int(row[0]),
                        hex_r=int(row[1]),
                        center_lon=float(row[2]),
                        center_lat=float(row[3]),
                        population=float(row[4]),
                        velocity_kmh=float(row[5]),
                        sociality=float(row[6]),
                    )
                )
            except ValueError:
                raise InputDataError(f"{path} row {rownum}: non-numeric value") from None
    return rows


def write_scores_geojson(field: AccessibilityField, path: str | Path) -> None:
    """One polygon feature per hexagon, carrying the scores.csv properties."""
    grid = field.grid
    features = []
    for hex_id in grid.ids():
        hexagon = grid.hexagons[hex_id]
        ring = [
            [round(lon, 6), round(lat, 6)]
            for lon, lat in grid.vertices_lonlat(hexagon.q, hexagon.r)
        ]
        ring.append(ring[0])
        features.append(
            {
                "type": "Feature",
                "geometry": {"type": "Polygon", "coordinates": [ring]},
                "properties": {
                    "hex_q": hexagon.q,
                    "hex_r": hexagon.r,
                    "center_lon": round(hexagon.center_lon, 6),
                    "center_lat": round(hexagon.center_lat, 6),
                    "population": round_sig6(field.pop[hex_id]),
                    "velocity_kmh": round_sig6(field.v_kmh[hex_id]),
                    "sociality": round_sig6(field.s_pop[hex_id]),
                },
            }
        )
    collection = {"type": "FeatureCollection", "features": features}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(collection, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def write_lorenz_csv(curve: LorenzCurve, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for x, y in curve.points:
            writer.writerow([sig6(x), sig6(y)])


def write_gini_json(
    city: str,
    ginis: dict[str, float],
    top_shares: dict[str, float],
    fraction: float,
    path: str | Path,
) -> None:
    payload: dict[str, object] = {"city": city, "fraction": fraction}
    for metric in GINI_METRICS:
        payload[metric] = round_sig6(ginis[metric])
    for key in TOP_SHARE_KEYS:
        payload[key] = round_sig6(top_shares[key])
    _dump_json(payload, Path(path))


def read_gini_json(path: str | Path) -> tuple[str, dict[str, float]]:
    """Return (city name, metric -> gini) from a gini.json file."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputDataError(f"cannot read {path}: {exc}") from None
    city = doc.get("city")
    if not isinstance(city, str) or not city:
        raise InputDataError(f"{path}: missing city name")
    try:
        ginis = {metric: float(doc[metric]) for metric in GINI_METRICS}
    except (KeyError, TypeError, ValueError):
        raise InputDataError(f"{path}: missing or non-numeric Gini entries") from None
    return city, ginis


def write_comparison_json(
    raw: dict[str, dict[str, float]],
    normalized: dict[str, dict[str, float]],
    mode: str,
    path: str | Path,
) -> None:
    payload = {
        "mode": mode,
        "raw": {city: {m: round_sig6(v) for m, v in row.items()} for city, row in raw.items()},
        "normalized": {
            city: {m: round_sig6(v) for m, v in row.items()} for city, row in normalized.items()
        },
    }
    _dump_json(payload, Path(path))


def write_ranking_csv(rankings: dict[str, list[str]], path: str | Path) -> None:
    """One worst-to-best row per metric column."""
    n = max(len(cities) for cities in rankings.values())
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["metric"] + [f"rank_{i + 1}" for i in range(n)])
        for metric in GINI_METRICS:
            writer.writerow([metric] + rankings[metric])

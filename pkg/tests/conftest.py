"""Shared fixtures: tiny GTFS writers and equator-based study areas.

Test geometry lives on the equator, where one degree of longitude and one
degree of latitude both span R*pi/180 meters, so planar offsets convert to
degrees with a single factor.
"""

from __future__ import annotations

import csv
import math
from datetime import date
from pathlib import Path

import pytest
from shapely.geometry import Polygon

from transit_equity.hexgrid import EARTH_RADIUS_M, StudyArea

DEG_PER_M = 180.0 / (math.pi * EARTH_RADIUS_M)

SERVICE_DATE = date(2025, 6, 2)  # a Monday

ALL_WEEK = ("1", "1", "1", "1", "1", "1", "1")
WEEKDAYS_ONLY = ("1", "1", "1", "1", "1", "0", "0")


def write_gtfs(
    feed_dir: Path,
    stops=(),
    trips=(),
    stop_times=(),
    calendar=(),
    calendar_dates=(),
    frequencies=(),
    transfers=(),
    routes=None,
    skip=(),
) -> Path:
    """Write a GTFS fixture directory from row tuples.

    stops: (id, lon, lat, name); trips: (trip_id, route_id, service_id);
    stop_times: (trip_id, stop_id, arrival, departure, seq) with '' allowed;
    calendar: (service_id, 7 weekday flags, start, end);
    calendar_dates: (service_id, date, exception_type);
    frequencies: (trip_id, start, end, headway);
    transfers: (from, to, type, min_time).
    Files named in ``skip`` are not written; routes default to the ids
    referenced by trips.
    """
    feed_dir.mkdir(parents=True, exist_ok=True)

    def write(name, header, rows):
        if name in skip:
            return
        with open(feed_dir / name, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)

    write("stops.txt", ["stop_id", "stop_lon", "stop_lat", "stop_name"], stops)
    if routes is None:
        seen = []
        for trip in trips:
            if trip[1] not in seen:
                seen.append(trip[1])
        routes = [(r, "3") for r in seen] or [("r0", "3")]
    write("routes.txt", ["route_id", "route_type"], routes)
    write("trips.txt", ["trip_id", "route_id", "service_id"], trips)
    write(
        "stop_times.txt",
        ["trip_id", "stop_id", "arrival_time", "departure_time", "stop_sequence"],
        stop_times,
    )
    if calendar or "calendar.txt" in skip:
        write(
            "calendar.txt",
            ["service_id", "monday", "tuesday", "wednesday", "thursday", "friday",
             "saturday", "sunday", "start_date", "end_date"],
            [(sid, *flags, start, end) for sid, flags, start, end in calendar],
        )
    if calendar_dates:
        write(
            "calendar_dates.txt",
            ["service_id", "date", "exception_type"],
            calendar_dates,
        )
    if frequencies:
        write("frequencies.txt", ["trip_id", "start_time", "end_time", "headway_secs"], frequencies)
    if transfers:
        write(
            "transfers.txt",
            ["from_stop_id", "to_stop_id", "transfer_type", "min_transfer_time"],
            transfers,
        )
    return feed_dir


@pytest.fixture
def basic_feed_dir(tmp_path) -> Path:
    """Minimal valid feed: 2 stops, 1 route, 1 trip, 2 stop_times, full-week
    calendar covering 2025."""
    return write_gtfs(
        tmp_path / "feed",
        stops=[("A", "0.0", "0.0", "Alpha"), ("B", "0.05", "0.0", "Beta")],
        trips=[("t1", "r1", "daily")],
        stop_times=[
            ("t1", "A", "08:00:00", "08:00:00", "1"),
            ("t1", "B", "08:15:00", "08:15:00", "2"),
        ],
        calendar=[("daily", ALL_WEEK, "20250101", "20251231")],
    )


def equator_rect(width_m: float, height_m: float, lon0: float = 0.0) -> StudyArea:
    """Axis-aligned rectangle centered on (lon0, 0), dimensions in meters."""
    half_w = width_m / 2.0 * DEG_PER_M
    half_h = height_m / 2.0 * DEG_PER_M
    ring = [
        (lon0 - half_w, -half_h),
        (lon0 + half_w, -half_h),
        (lon0 + half_w, half_h),
        (lon0 - half_w, half_h),
    ]
    return StudyArea(name="rect", boundary=Polygon(ring))


def equator_circle(radius_m: float, lon0: float = 0.0, segments: int = 64) -> StudyArea:
    """Regular polygon approximating a circle centered on (lon0, 0)."""
    ring = [
        (
            lon0 + radius_m * DEG_PER_M * math.cos(2 * math.pi * k / segments),
            radius_m * DEG_PER_M * math.sin(2 * math.pi * k / segments),
        )
        for k in range(segments)
    ]
    return StudyArea(name="circle", boundary=Polygon(ring))


def write_population_csv(path: Path, cells) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["lon", "lat", "count"])
        for lon, lat, count in cells:
            writer.writerow([repr(lon), repr(lat), repr(count)])
    return path

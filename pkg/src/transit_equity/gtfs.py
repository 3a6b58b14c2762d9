"""GTFS timetable ingestion.

Reads a GTFS feed (a directory or a ``.zip`` of CSV text files) and builds an
immutable in-memory timetable restricted to a single service date.  Only the
files needed for schedule-based routing are consulted: ``stops.txt``,
``routes.txt``, ``trips.txt``, ``stop_times.txt``, ``calendar.txt``,
``calendar_dates.txt``, ``frequencies.txt`` and ``transfers.txt``.  Shapes,
fares and everything else are ignored.

Conventions handled here:

* times are seconds after local midnight and may exceed 24:00:00 for
  services running past midnight;
* ``frequencies.txt`` rows are expanded into concrete trips departing at
  exact headway multiples;
* blank arrival/departure cells at intermediate stops are linearly
  interpolated between the nearest timed stops;
* files are UTF-8 with an optional BOM, quoted per RFC 4180.
"""

from __future__ import annotations

import csv
import io
import re
import zipfile
from dataclasses import dataclass, replace
from datetime import date
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import InputDataError


class GtfsError(InputDataError):
    """Raised for malformed or internally inconsistent GTFS input."""


REQUIRED_FILES = ("stops.txt", "routes.txt", "trips.txt", "stop_times.txt")

_TIME_RE = re.compile(r"^(\d{1,2}):(\d{2}):(\d{2})$")
_WEEKDAY_COLUMNS = (
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday",
)


@dataclass(frozen=True)
class Stop:
    """One row of stops.txt."""

    id: str
    lon: float
    lat: float
    name: str = ""


@dataclass(frozen=True)
class Trip:
    """One row of trips.txt (or one concrete trip expanded from frequencies)."""

    id: str
    route_id: str
    service_id: str


@dataclass(frozen=True)
class StopTime:
    """One timed stop visit within a trip."""

    trip_id: str
    stop_id: str
    arrival_s: int
    departure_s: int
    stop_sequence: int


@dataclass(frozen=True)
class Calendar:
    """Weekly activation pattern for a service id."""

    service_id: str
    weekdays: tuple[bool, bool, bool, bool, bool, bool, bool]  # Mon..Sun
    start_date: date
    end_date: date


@dataclass(frozen=True)
class CalendarOverride:
    """A calendar_dates.txt exception: service added or removed on one date."""

    service_id: str
    date: date
    added: bool


@dataclass(frozen=True)
class Frequency:
    """One headway row of frequencies.txt."""

    trip_id: str
    start_s: int
    end_s: int
    headway_s: int


@dataclass(frozen=True)
class Transfer:
    """A declared minimum transfer time between two stops."""

    from_stop: str
    to_stop: str
    min_transfer_s: int


@dataclass(frozen=True)
class Feed:
    """A validated timetable for one service date.

    ``trips`` contains exactly the trips active on ``service_date``, with
    frequency-based trips already expanded into concrete departures.
    ``frequencies`` keeps the raw headway rows that were consumed by the
    expansion, for provenance.
    """

    stops: tuple[Stop, ...]
    trips: tuple[Trip, ...]
    stop_times: Mapping[str, tuple[StopTime, ...]]
    calendars: Mapping[str, Calendar]
    calendar_overrides: tuple[CalendarOverride, ...]
    frequencies: tuple[Frequency, ...]
    transfers: tuple[Transfer, ...]
    service_date: date

    def stop_by_id(self) -> dict[str, Stop]:
        return {s.id: s for s in self.stops}


def parse_gtfs_time(text: str, *, context: str = "") -> int:
    """Convert an ``H?H:MM:SS`` string to seconds after midnight.

    Hours above 23 are accepted (GTFS convention for service past midnight).
    """
    m = _TIME_RE.match(text.strip())
    if m is None:
        raise GtfsError(f"malformed time {text!r}{_ctx(context)}")
    hours, minutes, seconds = (int(g) for g in m.groups())
    if minutes > 59 or seconds > 59:
        raise GtfsError(f"time {text!r} has minutes/seconds out of range{_ctx(context)}")
    return hours * 3600 + minutes * 60 + seconds


def format_gtfs_time(seconds: int) -> str:
    """Inverse of :func:`parse_gtfs_time`; hours may exceed 23."""
    if seconds < 0:
        raise ValueError(f"negative time {seconds}")
    h, rem = divmod(int(seconds), 3600)
    m, s = divmod(rem, 60)
    return f"{h:02d}:{m:02d}:{s:02d}"


def _ctx(context: str) -> str:
    return f" ({context})" if context else ""


def _parse_gtfs_date(text: str, *, context: str = "") -> date:
    text = text.strip()
    if not re.match(r"^\d{8}$", text):
        raise GtfsError(f"malformed date {text!r}, expected YYYYMMDD{_ctx(context)}")
    try:
        return date(int(text[:4]), int(text[4:6]), int(text[6:8]))
    except ValueError as exc:
        raise GtfsError(f"invalid date {text!r}{_ctx(context)}: {exc}") from None


class _FeedReader:
    """Uniform row access to a GTFS directory or zip archive."""

    def __init__(self, path: Path):
        self.path = Path(path)
        if self.path.is_dir():
            self._zip = None
        elif self.path.is_file():
            try:
                self._zip = zipfile.ZipFile(self.path)
            except zipfile.BadZipFile as exc:
                raise GtfsError(f"{self.path} is not a directory or zip archive: {exc}") from None
            # Some archives nest the files under a single top-level folder.
            self._names = {Path(n).name: n for n in self._zip.namelist() if not n.endswith("/")}
        else:
            raise GtfsError(f"feed path does not exist: {self.path}")

    def has(self, name: str) -> bool:
        if self._zip is None:
            return (self.path / name).is_file()
        return name in self._names

    def rows(self, name: str) -> Iterator[tuple[int, dict[str, str]]]:
        """Yield (1-based data row number, row dict) for a member file."""
        if self._zip is None:
            stream = open(self.path / name, "r", encoding="utf-8-sig", newline="")
        else:
            raw = self._zip.open(self._names[name])
            stream = io.TextIOWrapper(raw, encoding="utf-8-sig", newline="")
        with stream:
            reader = csv.DictReader(stream)
            for i, row in enumerate(reader, start=1):
                yield i, {k.strip(): (v or "").strip() for k, v in row.items() if k is not None}

    def close(self) -> None:
        if self._zip is not None:
            self._zip.close()


def _require(row: dict[str, str], column: str, file: str, rownum: int) -> str:
    value = row.get(column, "")
    if value == "":
        raise GtfsError(f"{file} row {rownum}: missing required value for {column!r}")
    return value


def active_service_ids(
    calendars: Mapping[str, Calendar],
    calendar_overrides: Iterable[CalendarOverride],
    day: date,
) -> set[str]:
    """Service ids active on ``day`` under GTFS calendar semantics.

    A service is active when its weekday bit covers the day and the day lies
    within [start_date, end_date]; calendar_dates additions are unioned in and
    removals subtracted afterwards.
    """
    weekday = day.weekday()  # Monday == 0, matching the column order
    active = {
        c.service_id
        for c in calendars.values()
        if c.weekdays[weekday] and c.start_date <= day <= c.end_date
    }
    for override in calendar_overrides:
        if override.date != day:
            continue
        if override.added:
            active.add(override.service_id)
        else:
            active.discard(override.service_id)
    return active


def expand_frequencies(
    trip: Trip,
    stop_times: tuple[StopTime, ...],
    frequency_rows: Iterable[Frequency],
) -> tuple[tuple[Trip, ...], dict[str, tuple[StopTime, ...]]]:
    """Materialize one concrete trip per headway departure.

    Departures run at ``start, start + headway, ...`` strictly before ``end``;
    every stop time is shifted by the offset from the template's first
    departure.  Concrete trip ids are ``<template_id>#<k>``.
    """
    rows = sorted(frequency_rows, key=lambda f: (f.start_s, f.end_s, f.headway_s))
    if not stop_times:
        raise GtfsError(f"frequency trip {trip.id!r} has no stop_times to expand")
    base = stop_times[0].departure_s
    trips: list[Trip] = []
    expanded: dict[str, tuple[StopTime, ...]] = {}
    k = 0
    for row in rows:
        if row.headway_s <= 0:
            raise GtfsError(f"frequencies for trip {trip.id!r}: headway_secs must be positive")
        if row.start_s >= row.end_s:
            raise GtfsError(f"frequencies for trip {trip.id!r}: start_time must precede end_time")
        departure = row.start_s
        while departure < row.end_s:
            offset = departure - base
            concrete_id = f"{trip.id}#{k}"
            trips.append(replace(trip, id=concrete_id))
            expanded[concrete_id] = tuple(
                replace(
                    st,
                    trip_id=concrete_id,
                    arrival_s=st.arrival_s + offset,
                    departure_s=st.departure_s + offset,
                )
                for st in stop_times
            )
            k += 1
            departure += row.headway_s
    return tuple(trips), expanded


def parse_feed(path: str | Path, service_date: date) -> Feed:
    """Parse and validate a GTFS feed restricted to one service date."""
    reader = _FeedReader(Path(path))
    try:
        missing = [name for name in REQUIRED_FILES if not reader.has(name)]
        if not reader.has("calendar.txt") and not reader.has("calendar_dates.txt"):
            missing.append("calendar.txt or calendar_dates.txt")
        if missing:
            raise GtfsError(f"feed {reader.path} is missing required file(s): {', '.join(missing)}")

        stops = _read_stops(reader)
        stop_ids = {s.id for s in stops}
        route_ids = _read_route_ids(reader)
        calendars = _read_calendars(reader)
        overrides = _read_calendar_overrides(reader)
        active = active_service_ids(calendars, overrides, service_date)

        all_trips, active_trips = _read_trips(reader, route_ids, active)
        stop_times = _read_stop_times(reader, all_trips, {t.id for t in active_trips}, stop_ids)
        frequencies = _read_frequencies(reader, all_trips)
        trips, stop_times = _apply_frequencies(active_trips, stop_times, frequencies)
        transfers = _read_transfers(reader, stop_ids)
    finally:
        reader.close()

    feed = Feed(
        stops=stops,
        trips=trips,
        stop_times=stop_times,
        calendars=calendars,
        calendar_overrides=overrides,
        frequencies=frequencies,
        transfers=transfers,
        service_date=service_date,
    )
    validate_feed(feed)
    return feed


def _read_stops(reader: _FeedReader) -> tuple[Stop, ...]:
    stops: list[Stop] = []
    seen: set[str] = set()
    for rownum, row in reader.rows("stops.txt"):
        stop_id = _require(row, "stop_id", "stops.txt", rownum)
        if stop_id in seen:
            raise GtfsError(f"stops.txt row {rownum}: duplicate stop_id {stop_id!r}")
        seen.add(stop_id)
        try:
            lat = float(_require(row, "stop_lat", "stops.txt", rownum))
            lon = float(_require(row, "stop_lon", "stops.txt", rownum))
        except ValueError:
            raise GtfsError(f"stops.txt row {rownum}: non-numeric stop_lat/stop_lon") from None
        if not (-90.0 <= lat <= 90.0) or not (-180.0 <= lon <= 180.0):
            raise GtfsError(f"stops.txt row {rownum}: coordinates out of range ({lat}, {lon})")
        stops.append(Stop(id=stop_id, lon=lon, lat=lat, name=row.get("stop_name", "")))
    return tuple(stops)


def _read_route_ids(reader: _FeedReader) -> set[str]:
    route_ids: set[str] = set()
    for rownum, row in reader.rows("routes.txt"):
        route_ids.add(_require(row, "route_id", "routes.txt", rownum))
    return route_ids


def _read_calendars(reader: _FeedReader) -> dict[str, Calendar]:
    calendars: dict[str, Calendar] = {}
    if not reader.has("calendar.txt"):
        return calendars
    for rownum, row in reader.rows("calendar.txt"):
        service_id = _require(row, "service_id", "calendar.txt", rownum)
        if service_id in calendars:
            raise GtfsError(f"calendar.txt row {rownum}: duplicate service_id {service_id!r}")
        try:
            weekdays = tuple(row.get(col, "0") == "1" for col in _WEEKDAY_COLUMNS)
        except KeyError:  # pragma: no cover - get() above never raises
            raise GtfsError(f"calendar.txt row {rownum}: missing weekday column") from None
        calendars[service_id] = Calendar(
            service_id=service_id,
            weekdays=weekdays,  # type: ignore[arg-type]
            start_date=_parse_gtfs_date(
                _require(row, "start_date", "calendar.txt", rownum),
                context=f"calendar.txt row {rownum}",
            ),
            end_date=_parse_gtfs_date(
                _require(row, "end_date", "calendar.txt", rownum),
                context=f"calendar.txt row {rownum}",
            ),
        )
    return calendars


def _read_calendar_overrides(reader: _FeedReader) -> tuple[CalendarOverride, ...]:
    overrides: list[CalendarOverride] = []
    if not reader.has("calendar_dates.txt"):
        return ()
    for rownum, row in reader.rows("calendar_dates.txt"):
        service_id = _require(row, "service_id", "calendar_dates.txt", rownum)
        day = _parse_gtfs_date(
            _require(row, "date", "calendar_dates.txt", rownum),
            context=f"calendar_dates.txt row {rownum}",
        )
        exception_type = _require(row, "exception_type", "calendar_dates.txt", rownum)
        if exception_type not in ("1", "2"):
            raise GtfsError(
                f"calendar_dates.txt row {rownum}: exception_type must be 1 or 2, got {exception_type!r}"
            )
        overrides.append(CalendarOverride(service_id=service_id, date=day, added=exception_type == "1"))
    return tuple(overrides)


def _read_trips(
    reader: _FeedReader, route_ids: set[str], active: set[str]
) -> tuple[dict[str, Trip], tuple[Trip, ...]]:
    all_trips: dict[str, Trip] = {}
    active_trips: list[Trip] = []
    for rownum, row in reader.rows("trips.txt"):
        trip_id = _require(row, "trip_id", "trips.txt", rownum)
        if trip_id in all_trips:
            raise GtfsError(f"trips.txt row {rownum}: duplicate trip_id {trip_id!r}")
        route_id = _require(row, "route_id", "trips.txt", rownum)
        if route_id not in route_ids:
            raise GtfsError(f"trips.txt row {rownum}: unknown route_id {route_id!r}")
        trip = Trip(id=trip_id, route_id=route_id, service_id=_require(row, "service_id", "trips.txt", rownum))
        all_trips[trip_id] = trip
        if trip.service_id in active:
            active_trips.append(trip)
    return all_trips, tuple(active_trips)


def _read_stop_times(
    reader: _FeedReader,
    all_trips: dict[str, Trip],
    active_trip_ids: set[str],
    stop_ids: set[str],
) -> dict[str, tuple[StopTime, ...]]:
    # Raw (rownum, sequence, stop_id, arrival, departure) per active trip;
    # times stay None until interpolation.
    raw: dict[str, list[tuple[int, int, str, int | None, int | None]]] = {}
    for rownum, row in reader.rows("stop_times.txt"):
        trip_id = _require(row, "trip_id", "stop_times.txt", rownum)
        if trip_id not in all_trips:
            raise GtfsError(f"stop_times.txt row {rownum}: unknown trip_id {trip_id!r}")
        stop_id = _require(row, "stop_id", "stop_times.txt", rownum)
        if stop_id not in stop_ids:
            raise GtfsError(f"stop_times.txt row {rownum}: unknown stop_id {stop_id!r}")
        if trip_id not in active_trip_ids:
            continue
        try:
            sequence = int(_require(row, "stop_sequence", "stop_times.txt", rownum))
        except ValueError:
            raise GtfsError(f"stop_times.txt row {rownum}: non-integer stop_sequence") from None
        if sequence <= 0:
            raise GtfsError(f"stop_times.txt row {rownum}: stop_sequence must be positive")
        context = f"stop_times.txt row {rownum}"
        arrival = row.get("arrival_time", "")
        departure = row.get("departure_time", "")
        arrival_s = parse_gtfs_time(arrival, context=context) if arrival else None
        departure_s = parse_gtfs_time(departure, context=context) if departure else None
        # A row with only one of the two cells filled reuses it for both.
        if arrival_s is None and departure_s is not None:
            arrival_s = departure_s
        if departure_s is None and arrival_s is not None:
            departure_s = arrival_s
        raw.setdefault(trip_id, []).append((rownum, sequence, stop_id, arrival_s, departure_s))

    stop_times: dict[str, tuple[StopTime, ...]] = {}
    for trip_id, rows in raw.items():
        rows.sort(key=lambda r: r[1])
        for (r1, s1, *_), (r2, s2, *_) in zip(rows, rows[1:]):
            if s2 <= s1:
                raise GtfsError(
                    f"stop_times.txt rows {r1} and {r2}: stop_sequence not strictly increasing "
                    f"for trip {trip_id!r}"
                )
        stop_times[trip_id] = _interpolate_trip(trip_id, rows)
    return stop_times


def _interpolate_trip(
    trip_id: str, rows: list[tuple[int, int, str, int | None, int | None]]
) -> tuple[StopTime, ...]:
    """Fill untimed intermediate rows linearly between the nearest timed rows."""
    timed = [i for i, r in enumerate(rows) if r[3] is not None]
    if not timed or timed[0] != 0 or timed[-1] != len(rows) - 1:
        raise GtfsError(f"trip {trip_id!r}: first and last stop_times must have explicit times")
    result: list[StopTime] = []
    for a, b in zip(timed, timed[1:]):
        start = rows[a][4]  # departure of the earlier timed stop
        end = rows[b][3]  # arrival of the later timed stop
        assert start is not None and end is not None
        for i in range(a + 1, b):
            t = round(start + (end - start) * (i - a) / (b - a))
            rownum, sequence, stop_id, _, _ = rows[i]
            rows[i] = (rownum, sequence, stop_id, t, t)
    for rownum, sequence, stop_id, arrival_s, departure_s in rows:
        assert arrival_s is not None and departure_s is not None
        if arrival_s < 0:
            raise GtfsError(f"stop_times.txt row {rownum}: negative time")
        if departure_s < arrival_s:
            raise GtfsError(f"stop_times.txt row {rownum}: departure_time precedes arrival_time")
        result.append(
            StopTime(
                trip_id=trip_id,
                stop_id=stop_id,
                arrival_s=arrival_s,
                departure_s=departure_s,
                stop_sequence=sequence,
            )
        )
    for earlier, later in zip(result, result[1:]):
        if later.arrival_s < earlier.departure_s:
            raise GtfsError(
                f"trip {trip_id!r}: times not non-decreasing at stop_sequence {later.stop_sequence}"
            )
    return tuple(result)


def _read_frequencies(reader: _FeedReader, all_trips: dict[str, Trip]) -> tuple[Frequency, ...]:
    if not reader.has("frequencies.txt"):
        return ()
    frequencies: list[Frequency] = []
    for rownum, row in reader.rows("frequencies.txt"):
        trip_id = _require(row, "trip_id", "frequencies.txt", rownum)
        if trip_id not in all_trips:
            raise GtfsError(f"frequencies.txt row {rownum}: unknown trip_id {trip_id!r}")
        context = f"frequencies.txt row {rownum}"
        try:
            headway = int(_require(row, "headway_secs", "frequencies.txt", rownum))
        except ValueError:
            raise GtfsError(f"{context}: non-integer headway_secs") from None
        if headway <= 0:
            raise GtfsError(f"{context}: headway_secs must be positive")
        frequencies.append(
            Frequency(
                trip_id=trip_id,
                start_s=parse_gtfs_time(_require(row, "start_time", "frequencies.txt", rownum), context=context),
                end_s=parse_gtfs_time(_require(row, "end_time", "frequencies.txt", rownum), context=context),
                headway_s=headway,
            )
        )
    return tuple(frequencies)


def _apply_frequencies(
    active_trips: tuple[Trip, ...],
    stop_times: dict[str, tuple[StopTime, ...]],
    frequencies: tuple[Frequency, ...],
) -> tuple[tuple[Trip, ...], dict[str, tuple[StopTime, ...]]]:
    by_trip: dict[str, list[Frequency]] = {}
    for f in frequencies:
        by_trip.setdefault(f.trip_id, []).append(f)
    trips: list[Trip] = []
    final_times: dict[str, tuple[StopTime, ...]] = {}
    for trip in active_trips:
        times = stop_times.get(trip.id, ())
        if trip.id in by_trip:
            concrete, expanded = expand_frequencies(trip, times, by_trip[trip.id])
            trips.extend(concrete)
            final_times.update(expanded)
        else:
            trips.append(trip)
            if times:
                final_times[trip.id] = times
    return tuple(trips), final_times


def _read_transfers(reader: _FeedReader, stop_ids: set[str]) -> tuple[Transfer, ...]:
    if not reader.has("transfers.txt"):
        return ()
    transfers: list[Transfer] = []
    for rownum, row in reader.rows("transfers.txt"):
        from_stop = _require(row, "from_stop_id", "transfers.txt", rownum)
        to_stop = _require(row, "to_stop_id", "transfers.txt", rownum)
        for stop_id in (from_stop, to_stop):
            if stop_id not in stop_ids:
                raise GtfsError(f"transfers.txt row {rownum}: unknown stop_id {stop_id!r}")
        min_time = row.get("min_transfer_time", "")
        if not min_time:
            continue  # only timed transfer rows matter for routing
        try:
            min_transfer_s = int(min_time)
        except ValueError:
            raise GtfsError(f"transfers.txt row {rownum}: non-integer min_transfer_time") from None
        if min_transfer_s < 0:
            raise GtfsError(f"transfers.txt row {rownum}: negative min_transfer_time")
        transfers.append(Transfer(from_stop=from_stop, to_stop=to_stop, min_transfer_s=min_transfer_s))
    return tuple(transfers)


def validate_feed(feed: Feed) -> None:
    """Check the cross-reference and ordering invariants of a Feed."""
    stop_ids = {s.id for s in feed.stops}
    trip_ids = {t.id for t in feed.trips}
    if len(stop_ids) != len(feed.stops):
        raise GtfsError("duplicate stop ids in feed")
    if len(trip_ids) != len(feed.trips):
        raise GtfsError("duplicate trip ids in feed")
    for trip_id, times in feed.stop_times.items():
        if trip_id not in trip_ids:
            raise GtfsError(f"stop_times reference unknown trip {trip_id!r}")
        for st in times:
            if st.stop_id not in stop_ids:
                raise GtfsError(f"trip {trip_id!r} references unknown stop {st.stop_id!r}")
            if not (0 <= st.arrival_s <= st.departure_s):
                raise GtfsError(f"trip {trip_id!r} has invalid times at sequence {st.stop_sequence}")
        for earlier, later in zip(times, times[1:]):
            if later.stop_sequence <= earlier.stop_sequence:
                raise GtfsError(f"trip {trip_id!r}: stop_sequence not strictly increasing")
            if later.arrival_s < earlier.departure_s:
                raise GtfsError(f"trip {trip_id!r}: stop times decrease along the trip")


def write_feed(feed: Feed, out_dir: str | Path) -> None:
    """Serialize a Feed back to GTFS CSV files in ``out_dir``.

    Frequency-based trips were materialized at parse time, so the expanded
    trips are written as plain scheduled trips and no ``frequencies.txt`` is
    produced.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def writerows(name: str, header: list[str], rows: Iterable[list]) -> None:
        with open(out / name, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)

    writerows(
        "stops.txt",
        ["stop_id", "stop_name", "stop_lat", "stop_lon"],
        ([s.id, s.name, repr(s.lat), repr(s.lon)] for s in feed.stops),
    )
    route_ids = sorted({t.route_id for t in feed.trips}) or ["placeholder"]
    writerows("routes.txt", ["route_id", "route_type"], ([r, "3"] for r in route_ids))
    writerows(
        "trips.txt",
        ["trip_id", "route_id", "service_id"],
        ([t.id, t.route_id, t.service_id] for t in feed.trips),
    )
    writerows(
        "stop_times.txt",
        ["trip_id", "stop_id", "arrival_time", "departure_time", "stop_sequence"],
        (
            [st.trip_id, st.stop_id, format_gtfs_time(st.arrival_s), format_gtfs_time(st.departure_s), str(st.stop_sequence)]
            for trip in feed.trips
            for st in feed.stop_times.get(trip.id, ())
        ),
    )
    if feed.calendars:
        writerows(
            "calendar.txt",
            ["service_id", *list(_WEEKDAY_COLUMNS), "start_date", "end_date"],
            (
                [
                    c.service_id,
                    *["1" if active else "0" for active in c.weekdays],
                    c.start_date.strftime("%Y%m%d"),
                    c.end_date.strftime("%Y%m%d"),
                ]
                for c in feed.calendars.values()
            ),
        )
    if feed.calendar_overrides or not feed.calendars:
        writerows(
            "calendar_dates.txt",
            ["service_id", "date", "exception_type"],
            (
                [o.service_id, o.date.strftime("%Y%m%d"), "1" if o.added else "2"]
                for o in feed.calendar_overrides
            ),
        )
    if feed.transfers:
        writerows(
            "transfers.txt",
            ["from_stop_id", "to_stop_id", "transfer_type", "min_transfer_time"],
            ([t.from_stop, t.to_stop, "2", str(t.min_transfer_s)] for t in feed.transfers),
        )

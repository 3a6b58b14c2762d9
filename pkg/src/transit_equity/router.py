"""Time-dependent routing between hexagon centers.

The timetable is flattened into elementary connections (one vehicle moving
between consecutive stops) sorted by departure time, and queried with a
connection scan per (origin, departure time).

Journey model, applied identically by the scan and by the brute-force
reference search used in tests:

* start at the origin hexagon center, walk to any stop within the walking
  radius (one access leg);
* board any connection departing a stop no earlier than the current arrival
  time there (no extra transfer buffer);
* after alighting from a vehicle, optionally take one footpath to a nearby
  stop before boarding again;
* finally walk from any reached stop to a hexagon center within the walking
  radius (one egress leg);
* independently of transit, hexagon centers within the walking radius of
  the origin center can be reached by a single direct walk.

Walking legs use great-circle distance at constant speed, each capped at
``max_walk_m``.  Footpath times respect declared minimum transfer times
(symmetrized, since walking is).
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Mapping

from .gtfs import Feed
from .hexgrid import EARTH_RADIUS_M, HexGrid, great_circle_m, locate

INF = math.inf

DAY_S = 86_400


@dataclass(frozen=True)
class Connection:
    """One vehicle movement between consecutive stops of a trip."""

    dep_stop: str
    arr_stop: str
    dep_s: int
    arr_s: int
    trip_id: str


class Timetable:
    """Immutable routing view of a feed + grid; safe for concurrent queries."""

    def __init__(
        self,
        feed: Feed,
        grid: HexGrid,
        walk_speed_kmh: float = 5.0,
        max_walk_m: float = 1500.0,
    ):
        if walk_speed_kmh <= 0 or max_walk_m <= 0:
            raise ValueError("walk speed and walking radius must be positive")
        self.grid = grid
        self.walk_speed_kmh = walk_speed_kmh
        self.max_walk_m = max_walk_m

        stops = feed.stops
        self.stops = stops
        self._stop_index = {s.id: i for i, s in enumerate(stops)}
        n = len(stops)

        self.connections = _build_connections(feed)
        self._conn = [
            (c.dep_s, c.arr_s, self._stop_index[c.dep_stop], self._stop_index[c.arr_stop])
            for c in self.connections
        ]
        self._conn_dep = [c.dep_s for c in self.connections]

        seconds_per_meter = 3.6 / walk_speed_kmh
        self._foot: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for i, j, meters in _stop_pairs_within(stops, max_walk_m):
            walk_s = meters * seconds_per_meter
            self._foot[i].append((j, walk_s))
            self._foot[j].append((i, walk_s))
        _apply_transfer_minima(self._foot, feed, self._stop_index)
        for adjacency in self._foot:
            adjacency.sort()

        # Hexagon-center access/egress legs and direct center-to-center walks.
        self.stop_hex = {s.id: locate(grid, s.lon, s.lat) for s in stops}
        self._access: dict[tuple[int, int], list[tuple[int, float]]] = {}
        self._egress: list[list[tuple[tuple[int, int], float]]] = [[] for _ in range(n)]
        stop_points = [(s.lon, s.lat) for s in stops]
        stop_bins = _PointBins(stop_points, max_walk_m)
        for hex_id in grid.ids():
            hexagon = grid.hexagons[hex_id]
            links: list[tuple[int, float]] = []
            for i in stop_bins.near(hexagon.center_lon, hexagon.center_lat):
                meters = great_circle_m(
                    hexagon.center_lon, hexagon.center_lat, stops[i].lon, stops[i].lat
                )
                if meters <= max_walk_m:
                    walk_s = meters * seconds_per_meter
                    links.append((i, walk_s))
                    self._egress[i].append((hex_id, walk_s))
            links.sort()
            self._access[hex_id] = links

        ids = grid.ids()
        centers = [(grid.hexagons[h].center_lon, grid.hexagons[h].center_lat) for h in ids]
        center_bins = _PointBins(centers, max_walk_m)
        self._hex_walk: dict[tuple[int, int], list[tuple[tuple[int, int], float]]] = {}
        for k, hex_id in enumerate(ids):
            lon, lat = centers[k]
            walks: list[tuple[tuple[int, int], float]] = []
            for j in center_bins.near(lon, lat):
                if j == k:
                    continue
                meters = great_circle_m(lon, lat, centers[j][0], centers[j][1])
                if meters <= max_walk_m:
                    walks.append((ids[j], meters * seconds_per_meter))
            self._hex_walk[hex_id] = walks

    @property
    def footpaths(self) -> dict[str, tuple[tuple[str, float], ...]]:
        """Footpaths keyed by stop id (symmetric walk seconds)."""
        return {
            self.stops[i].id: tuple((self.stops[j].id, w) for j, w in adjacency)
            for i, adjacency in enumerate(self._foot)
        }

    def access_stops(self, hex_id: tuple[int, int]) -> tuple[tuple[str, float], ...]:
        """Stops reachable on foot from a hexagon center, with walk seconds."""
        return tuple((self.stops[i].id, w) for i, w in self._access[hex_id])


@dataclass(frozen=True)
class TravelTimeField:
    """Travel times from one origin hexagon over sampled departures.

    ``arrival_s[k]`` maps hexagon -> earliest arrival for ``departures[k]``;
    hexagons absent from a map are unreachable at that departure.
    ``avg_minutes`` averages (arrival - departure) over the departures at
    which a hexagon is reachable; never-reachable hexagons are absent.
    """

    origin: tuple[int, int]
    departures: tuple[int, ...]
    arrival_s: tuple[Mapping[tuple[int, int], float], ...]
    avg_minutes: Mapping[tuple[int, int], float]


def build_timetable(
    feed: Feed,
    grid: HexGrid,
    walk_speed_kmh: float = 5.0,
    max_walk_m: float = 1500.0,
) -> Timetable:
    """Build the immutable routing structures for one feed and grid."""
    return Timetable(feed, grid, walk_speed_kmh=walk_speed_kmh, max_walk_m=max_walk_m)


def earliest_arrivals(
    tt: Timetable, origin_hex: tuple[int, int], depart_s: float
) -> dict[tuple[int, int], float]:
    """Earliest arrival per hexagon for one departure; unreachable omitted.

    Exact under the module's journey model: the scan is repeated until no
    label improves, which also covers chains of zero-duration connections
    sharing one timestamp.
    """
    if origin_hex not in tt.grid.hexagons:
        raise ValueError(f"origin hexagon {origin_hex} is not in the grid")
    if not (0 <= depart_s < 2 * DAY_S):
        raise ValueError(f"departure {depart_s} outside [0, 48h)")

    n = len(tt.stops)
    tau = [INF] * n  # earliest presence at a stop (any leg type)
    conn_arr = [INF] * n  # earliest arrival by vehicle; footpaths start here
    for i, walk_s in tt._access[origin_hex]:
        t = depart_s + walk_s
        if t < tau[i]:
            tau[i] = t

    foot = tt._foot
    if tt._conn and any(t < INF for t in tau):
        start = bisect_left(tt._conn_dep, min(t for t in tau if t < INF))
        scan = tt._conn[start:]
        changed = True
        while changed:
            changed = False
            for dep_s, arr_s, u, v in scan:
                if tau[u] <= dep_s and arr_s < conn_arr[v]:
                    conn_arr[v] = arr_s
                    changed = True
                    if arr_s < tau[v]:
                        tau[v] = arr_s
                    for b, walk_s in foot[v]:
                        t = arr_s + walk_s
                        if t < tau[b]:
                            tau[b] = t

    arrivals: dict[tuple[int, int], float] = {origin_hex: float(depart_s)}
    for hex_id, walk_s in tt._hex_walk[origin_hex]:
        t = depart_s + walk_s
        if t < arrivals.get(hex_id, INF):
            arrivals[hex_id] = t
    egress = tt._egress
    for i in range(n):
        t_stop = tau[i]
        if t_stop == INF:
            continue
        for hex_id, walk_s in egress[i]:
            t = t_stop + walk_s
            if t < arrivals.get(hex_id, INF):
                arrivals[hex_id] = t
    return arrivals


def average_travel_times(
    tt: Timetable,
    origin_hex: tuple[int, int],
    window: tuple[int, int] = (6 * 3600, 20 * 3600),
    step_s: int = 1200,
) -> TravelTimeField:
    """Sample departures over ``window`` and average per-hexagon travel times."""
    departures = sample_departures(window, step_s)
    per_departure = [earliest_arrivals(tt, origin_hex, d) for d in departures]
    sums: dict[tuple[int, int], float] = {}
    counts: dict[tuple[int, int], int] = {}
    for depart, arrivals in zip(departures, per_departure):
        for hex_id, arrival in arrivals.items():
            sums[hex_id] = sums.get(hex_id, 0.0) + (arrival - depart)
            counts[hex_id] = counts.get(hex_id, 0) + 1
    avg_minutes = {hex_id: sums[hex_id] / counts[hex_id] / 60.0 for hex_id in sums}
    return TravelTimeField(
        origin=origin_hex,
        departures=tuple(departures),
        arrival_s=tuple(per_departure),
        avg_minutes=avg_minutes,
    )


def sample_departures(window: tuple[int, int], step_s: int) -> list[int]:
    start, end = window
    if step_s <= 0:
        raise ValueError(f"departure step must be positive, got {step_s}")
    if start > end:
        raise ValueError(f"window start {start} after end {end}")
    return list(range(int(start), int(end) + 1, int(step_s)))


def _build_connections(feed: Feed) -> tuple[Connection, ...]:
    connections = [
        Connection(
            dep_stop=a.stop_id,
            arr_stop=b.stop_id,
            dep_s=a.departure_s,
            arr_s=b.arrival_s,
            trip_id=trip.id,
        )
        for trip in feed.trips
        for a, b in zip(feed.stop_times.get(trip.id, ()), feed.stop_times.get(trip.id, ())[1:])
    ]
    connections.sort(key=lambda c: (c.dep_s, c.arr_s, c.trip_id, c.dep_stop, c.arr_stop))
    return tuple(connections)


def _stop_pairs_within(stops, max_walk_m: float) -> Iterable[tuple[int, int, float]]:
    """Yield (i, j, meters) for i < j with great-circle distance <= radius."""
    bins = _PointBins([(s.lon, s.lat) for s in stops], max_walk_m)
    for i, stop in enumerate(stops):
        for j in bins.near(stop.lon, stop.lat):
            if j <= i:
                continue
            meters = great_circle_m(stop.lon, stop.lat, stops[j].lon, stops[j].lat)
            if meters <= max_walk_m:
                yield i, j, meters


def _apply_transfer_minima(
    foot: list[list[tuple[int, float]]], feed: Feed, stop_index: dict[str, int]
) -> None:
    """Raise footpath times to declared minimums (max of both directions).

    Declared pairs beyond the walking radius are ignored: every transfer is
    still a walking leg and stays subject to the radius cap.
    """
    minima: dict[tuple[int, int], int] = {}
    for t in feed.transfers:
        i, j = stop_index[t.from_stop], stop_index[t.to_stop]
        if i == j:
            continue
        key = (min(i, j), max(i, j))
        minima[key] = max(minima.get(key, 0), t.min_transfer_s)
    if not minima:
        return
    for i, adjacency in enumerate(foot):
        for k, (j, walk_s) in enumerate(adjacency):
            min_s = minima.get((min(i, j), max(i, j)))
            if min_s is not None and min_s > walk_s:
                adjacency[k] = (j, float(min_s))


class _PointBins:
    """Lat/lon bucket index answering coarse fixed-radius neighbor queries.

    ``near`` returns candidate indices only; callers re-check exact
    distances.  Bins are sized so every true neighbor is in the 3x3 (or
    wider, near the poles) block around the query point.
    """

    def __init__(self, points: list[tuple[float, float]], radius_m: float):
        self._points = points
        self._lat_step = math.degrees(radius_m / EARTH_RADIUS_M)
        self._bins: dict[tuple[int, int], list[int]] = {}
        min_cos = 1.0
        for i, (lon, lat) in enumerate(points):
            self._bins.setdefault(self._key(lon, lat), []).append(i)
            min_cos = min(min_cos, abs(math.cos(math.radians(lat))))
        # Longitude degrees shrink with latitude; widen the search window.
        self._lon_reach = max(1, math.ceil(1.0 / max(min_cos, 0.01)))

    def _key(self, lon: float, lat: float) -> tuple[int, int]:
        return (math.floor(lon / self._lat_step), math.floor(lat / self._lat_step))

    def near(self, lon: float, lat: float) -> list[int]:
        kx, ky = self._key(lon, lat)
        out: list[int] = []
        for dx in range(-self._lon_reach, self._lon_reach + 1):
            for dy in (-1, 0, 1):
                out.extend(self._bins.get((kx + dx, ky + dy), ()))
        return out

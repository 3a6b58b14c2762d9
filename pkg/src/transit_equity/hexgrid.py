"""Hexagonal tessellation of a study area.

The study area is projected onto a local plane with a spherical azimuthal
equidistant projection centered at the boundary centroid, then covered with a
pointy-top hexagonal lattice (axial integer coordinates, hexagon side
``side_m``, 500 m by default).  A hexagon is part of the grid when its
polygon intersects the boundary.

Hexagons are the Voronoi cells of their centers, so point location reduces
to rounding fractional axial coordinates to the nearest lattice center.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from shapely.geometry import MultiPoint, Polygon as ShapelyPolygon, shape
from shapely.geometry.base import BaseGeometry
from shapely.prepared import prep

from .errors import InputDataError

EARTH_RADIUS_M = 6_371_008.8  # mean Earth radius, spherical model

SQRT3 = math.sqrt(3.0)


def project(lon: float, lat: float, center: tuple[float, float]) -> tuple[float, float]:
    """WGS84 degrees -> planar meters, azimuthal equidistant about ``center``."""
    lon0, lat0 = math.radians(center[0]), math.radians(center[1])
    lam, phi = math.radians(lon), math.radians(lat)
    sin_phi0, cos_phi0 = math.sin(lat0), math.cos(lat0)
    sin_phi, cos_phi = math.sin(phi), math.cos(phi)
    dlam = lam - lon0
    # haversine form of the angular distance; acos of the spherical cosine
    # loses ~0.1 m of resolution near the center
    h = math.sin((phi - lat0) / 2.0) ** 2 + cos_phi0 * cos_phi * math.sin(dlam / 2.0) ** 2
    c = 2.0 * math.asin(min(1.0, math.sqrt(h)))
    if c == 0.0:
        return 0.0, 0.0
    k = EARTH_RADIUS_M * c / math.sin(c)
    x = k * cos_phi * math.sin(dlam)
    y = k * (cos_phi0 * sin_phi - sin_phi0 * cos_phi * math.cos(dlam))
    return x, y


def unproject(x: float, y: float, center: tuple[float, float]) -> tuple[float, float]:
    """Inverse of :func:`project`."""
    lon0, lat0 = math.radians(center[0]), math.radians(center[1])
    rho = math.hypot(x, y)
    if rho < 1e-9:
        return center[0], center[1]
    c = rho / EARTH_RADIUS_M
    sin_c, cos_c = math.sin(c), math.cos(c)
    sin_phi0, cos_phi0 = math.sin(lat0), math.cos(lat0)
    phi = math.asin(max(-1.0, min(1.0, cos_c * sin_phi0 + (y * sin_c * cos_phi0) / rho)))
    lam = lon0 + math.atan2(x * sin_c, rho * cos_c * cos_phi0 - y * sin_c * sin_phi0)
    return math.degrees(lam), math.degrees(phi)


def great_circle_m(lon1: float, lat1: float, lon2: float, lat2: float) -> float:
    """Haversine distance in meters on the spherical Earth model."""
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = phi2 - phi1
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(a)))


def hexagon_area_km2(side_m: float) -> float:
    return 1.5 * SQRT3 * (side_m / 1000.0) ** 2


def _center_xy(side_m: float, q: int, r: int) -> tuple[float, float]:
    return SQRT3 * side_m * (q + r / 2.0), 1.5 * side_m * r


def _vertices_xy(side_m: float, q: int, r: int) -> list[tuple[float, float]]:
    cx, cy = _center_xy(side_m, q, r)
    return [
        (cx + side_m * math.cos(math.radians(30 + 60 * k)), cy + side_m * math.sin(math.radians(30 + 60 * k)))
        for k in range(6)
    ]


@dataclass(frozen=True)
class StudyArea:
    """A named boundary polygon (WGS84 lon/lat, optional holes)."""

    name: str
    boundary: BaseGeometry  # Polygon or MultiPolygon

    def __post_init__(self) -> None:
        if self.boundary.is_empty or not self.boundary.is_valid:
            raise InputDataError(f"study area {self.name!r}: boundary ring is invalid")
        if self.boundary.area <= 0.0:
            raise InputDataError(f"study area {self.name!r}: boundary has zero area")


@dataclass(frozen=True)
class Hexagon:
    """One grid cell; ``(q, r)`` are pointy-top axial coordinates."""

    q: int
    r: int
    center_lon: float
    center_lat: float

    @property
    def id(self) -> tuple[int, int]:
        return (self.q, self.r)


class HexGrid:
    """Immutable pointy-top hexagon lattice clipped to a study area."""

    def __init__(
        self,
        side_m: float,
        projection_center: tuple[float, float],
        hexagons: dict[tuple[int, int], Hexagon],
    ):
        self.side_m = side_m
        self.projection_center = projection_center
        self.hexagons = dict(hexagons)
        self.hex_area_km2 = hexagon_area_km2(side_m)

    def __len__(self) -> int:
        return len(self.hexagons)

    def __contains__(self, hex_id: tuple[int, int]) -> bool:
        return hex_id in self.hexagons

    def ids(self) -> list[tuple[int, int]]:
        return sorted(self.hexagons)

    def center_xy(self, q: int, r: int) -> tuple[float, float]:
        """Planar center of axial cell (q, r)."""
        return _center_xy(self.side_m, q, r)

    def vertices_xy(self, q: int, r: int) -> list[tuple[float, float]]:
        """Planar vertices, counter-clockwise starting east-north-east."""
        return _vertices_xy(self.side_m, q, r)

    def vertices_lonlat(self, q: int, r: int) -> list[tuple[float, float]]:
        return [unproject(x, y, self.projection_center) for x, y in self.vertices_xy(q, r)]


def load_boundary(path: str | Path, name: str | None = None) -> StudyArea:
    """Read the first Polygon/MultiPolygon feature of a GeoJSON file."""
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputDataError(f"cannot read boundary {path}: {exc}") from None

    geometries = []
    if doc.get("type") == "FeatureCollection":
        geometries = [(f.get("geometry"), f.get("properties") or {}) for f in doc.get("features", [])]
    elif doc.get("type") == "Feature":
        geometries = [(doc.get("geometry"), doc.get("properties") or {})]
    elif doc.get("type") in ("Polygon", "MultiPolygon"):
        geometries = [(doc, {})]
    for geometry, properties in geometries:
        if geometry and geometry.get("type") in ("Polygon", "MultiPolygon"):
            area_name = name or properties.get("name") or path.stem
            return StudyArea(name=area_name, boundary=shape(geometry))
    raise InputDataError(f"boundary {path}: no Polygon or MultiPolygon feature found")


def boundary_from_stops(stops, buffer_m: float = 2000.0, name: str = "stops-hull") -> StudyArea:
    """Fallback study area: convex hull of all stops buffered by ``buffer_m``.

    The buffer is taken in the local projected plane and mapped back to
    WGS84, so it is metric regardless of latitude.
    """
    if not stops:
        raise InputDataError("cannot derive a study area from an empty stop list")
    mean_lon = sum(s.lon for s in stops) / len(stops)
    mean_lat = sum(s.lat for s in stops) / len(stops)
    center = (mean_lon, mean_lat)
    points = MultiPoint([project(s.lon, s.lat, center) for s in stops])
    hull = points.convex_hull.buffer(buffer_m)
    ring = [unproject(x, y, center) for x, y in hull.exterior.coords]
    return StudyArea(name=name, boundary=ShapelyPolygon(ring))


def build_grid(area: StudyArea, side_m: float = 500.0) -> HexGrid:
    """Tessellate ``area`` with hexagons of side ``side_m``.

    The lattice is anchored so hexagon (0, 0) sits at the boundary centroid,
    which is also the projection center; a hexagon is retained when its
    polygon intersects the (projected) boundary.
    """
    if side_m <= 0:
        raise InputDataError(f"hexagon side must be positive, got {side_m}")
    centroid = area.boundary.centroid
    center = (centroid.x, centroid.y)

    projected = _project_geometry(area.boundary, center)
    if projected.is_empty or projected.area <= 0.0:
        raise InputDataError(f"study area {area.name!r}: degenerate boundary after projection")
    prepared = prep(projected)

    minx, miny, maxx, maxy = projected.bounds
    # Candidate axial window, padded by one circumradius so edge hexagons
    # whose centers fall outside the bounds are still tested.
    r_min = math.floor((miny - side_m) / (1.5 * side_m))
    r_max = math.ceil((maxy + side_m) / (1.5 * side_m))
    hexagons: dict[tuple[int, int], Hexagon] = {}
    for r in range(r_min, r_max + 1):
        q_min = math.floor((minx - side_m) / (SQRT3 * side_m) - r / 2.0)
        q_max = math.ceil((maxx + side_m) / (SQRT3 * side_m) - r / 2.0)
        for q in range(q_min, q_max + 1):
            hexagon = ShapelyPolygon(_vertices_xy(side_m, q, r))
            if prepared.intersects(hexagon):
                lon, lat = unproject(*_center_xy(side_m, q, r), center)
                hexagons[(q, r)] = Hexagon(q=q, r=r, center_lon=lon, center_lat=lat)
    if not hexagons:
        raise InputDataError(f"study area {area.name!r}: no hexagons intersect the boundary")
    return HexGrid(side_m, center, hexagons)


def _project_geometry(geometry, center: tuple[float, float]):
    """Project a shapely Polygon/MultiPolygon vertex-wise to the local plane."""
    if geometry.geom_type == "MultiPolygon":
        from shapely.geometry import MultiPolygon

        return MultiPolygon([_project_geometry(g, center) for g in geometry.geoms])
    exterior = [project(x, y, center) for x, y in geometry.exterior.coords]
    holes = [[project(x, y, center) for x, y in ring.coords] for ring in geometry.interiors]
    return ShapelyPolygon(exterior, holes)


def locate(grid: HexGrid, lon: float, lat: float) -> tuple[int, int] | None:
    """Hexagon id containing the point, or None when outside every retained
    hexagon.  Points on shared edges resolve to the nearest center."""
    x, y = project(lon, lat, grid.projection_center)
    s = grid.side_m
    qf = (SQRT3 / 3.0 * x - y / 3.0) / s
    rf = (2.0 / 3.0 * y) / s
    hex_id = _axial_round(qf, rf)
    return hex_id if hex_id in grid.hexagons else None


def _axial_round(qf: float, rf: float) -> tuple[int, int]:
    """Round fractional axial coordinates to the containing lattice cell."""
    xf, zf = qf, rf
    yf = -xf - zf
    rx, ry, rz = round(xf), round(yf), round(zf)
    dx, dy, dz = abs(rx - xf), abs(ry - yf), abs(rz - zf)
    if dx > dy and dx > dz:
        rx = -ry - rz
    elif dy > dz:
        pass  # y is derived; nothing depends on it
    else:
        rz = -rx - ry
    return int(rx), int(rz)

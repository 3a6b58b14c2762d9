"""Gridded population ingestion and aggregation onto hexagons.

Two input formats are supported, both WGS84:

* CSV with an exact ``lon,lat,count`` header;
* ESRI ASCII grid (``ncols/nrows/xllcorner/yllcorner/cellsize`` header,
  optional ``NODATA_value``, row 1 = northernmost row).

Each cell is assigned as a point (its center) to the hexagon that contains
it; cells falling outside the grid are tallied separately so total counts
are conserved.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import InputDataError
from .hexgrid import HexGrid, locate


@dataclass(frozen=True)
class PopulationCell:
    """A populated grid point; ``count`` is persons (may be fractional)."""

    lon: float
    lat: float
    count: float


def load_population(path: str | Path, fmt: str = "csv") -> list[PopulationCell]:
    """Read population cells from ``path`` in the given format.

    Zero-count cells are dropped; negative or non-finite counts are fatal.
    """
    path = Path(path)
    if not path.is_file():
        raise InputDataError(f"population file not found: {path}")
    if fmt == "csv":
        return _load_csv(path)
    if fmt == "ascii_grid":
        return _load_ascii_grid(path)
    raise InputDataError(f"unknown population format {fmt!r}, expected 'csv' or 'ascii_grid'")


def _check_count(count: float, where: str) -> None:
    if not math.isfinite(count) or count < 0:
        raise InputDataError(f"{where}: population count must be finite and non-negative, got {count}")


def _load_csv(path: Path) -> list[PopulationCell]:
    cells: list[PopulationCell] = []
    with open(path, encoding="utf-8-sig", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return []
        if [c.strip().lower() for c in header] != ["lon", "lat", "count"]:
            raise InputDataError(f"{path}: expected header 'lon,lat,count', got {','.join(header)!r}")
        for rownum, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 3:
                raise InputDataError(f"{path} row {rownum}: expected 3 columns, got {len(row)}")
            try:
                lon, lat, count = (float(c) for c in row)
            except ValueError:
                raise InputDataError(f"{path} row {rownum}: non-numeric value") from None
            _check_count(count, f"{path} row {rownum}")
            if count > 0:
                cells.append(PopulationCell(lon=lon, lat=lat, count=count))
    return cells


def _load_ascii_grid(path: Path) -> list[PopulationCell]:
    with open(path, encoding="utf-8-sig") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    header: dict[str, float] = {}
    data_start = 0
    for i, line in enumerate(lines):
        parts = line.split()
        key = parts[0].lower()
        if len(parts) == 2 and key in ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize", "nodata_value"):
            try:
                header[key] = float(parts[1])
            except ValueError:
                raise InputDataError(f"{path}: malformed header line {line!r}") from None
            data_start = i + 1
        else:
            break
    for key in ("ncols", "nrows", "xllcorner", "yllcorner", "cellsize"):
        if key not in header:
            raise InputDataError(f"{path}: ASCII grid header is missing {key!r}")
    ncols, nrows = int(header["ncols"]), int(header["nrows"])
    xll, yll, cellsize = header["xllcorner"], header["yllcorner"], header["cellsize"]
    nodata = header.get("nodata_value", -9999.0)

    values: list[float] = []
    for line in lines[data_start:]:
        try:
            values.extend(float(v) for v in line.split())
        except ValueError:
            raise InputDataError(f"{path}: non-numeric raster value in line {line!r}") from None
    if len(values) != ncols * nrows:
        raise InputDataError(f"{path}: expected {ncols * nrows} raster values, got {len(values)}")

    cells: list[PopulationCell] = []
    for row in range(nrows):
        lat = yll + (nrows - row - 0.5) * cellsize  # row 0 is the northern edge
        for col in range(ncols):
            count = values[row * ncols + col]
            if count == nodata:
                continue
            _check_count(count, f"{path} raster row {row + 1} col {col + 1}")
            if count > 0:
                cells.append(PopulationCell(lon=xll + (col + 0.5) * cellsize, lat=lat, count=count))
    return cells


def assign_population(
    cells: list[PopulationCell], grid: HexGrid
) -> tuple[dict[tuple[int, int], float], float]:
    """Aggregate cell counts onto hexagons by point location.

    Returns ``(per_hexagon, outside_total)`` where ``per_hexagon`` has an
    entry for every grid hexagon (zero where empty).  Sums use math.fsum, so
    the result does not depend on cell input order and the grand total is
    conserved to within float rounding.
    """
    buckets: dict[tuple[int, int], list[float]] = {}
    outside: list[float] = []
    for cell in cells:
        hex_id = locate(grid, cell.lon, cell.lat)
        if hex_id is None:
            outside.append(cell.count)
        else:
            buckets.setdefault(hex_id, []).append(cell.count)
    per_hexagon = {hex_id: math.fsum(buckets.get(hex_id, ())) for hex_id in grid.ids()}
    return per_hexagon, math.fsum(outside)

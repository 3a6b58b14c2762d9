"""Command-line pipeline: score -> equity -> compare.

``score`` does the expensive per-city work (parse feed, tessellate, route
from every hexagon, score) and persists per-hexagon results; ``equity``
turns one city's scores into Lorenz curves, Gini indices and top-share
ratios; ``compare`` normalizes and ranks several cities.  Commands hand off
through files so per-city runs can be batched and re-analyzed cheaply.

Exit codes: 0 success, 1 degenerate data, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from . import equity, reports
from .errors import DegenerateDataError, InputDataError
from .gtfs import parse_feed
from .hexgrid import boundary_from_stops, build_grid, load_boundary
from .population import assign_population, load_population
from .router import build_timetable
from .scores import ScoreParams, score_city
from .svgplot import lorenz_svg


@dataclass(frozen=True)
class RunConfig:
    """Validated inputs for one scoring run."""

    feed_path: Path
    population_path: Path
    population_format: str
    boundary_path: Path | None
    service_date: date
    window: tuple[int, int]
    step_s: int
    walk_speed_kmh: float
    max_walk_m: float
    side_m: float
    budgets_min: tuple[float, ...]
    out_dir: Path
    averaging: str
    normalization: str

    def __post_init__(self) -> None:
        if self.window[0] >= self.window[1]:
            raise ValueError("window start must precede window end")
        for name, value in (
            ("step", self.step_s),
            ("walk speed", self.walk_speed_kmh),
            ("max walk", self.max_walk_m),
            ("hex side", self.side_m),
        ):
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")


def _parse_hhmm(text: str) -> int:
    parts = text.strip().split(":")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ValueError(f"expected HH:MM, got {text!r}")
    hours, minutes = int(parts[0]), int(parts[1])
    if minutes > 59:
        raise ValueError(f"minutes out of range in {text!r}")
    return hours * 3600 + minutes * 60


def _parse_window(text: str) -> tuple[int, int]:
    try:
        start_text, end_text = text.split("-")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected HH:MM-HH:MM, got {text!r}") from None
    try:
        return _parse_hhmm(start_text), _parse_hhmm(end_text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_budgets(text: str) -> tuple[float, ...]:
    try:
        budgets = tuple(float(b) for b in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated minutes, got {text!r}") from None
    if not budgets or any(b <= 0 for b in budgets):
        raise argparse.ArgumentTypeError("budgets must be positive minutes")
    return budgets


def _parse_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected YYYY-MM-DD, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transit-equity",
        description="Transit accessibility scores per hexagon and spatial equity metrics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="score one city from GTFS + population data")
    score.add_argument("--config", help="key-value config file; explicit flags win")
    score.add_argument("--feed", required=True, help="GTFS directory or .zip")
    score.add_argument("--population", required=True, help="population grid file")
    score.add_argument("--pop-format", choices=("csv", "ascii_grid"), default="csv")
    score.add_argument("--boundary", help="GeoJSON study-area boundary (default: buffered hull of stops)")
    score.add_argument("--date", required=True, type=_parse_date, help="service date YYYY-MM-DD")
    score.add_argument("--window", type=_parse_window, default=(6 * 3600, 20 * 3600), metavar="HH:MM-HH:MM")
    score.add_argument("--step-min", type=float, default=20.0, help="departure sampling step, minutes")
    score.add_argument("--walk-kmh", type=float, default=5.0)
    score.add_argument("--max-walk-m", type=float, default=1500.0)
    score.add_argument("--side-m", type=float, default=500.0, help="hexagon side, meters")
    score.add_argument("--budgets-min", type=_parse_budgets, default=(15.0, 30.0, 45.0, 60.0))
    score.add_argument("--average", choices=("times", "scores"), default="times")
    score.add_argument("--out", required=True, help="output directory")
    score.set_defaults(func=cmd_score)

    eq = sub.add_parser("equity", help="Lorenz curves, Gini indices and top-share ratios for one city")
    eq.add_argument("scores_csv", help="scores.csv produced by the score command")
    eq.add_argument("--config", help="key-value config file; explicit flags win")
    eq.add_argument("--city", help="city name recorded in gini.json (default: output directory name)")
    eq.add_argument("--fraction", type=float, default=0.01, help="top-share fraction in (0, 1]")
    eq.add_argument("--out", required=True, help="output directory")
    eq.set_defaults(func=cmd_equity)

    comp = sub.add_parser("compare", help="normalize and rank several cities' gini.json files")
    comp.add_argument("gini_json", nargs="+", help="two or more per-city gini.json files")
    comp.add_argument("--config", help="key-value config file; explicit flags win")
    comp.add_argument("--normalize", choices=("table4", "minmax"), default="table4")
    comp.add_argument("--out", required=True, help="output directory")
    comp.set_defaults(func=cmd_compare)
    return parser


def cmd_score(args: argparse.Namespace) -> None:
    config = RunConfig(
        feed_path=Path(args.feed),
        population_path=Path(args.population),
        population_format=args.pop_format,
        boundary_path=Path(args.boundary) if args.boundary else None,
        service_date=args.date,
        window=args.window,
        step_s=round(args.step_min * 60),
        walk_speed_kmh=args.walk_kmh,
        max_walk_m=args.max_walk_m,
        side_m=args.side_m,
        budgets_min=args.budgets_min,
        out_dir=Path(args.out),
        averaging=args.average,
        normalization="table4",
    )
    feed = parse_feed(config.feed_path, config.service_date)
    if config.boundary_path is not None:
        area = load_boundary(config.boundary_path)
    else:
        area = boundary_from_stops(feed.stops)
    grid = build_grid(area, config.side_m)
    cells = load_population(config.population_path, config.population_format)
    pop, outside = assign_population(cells, grid)
    timetable = build_timetable(
        feed, grid, walk_speed_kmh=config.walk_speed_kmh, max_walk_m=config.max_walk_m
    )
    params = ScoreParams(
        window=config.window,
        step_s=config.step_s,
        budgets_min=config.budgets_min,
        averaging=config.averaging,
    )
    field = score_city(grid, timetable, pop, params)

    config.out_dir.mkdir(parents=True, exist_ok=True)
    reports.write_scores_csv(field, config.out_dir / "scores.csv")
    reports.write_scores_geojson(field, config.out_dir / "scores.geojson")
    inside = sum(pop.values())
    print(
        f"scored {len(grid)} hexagons ({len(feed.stops)} stops, {len(feed.trips)} trips); "
        f"population inside grid {inside:.6g}, outside {outside:.6g}"
    )


def cmd_equity(args: argparse.Namespace) -> None:
    out_dir = Path(args.out)
    city = args.city or out_dir.resolve().name
    rows = reports.read_scores_csv(args.scores_csv)
    if not rows:
        raise DegenerateDataError(f"{args.scores_csv}: no hexagon rows")
    velocity = [row.velocity_kmh for row in rows]
    sociality = [row.sociality for row in rows]
    weights = [row.population for row in rows]

    curves = {
        ("v", "hex"): equity.lorenz_hexagon(velocity, score_kind="velocity"),
        ("s", "hex"): equity.lorenz_hexagon(sociality, score_kind="sociality"),
        ("v", "ind"): equity.lorenz_population(velocity, weights, score_kind="velocity"),
        ("s", "ind"): equity.lorenz_population(sociality, weights, score_kind="sociality"),
    }
    ginis = {
        f"G_{score}_{kind}": equity.gini(curve) for (score, kind), curve in curves.items()
    }
    top_shares = {
        "top_share_v_hex": equity.top_share_ratio(velocity, None, args.fraction),
        "top_share_s_hex": equity.top_share_ratio(sociality, None, args.fraction),
        "top_share_v_ind": equity.top_share_ratio(velocity, weights, args.fraction),
        "top_share_s_ind": equity.top_share_ratio(sociality, weights, args.fraction),
    }

    out_dir.mkdir(parents=True, exist_ok=True)
    titles = {"v": "velocity score", "s": "sociality score"}
    kinds = {"hex": "hexagon stakeholders", "ind": "individual stakeholders"}
    for (score, kind), curve in curves.items():
        stem = f"lorenz_{score}_{kind}"
        reports.write_lorenz_csv(curve, out_dir / f"{stem}.csv")
        title = f"{city}: {titles[score]}, {kinds[kind]}"
        svg = lorenz_svg(curve, ginis[f"G_{score}_{kind}"], title)
        (out_dir / f"{stem}.svg").write_text(svg, encoding="utf-8")
    reports.write_gini_json(city, ginis, top_shares, args.fraction, out_dir / "gini.json")
    summary = ", ".join(f"{m}={ginis[m]:.4f}" for m in equity.GINI_METRICS)
    print(f"{city}: {summary}")


def cmd_compare(args: argparse.Namespace) -> None:
    if len(args.gini_json) < 2:
        raise InputDataError("compare needs at least 2 per-city gini.json files")
    rows: dict[str, dict[str, float]] = {}
    for path in args.gini_json:
        city, ginis = reports.read_gini_json(path)
        if city in rows:
            raise InputDataError(f"duplicate city name {city!r} in {path}")
        rows[city] = ginis
    try:
        table = equity.GiniTable(rows)
    except ValueError as exc:
        raise InputDataError(str(exc)) from None
    normalized = equity.normalize_across_cities(table, mode=args.normalize)
    rankings = {metric: equity.rank_cities(table, metric) for metric in equity.GINI_METRICS}

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports.write_comparison_json(rows, normalized, args.normalize, out_dir / "comparison.json")
    reports.write_ranking_csv(rankings, out_dir / "ranking.csv")
    for metric in equity.GINI_METRICS:
        print(f"{metric}: {' > '.join(rankings[metric])} (worst to best)")


def _load_config_pairs(path: str) -> list[str]:
    """Turn a ``key = value`` config file into synthetic CLI tokens."""
    tokens: list[str] = []
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputDataError(f"cannot read config file {path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputDataError(f"{path} line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        tokens.extend([f"--{key}", value])
    return tokens


def _apply_config(argv: list[str]) -> list[str]:
    """Splice config-file tokens right after the subcommand so that
    explicitly passed flags (later tokens) win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        return argv  # argparse will report the missing value
    tokens = _load_config_pairs(argv[idx + 1])
    return argv[:1] + tokens + argv[1:]


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _apply_config(argv)
        parser = build_parser()
        args = parser.parse_args(argv)
        args.func(args)
        return 0
    except DegenerateDataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputDataError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

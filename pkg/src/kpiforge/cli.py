"""Command-line entry points: ingest, analyze, report, slice, serve.

All commands share one data directory (--data-dir or KPIFORGE_DATA_DIR)
so batch runs and the HTTP service see the same datasets and analyses.
"""

from __future__ import annotations

import datetime
import json
import uuid
from pathlib import Path

import click

from .api import _atomic_write_json, _condensed_json, create_app
from .cube import SliceSpec, aggregate, aggregate_to_json, build_cube, dice
from .dataset import CsvFormatError, DatasetStore, UnknownDatasetError, load_csv
from .kpi import PlanError, condense, load_plan_file, run_plan, verdict_from_json
from .report import format_number, render_report, verdict_to_json

DEFAULT_DATA_DIR = "./kpiforge-data"


def _stores(data_dir: str):
    root = Path(data_dir)
    return root, DatasetStore(root / "datasets")


@click.group()
@click.option("--data-dir", envvar="KPIFORGE_DATA_DIR", default=DEFAULT_DATA_DIR,
              show_default=True, help="Directory holding datasets and analyses.")
@click.pass_context
def main(ctx, data_dir):
    """Statistically validated KPIs and OLAP queries over tabular data."""
    ctx.obj = data_dir


@main.command()
@click.argument("csv_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--name", "-n", default=None, help="Dataset name (defaults to file stem).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def ingest(data_dir, csv_path, name, fmt):
    """Load a CSV file into the dataset store and print its schema."""
    path = Path(csv_path)
    _, datasets = _stores(data_dir)
    try:
        ds = load_csv(path.read_bytes(), name or path.stem)
    except (CsvFormatError, UnicodeDecodeError) as exc:
        raise click.ClickException(f"malformed CSV: {exc}")
    datasets.save(ds)
    if fmt == "json":
        click.echo(json.dumps({
            "id": ds.id,
            "name": ds.name,
            "row_count": ds.row_count,
            "schema": [
                {"name": c.name, "kind": c.kind,
                 "distinct_count": c.distinct_count,
                 "missing_count": c.missing_count}
                for c in ds.columns
            ],
        }, indent=2))
        return
    click.echo(f"dataset id: {ds.id}")
    click.echo(f"name: {ds.name}  rows: {ds.row_count}")
    for c in ds.columns:
        click.echo(f"  {c.name}: {c.kind}  distinct={c.distinct_count} "
                   f"missing={c.missing_count}")


@main.command()
@click.option("--dataset", "dataset_id", required=True)
@click.option("--plan", "plan_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def analyze(data_dir, dataset_id, plan_path, fmt):
    """Run a JSON test plan against a stored dataset and persist the run."""
    root, datasets = _stores(data_dir)
    try:
        ds = datasets.load(dataset_id)
    except UnknownDatasetError:
        raise click.ClickException(f"unknown dataset {dataset_id}")
    try:
        registry, plan = load_plan_file(plan_path)
        verdicts = run_plan(plan, ds, registry)
        condensed = condense(registry, verdicts)
    except (PlanError, json.JSONDecodeError, KeyError) as exc:
        raise click.ClickException(f"invalid plan: {exc}")
    run = {
        "id": uuid.uuid4().hex,
        "dataset_id": dataset_id,
        "plan": json.loads(Path(plan_path).read_text(encoding="utf-8")),
        "verdicts": [verdict_to_json(v) for v in verdicts],
        "condensed": _condensed_json(condensed),
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    runs_dir = root / "analyses"
    runs_dir.mkdir(parents=True, exist_ok=True)
    _atomic_write_json(runs_dir / f"{run['id']}.json", run)
    if fmt == "json":
        click.echo(json.dumps(run, indent=2))
        return
    click.echo(f"analysis id: {run['id']}")
    for v in verdicts:
        p = "" if v.p_value is None else f" p={format_number(v.p_value)}"
        click.echo(f"  {v.test_id}: {v.decision}{p}")
    retained = [k.name for k in condensed.retained]
    click.echo(f"condensed KPIs: {', '.join(retained)}")


@main.command()
@click.option("--analysis", "analysis_id", required=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "csv"]),
              default="text")
@click.pass_obj
def report(data_dir, analysis_id, fmt):
    """Render a stored analysis as SPSS-style verdict tables."""
    root, datasets = _stores(data_dir)
    path = root / "analyses" / f"{analysis_id}.json"
    if not path.exists():
        raise click.ClickException(f"unknown analysis {analysis_id}")
    run = json.loads(path.read_text(encoding="utf-8"))
    try:
        ds = datasets.load(run["dataset_id"])
        registry, plan = None, None
        from .kpi import plan_from_json, registry_from_json

        registry = registry_from_json(run["plan"])
        plan = plan_from_json(run["plan"])
        verdicts = run_plan(plan, ds, registry)
    except (UnknownDatasetError, PlanError, KeyError):
        # dataset gone: fall back to the persisted summary verdicts
        verdicts = [verdict_from_json(v) for v in run["verdicts"]]
    click.echo(render_report(verdicts, fmt))


@main.command("slice")
@click.option("--dataset", "dataset_id", required=True)
@click.option("--dimensions", required=True,
              help="Comma-separated dimension columns.")
@click.option("--measures", required=True, help="Comma-separated measure columns.")
@click.option("--filter", "filters", multiple=True, metavar="DIM=LEVEL",
              help="Equality filter; repeatable.")
@click.option("--group-by", default=None)
@click.option("--measure", default=None,
              help="Measure to aggregate (defaults to the first).")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_obj
def slice_cmd(data_dir, dataset_id, dimensions, measures, filters, group_by,
              measure, fmt):
    """Build a cube, apply slice/dice filters, and print an aggregate."""
    _, datasets = _stores(data_dir)
    try:
        ds = datasets.load(dataset_id)
    except UnknownDatasetError:
        raise click.ClickException(f"unknown dataset {dataset_id}")
    dims = [d.strip() for d in dimensions.split(",") if d.strip()]
    meas = [m.strip() for m in measures.split(",") if m.strip()]
    try:
        cube = build_cube(ds, dims, meas)
        if filters:
            parsed = []
            for f in filters:
                if "=" not in f:
                    raise click.ClickException(f"bad --filter {f!r}: expected DIM=LEVEL")
                dim, level = f.split("=", 1)
                parsed.append((dim, level))
            cube = dice(cube, SliceSpec(parsed))
        result = aggregate(cube, measure or meas[0], group_by)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    if fmt == "json":
        click.echo(json.dumps(aggregate_to_json(result), indent=2))
        return
    click.echo(f"measure: {result.measure}  group_by: {result.group_by or '-'}")
    for row in result.rows:
        label = row.group if row.group is not None else "(all)"
        if row.count == 0:
            click.echo(f"  {label}: count=0")
        else:
            click.echo(f"  {label}: count={row.count} sum={row.sum:.4f} "
                       f"mean={row.mean:.4f} min={row.min:.4f} max={row.max:.4f}")


@main.command()
@click.option("--addr", envvar="KPIFORGE_ADDR", default="127.0.0.1:8000",
              show_default=True, help="host:port to bind.")
@click.pass_obj
def serve(data_dir, addr):
    """Run the HTTP JSON service until interrupted."""
    import uvicorn

    host, _, port = addr.partition(":")
    app = create_app(data_dir)
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port or 8000))


if __name__ == "__main__":
    main()

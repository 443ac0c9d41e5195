"""HTTP JSON facade over the dataset store, test-plan runner and cube
queries. One FastAPI app per data directory; analysis runs and cube
definitions persist as JSON documents next to the datasets.
"""

from __future__ import annotations

import datetime
import json
import os
import tempfile
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request

from .cube import (
    CubeError,
    SliceSpec,
    aggregate,
    aggregate_to_json,
    build_cube,
    dice,
)
from .dataset import (
    CsvFormatError,
    DatasetStore,
    UnknownDatasetError,
    load_csv,
)
from .kpi import (
    PlanError,
    condense,
    plan_from_json,
    registry_from_json,
    run_plan,
)
from .report import verdict_to_json


def _schema_json(ds) -> list[dict]:
    return [
        {
            "name": c.name,
            "kind": c.kind,
            "distinct_count": c.distinct_count,
            "missing_count": c.missing_count,
        }
        for c in ds.columns
    ]


def _condensed_json(condensed) -> dict:
    return {
        "retained": [
            {
                "name": k.name,
                "categories": sorted(k.categories),
                "column": k.column,
                "is_outcome": k.is_outcome,
            }
            for k in condensed.retained
        ],
        "dropped": [
            {"name": k.name, "reason": reason} for k, reason in condensed.dropped
        ],
    }


def _atomic_write_json(path: Path, doc: dict) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def parse_filters(raw: str) -> list[tuple[str, str]]:
    """Parse the documented "dim:level,dim:level" filter grammar."""
    from urllib.parse import unquote

    filters = []
    for part in raw.split(","):
        if not part:
            continue
        if ":" not in part:
            raise ValueError(f"bad filter {part!r}: expected dim:level")
        dim, level = part.split(":", 1)
        filters.append((unquote(dim), unquote(level)))
    if not filters:
        raise ValueError("empty filter list")
    return filters


def create_app(data_dir: str | Path) -> FastAPI:
    data_dir = Path(data_dir)
    datasets = DatasetStore(data_dir / "datasets")
    runs_dir = data_dir / "analyses"
    runs_dir.mkdir(parents=True, exist_ok=True)
    cubes_dir = data_dir / "cubes"
    cubes_dir.mkdir(parents=True, exist_ok=True)

    app = FastAPI(title="kpiforge")
    app.state.data_dir = data_dir

    def _load_run(run_id: str) -> dict:
        path = runs_dir / f"{run_id}.json"
        if not path.exists():
            raise HTTPException(404, f"unknown analysis {run_id}")
        return json.loads(path.read_text(encoding="utf-8"))

    def _load_cube_doc(cube_id: str) -> dict:
        path = cubes_dir / f"{cube_id}.json"
        if not path.exists():
            raise HTTPException(404, f"unknown cube {cube_id}")
        return json.loads(path.read_text(encoding="utf-8"))

    @app.post("/datasets", status_code=201)
    async def upload_dataset(request: Request):
        body = await request.body()
        name = request.query_params.get("name", "uploaded")
        try:
            ds = load_csv(body, name)
        except (CsvFormatError, UnicodeDecodeError) as exc:
            raise HTTPException(400, f"malformed CSV: {exc}")
        datasets.save(ds)
        return {"id": ds.id, "name": ds.name, "row_count": ds.row_count,
                "schema": _schema_json(ds)}

    @app.get("/datasets/{dataset_id}/schema")
    def dataset_schema(dataset_id: str):
        try:
            ds = datasets.load(dataset_id)
        except UnknownDatasetError:
            raise HTTPException(404, f"unknown dataset {dataset_id}")
        return {"id": ds.id, "name": ds.name, "row_count": ds.row_count,
                "schema": _schema_json(ds)}

    @app.post("/analyses", status_code=201)
    def create_analysis(payload: dict):
        dataset_id = payload.get("dataset_id")
        plan_doc = payload.get("plan")
        if not dataset_id or not isinstance(plan_doc, dict):
            raise HTTPException(422, "body must carry dataset_id and plan")
        try:
            ds = datasets.load(dataset_id)
        except UnknownDatasetError:
            raise HTTPException(404, f"unknown dataset {dataset_id}")
        try:
            registry = registry_from_json(plan_doc)
            plan = plan_from_json(plan_doc)
            verdicts = run_plan(plan, ds, registry)
            condensed = condense(registry, verdicts)
        except (PlanError, KeyError) as exc:
            raise HTTPException(422, f"invalid plan: {exc}")
        run = {
            "id": uuid.uuid4().hex,
            "dataset_id": dataset_id,
            "plan": plan_doc,
            "verdicts": [verdict_to_json(v) for v in verdicts],
            "condensed": _condensed_json(condensed),
            "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
        _atomic_write_json(runs_dir / f"{run['id']}.json", run)
        return run

    @app.get("/analyses/{run_id}")
    def get_analysis(run_id: str):
        return _load_run(run_id)

    @app.get("/analyses/{run_id}/condensed")
    def get_condensed(run_id: str):
        return _load_run(run_id)["condensed"]

    @app.post("/cube", status_code=201)
    def create_cube(payload: dict):
        dataset_id = payload.get("dataset_id")
        dims = payload.get("dimensions")
        measures = payload.get("measures")
        if not dataset_id or not dims or not measures:
            raise HTTPException(422, "body must carry dataset_id, dimensions, measures")
        try:
            ds = datasets.load(dataset_id)
        except UnknownDatasetError:
            raise HTTPException(404, f"unknown dataset {dataset_id}")
        try:
            cube = build_cube(ds, dims, measures)
        except (CubeError, ValueError, KeyError) as exc:
            raise HTTPException(422, f"invalid cube spec: {exc}")
        doc = {
            "cube_id": uuid.uuid4().hex,
            "dataset_id": dataset_id,
            "dimensions": [
                {"name": n, "levels": list(levels)} for n, levels in cube.dimensions
            ],
            "measures": list(cube.measures),
            "fact_count": len(cube.facts),
        }
        _atomic_write_json(cubes_dir / f"{doc['cube_id']}.json", doc)
        return doc

    @app.get("/cube/{cube_id}")
    def get_cube(cube_id: str):
        return _load_cube_doc(cube_id)

    @app.get("/cube/{cube_id}/aggregate")
    def cube_aggregate(cube_id: str, measure: str,
                       group_by: str | None = None,
                       filters: str | None = None):
        doc = _load_cube_doc(cube_id)
        try:
            ds = datasets.load(doc["dataset_id"])
        except UnknownDatasetError:
            raise HTTPException(404, f"dataset {doc['dataset_id']} gone")
        try:
            cube = build_cube(ds, [d["name"] for d in doc["dimensions"]],
                              doc["measures"])
            if filters:
                cube = dice(cube, SliceSpec(parse_filters(filters)))
            result = aggregate(cube, measure, group_by)
        except (CubeError, ValueError) as exc:
            raise HTTPException(422, f"bad aggregate query: {exc}")
        return aggregate_to_json(result)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    return app

"""Columnar datasets: CSV ingestion with numeric/categorical schema
inference, missing-value handling, the transforms that feed the stats
layer, and a file-backed store of named datasets.

Missing marker is the empty cell only; sentinel strings like "NA" are
kept as categorical text on purpose.
"""

from __future__ import annotations

import io
import json
import os
import tempfile
import uuid
from dataclasses import dataclass
from pathlib import Path

from .stats import GroupedSample

MAX_FACTOR_LEVELS = 12

Cell = float | str | None


class CsvFormatError(ValueError):
    """Malformed CSV input: ragged rows, duplicate headers, empty file."""


class ColumnError(ValueError):
    """A column does not exist or has the wrong kind for an operation."""


class UnknownDatasetError(KeyError):
    """Dataset id not present in the store."""


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: str  # "numeric" | "categorical"
    distinct_count: int
    missing_count: int


@dataclass(frozen=True)
class Dataset:
    id: str
    name: str
    columns: tuple[ColumnSchema, ...]
    cells: tuple[tuple[Cell, ...], ...]  # one tuple per column
    row_count: int

    def column_names(self) -> list[str]:
        return [c.name for c in self.columns]

    def schema_for(self, name: str) -> ColumnSchema:
        for col in self.columns:
            if col.name == name:
                return col
        raise ColumnError(f"no column named {name!r}")

    def column(self, name: str) -> tuple[Cell, ...]:
        for col, values in zip(self.columns, self.cells):
            if col.name == name:
                return values
        raise ColumnError(f"no column named {name!r}")


def _try_float(text: str) -> float | None:
    try:
        return float(text)
    except ValueError:
        return None


def _infer_column(name: str, raw: list[str]) -> tuple[ColumnSchema, tuple[Cell, ...]]:
    non_empty = [v for v in raw if v != ""]
    missing = len(raw) - len(non_empty)
    numeric = bool(non_empty) and all(_try_float(v) is not None for v in non_empty)
    values: list[Cell]
    if numeric:
        values = [None if v == "" else float(v) for v in raw]
    else:
        values = [None if v == "" else v for v in raw]
    distinct = len({v for v in values if v is not None})
    kind = "numeric" if numeric else "categorical"
    return ColumnSchema(name, kind, distinct, missing), tuple(values)


def load_csv(data: bytes | str, name: str, dataset_id: str | None = None) -> Dataset:
    """Parse UTF-8 CSV text with a header row into a typed Dataset.

    A column is numeric iff every non-empty cell parses as a real
    number; empty cells are missing; anything else is categorical.
    """
    import csv as _csv

    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = _csv.reader(io.StringIO(text))
    rows = [row for row in reader]
    # trailing fully-empty lines are not data rows
    while rows and rows[-1] == []:
        rows.pop()
    if not rows:
        raise CsvFormatError("empty CSV: no header row")
    header = [h.strip() for h in rows[0]]
    if any(h == "" for h in header):
        raise CsvFormatError("empty column name in header")
    if len(set(header)) != len(header):
        raise CsvFormatError("duplicate column names in header")
    body = []
    for row in rows[1:]:
        if row == []:
            # csv.reader drops blank lines; in a one-column file a blank
            # line is a missing cell, elsewhere it is skippable padding
            if len(header) == 1:
                body.append([""])
            continue
        body.append(row)
    for i, row in enumerate(body):
        if len(row) != len(header):
            raise CsvFormatError(
                f"ragged row {i + 2}: expected {len(header)} cells, got {len(row)}"
            )
    columns = []
    cells = []
    for j, col_name in enumerate(header):
        raw = [row[j].strip() for row in body]
        schema, values = _infer_column(col_name, raw)
        columns.append(schema)
        cells.append(values)
    return Dataset(
        id=dataset_id or uuid.uuid4().hex,
        name=name,
        columns=tuple(columns),
        cells=tuple(cells),
        row_count=len(body),
    )


def _factor_levels(values: tuple[Cell, ...]) -> list[Cell]:
    seen: list[Cell] = []
    for v in values:
        if v is not None and v not in seen:
            seen.append(v)
    return seen


def group_by_factor(ds: Dataset, dependent: str, factor: str) -> GroupedSample:
    """Partition a numeric dependent column by the levels of a factor.

    A numeric factor with at most MAX_FACTOR_LEVELS distinct values is
    treated as leveled. Rows missing either cell are dropped listwise
    for this pair only.
    """
    dep_schema = ds.schema_for(dependent)
    if dep_schema.kind != "numeric":
        raise ColumnError(f"dependent column {dependent!r} is not numeric")
    ds.schema_for(factor)
    fac_values = ds.column(factor)
    distinct = len({v for v in fac_values if v is not None})
    if distinct > MAX_FACTOR_LEVELS:
        raise ColumnError(
            f"column {factor!r} has {distinct} distinct values; "
            f"max {MAX_FACTOR_LEVELS} to treat as factor levels"
        )
    dep_values = ds.column(dependent)
    levels = _factor_levels(fac_values)
    groups: dict[Cell, list[float]] = {lv: [] for lv in levels}
    for fv, dv in zip(fac_values, dep_values):
        if fv is None or dv is None:
            continue
        groups[fv].append(dv)
    labeled = [(_level_label(lv), vals) for lv, vals in groups.items() if vals]
    return GroupedSample(labeled)


def _level_label(level: Cell) -> str:
    if isinstance(level, float) and level == int(level):
        return str(int(level))
    return str(level)


def pairwise_complete(ds: Dataset, a: str, b: str) -> tuple[list[float], list[float]]:
    """Aligned value vectors using only rows where both cells are present."""
    for name in (a, b):
        if ds.schema_for(name).kind != "numeric":
            raise ColumnError(f"column {name!r} is not numeric")
    xs: list[float] = []
    ys: list[float] = []
    for va, vb in zip(ds.column(a), ds.column(b)):
        if va is None or vb is None:
            continue
        xs.append(va)
        ys.append(vb)
    return xs, ys


def dataset_to_json(ds: Dataset) -> dict:
    return {
        "id": ds.id,
        "name": ds.name,
        "row_count": ds.row_count,
        "schema": [
            {
                "name": c.name,
                "kind": c.kind,
                "distinct_count": c.distinct_count,
                "missing_count": c.missing_count,
            }
            for c in ds.columns
        ],
        "columns": {c.name: list(vals) for c, vals in zip(ds.columns, ds.cells)},
    }


def dataset_from_json(doc: dict) -> Dataset:
    columns = tuple(
        ColumnSchema(c["name"], c["kind"], c["distinct_count"], c["missing_count"])
        for c in doc["schema"]
    )
    cells = tuple(
        tuple(None if v is None else (float(v) if c.kind == "numeric" else v)
              for v in doc["columns"][c.name])
        for c in columns
    )
    return Dataset(
        id=doc["id"],
        name=doc["name"],
        columns=columns,
        cells=cells,
        row_count=doc["row_count"],
    )


class DatasetStore:
    """One JSON document per dataset under a data directory.

    Writes go to a temp file in the same directory followed by an
    atomic rename, so concurrent readers never see a partial document.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def _path(self, dataset_id: str) -> Path:
        return self.data_dir / f"{dataset_id}.json"

    def save(self, ds: Dataset) -> str:
        doc = dataset_to_json(ds)
        fd, tmp = tempfile.mkstemp(dir=self.data_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(doc, fh)
            os.replace(tmp, self._path(ds.id))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return ds.id

    def load(self, dataset_id: str) -> Dataset:
        path = self._path(dataset_id)
        if not path.exists():
            raise UnknownDatasetError(dataset_id)
        with open(path, encoding="utf-8") as fh:
            return dataset_from_json(json.load(fh))

    def exists(self, dataset_id: str) -> bool:
        return self._path(dataset_id).exists()

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.data_dir.glob("*.json"))

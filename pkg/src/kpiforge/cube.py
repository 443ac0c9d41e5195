"""Dimensional model over a dataset: slice, dice, roll-up and
aggregation queries. Cubes are immutable; every query returns a new
value, so the slicer-driven dashboard can re-query freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .dataset import Dataset, MAX_FACTOR_LEVELS, _level_label


class CubeError(ValueError):
    """Invalid cube construction or query."""


@dataclass(frozen=True)
class SliceSpec:
    """Equality filters, at most one per dimension."""

    filters: tuple[tuple[str, str], ...]

    def __init__(self, filters: Sequence[tuple[str, str]]):
        frozen = tuple((str(d), str(lv)) for d, lv in filters)
        if not frozen:
            raise CubeError("slice spec needs at least one filter")
        dims = [d for d, _ in frozen]
        if len(set(dims)) != len(dims):
            raise CubeError("at most one filter per dimension")
        object.__setattr__(self, "filters", frozen)


@dataclass(frozen=True)
class AggregateRow:
    group: str | None
    measure: str
    count: int
    sum: float | None
    mean: float | None
    min: float | None
    max: float | None


@dataclass(frozen=True)
class AggregateResult:
    measure: str
    group_by: str | None
    rows: tuple[AggregateRow, ...]


@dataclass(frozen=True)
class Cube:
    source: Dataset
    dimensions: tuple[tuple[str, tuple[str, ...]], ...]  # (name, ordered levels)
    measures: tuple[str, ...]
    facts: tuple[int, ...]  # row indices into source

    def dimension_names(self) -> list[str]:
        return [name for name, _ in self.dimensions]

    def levels(self, dimension: str) -> tuple[str, ...]:
        for name, levels in self.dimensions:
            if name == dimension:
                return levels
        raise CubeError(f"unknown dimension {dimension!r}")


def _dimension_cell(ds: Dataset, column: str, row: int) -> str | None:
    v = ds.column(column)[row]
    return None if v is None else _level_label(v)


def build_cube(ds: Dataset, dimensions: Sequence[str],
               measures: Sequence[str]) -> Cube:
    """Build a cube over all rows of the dataset.

    Dimensions follow the same rule as ANOVA factors: categorical, or
    numeric with few distinct values. Level lists keep first-appearance
    order.
    """
    if not dimensions:
        raise CubeError("at least one dimension required")
    if not measures:
        raise CubeError("at least one measure required")
    overlap = set(dimensions) & set(measures)
    if overlap:
        raise CubeError(f"columns {sorted(overlap)} listed as both dimension and measure")
    dim_specs = []
    for name in dimensions:
        schema = ds.schema_for(name)  # raises ColumnError on unknown
        if schema.kind == "numeric" and schema.distinct_count > MAX_FACTOR_LEVELS:
            raise CubeError(
                f"numeric column {name!r} has too many distinct values "
                f"to act as a dimension"
            )
        levels = []
        for row in range(ds.row_count):
            label = _dimension_cell(ds, name, row)
            if label is not None and label not in levels:
                levels.append(label)
        dim_specs.append((name, tuple(levels)))
    for name in measures:
        if ds.schema_for(name).kind != "numeric":
            raise CubeError(f"measure {name!r} is not numeric")
    return Cube(
        source=ds,
        dimensions=tuple(dim_specs),
        measures=tuple(measures),
        facts=tuple(range(ds.row_count)),
    )


def dice(cube: Cube, spec: SliceSpec) -> Cube:
    """Conjunction of per-dimension equality filters.

    A fact with a missing cell in a filtered dimension is excluded.
    """
    dim_names = cube.dimension_names()
    for dim, level in spec.filters:
        if dim not in dim_names:
            raise CubeError(f"unknown dimension {dim!r}")
        if level not in cube.levels(dim):
            raise CubeError(f"unknown level {level!r} for dimension {dim!r}")
    kept = []
    for row in cube.facts:
        ok = True
        for dim, level in spec.filters:
            if _dimension_cell(cube.source, dim, row) != level:
                ok = False
                break
        if ok:
            kept.append(row)
    return Cube(
        source=cube.source,
        dimensions=cube.dimensions,
        measures=cube.measures,
        facts=tuple(kept),
    )


def slice_cube(cube: Cube, spec: SliceSpec) -> Cube:
    """Single-dimension slice: dice restricted to exactly one filter."""
    if len(spec.filters) != 1:
        raise CubeError(f"slice takes exactly one filter, got {len(spec.filters)}")
    return dice(cube, spec)


def roll_up(cube: Cube, drop_dimension: str) -> Cube:
    """Remove a dimension; facts are untouched, later aggregates coarsen."""
    if drop_dimension not in cube.dimension_names():
        raise CubeError(f"unknown dimension {drop_dimension!r}")
    return Cube(
        source=cube.source,
        dimensions=tuple((n, lv) for n, lv in cube.dimensions if n != drop_dimension),
        measures=cube.measures,
        facts=cube.facts,
    )


def _summarize(group: str | None, measure: str,
               values: list[float]) -> AggregateRow:
    if not values:
        return AggregateRow(group, measure, 0, None, None, None, None)
    total = math.fsum(values)
    return AggregateRow(
        group=group,
        measure=measure,
        count=len(values),
        sum=total,
        mean=total / len(values),
        min=min(values),
        max=max(values),
    )


def aggregate(cube: Cube, measure: str,
              group_by: str | None = None) -> AggregateResult:
    """Count/sum/mean/min/max of a measure, optionally per dimension level.

    Missing measure cells are excluded per group; a fact with a missing
    group_by cell is excluded from every group but still counts in
    ungrouped aggregates.
    """
    if measure not in cube.measures:
        raise CubeError(f"unknown measure {measure!r}")
    measure_col = cube.source.column(measure)
    if group_by is None:
        values = [measure_col[row] for row in cube.facts
                  if measure_col[row] is not None]
        if not cube.facts:
            return AggregateResult(measure, None, ())
        return AggregateResult(measure, None, (_summarize(None, measure, values),))
    if group_by not in cube.dimension_names():
        raise CubeError(f"unknown dimension {group_by!r}")
    per_level: dict[str, list[float]] = {lv: [] for lv in cube.levels(group_by)}
    for row in cube.facts:
        label = _dimension_cell(cube.source, group_by, row)
        if label is None:
            continue
        v = measure_col[row]
        if v is not None:
            per_level[label].append(v)
    rows = tuple(_summarize(lv, measure, vals) for lv, vals in per_level.items())
    return AggregateResult(measure, group_by, rows)


def aggregate_to_json(result: AggregateResult) -> dict:
    return {
        "measure": result.measure,
        "group_by": result.group_by,
        "rows": [
            {
                "group": r.group,
                "measure": r.measure,
                "count": r.count,
                "sum": r.sum,
                "mean": r.mean,
                "min": r.min,
                "max": r.max,
            }
            for r in result.rows
        ],
    }

// Dashboard controller: holds the slicer state, debounces changes and
// re-queries one aggregate per chart, discarding stale responses. All
// chart data comes from the server's aggregate rows; nothing is
// recomputed client-side.

import { ApiClient, type AggregateResult, type CubeDimension } from "./api.js";
import {
  EMPTY_STATE,
  clearAll,
  clearSelection,
  select,
  slicerFilters,
  type SlicerState,
} from "./slicer.js";

export type ChartSpec = {
  measure: string;
  groupBy: string;
};

export type Bar = {
  label: string;
  value: number;
};

export type ChartModel = {
  measure: string;
  groupBy: string;
  bars: Bar[];
  rows: AggregateResult["rows"];
};

export type DashboardOptions = {
  debounceMs?: number;
  onCharts?: (models: ChartModel[]) => void;
  onError?: (message: string) => void;
};

function toChartModel(spec: ChartSpec, result: AggregateResult): ChartModel {
  return {
    measure: spec.measure,
    groupBy: spec.groupBy,
    bars: result.rows.map((row) => ({ label: row.group ?? "(all)", value: row.mean })),
    rows: result.rows,
  };
}

export class Dashboard {
  private state: SlicerState = EMPTY_STATE;
  private generation = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  private readonly onCharts: (models: ChartModel[]) => void;
  private readonly onError: (message: string) => void;

  constructor(
    private readonly api: ApiClient,
    private readonly cubeId: string,
    private readonly dimensions: CubeDimension[],
    private readonly charts: ChartSpec[],
    options: DashboardOptions = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.onCharts = options.onCharts ?? (() => {});
    this.onError = options.onError ?? (() => {});
  }

  get slicerState(): SlicerState {
    return this.state;
  }

  select(dimension: string, level: string): void {
    this.state = select(this.state, this.dimensions, dimension, level);
    this.schedule();
  }

  clearDimension(dimension: string): void {
    this.state = clearSelection(this.state, dimension);
    this.schedule();
  }

  clearAll(): void {
    this.state = clearAll();
    this.schedule();
  }

  private schedule(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.refresh();
    }, this.debounceMs);
  }

  /** Issue one aggregate request per chart for the current state. */
  async refresh(): Promise<void> {
    const generation = ++this.generation;
    const filters = slicerFilters(this.state);
    try {
      const results = await Promise.all(
        this.charts.map((chart) =>
          this.api.aggregate(this.cubeId, chart.measure, chart.groupBy, filters),
        ),
      );
      if (generation !== this.generation) {
        return; // a newer state superseded this request set
      }
      this.onCharts(results.map((result, i) => toChartModel(this.charts[i], result)));
    } catch (err) {
      if (generation === this.generation) {
        this.onError(err instanceof Error ? err.message : String(err));
      }
    }
  }
}

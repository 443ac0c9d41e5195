// Thin typed client over the kpiforge JSON endpoints. The fetch
// implementation is injectable so tests can mock the server.

export type SchemaColumn = {
  name: string;
  kind: "numeric" | "categorical";
  distinct_count: number;
  missing_count: number;
};

export type DatasetSchema = {
  id: string;
  name: string;
  row_count: number;
  schema: SchemaColumn[];
};

export type CubeDimension = {
  name: string;
  levels: string[];
};

export type CubeInfo = {
  cube_id: string;
  dataset_id: string;
  dimensions: CubeDimension[];
  measures: string[];
  fact_count: number;
};

export type AggregateRow = {
  group: string | null;
  measure: string;
  count: number;
  sum: number;
  mean: number;
  min: number;
  max: number;
};

export type AggregateResult = {
  measure: string;
  group_by: string | null;
  rows: AggregateRow[];
};

export type Verdict = {
  test_id: string;
  method: string;
  factor_a: string;
  factor_b: string;
  alpha: number;
  statistic: number | null;
  p_value: number | null;
  decision: "reject_h0" | "fail_to_reject" | "error";
  error?: string;
};

export type CondensedList = {
  retained: { name: string; categories: string[]; column: string; is_outcome: boolean }[];
  dropped: { name: string; reason: string }[];
};

export type AnalysisRun = {
  id: string;
  dataset_id: string;
  verdicts: Verdict[];
  condensed: CondensedList;
};

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = "ApiError";
  }
}

/** Comma-joined, percent-encoded "dim:level" pairs for the filters param. */
export function filtersParam(filters: [string, string][]): string {
  return filters
    .map(([dim, level]) => `${encodeURIComponent(dim)}:${encodeURIComponent(level)}`)
    .join(",");
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path);
    if (!response.ok) {
      throw new ApiError(`GET ${path} failed: ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  loadCube(cubeId: string): Promise<CubeInfo> {
    return this.get<CubeInfo>(`/cube/${encodeURIComponent(cubeId)}`);
  }

  aggregate(
    cubeId: string,
    measure: string,
    groupBy: string,
    filters: [string, string][],
  ): Promise<AggregateResult> {
    const params = new URLSearchParams({ measure, group_by: groupBy });
    if (filters.length > 0) {
      params.set("filters", filtersParam(filters));
    }
    return this.get<AggregateResult>(
      `/cube/${encodeURIComponent(cubeId)}/aggregate?${params.toString()}`,
    );
  }

  loadAnalysis(analysisId: string): Promise<AnalysisRun> {
    return this.get<AnalysisRun>(`/analyses/${encodeURIComponent(analysisId)}`);
  }

  datasetSchema(datasetId: string): Promise<DatasetSchema> {
    return this.get<DatasetSchema>(`/datasets/${encodeURIComponent(datasetId)}/schema`);
  }
}

import { describe, expect, it } from "vitest";
import type { AnalysisRun } from "../src/api.js";
import {
  CORRELATION_FOOTNOTE,
  condensedSummary,
  needsCorrelationFootnote,
  verdictRows,
} from "../src/verdicts.js";

const RUN: AnalysisRun = {
  id: "run1",
  dataset_id: "ds1",
  verdicts: [
    {
      test_id: "anova_cgpa_by_course",
      method: "anova",
      factor_a: "Course",
      factor_b: "CGPA",
      alpha: 0.05,
      statistic: 12.8606,
      p_value: 0.0000031,
      decision: "reject_h0",
    },
    {
      test_id: "corr_semesters_cgpa",
      method: "correlation",
      factor_a: "No_of_Sem",
      factor_b: "CGPA",
      alpha: 0.05,
      statistic: -0.55,
      p_value: 0.00004,
      decision: "reject_h0",
    },
    {
      test_id: "bad_column",
      method: "anova",
      factor_a: "Nope",
      factor_b: "CGPA",
      alpha: 0.05,
      statistic: null,
      p_value: null,
      decision: "error",
      error: "unknown column Nope",
    },
  ],
  condensed: {
    retained: [
      { name: "CGPA", categories: ["Outcome KPI"], column: "CGPA", is_outcome: true },
      { name: "Course", categories: ["Qualitative KPI"], column: "Course", is_outcome: false },
    ],
    dropped: [{ name: "State", reason: "no significant test" }],
  },
};

describe("verdictRows", () => {
  it("applies the .000 display rule and flags errors", () => {
    const rows = verdictRows(RUN);
    expect(rows[0].statistic).toBe("12.861");
    expect(rows[0].sig).toBe(".000");
    expect(rows[1].statistic).toBe("-.550");
    expect(rows[2].sig).toBe("-");
    expect(rows[2].decision).toMatch(/unknown column Nope/);
  });
});

describe("correlation footnote", () => {
  it("appears exactly when a correlation is significant at .01", () => {
    expect(needsCorrelationFootnote(RUN)).toBe(true);
    expect(CORRELATION_FOOTNOTE).toBe(
      "Correlation is significant at the 0.01 level (2-tailed).",
    );
    const without: AnalysisRun = { ...RUN, verdicts: [RUN.verdicts[0], RUN.verdicts[2]] };
    expect(needsCorrelationFootnote(without)).toBe(false);
  });
});

describe("condensedSummary", () => {
  it("lists retained and dropped KPIs", () => {
    const lines = condensedSummary(RUN);
    expect(lines[0]).toBe("Retained (2): CGPA (outcome), Course");
    expect(lines[1]).toBe("Dropped: State: no significant test");
  });
});

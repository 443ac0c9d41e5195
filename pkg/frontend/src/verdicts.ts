// Verdict table and condensed KPI list rendering as plain row data,
// kept DOM-free so it can be unit tested.

import type { AnalysisRun, Verdict } from "./api.js";
import { CORRELATION_FOOTNOTE, formatNumber, formatSig } from "./format.js";

export type VerdictRow = {
  testId: string;
  method: string;
  factors: string;
  statistic: string;
  sig: string;
  decision: string;
};

function decisionLabel(decision: Verdict["decision"], error?: string): string {
  if (decision === "reject_h0") {
    return "reject H0";
  }
  if (decision === "fail_to_reject") {
    return "fail to reject H0";
  }
  return `error: ${error ?? "unknown"}`;
}

export function verdictRows(run: AnalysisRun): VerdictRow[] {
  return run.verdicts.map((v) => ({
    testId: v.test_id,
    method: v.method,
    factors: `${v.factor_a} / ${v.factor_b}`,
    statistic: v.statistic === null ? "-" : formatNumber(v.statistic),
    sig: v.p_value === null ? "-" : formatSig(v.p_value),
    decision: decisionLabel(v.decision, v.error),
  }));
}

export function needsCorrelationFootnote(run: AnalysisRun): boolean {
  return run.verdicts.some(
    (v) => v.method === "correlation" && v.p_value !== null && v.p_value < 0.01,
  );
}

export function condensedSummary(run: AnalysisRun): string[] {
  const retained = run.condensed.retained.map(
    (k) => `${k.name}${k.is_outcome ? " (outcome)" : ""}`,
  );
  const dropped = run.condensed.dropped.map((k) => `${k.name}: ${k.reason}`);
  return [
    `Retained (${retained.length}): ${retained.join(", ")}`,
    ...(dropped.length > 0 ? [`Dropped: ${dropped.join("; ")}`] : []),
  ];
}

export { CORRELATION_FOOTNOTE };

"""SPSS-style rendering of test verdicts: 3-decimal tables, the ".000"
convention for vanishing p-values, and the "**" significance marker
with its footnote for correlations.

Display rounding lives here and nowhere else; every other layer keeps
full precision.
"""

from __future__ import annotations

import csv
import io
import json
from decimal import Decimal, ROUND_HALF_UP
from typing import Sequence

from .kpi import TestVerdict
from .stats import AnovaTable, ChiSquareResult, CorrelationResult

CORRELATION_FOOTNOTE = "Correlation is significant at the 0.01 level (2-tailed)."


def round3(value: float) -> float:
    """Round half away from zero at 3 decimals."""
    d = Decimal(repr(value))
    if d < 0:
        return float(-(-d).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))
    return float(d.quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def format_number(value: float) -> str:
    """SPSS-style cell: 3 decimals, no leading zero for |v| < 1."""
    r = round3(value)
    text = f"{r:.3f}"
    if text.startswith("0."):
        text = text[1:]
    elif text.startswith("-0."):
        text = "-" + text[2:]
    return text


def format_sig(p: float) -> str:
    """Significance column; values below .0005 round to ".000"."""
    return format_number(p)


def format_r(r: float, p: float) -> str:
    """Correlation cell with the 0.01-level marker."""
    text = format_number(r)
    if p < 0.01:
        text += "**"
    return text


def _rule(widths: list[int]) -> str:
    return "-" * (sum(widths) + len(widths) - 1)


def _row(cells: list[str], widths: list[int]) -> str:
    return " ".join(c.rjust(w) for c, w in zip(cells, widths))


def render_anova_table(table: AnovaTable, dependent: str) -> str:
    header = ["", "Sum of Squares", "df", "Mean Square", "F", "Sig."]
    body = [
        ["Between Groups", format_number(table.ss_between), str(table.df_between),
         format_number(table.ms_between), format_number(table.f_stat),
         format_sig(table.p_value)],
        ["Within Groups", format_number(table.ss_within), str(table.df_within),
         format_number(table.ms_within), "", ""],
        ["Total", format_number(table.ss_total), str(table.df_total), "", "", ""],
    ]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["ANOVA", dependent, _rule(widths), _row(header, widths), _rule(widths)]
    lines += [_row(row, widths) for row in body]
    lines.append(_rule(widths))
    return "\n".join(lines)


def render_correlation_table(result: CorrelationResult,
                             name_a: str, name_b: str) -> str:
    r_cell = format_r(result.r, result.p_two_tailed)
    header = ["", "", name_a, name_b]
    body = [
        [name_a, "Pearson Correlation", "1", r_cell],
        ["", "Sig. (2-tailed)", "", format_sig(result.p_two_tailed)],
        ["", "N", str(result.n_pairs), str(result.n_pairs)],
        [name_b, "Pearson Correlation", r_cell, "1"],
        ["", "Sig. (2-tailed)", format_sig(result.p_two_tailed), ""],
        ["", "N", str(result.n_pairs), str(result.n_pairs)],
    ]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["Correlations", _rule(widths), _row(header, widths), _rule(widths)]
    lines += [_row(row, widths) for row in body]
    lines.append(_rule(widths))
    if result.p_two_tailed < 0.01:
        lines.append(f"** {CORRELATION_FOOTNOTE}")
    return "\n".join(lines)


def render_chi_square(result: ChiSquareResult) -> str:
    header = ["", "Value", "df", "Asymp. Sig."]
    body = [["Pearson Chi-Square", format_number(result.statistic),
             str(result.df), format_sig(result.p_value)]]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["Chi-Square Tests", _rule(widths), _row(header, widths), _rule(widths)]
    lines += [_row(row, widths) for row in body]
    lines.append(_rule(widths))
    return "\n".join(lines)


def render_verdict_text(verdict: TestVerdict) -> str:
    title = f"[{verdict.test_id}] {verdict.method}: " \
            f"{verdict.factor_a} / {verdict.factor_b} -> {verdict.decision}"
    if verdict.decision == "error":
        return f"{title}\n  error: {verdict.error}"
    detail = verdict.detail
    if isinstance(detail, AnovaTable):
        body = render_anova_table(detail, verdict.factor_b)
    elif isinstance(detail, CorrelationResult):
        body = render_correlation_table(detail, verdict.factor_a, verdict.factor_b)
    elif isinstance(detail, ChiSquareResult):
        body = render_chi_square(detail)
    else:
        stat = "" if verdict.statistic is None else format_number(verdict.statistic)
        sig = "" if verdict.p_value is None else format_sig(verdict.p_value)
        body = f"  statistic {stat}  Sig. {sig}"
    return f"{title}\n{body}"


def verdict_to_json(verdict: TestVerdict) -> dict:
    doc = {
        "test_id": verdict.test_id,
        "method": verdict.method,
        "factor_a": verdict.factor_a,
        "factor_b": verdict.factor_b,
        "alpha": verdict.alpha,
        "statistic": verdict.statistic,
        "p_value": verdict.p_value,
        "decision": verdict.decision,
    }
    if verdict.error is not None:
        doc["error"] = verdict.error
    detail = verdict.detail
    if isinstance(detail, AnovaTable):
        doc["detail"] = {
            "kind": "anova",
            "ss_between": detail.ss_between,
            "ss_within": detail.ss_within,
            "ss_total": detail.ss_total,
            "df_between": detail.df_between,
            "df_within": detail.df_within,
            "df_total": detail.df_total,
            "ms_between": detail.ms_between,
            "ms_within": detail.ms_within,
            "f_stat": detail.f_stat,
            "p_value": detail.p_value,
        }
    elif isinstance(detail, CorrelationResult):
        doc["detail"] = {
            "kind": "correlation",
            "r": detail.r,
            "n_pairs": detail.n_pairs,
            "df": detail.df,
            "t_stat": detail.t_stat,
            "p_two_tailed": detail.p_two_tailed,
        }
    elif isinstance(detail, ChiSquareResult):
        doc["detail"] = {
            "kind": "chi_square",
            "statistic": detail.statistic,
            "df": detail.df,
            "p_value": detail.p_value,
        }
    return doc


def render_report(verdicts: Sequence[TestVerdict], fmt: str = "text") -> str:
    """Render a full verdict report as text, json, or csv."""
    if fmt == "text":
        return "\n\n".join(render_verdict_text(v) for v in verdicts)
    if fmt == "json":
        return json.dumps([verdict_to_json(v) for v in verdicts], indent=2)
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["test_id", "method", "factor_a", "factor_b",
                         "statistic", "p_value", "decision"])
        for v in verdicts:
            writer.writerow([
                v.test_id, v.method, v.factor_a, v.factor_b,
                "" if v.statistic is None else format_number(v.statistic),
                "" if v.p_value is None else format_sig(v.p_value),
                v.decision,
            ])
        return out.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")

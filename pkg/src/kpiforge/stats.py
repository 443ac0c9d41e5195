"""Core hypothesis tests: one-way ANOVA, Pearson correlation and the
chi-square test of independence, with exact p-values from the tail
kernels in :mod:`kpiforge.special`.

All results carry full internal precision; display rounding belongs to
the report layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .special import chi2_sf, f_sf, t_sf_two_tailed


class InvalidSampleError(ValueError):
    """Input violates the structural preconditions of a test."""


class DegenerateInputError(ValueError):
    """Input is structurally valid but the statistic is undefined on it."""


@dataclass(frozen=True)
class GroupedSample:
    """Dependent values partitioned by the levels of a grouping factor."""

    groups: tuple[tuple[str, tuple[float, ...]], ...]

    def __init__(self, groups: Sequence[tuple[str, Sequence[float]]]):
        frozen = tuple((str(label), tuple(float(v) for v in values))
                       for label, values in groups)
        if len(frozen) < 2:
            raise InvalidSampleError("need at least 2 groups")
        for label, values in frozen:
            if not values:
                raise InvalidSampleError(f"group {label!r} is empty")
        n = sum(len(values) for _, values in frozen)
        if n <= len(frozen):
            raise InvalidSampleError(
                f"total count {n} must exceed group count {len(frozen)}"
            )
        object.__setattr__(self, "groups", frozen)

    @property
    def n_total(self) -> int:
        return sum(len(values) for _, values in self.groups)

    @property
    def k(self) -> int:
        return len(self.groups)


@dataclass(frozen=True)
class AnovaTable:
    ss_between: float
    ss_within: float
    ss_total: float
    df_between: int
    df_within: int
    df_total: int
    ms_between: float
    ms_within: float
    f_stat: float
    p_value: float


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    n_pairs: int
    df: int
    t_stat: float
    p_two_tailed: float


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    df: int
    p_value: float
    expected: tuple[tuple[float, ...], ...] = field(default=(), compare=False)


def anova_from_sums(ss_between: float, df_between: int,
                    ss_within: float, df_within: int) -> AnovaTable:
    """Assemble a full ANOVA table from the two sums of squares.

    Useful when only a published table's SS/df are available rather
    than the raw sample.
    """
    if df_between < 1 or df_within < 1:
        raise InvalidSampleError("degrees of freedom must be >= 1")
    if ss_between < 0 or ss_within < 0:
        raise InvalidSampleError("sums of squares must be non-negative")
    ms_between = ss_between / df_between
    if ss_within == 0.0:
        if ss_between == 0.0:
            # all values identical: no effect by definition
            return AnovaTable(0.0, 0.0, 0.0, df_between, df_within,
                              df_between + df_within, 0.0, 0.0, 0.0, 1.0)
        raise DegenerateInputError(
            "zero within-group variance with nonzero between-group "
            "variance: F statistic is infinite"
        )
    ms_within = ss_within / df_within
    f_stat = ms_between / ms_within
    p = f_sf(f_stat, df_between, df_within)
    return AnovaTable(
        ss_between=ss_between,
        ss_within=ss_within,
        ss_total=ss_between + ss_within,
        df_between=df_between,
        df_within=df_within,
        df_total=df_between + df_within,
        ms_between=ms_between,
        ms_within=ms_within,
        f_stat=f_stat,
        p_value=p,
    )


def one_way_anova(sample: GroupedSample) -> AnovaTable:
    """One-way ANOVA over the grouped sample.

    Decomposes the total sum of squares into between-group and
    within-group parts; p is the right tail of F(df_between, df_within).
    """
    all_values = [v for _, values in sample.groups for v in values]
    n = len(all_values)
    k = sample.k
    grand_mean = math.fsum(all_values) / n

    ss_between = 0.0
    ss_within = 0.0
    between_terms = []
    within_terms = []
    for _, values in sample.groups:
        group_mean = math.fsum(values) / len(values)
        between_terms.append(len(values) * (group_mean - grand_mean) ** 2)
        within_terms.extend((v - group_mean) ** 2 for v in values)
    ss_between = math.fsum(between_terms)
    ss_within = math.fsum(within_terms)

    return anova_from_sums(ss_between, k - 1, ss_within, n - k)


def pearson(x: Sequence[float], y: Sequence[float]) -> CorrelationResult:
    """Pearson product-moment correlation with a two-tailed t test."""
    if len(x) != len(y):
        raise InvalidSampleError(f"length mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if n < 3:
        raise InvalidSampleError(f"need at least 3 pairs, got {n}")
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if all(v == xs[0] for v in xs):
        raise DegenerateInputError("first series is constant; r undefined")
    if all(v == ys[0] for v in ys):
        raise DegenerateInputError("second series is constant; r undefined")
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((v - mx) ** 2 for v in xs)
    syy = math.fsum((v - my) ** 2 for v in ys)
    if sxx == 0.0:
        raise DegenerateInputError("first series is constant; r undefined")
    if syy == 0.0:
        raise DegenerateInputError("second series is constant; r undefined")
    sxy = math.fsum((a - mx) * (b - my) for a, b in zip(xs, ys))
    r = sxy / math.sqrt(sxx * syy)
    r = max(-1.0, min(1.0, r))
    df = n - 2
    if abs(r) == 1.0:
        # limit of the t statistic: perfectly collinear data
        t = math.inf if r > 0 else -math.inf
        return CorrelationResult(r=r, n_pairs=n, df=df, t_stat=t, p_two_tailed=0.0)
    t = r * math.sqrt(df) / math.sqrt(1.0 - r * r)
    p = t_sf_two_tailed(t, df)
    return CorrelationResult(r=r, n_pairs=n, df=df, t_stat=t, p_two_tailed=p)


def chi_square_independence(table: Sequence[Sequence[float]]) -> ChiSquareResult:
    """Chi-square test of independence on a contingency table of counts.

    The p-value comes from the chi-square right tail evaluated through
    the regularized upper incomplete gamma.
    """
    rows = [list(map(float, row)) for row in table]
    if len(rows) < 2 or any(len(row) < 2 for row in rows):
        raise InvalidSampleError("table must be at least 2x2")
    n_cols = len(rows[0])
    if any(len(row) != n_cols for row in rows):
        raise InvalidSampleError("ragged contingency table")
    if any(v < 0 for row in rows for v in row):
        raise InvalidSampleError("counts must be non-negative")

    row_sums = [math.fsum(row) for row in rows]
    col_sums = [math.fsum(row[j] for row in rows) for j in range(n_cols)]
    grand = math.fsum(row_sums)
    if grand == 0.0:
        raise InvalidSampleError("empty table: all counts zero")
    if any(s == 0.0 for s in row_sums) or any(s == 0.0 for s in col_sums):
        raise DegenerateInputError("zero row or column marginal")

    expected = tuple(
        tuple(row_sums[i] * col_sums[j] / grand for j in range(n_cols))
        for i in range(len(rows))
    )
    stat = math.fsum(
        (rows[i][j] - expected[i][j]) ** 2 / expected[i][j]
        for i in range(len(rows))
        for j in range(n_cols)
    )
    df = (len(rows) - 1) * (n_cols - 1)
    return ChiSquareResult(statistic=stat, df=df, p_value=chi2_sf(stat, df),
                           expected=expected)

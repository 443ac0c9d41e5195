"""KPI validation pipeline: a candidate-KPI registry, declarative
hypothesis-test plans executed against a dataset, and the condensation
rule that keeps only statistically supported KPIs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .dataset import Dataset, group_by_factor, pairwise_complete
from .stats import (
    AnovaTable,
    ChiSquareResult,
    CorrelationResult,
    one_way_anova,
    pearson,
)

KPI_CATEGORIES = {"Quantitative", "Qualitative", "Leading", "Actionable", "Outcome"}

DEFAULT_ALPHA = 0.05


class PlanError(ValueError):
    """Structurally invalid plan or registry."""


@dataclass(frozen=True)
class CandidateKpi:
    name: str
    categories: frozenset[str]
    column: str
    is_outcome: bool = False

    def __post_init__(self):
        bad = self.categories - KPI_CATEGORIES
        if bad:
            raise PlanError(f"unknown KPI categories {sorted(bad)} on {self.name!r}")
        if not self.categories:
            raise PlanError(f"KPI {self.name!r} has no categories")


@dataclass(frozen=True)
class HypothesisTest:
    """One planned test.

    For anova, factor_a is the grouping factor and factor_b the
    dependent variable.
    """

    id: str
    method: str  # "anova" | "correlation" | "chi_square"
    factor_a: str
    factor_b: str
    alpha: float = DEFAULT_ALPHA
    h0: str = ""
    h1: str = ""

    def __post_init__(self):
        if self.method not in ("anova", "correlation", "chi_square"):
            raise PlanError(f"unknown test method {self.method!r}")
        if self.factor_a == self.factor_b:
            raise PlanError(f"test {self.id!r} pairs a factor with itself")
        if not (0.0 < self.alpha < 1.0):
            raise PlanError(f"alpha must be in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class TestVerdict:
    test_id: str
    statistic: float | None
    p_value: float | None
    decision: str  # "reject_h0" | "fail_to_reject" | "error"
    detail: AnovaTable | CorrelationResult | ChiSquareResult | None = None
    error: str | None = None
    factor_a: str = ""
    factor_b: str = ""
    method: str = ""
    alpha: float = DEFAULT_ALPHA


@dataclass(frozen=True)
class CondensedKpiList:
    retained: tuple[CandidateKpi, ...]
    dropped: tuple[tuple[CandidateKpi, str], ...]
    source_verdicts: tuple[TestVerdict, ...] = field(default=(), compare=False)


class KpiRegistry:
    """Ordered candidate-KPI registry with exactly one outcome KPI."""

    def __init__(self, candidates: Sequence[CandidateKpi]):
        names = [c.name for c in candidates]
        if len(set(names)) != len(names):
            raise PlanError("duplicate KPI names in registry")
        outcomes = [c for c in candidates if c.is_outcome]
        if len(outcomes) != 1:
            raise PlanError(f"registry needs exactly 1 outcome KPI, got {len(outcomes)}")
        self.candidates = tuple(candidates)
        self._by_name = {c.name: c for c in candidates}

    def __iter__(self):
        return iter(self.candidates)

    def __getitem__(self, name: str) -> CandidateKpi:
        try:
            return self._by_name[name]
        except KeyError:
            raise PlanError(f"unknown KPI name {name!r}") from None

    @property
    def outcome(self) -> CandidateKpi:
        return next(c for c in self.candidates if c.is_outcome)


def _decide(p: float, alpha: float) -> str:
    # strict inequality: p == alpha fails to reject
    return "reject_h0" if p < alpha else "fail_to_reject"


def _contingency_table(ds: Dataset, a: str, b: str) -> list[list[float]]:
    va, vb = ds.column(a), ds.column(b)
    levels_a = [v for v in dict.fromkeys(va) if v is not None]
    levels_b = [v for v in dict.fromkeys(vb) if v is not None]
    idx_a = {lv: i for i, lv in enumerate(levels_a)}
    idx_b = {lv: i for i, lv in enumerate(levels_b)}
    counts = [[0.0] * len(levels_b) for _ in levels_a]
    for x, y in zip(va, vb):
        if x is None or y is None:
            continue
        counts[idx_a[x]][idx_b[y]] += 1.0
    return counts


def run_test(test: HypothesisTest, ds: Dataset, registry: KpiRegistry) -> TestVerdict:
    """Execute one planned test against a dataset and rule on H0."""
    col_a = registry[test.factor_a].column
    col_b = registry[test.factor_b].column
    try:
        if test.method == "anova":
            sample = group_by_factor(ds, dependent=col_b, factor=col_a)
            table = one_way_anova(sample)
            stat, p, detail = table.f_stat, table.p_value, table
        elif test.method == "correlation":
            xs, ys = pairwise_complete(ds, col_a, col_b)
            result = pearson(xs, ys)
            stat, p, detail = result.r, result.p_two_tailed, result
        else:
            from .stats import chi_square_independence

            counts = _contingency_table(ds, col_a, col_b)
            result = chi_square_independence(counts)
            stat, p, detail = result.statistic, result.p_value, result
    except (ValueError, KeyError) as exc:
        return TestVerdict(
            test_id=test.id, statistic=None, p_value=None, decision="error",
            error=f"{test.id}: {exc}", factor_a=test.factor_a,
            factor_b=test.factor_b, method=test.method, alpha=test.alpha,
        )
    return TestVerdict(
        test_id=test.id, statistic=stat, p_value=p,
        decision=_decide(p, test.alpha), detail=detail,
        factor_a=test.factor_a, factor_b=test.factor_b,
        method=test.method, alpha=test.alpha,
    )


def run_plan(plan: Sequence[HypothesisTest], ds: Dataset,
             registry: KpiRegistry) -> list[TestVerdict]:
    """Run every planned test in order; failures become error verdicts
    without aborting the rest."""
    if not plan:
        raise PlanError("empty test plan")
    ids = [t.id for t in plan]
    if len(set(ids)) != len(ids):
        raise PlanError("duplicate test ids in plan")
    return [run_test(t, ds, registry) for t in plan]


def condense(registry: KpiRegistry,
             verdicts: Sequence[TestVerdict]) -> CondensedKpiList:
    """Keep a KPI iff it is the outcome KPI or some non-error verdict
    involving it rejected H0; order follows the registry."""
    for v in verdicts:
        for name in (v.factor_a, v.factor_b):
            if name:
                registry[name]  # raises PlanError on unknown names
    tested: set[str] = set()
    significant: set[str] = set()
    for v in verdicts:
        if v.decision == "error":
            continue
        names = {v.factor_a, v.factor_b} - {""}
        tested |= names
        if v.decision == "reject_h0":
            significant |= names
    retained = []
    dropped = []
    for kpi in registry:
        if kpi.is_outcome or kpi.name in significant:
            retained.append(kpi)
        elif kpi.name in tested:
            dropped.append((kpi, "no significant test"))
        else:
            dropped.append((kpi, "untested"))
    return CondensedKpiList(
        retained=tuple(retained),
        dropped=tuple(dropped),
        source_verdicts=tuple(verdicts),
    )


def correlation_sign_report(result: CorrelationResult,
                            alpha: float = DEFAULT_ALPHA) -> str:
    """Classify a correlation as direct, inverse, or none (not significant)."""
    if result.p_two_tailed < alpha:
        if result.r > 0:
            return "direct"
        if result.r < 0:
            return "inverse"
    return "none"


# ---------------------------------------------------------------------------
# plan file (de)serialization


def registry_from_json(doc: dict) -> KpiRegistry:
    return KpiRegistry([
        CandidateKpi(
            name=entry["name"],
            categories=frozenset(entry["categories"]),
            column=entry["column"],
            is_outcome=bool(entry.get("is_outcome", False)),
        )
        for entry in doc["registry"]
    ])


def plan_from_json(doc: dict) -> list[HypothesisTest]:
    return [
        HypothesisTest(
            id=entry["id"],
            method=entry["method"],
            factor_a=entry["factor_a"],
            factor_b=entry["factor_b"],
            alpha=float(entry.get("alpha", DEFAULT_ALPHA)),
            h0=entry.get("h0", ""),
            h1=entry.get("h1", ""),
        )
        for entry in doc["tests"]
    ]


def load_plan_file(path: str | Path) -> tuple[KpiRegistry, list[HypothesisTest]]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return registry_from_json(doc), plan_from_json(doc)


def verdict_from_json(doc: dict) -> TestVerdict:
    return TestVerdict(
        test_id=doc["test_id"],
        statistic=doc.get("statistic"),
        p_value=doc.get("p_value"),
        decision=doc["decision"],
        error=doc.get("error"),
        factor_a=doc.get("factor_a", ""),
        factor_b=doc.get("factor_b", ""),
        method=doc.get("method", ""),
        alpha=float(doc.get("alpha", DEFAULT_ALPHA)),
    )


def load_verdict_fixture() -> list[TestVerdict]:
    path = Path(__file__).parent / "fixtures" / "verdict_fixture.json"
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    return [verdict_from_json(v) for v in doc["verdicts"]]


def fixture_csv_path() -> Path:
    return Path(__file__).parent / "fixtures" / "students.csv"


def default_plan_path() -> Path:
    return Path(__file__).parent / "plans" / "default_plan.json"


def full_plan_path() -> Path:
    """Extended plan covering every registry KPI, used to reproduce the
    condensed list end-to-end on the bundled fixture."""
    return Path(__file__).parent / "plans" / "full_plan.json"

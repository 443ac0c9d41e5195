"""kpiforge: statistically validated KPI selection and OLAP slicing
over tabular datasets."""

from .special import (
    DomainError,
    chi2_sf,
    f_sf,
    regularized_incomplete_beta,
    t_sf_two_tailed,
)
from .stats import (
    AnovaTable,
    ChiSquareResult,
    CorrelationResult,
    DegenerateInputError,
    GroupedSample,
    InvalidSampleError,
    anova_from_sums,
    chi_square_independence,
    one_way_anova,
    pearson,
)
from .dataset import (
    ColumnSchema,
    Dataset,
    DatasetStore,
    group_by_factor,
    load_csv,
    pairwise_complete,
)
from .kpi import (
    CandidateKpi,
    CondensedKpiList,
    HypothesisTest,
    KpiRegistry,
    TestVerdict,
    condense,
    correlation_sign_report,
    run_plan,
    run_test,
)
from .cube import (
    AggregateResult,
    Cube,
    SliceSpec,
    aggregate,
    build_cube,
    dice,
    roll_up,
    slice_cube,
)

__version__ = "0.1.0"

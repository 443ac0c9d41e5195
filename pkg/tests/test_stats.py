import itertools
import math

import pytest
from hypothesis import given, strategies as st
from scipy import stats as sp_stats

from kpiforge.stats import (
    DegenerateInputError,
    GroupedSample,
    InvalidSampleError,
    anova_from_sums,
    chi_square_independence,
    one_way_anova,
    pearson,
)


def sample(*groups):
    return GroupedSample([(f"g{i}", vs) for i, vs in enumerate(groups)])


def naive_anova(groups):
    """Direct-from-definition recomputation, p from scipy (independent route)."""
    all_values = [v for vs in groups for v in vs]
    n = len(all_values)
    k = len(groups)
    grand = sum(all_values) / n
    ss_b = 0.0
    ss_w = 0.0
    for vs in groups:
        m = sum(vs) / len(vs)
        ss_b += len(vs) * (m - grand) ** 2
        ss_w += sum((v - m) ** 2 for v in vs)
    if ss_w == 0:
        return None
    f = (ss_b / (k - 1)) / (ss_w / (n - k))
    return ss_b, ss_w, f, float(sp_stats.f.sf(f, k - 1, n - k))


class TestGroupedSample:
    def test_rejects_single_group(self):
        with pytest.raises(InvalidSampleError):
            GroupedSample([("a", [1.0, 2.0])])

    def test_rejects_empty_group(self):
        with pytest.raises(InvalidSampleError):
            GroupedSample([("a", [1.0]), ("b", [])])

    def test_rejects_n_equal_k(self):
        with pytest.raises(InvalidSampleError):
            GroupedSample([("a", [1.0]), ("b", [2.0])])


class TestOneWayAnova:
    def test_hand_computed_example(self):
        table = one_way_anova(sample([1, 2, 3], [2, 3, 4]))
        assert table.ss_between == pytest.approx(1.5, abs=1e-12)
        assert table.ss_within == pytest.approx(4.0, abs=1e-12)
        assert (table.df_between, table.df_within) == (1, 4)
        assert table.f_stat == pytest.approx(1.5, abs=1e-12)
        # F(1, df) is t(df) squared; t = 1.2247, two-tailed p = 0.2879
        assert table.p_value == pytest.approx(0.2879, abs=2e-4)

    def test_all_identical_values(self):
        table = one_way_anova(sample([2, 2], [2, 2]))
        assert table.f_stat == 0.0
        assert table.p_value == 1.0

    def test_zero_within_nonzero_between(self):
        with pytest.raises(DegenerateInputError):
            one_way_anova(sample([1, 1], [2, 2]))

    def test_fig5_sums(self):
        table = anova_from_sums(17.189, 3, 20.494, 46)
        assert table.ms_between == pytest.approx(5.730, abs=0.001)
        assert table.ms_within == pytest.approx(0.446, abs=0.001)
        assert table.f_stat == pytest.approx(12.860, abs=0.005)
        assert table.p_value < 0.0005

    def test_table_consistency(self):
        table = one_way_anova(sample([1.0, 5.5, 2.25], [9.5, 3.25], [4.5, 8, 1]))
        assert table.ss_total == pytest.approx(
            table.ss_between + table.ss_within, rel=1e-9)
        assert table.df_total == table.df_between + table.df_within
        assert table.ms_between == pytest.approx(
            table.ss_between / table.df_between, rel=1e-12)
        assert table.f_stat == pytest.approx(
            table.ms_between / table.ms_within, rel=1e-12)


groups_strategy = st.lists(
    st.lists(st.floats(min_value=-100, max_value=100,
                       allow_nan=False, allow_infinity=False),
             min_size=1, max_size=8),
    min_size=2, max_size=5,
).filter(lambda gs: sum(map(len, gs)) > len(gs))


@given(groups_strategy)
def test_anova_additivity(groups):
    try:
        table = one_way_anova(sample(*groups))
    except DegenerateInputError:
        return
    all_values = [v for vs in groups for v in vs]
    grand = math.fsum(all_values) / len(all_values)
    ss_total_direct = math.fsum((v - grand) ** 2 for v in all_values)
    assert table.ss_total == pytest.approx(ss_total_direct, rel=1e-9, abs=1e-9)


@given(groups_strategy,
       st.floats(min_value=-50, max_value=50, allow_nan=False),
       st.floats(min_value=0.25, max_value=8))
def test_anova_location_scale_invariance(groups, shift, scale):
    try:
        base = one_way_anova(sample(*groups))
    except DegenerateInputError:
        return
    moved = [[scale * v + shift for v in vs] for vs in groups]
    try:
        table = one_way_anova(sample(*moved))
    except DegenerateInputError:
        return
    assert table.f_stat == pytest.approx(base.f_stat, rel=1e-6, abs=1e-9)
    assert table.p_value == pytest.approx(base.p_value, rel=1e-6, abs=1e-9)


@given(groups_strategy, st.randoms(use_true_random=False))
def test_anova_permutation_invariance(groups, rng):
    try:
        base = one_way_anova(sample(*groups))
    except DegenerateInputError:
        return
    shuffled_groups = [list(vs) for vs in groups]
    for vs in shuffled_groups:
        rng.shuffle(vs)
    rng.shuffle(shuffled_groups)
    table = one_way_anova(sample(*shuffled_groups))
    assert table.f_stat == pytest.approx(base.f_stat, rel=1e-9, abs=1e-12)
    assert table.p_value == pytest.approx(base.p_value, rel=1e-9, abs=1e-12)


def test_anova_brute_force_oracle_enumeration():
    """Exhaustive check against a naive recomputation on small grids."""
    grid = [0.0, 1.0, 2.0]
    size_shapes = [(1, 2), (2, 2), (2, 3), (3, 3), (1, 1, 2), (1, 2, 2),
                   (2, 2, 2), (1, 2, 3)]
    checked = 0
    for shape in size_shapes:
        n = sum(shape)
        for flat in itertools.product(grid, repeat=n):
            groups = []
            i = 0
            for size in shape:
                groups.append(list(flat[i:i + size]))
                i += size
            expected = naive_anova(groups)
            if expected is None:
                ss_b = naive_anova_ss_between(groups)
                if ss_b > 1e-12:
                    with pytest.raises(DegenerateInputError):
                        one_way_anova(sample(*groups))
                else:
                    table = one_way_anova(sample(*groups))
                    assert table.f_stat == 0.0 and table.p_value == 1.0
                continue
            table = one_way_anova(sample(*groups))
            ss_b, ss_w, f, p = expected
            assert table.ss_between == pytest.approx(ss_b, rel=1e-9, abs=1e-9)
            assert table.ss_within == pytest.approx(ss_w, rel=1e-9, abs=1e-9)
            assert table.f_stat == pytest.approx(f, rel=1e-9, abs=1e-9)
            assert table.p_value == pytest.approx(p, rel=1e-7, abs=1e-9)
            checked += 1
    assert checked > 1000


def naive_anova_ss_between(groups):
    all_values = [v for vs in groups for v in vs]
    grand = sum(all_values) / len(all_values)
    return sum(len(vs) * (sum(vs) / len(vs) - grand) ** 2 for vs in groups)


class TestPearson:
    def test_perfect_correlation(self):
        result = pearson([1, 2, 3], [1, 2, 3])
        assert result.r == 1.0
        assert result.p_two_tailed == 0.0

    def test_hand_computed_example(self):
        result = pearson([1, 2, 3, 4], [1, 3, 2, 4])
        assert result.r == pytest.approx(0.8, abs=1e-12)
        assert result.t_stat == pytest.approx(1.8856, abs=1e-4)
        assert result.df == 2
        assert result.p_two_tailed == pytest.approx(0.200, abs=1e-3)

    def test_fig8_style_high_r(self):
        # r = .639 at n = 50 is significant far below .0005
        r, n = 0.639, 50
        t = r * math.sqrt(n - 2) / math.sqrt(1 - r * r)
        from kpiforge.special import t_sf_two_tailed

        assert t_sf_two_tailed(t, n - 2) < 0.0005

    def test_errors(self):
        with pytest.raises(InvalidSampleError):
            pearson([1, 2], [1, 2])
        with pytest.raises(InvalidSampleError):
            pearson([1, 2, 3], [1, 2])
        with pytest.raises(DegenerateInputError):
            pearson([1, 1, 1], [1, 2, 3])

    @given(st.lists(st.tuples(
        st.floats(min_value=-100, max_value=100, allow_nan=False),
        st.floats(min_value=-100, max_value=100, allow_nan=False),
    ), min_size=3, max_size=40))
    def test_symmetry_and_bounds(self, pairs):
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        try:
            fwd = pearson(xs, ys)
        except DegenerateInputError:
            return
        assert -1.0 <= fwd.r <= 1.0
        assert 0.0 <= fwd.p_two_tailed <= 1.0
        rev = pearson(ys, xs)
        assert rev.r == pytest.approx(fwd.r, abs=1e-12)
        neg = pearson(xs, [-y for y in ys])
        assert neg.r == pytest.approx(-fwd.r, abs=1e-12)

    @given(
        st.lists(st.tuples(
            st.floats(min_value=-50, max_value=50, allow_nan=False),
            st.floats(min_value=-50, max_value=50, allow_nan=False),
        ), min_size=3, max_size=30),
        st.floats(min_value=0.25, max_value=6),
        st.floats(min_value=-20, max_value=20, allow_nan=False),
    )
    def test_affine_invariance(self, pairs, scale, shift):
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        try:
            base = pearson(xs, ys)
            moved = pearson([scale * x + shift for x in xs], ys)
        except DegenerateInputError:
            return
        assert moved.r == pytest.approx(base.r, abs=1e-7)

    @given(st.lists(st.tuples(
        st.floats(min_value=-100, max_value=100, allow_nan=False),
        st.floats(min_value=-100, max_value=100, allow_nan=False),
    ), min_size=3, max_size=30))
    def test_matches_scipy(self, pairs):
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        try:
            result = pearson(xs, ys)
        except DegenerateInputError:
            return
        expected_r, expected_p = sp_stats.pearsonr(xs, ys)
        assert result.r == pytest.approx(float(expected_r), abs=1e-8)
        if abs(result.r) < 1.0 - 1e-12:
            assert result.p_two_tailed == pytest.approx(float(expected_p), abs=1e-7)


class TestChiSquare:
    def test_perfect_independence(self):
        result = chi_square_independence([[10, 10], [10, 10]])
        assert result.statistic == 0.0
        assert result.df == 1
        assert result.p_value == 1.0

    def test_hand_computed(self):
        result = chi_square_independence([[20, 10], [10, 20]])
        assert result.statistic == pytest.approx(20.0 / 3.0, abs=1e-9)
        assert result.p_value == pytest.approx(0.0098, abs=2e-4)

    def test_diagonal(self):
        result = chi_square_independence([[5, 0], [0, 5]])
        assert result.statistic == pytest.approx(10.0, abs=1e-12)
        assert result.p_value == pytest.approx(0.0016, abs=1e-4)

    def test_df_formula(self):
        result = chi_square_independence([[5, 3, 2], [1, 4, 5], [2, 2, 2], [3, 1, 4]])
        assert result.df == (4 - 1) * (3 - 1)

    def test_errors(self):
        with pytest.raises(InvalidSampleError):
            chi_square_independence([[1, 2]])
        with pytest.raises(InvalidSampleError):
            chi_square_independence([[0, 0], [0, 0]])
        with pytest.raises(DegenerateInputError):
            chi_square_independence([[1, 0], [2, 0]])

    @given(st.lists(st.lists(st.integers(min_value=0, max_value=30),
                             min_size=2, max_size=4),
                    min_size=2, max_size=4).filter(
        lambda t: len({len(r) for r in t}) == 1))
    def test_matches_scipy(self, table):
        import numpy as np

        arr = np.array(table, dtype=float)
        if arr.sum() == 0 or (arr.sum(0) == 0).any() or (arr.sum(1) == 0).any():
            return
        result = chi_square_independence(table)
        stat, p, df, _ = sp_stats.chi2_contingency(arr, correction=False)
        assert result.statistic == pytest.approx(float(stat), rel=1e-9, abs=1e-9)
        assert result.df == int(df)
        assert result.p_value == pytest.approx(float(p), abs=1e-8)

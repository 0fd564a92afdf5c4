import pytest
from hypothesis import given, strategies as st

from adamsline import modules as m
from adamsline.lines import (
    VanishingLine, epsilon, eta, filtration_nullity_line, free_a0_region, line_not_covered,
    line_region, null_filtration_bound, skeleton_shift, sphere_region, sphere_region_escapes,
    tower_column, vanishes, verify_chart,
)
from adamsline.resolution import ext_chart, minimal_resolution


def y_line(n):
    return VanishingLine.from_intercept(2, 2 * n - 3)


def test_epsilon_eta_tables():
    assert [epsilon(s) for s in range(8)] == [0, 1, 2, 2, 0, 1, 2, 2]
    assert [eta(s) for s in range(8)] == [1, 1, 2, 3, 1, 1, 2, 3]
    assert epsilon(1) == 1 and eta(2) == 2 and epsilon(4) == epsilon(0) == 0
    with pytest.raises(ValueError):
        epsilon(-1)


@given(st.integers(0, 1000))
def test_periodic(s):
    assert epsilon(s + 4) == epsilon(s) and eta(s + 4) == eta(s)


@pytest.mark.parametrize("n", [1, 2, 5, 16])
def test_boundary_examples(n):
    line = y_line(n)
    assert not vanishes(line, 0, 2 * n - 2)
    assert vanishes(line, 3, 3 + 2 * n)
    assert free_a0_region(2 * n + 1)(0, 2 * n)
    assert not sphere_region(2 * n)(1, 1 + 2 * n + 1)


@given(st.integers(-20, 20), st.integers(0, 60))
def test_eventually_vanishes(c, stem):
    line = VanishingLine(2, c)
    s = stem + abs(c) + 1
    assert vanishes(line, s, stem + s)


@given(st.integers(-10, 10), st.integers(-15, 15), st.integers(-15, 15))
def test_skeleton_shift(c, r1, r2):
    line = VanishingLine(2, c)
    assert skeleton_shift(line, 0) == line
    assert skeleton_shift(skeleton_shift(line, r1), r2) == skeleton_shift(line, r1 + r2)
    assert skeleton_shift(line, r1).intercept == line.intercept - r1


def test_y_line_skeleton():
    for n in (1, 4, 17):
        for r in (0, 3, 10):
            assert skeleton_shift(y_line(n), r).intercept == 2 * n - 3 - r


def test_null_filtration_bound():
    assert null_filtration_bound(2, 2) == 4
    assert null_filtration_bound(0, 2) == 0
    assert null_filtration_bound(0, 0) == -1


@given(st.integers(0, 30), st.integers(0, 30), st.integers(-5, 80))
def test_filtration_equivalence(d, k, r):
    # vanishing at stem 0 in filtration d  <=>  r <= 2(d + k - 2)
    line = filtration_nullity_line(k, r)
    assert vanishes(line, d, d) == (2 * d > r + 3 - 2 * k) == (r <= 2 * (d + k - 2))
    assert (r <= null_filtration_bound(d, k)) == (r <= 2 * (d + k - 2))


def test_filtration_bound_gives_ddag_shape():
    # with filtration d and k = n the bound reads 2d + 2n - 4
    for n in range(16, 30):
        for d in range(0, 6):
            assert null_filtration_bound(d, n) == 2 * d + 2 * n - 4


@pytest.mark.parametrize("n", [1, 2, 3, 8, 16])
def test_line_follows_from_refined_regions(n):
    # wherever the slope-1/2 line claims vanishing above the bottom stem, both
    # refined regions already do; and the sphere region sits in the free one
    assert line_not_covered(2 * n, y_line(n), 30, 2 * n + 60) == []
    assert sphere_region_escapes(2 * n, 30, 2 * n + 60) == []


def test_refined_regions_are_sharper_somewhere():
    line = y_line(8)
    assert free_a0_region(17)(2, 19) and sphere_region(16)(2, 19)
    assert not vanishes(line, 2, 19)


@pytest.fixture(scope="module")
def stunted_charts():
    out = {}
    for n in (1, 2, 3):
        M = m.stunted_projective(2 * n, 2 * n + 24)
        out[n] = ext_chart(minimal_resolution(M, 12, M.t_max))
    return out


@pytest.mark.parametrize("n", [1, 2, 3])
def test_stunted_line_with_tower_exception(stunted_charts, n):
    chart = stunted_charts[n]
    rep = verify_chart(chart, line_region(y_line(n)), [2 * n])
    assert rep.ok, rep.to_tsv()
    assert tower_column(chart, 2 * n) == [1] * 12
    # without the exception the tower is the only failure
    bare = verify_chart(chart, line_region(y_line(n)))
    assert bare.violations and {t - s for s, t, _ in bare.violations} == {2 * n}


def test_window_monotone(stunted_charts):
    chart = stunted_charts[1]
    region = line_region(y_line(1))
    assert verify_chart(chart, region, [2]).ok
    for s_hi in range(0, 12):
        for t_hi in range(0, 26, 5):
            assert verify_chart(chart, region, [2], s_max=s_hi, t_max=t_hi).ok


def test_y_chart_passes_without_exception():
    for n in (1, 2):
        Y = m.y_module(n, 2 * n + 24)
        chart = ext_chart(minimal_resolution(Y, 12, Y.t_max))
        assert verify_chart(chart, line_region(y_line(n))).ok


def test_sphere_tower_is_the_only_obstruction():
    chart = ext_chart(minimal_resolution(m.sphere(0, 24), 10, 24))
    assert not verify_chart(chart, line_region(y_line(0))).ok
    assert verify_chart(chart, sphere_region(0), [0]).ok


def test_report_tsv():
    chart = ext_chart(minimal_resolution(m.sphere(0, 8), 6, 8))
    rep = verify_chart(chart, line_region(y_line(0)))
    lines = rep.to_tsv().splitlines()
    assert lines[0] == "s\tt\tstem\tdim"
    assert "2\t2\t0\t1" in lines

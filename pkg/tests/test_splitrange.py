import pytest
from hypothesis import given, strategies as st

from adamsline.splitrange import (
    DISPLAYED, TABLE1_REFERENCE, VARIANT_GRID, ConstraintVariant, balanced_bound, closed_form,
    constraints, h, h_rel, optimize, optimize_relaxed, reconcile_summary, reconcile_table,
    reconcile_tsv, splitrange_tsv,
)


def h_naive(s):
    return len([m for m in range(1, s + 1) if m % 8 in (0, 1, 2, 4)])


def ell_naive(n, star_shift, ddag_offset):
    values = []
    for k in range(n, -1, -1):
        star = 2 ** h_naive(n - k + star_shift) - 1
        dag = 3 * n - k
        ddag = 2 * (h_naive(n) - h_naive(n - k)) + 2 * n + ddag_offset
        values.append(min(star, dag, ddag))
    return max(values)


def test_h_examples():
    assert h(0) == 0
    assert h(8) == 4
    assert [h(s) for s in range(1, 9)] == [1, 2, 2, 3, 3, 3, 3, 4]


def test_h_bounds_and_periodicity():
    for n in range(0, 10001):
        assert n // 2 <= h(n) <= n // 2 + 2
        assert h(n + 8) == h(n) + 4
        assert h(n + 1) >= h(n)
    for n in range(300):
        assert h(n) == h_naive(n)


def test_h_rel():
    for n in range(40):
        assert h_rel(n, 0) == 0 and h_rel(n, n) == h(n)
        for k in range(n + 1):
            assert h_rel(n, k) >= n // 2 - (n - k) // 2 - 2
            assert 2 * h_rel(n, k) + 2 * n - 4 >= 2 * n + k - 10
    with pytest.raises(ValueError):
        h_rel(3, 4)


def test_constraint_examples():
    star, dag, ddag = constraints(15, 7)
    assert star == 2 ** h(9) - 1 == 31
    for n in range(30):
        assert constraints(n, 0)[2] == 2 * n - 4
        assert constraints(n, n)[1] == 2 * n


def test_variant_parse():
    assert ConstraintVariant.parse("star=n-k+1,ddag=-4") == DISPLAYED
    assert ConstraintVariant.parse("ddag=-5") == ConstraintVariant(1, -5)
    assert ConstraintVariant.parse("star=n-k").star_shift == 0
    for bad in ("star=2", "ddag=-3", "foo=1"):
        with pytest.raises(ValueError):
            ConstraintVariant.parse(bad)
    assert len(VARIANT_GRID) == 6 and len({v.label for v in VARIANT_GRID}) == 6


def test_optimize_examples():
    r = optimize(15)
    assert r.ell == 31 == TABLE1_REFERENCE[15]
    assert r.table[r.k][4] == r.ell and r.binding
    assert optimize(0).ell < 0
    assert closed_form(20) == 45
    assert closed_form(16) == 35 and closed_form(17) == 37 and closed_form(10) == 20


def test_second_implementation_agrees():
    for v in VARIANT_GRID:
        for n in range(201):
            assert optimize(n, v).ell == ell_naive(n, v.star_shift, v.ddag_offset), (v, n)


def test_tie_break_smallest_k():
    for n in range(60):
        r = optimize(n)
        assert all(row[4] < r.ell for row in r.table[: r.k])


def test_relaxed_and_balanced_for_large_n():
    for n in range(16, 201):
        full = optimize(n).ell
        relaxed, _ = optimize_relaxed(n)
        value, ks = balanced_bound(n)
        assert value == closed_form(n)
        assert ks == sorted({n // 2 + 5, (n + 1) // 2 + 5})
        assert full <= relaxed
        assert relaxed >= value


def test_reconcile_flags_mismatches():
    rows = reconcile_table()
    summary = reconcile_summary(rows)
    assert set(summary) == {v.label for v in VARIANT_GRID}
    assert all(summary.values()), "every variant misses some reference row"
    assert 15 not in summary[DISPLAYED.label]
    by = {(r.variant, r.n): r for r in rows}
    assert by[(DISPLAYED, 10)].reference == 19
    assert by[(DISPLAYED, 15)].reference == 31 and by[(DISPLAYED, 15)].match
    text = reconcile_tsv(rows)
    assert "MISMATCH" in text and text == reconcile_tsv(reconcile_table())
    assert "all reference rows match" not in text


def test_splitrange_tsv():
    text = splitrange_tsv(20)
    lines = text.splitlines()
    assert lines[0].split("\t") == ["n", "ell", "k", "binding", "table1", "match", "closed_form"]
    row15 = lines[16].split("\t")
    assert row15[:2] == ["15", "31"] and row15[4:6] == ["31", "yes"]
    row20 = lines[21].split("\t")
    assert row20[4] == "" and row20[6] == "45"


@given(st.integers(0, 400))
def test_optimum_is_a_min_over_constraints(n):
    r = optimize(n)
    assert r.ell == max(min(constraints(n, k)) for k in range(n + 1))

import pytest

from fsz_lab.parallel import (
    BudgetExceeded,
    check_budget,
    default_threads,
    run_partitioned,
    split_range,
)


def test_split_range_covers_exactly():
    for start, stop, parts in ((0, 10, 3), (5, 5, 4), (0, 2, 8), (3, 100, 7)):
        ranges = split_range(start, stop, parts)
        flat = [i for lo, hi in ranges for i in range(lo, hi)]
        assert flat == list(range(start, stop))


def test_run_partitioned_is_order_preserving():
    out = run_partitioned(lambda lo, hi: (lo, hi), 0, 100, threads=4)
    assert out == split_range(0, 100, 4)
    total = sum(hi - lo for lo, hi in out)
    assert total == 100


def test_run_partitioned_single_thread_equivalence():
    worker = lambda lo, hi: sum(range(lo, hi))
    assert sum(run_partitioned(worker, 0, 1000, threads=1)) == sum(
        run_partitioned(worker, 0, 1000, threads=5)
    )


def test_check_budget():
    check_budget(10, None)
    check_budget(10, 10)
    with pytest.raises(BudgetExceeded) as info:
        check_budget(11, 10)
    assert info.value.required == 11
    assert "11" in str(info.value)


def test_env_override(monkeypatch):
    monkeypatch.setenv("FSZ_LAB_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("FSZ_LAB_THREADS", "junk")
    assert default_threads() >= 1

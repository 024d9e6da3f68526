import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from iqucs.encoding import ceil_log2, load_wordlist, make_records
from iqucs.search import (
    FilterConfig,
    classify,
    filter_threshold,
    invocations_for,
    search,
    target_indexes,
)


@pytest.mark.parametrize("i, expected", [(1, 1), (2, 2), (3, 1), (4, 2), (9, 1)])
def test_invocations_for(i, expected):
    assert invocations_for(i) == expected


def test_invocations_for_rejects_zero():
    with pytest.raises(ValueError):
        invocations_for(0)


@pytest.mark.parametrize(
    "size, ts, expected",
    [(100, 0.85, 0.006640625), (10, 0.85, 0.053125), (7, 0.0, 0.0), (1, 0.85, 0.85)],
)
def test_filter_threshold(size, ts, expected):
    assert filter_threshold(size, ts) == expected


def test_classify():
    assert classify({1: 0.3, 2: 0.2}, 0.1) == ({1, 2}, set())
    assert classify({"a": 0.324, "b": 0.004}, 0.053125) == ({"a"}, {"b"})
    assert classify({1: 0.5}, 0.5) == ({1}, set())


def test_filter_config_validation():
    with pytest.raises(ValueError):
        FilterConfig(threshold_ts=0)
    with pytest.raises(ValueError):
        FilterConfig(shots=-1)


def test_dataset_ten_exact_trace():
    records = load_wordlist(None, 10)
    out = search(records, {2, 5, 7})
    assert out.converged and out.status == "converged"
    assert out.solution_original_indexes == {2, 5, 7}
    first, second = out.trace
    assert first.fidelities[2] == pytest.approx(0.324, abs=1e-12)
    assert first.fidelities[0] == pytest.approx(0.004, abs=1e-12)
    assert first.filtered == {0, 1, 3, 4, 6, 8, 9}
    assert (second.set_size, second.total_qubits, second.invocations) == (3, 4, 2)
    assert second.fidelities[5] == pytest.approx(1 / 3)
    assert second.first_invocation == 2
    assert [len(r.snapshots) for r in out.trace] == [1, 2]


def test_all_targets_converges_in_two():
    records = make_records(range(12))
    out = search(records, range(12))
    assert out.iterations_used == 2
    assert out.solution_original_indexes == set(range(12))
    for rec in out.trace:
        assert not rec.filtered


def test_single_record():
    out = search(make_records([3]), {3})
    assert out.converged and out.iterations_used == 2
    assert out.solution_original_indexes == {0}


def test_missing_target_rejected():
    with pytest.raises(ValueError, match="not present"):
        search(make_records(range(5)), {7})
    with pytest.raises(ValueError, match="empty"):
        search(make_records(range(5)), set())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 40), st.data(), st.sampled_from([0, 50]), st.floats(0.05, 0.99))
def test_potential_set_never_empty(n, data, shots, ts):
    # Read-outs sum to 1, so some record reaches 1/n >= T_s / 2**ceil(log2 n).
    targets = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    out = search(make_records(range(n)), targets, FilterConfig(ts, shots, seed=n))
    assert out.status != "empty"
    assert all(rec.potential for rec in out.trace)


def test_empty_working_set_is_reported():
    # Both read-outs are 0.5 in exact arithmetic, exactly at T_s / 2; rounding
    # lands them a hair below, so the filter drops everything.
    out = search(make_records(range(2)), {0}, FilterConfig(threshold_ts=1.0))
    assert out.status == "empty" and not out.converged
    assert out.solution_original_indexes == set()


def test_iteration_cap():
    out = search(load_wordlist(None, 10), {2, 5, 7}, FilterConfig(max_iterations=1))
    assert out.status == "iteration_cap" and not out.converged
    assert out.iterations_used == 1


def test_rescue_hook():
    records = load_wordlist(None, 10)
    out = search(records, {2, 5, 7}, rescue=lambda rec: {0} if rec.iteration == 1 else set())
    assert 0 in out.trace[0].potential
    assert out.trace[0].potential | out.trace[0].filtered == set(range(10))
    assert out.trace[1].set_size == 4


def test_sampled_search_is_deterministic():
    records = load_wordlist(None, 100)
    cfg = FilterConfig(shots=12000, seed=5)
    a = search(records, range(0, 100, 5), cfg)
    b = search(records, range(0, 100, 5), cfg)
    assert a == b


def test_target_indexes():
    assert target_indexes(make_records([4, 9, 1, 9]), {9}) == {1, 3}


def _check_trace(out, n_records):
    alive = set(range(n_records))
    dead = set()
    sizes = []
    for rec in out.trace:
        assert rec.potential | rec.filtered == alive
        assert not rec.potential & rec.filtered
        assert rec.set_size == len(alive)
        assert rec.total_qubits == 2 * max(1, ceil_log2(rec.set_size))
        assert rec.invocations == (1 if rec.iteration % 2 else 2)
        assert dead.isdisjoint(rec.fidelities)
        sizes.append(rec.set_size)
        dead |= rec.filtered
        alive -= rec.filtered
    assert sizes == sorted(sizes, reverse=True)
    if out.converged:
        assert out.trace[-1].potential == out.trace[-2].potential


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 64),
    st.data(),
    st.integers(0, 2**16),
    st.sampled_from([0, 500, 12000]),
    st.floats(0.2, 1.0),
)
def test_search_invariants(n, data, seed, shots, ts):
    targets = data.draw(st.sets(st.integers(0, n - 1), min_size=1))
    out = search(make_records(range(n)), targets, FilterConfig(ts, shots, seed, max_iterations=50))
    assert out.status in {"converged", "empty", "iteration_cap"}
    assert out.iterations_used <= 50
    _check_trace(out, n)


def test_first_iteration_ordering_matches_closed_form():
    """Targets beat non-targets after iteration 1 exactly when the closed form says so.

    sin^2(3 theta)/M > cos^2(3 theta)/(N-M) holds for every 2M < N on this
    grid and fails from M/N = 1/2 on; both directions are checked.
    """
    for n in range(4, 129):
        records = make_records(range(n))
        for m in range(1, n):
            out = search(records, range(m), FilterConfig(max_iterations=1))
            fid = out.trace[0].fidelities
            lowest_target = min(fid[k] for k in range(m))
            highest_other = max(fid[k] for k in range(m, n))
            theta = math.asin(math.sqrt(m / n))
            s = math.sin(3 * theta) ** 2
            predicted = s / m - (1 - s) / (n - m)
            if abs(predicted) < 1e-12:
                continue
            assert (lowest_target > highest_other) == (predicted > 0)
            if 2 * m < n:
                assert lowest_target > highest_other

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iqucs.metrics import CqcTrace, accuracy, cqc, reduction

entries = st.lists(st.tuples(st.integers(1, 64), st.integers(1, 30)), min_size=1, max_size=10)


@pytest.mark.parametrize(
    "trace, expected",
    [
        ([(8, 7)], 56),
        ([(8, 1), (4, 2), (4, 1)], 20),
        ([(14, 22)], 308),
        ([(14, 15)], 210),
        ([(14, 1), (14, 2), (12, 1), (12, 2)], 78),
    ],
)
def test_cqc(trace, expected):
    assert cqc(trace) == expected
    assert cqc(CqcTrace(tuple(trace))) == expected


def test_cqc_errors():
    with pytest.raises(ValueError):
        cqc([])
    with pytest.raises(ValueError):
        cqc([(0, 3)])


@given(entries, entries)
def test_cqc_additive(a, b):
    assert cqc(CqcTrace(tuple(a)) + CqcTrace(tuple(b))) == cqc(a) + cqc(b)


@given(st.integers(1, 64), st.integers(1, 30))
def test_single_entry(q, c):
    assert cqc([(q, c)]) == q * c


@pytest.mark.parametrize("base, iq, pct", [(56, 20, 64.3), (308, 104, 66.2), (210, 78, 62.9)])
def test_reduction(base, iq, pct):
    assert reduction(base, iq) == pct


def test_reduction_raw_and_errors():
    assert reduction(56, 20, ndigits=None) == pytest.approx(64.2857142857)
    with pytest.raises(ValueError):
        reduction(0, 5)


def test_accuracy():
    truth = set(range(20))
    assert accuracy(set(range(3, 20)), truth, 100) == 0.97
    assert accuracy(truth, truth, 100) == 1.0
    assert accuracy(set(), truth, 100) == 0.8
    with pytest.raises(ValueError):
        accuracy(set(), set(), 0)


@given(st.integers(1, 60), st.data())
def test_accuracy_bounds(size, data):
    pts = st.sets(st.integers(0, size - 1))
    predicted, truth = data.draw(pts), data.draw(pts)
    acc = accuracy(predicted, truth, size)
    assert 0.0 <= acc <= 1.0
    assert (acc == 1.0) == (predicted == truth)

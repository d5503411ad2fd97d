import pytest

from submeasures.errors import PreconditionError
from submeasures.streams import SetStream


def test_prefix_is_memoized_and_deterministic():
    calls = []

    def f(i):
        calls.append(i)
        return 3 * i

    s = SetStream.from_function(f)
    assert s.prefix(4) == [0, 3, 6, 9]
    assert s.prefix(2) == [0, 3]
    assert calls == [0, 1, 2, 3]
    assert s.element(5) == 15


def test_finite_stream_ends():
    s = SetStream([1, 4, 9])
    assert s.prefix(10) == [1, 4, 9]
    assert s.element(3) is None
    assert list(s) == [1, 4, 9]


def test_rejects_non_increasing_source():
    with pytest.raises(PreconditionError):
        SetStream([2, 2]).prefix(2)
    with pytest.raises(PreconditionError):
        SetStream([-1]).prefix(1)


def test_first_at_least():
    s = SetStream.from_predicate(lambda n: n % 5 == 0)
    assert s.first_at_least(12) == (3, 15)
    assert s.first_at_least(100, limit=4) is None

"""Lazy increasing enumerations of (possibly infinite) subsets of N."""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator
from fractions import Fraction

from .errors import PreconditionError

__all__ = ["SetStream"]


class SetStream:
    """An infinite (or finite) set ``A`` of naturals, read lazily in order.

    Elements are memoized as they are pulled, so ``element(i)`` and repeated
    iteration are deterministic and cheap. The stream checks that its source
    is strictly increasing.

    ``point_value(n)`` optionally reports a singleton value such as
    ``phi({n})`` or ``||x_n||``. ``modulus(k, eps)`` optionally returns an
    ``N`` with ``|x_m(k)| < eps`` for every ``m >= N``; it stands in for the
    w*-null hypothesis, which no finite prefix can confirm.

    Not thread safe: one consumer per stream.
    """

    def __init__(
        self,
        source: Iterable[int],
        *,
        point_value: Callable[[int], Fraction] | None = None,
        modulus: Callable[[int, Fraction], int] | None = None,
        name: str = "stream",
    ):
        self._source = iter(source)
        self._seen: list[int] = []
        self._exhausted = False
        self.point_value = point_value
        self.modulus = modulus
        self.name = name

    @classmethod
    def naturals(cls, start: int = 0, **kwargs) -> SetStream:
        return cls(itertools.count(start), name=kwargs.pop("name", "naturals"), **kwargs)

    @classmethod
    def from_function(cls, f: Callable[[int], int], **kwargs) -> SetStream:
        """Stream whose ``i``-th element is ``f(i)``."""
        return cls(map(f, itertools.count()), **kwargs)

    @classmethod
    def from_predicate(cls, pred: Callable[[int], bool], start: int = 0, **kwargs) -> SetStream:
        return cls((n for n in itertools.count(start) if pred(n)), **kwargs)

    def _pull(self, count: int) -> None:
        while len(self._seen) < count and not self._exhausted:
            try:
                nxt = next(self._source)
            except StopIteration:
                self._exhausted = True
                break
            if not isinstance(nxt, int) or nxt < 0:
                raise PreconditionError(f"{self.name}: {nxt!r} is not a natural number")
            if self._seen and nxt <= self._seen[-1]:
                raise PreconditionError(
                    f"{self.name}: not strictly increasing ({self._seen[-1]} then {nxt})"
                )
            self._seen.append(nxt)

    def element(self, i: int) -> int | None:
        """The ``i``-th element (0-based), or ``None`` past the end."""
        self._pull(i + 1)
        return self._seen[i] if i < len(self._seen) else None

    def prefix(self, count: int) -> list[int]:
        """Up to ``count`` first elements (fewer if the stream is finite)."""
        self._pull(count)
        return self._seen[:count]

    def __iter__(self) -> Iterator[int]:
        i = 0
        while True:
            x = self.element(i)
            if x is None:
                return
            yield x
            i += 1

    def first_at_least(self, bound: int, start_index: int = 0, limit: int | None = None):
        """Index and value of the first element ``>= bound`` at position ``>= start_index``.

        Returns ``None`` if the stream ends or ``limit`` positions are scanned
        without success.
        """
        i = start_index
        while limit is None or i < start_index + limit:
            x = self.element(i)
            if x is None:
                return None
            if x >= bound:
                return i, x
            i += 1
        return None

    @property
    def pulled(self) -> int:
        return len(self._seen)

    def __repr__(self):
        return f"SetStream({self.name!r}, pulled={self.pulled})"

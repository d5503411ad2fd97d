"""Submeasure representations on N and their exact evaluation.

Every representation is a :class:`Submeasure`. Calling one on a finite set
returns its exact value (a ``Fraction`` or ``INF``); the value on an
infinite set is the limit along initial segments, which is what the
stream-based diagnostics approximate.
"""
from __future__ import annotations

import itertools
import logging
import math
import os
from abc import ABC, abstractmethod
from collections import defaultdict
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BudgetExhausted, CapExceeded, PreconditionError, UniverseError
from .extended import INF, ExtendedRational, as_ext
from .streams import SetStream

log = logging.getLogger(__name__)

TABLE_UNIVERSE_CAP = 20
COVER_CAP = 14
VECTOR_CACHE_CAP = 1 << 16

FinSet = frozenset


def default_budget() -> int:
    """Search budget; ``SUBM_BUDGET`` in the environment overrides 10_000."""
    raw = os.environ.get("SUBM_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise PreconditionError(f"SUBM_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise PreconditionError("SUBM_BUDGET must be positive")
        return value
    return 10_000


def finset(elements: Iterable[int] = ()) -> frozenset[int]:
    """Validate and freeze a finite set of naturals."""
    if isinstance(elements, frozenset) and all(type(n) is int and n >= 0 for n in elements):
        return elements
    out = []
    for n in elements:
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise PreconditionError(f"{n!r} is not a natural number")
        out.append(n)
    return frozenset(out)


def to_mask(F: Iterable[int]) -> int:
    mask = 0
    for n in F:
        mask |= 1 << n
    return mask


def from_mask(mask: int, elements: Sequence[int] | None = None) -> frozenset[int]:
    """Decode a bitmask; bit ``i`` means ``elements[i]`` (or ``i`` itself)."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(elements[i] if elements is not None else i)
        mask >>= 1
        i += 1
    return frozenset(out)


def sorted_tuple(F: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(F))


# ---------------------------------------------------------------------------
# Point measures


@dataclass(frozen=True)
class PointMeasure:
    """A finitely supported measure: ``mu(A) = sum of weights over A``."""

    weights: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for n, w in sorted(self.weights.items()):
            if isinstance(n, bool) or not isinstance(n, int) or n < 0:
                raise PreconditionError(f"measure point {n!r} is not a natural number")
            w = as_ext(w)
            if w is INF:
                raise PreconditionError("point masses must be finite")
            if w < 0:
                raise PreconditionError(f"negative mass {w} at {n}")
            if w:
                clean[n] = w
        object.__setattr__(self, "weights", clean)

    def __hash__(self):
        return hash(tuple(self.weights.items()))

    def __call__(self, A: Iterable[int]) -> Fraction:
        w = self.weights
        return sum((w[n] for n in A if n in w), Fraction(0))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.weights)

    @property
    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def restrict(self, A: Iterable[int]) -> PointMeasure:
        A = set(A)
        return PointMeasure({n: w for n, w in self.weights.items() if n in A})

    def __add__(self, other: PointMeasure) -> PointMeasure:
        out = dict(self.weights)
        for n, w in other.weights.items():
            out[n] = out.get(n, Fraction(0)) + w
        return PointMeasure(out)

    @classmethod
    def counting(cls, A: Iterable[int]) -> PointMeasure:
        return cls({n: Fraction(1) for n in A})


# ---------------------------------------------------------------------------
# The abstract submeasure


class Accumulator:
    """Value of a submeasure on a set that only grows.

    The default recomputes from scratch; representations with additive
    structure override :meth:`Submeasure.accumulator` with O(support)
    updates.
    """

    def __init__(self, spec: Submeasure):
        self.spec = spec
        self.elements: set[int] = set()

    def add(self, n: int) -> None:
        self.elements.add(n)

    @property
    def value(self) -> ExtendedRational:
        return evaluate(self.spec, self.elements)


class Submeasure(ABC):
    """A lower semicontinuous submeasure, given through its values on finite sets."""

    #: ``None`` means all of N; an int ``u`` restricts inputs to ``{0..u-1}``.
    universe: int | None = None
    name: str = "submeasure"

    def __call__(self, A: Iterable[int]) -> ExtendedRational:
        return evaluate(self, A)

    @abstractmethod
    def _eval(self, F: frozenset[int]) -> ExtendedRational:
        """Value on a nonempty finite set already checked against the universe."""

    def accumulator(self) -> Accumulator:
        return Accumulator(self)

    def singleton(self, n: int) -> ExtendedRational:
        return evaluate(self, (n,))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"


def evaluate(spec: Submeasure, F: Iterable[int]) -> ExtendedRational:
    """Exact value of ``spec`` on the finite set ``F``."""
    F = finset(F)
    if spec.universe is not None:
        outside = [n for n in F if n >= spec.universe]
        if outside:
            raise UniverseError(
                f"{spec.name}: elements {sorted(outside)} outside universe 0..{spec.universe - 1}"
            )
    if not F:
        return Fraction(0)
    return spec._eval(F)


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class Violation:
    kind: str  # "empty", "singleton", "monotonicity" or "subadditivity"
    A: tuple[int, ...]
    B: tuple[int, ...]
    detail: str


class TableSubmeasure(Submeasure):
    """Explicit values on every subset of ``{0..u-1}``.

    ``values[mask]`` is the value on the set whose bit pattern is ``mask``.
    Nothing about monotonicity or subadditivity is assumed; see
    :func:`validate_table`.
    """

    def __init__(self, universe: int, values: Sequence, name: str = "table"):
        if not 0 <= universe <= TABLE_UNIVERSE_CAP:
            raise CapExceeded(f"table universe {universe} exceeds cap {TABLE_UNIVERSE_CAP}")
        if len(values) != 1 << universe:
            raise PreconditionError(
                f"table over {universe} points needs {1 << universe} values, got {len(values)}"
            )
        self.universe = universe
        self.values = tuple(as_ext(v) for v in values)
        self.name = name

    @classmethod
    def from_function(cls, universe: int, f: Callable[[frozenset[int]], object], name: str = "table"):
        return cls(universe, [f(from_mask(m)) for m in range(1 << universe)], name=name)

    @classmethod
    def from_sets(cls, universe: int, entries: Mapping[Iterable[int], object], default=None, name="table"):
        """Build from ``{set: value}``; missing sets take ``default``."""
        vals: list = [default] * (1 << universe)
        for A, v in entries.items():
            vals[to_mask(A)] = v
        if any(v is None for v in vals):
            missing = [sorted_tuple(from_mask(m)) for m, v in enumerate(vals) if v is None]
            raise PreconditionError(f"table is missing values for {missing[:5]}...")
        return cls(universe, vals, name=name)

    def value_of_mask(self, mask: int) -> ExtendedRational:
        return self.values[mask]

    def _eval(self, F):
        return self.values[to_mask(F)]

    def with_value(self, A: Iterable[int], value) -> TableSubmeasure:
        vals = list(self.values)
        vals[to_mask(A)] = as_ext(value)
        return TableSubmeasure(self.universe, vals, name=self.name)


def validate_table(table: TableSubmeasure) -> list[Violation]:
    """Every violation of the lscsm axioms on the table's universe.

    Checks ``phi(empty) = 0``, finiteness on singletons, monotonicity along
    one-point extensions ``(A, A + {i})`` and subadditivity on disjoint
    pairs ``{A, B}``. Together these are equivalent to the full axioms, so
    the list is empty iff the table is an lscsm. Cost is ``O(3^u)``.
    """
    u = table.universe
    v = table.values
    out: list[Violation] = []
    if v[0] != 0:
        out.append(Violation("empty", (), (), f"phi(empty) = {v[0]}"))
    for i in range(u):
        if v[1 << i] is INF:
            out.append(Violation("singleton", (i,), (), f"phi({{{i}}}) = inf"))
    full = 1 << u
    for A in range(full):
        for i in range(u):
            bit = 1 << i
            if A & bit:
                continue
            if v[A] > v[A | bit]:
                out.append(
                    Violation(
                        "monotonicity",
                        sorted_tuple(from_mask(A)),
                        sorted_tuple(from_mask(A | bit)),
                        f"{v[A]} > {v[A | bit]}",
                    )
                )
    for C in range(1, full):
        low = C & -C
        rest = C ^ low
        # A runs over submasks of C containing the lowest bit; B = C - A.
        sub = rest
        while True:
            A = sub | low
            B = C ^ A
            if B and v[C] > v[A] + v[B]:
                out.append(
                    Violation(
                        "subadditivity",
                        sorted_tuple(from_mask(A)),
                        sorted_tuple(from_mask(B)),
                        f"phi(A u B) = {v[C]} > {v[A]} + {v[B]}",
                    )
                )
            if sub == 0:
                break
            sub = (sub - 1) & rest
    return out


# ---------------------------------------------------------------------------
# Suprema of measures


class _SupAccumulator(Accumulator):
    def __init__(self, spec: SupMeasures):
        super().__init__(spec)
        self._sums = [Fraction(0)] * len(spec.measures)
        self._best = Fraction(0)
        self._by_point: dict[int, list[tuple[int, Fraction]]] = defaultdict(list)
        for k, mu in enumerate(spec.measures):
            for n, w in mu.weights.items():
                self._by_point[n].append((k, w))

    def add(self, n):
        if n in self.elements:
            return
        self.elements.add(n)
        for k, w in self._by_point.get(n, ()):
            self._sums[k] += w
            if self._sums[k] > self._best:
                self._best = self._sums[k]

    @property
    def value(self):
        return self._best


class SupMeasures(Submeasure):
    """``phi(A) = max_k mu_k(A)`` for a finite list of point measures.

    Always a non-pathological lscsm on N.
    """

    def __init__(self, measures: Iterable[PointMeasure], name: str = "sup_measures"):
        self.measures = tuple(m if isinstance(m, PointMeasure) else PointMeasure(m) for m in measures)
        self.name = name

    def _eval(self, F):
        return max((mu(F) for mu in self.measures), default=Fraction(0))

    def accumulator(self):
        return _SupAccumulator(self)

    @property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for mu in self.measures:
            out |= mu.support
        return frozenset(out)

    def to_vector_seq(self, length: int | None = None) -> VectorSeq:
        """Transpose: ``x_n(k) = mu_k({n})``; evaluation is unchanged."""
        if length is None:
            length = max(self.support, default=-1) + 1
        cols: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for k, mu in enumerate(self.measures):
            for n, w in mu.weights.items():
                cols[n][k] = w
        return VectorSeq([cols.get(n, {}) for n in range(length)], nonneg=True, name=f"{self.name}^T")


class _IndexedSupAccumulator(Accumulator):
    def __init__(self, spec: IndexedSupMeasures):
        super().__init__(spec)
        self._sums: dict = defaultdict(Fraction)
        self._best = Fraction(0)

    def add(self, n):
        if n in self.elements:
            return
        self.elements.add(n)
        for k in self.spec.indices_of(n):
            s = self._sums[k] = self._sums[k] + as_ext(self.spec.weight(k, n))
            if s > self._best:
                self._best = s

    @property
    def value(self):
        return self._best


class IndexedSupMeasures(Submeasure):
    """``phi(A) = sup_k mu_k(A)`` for an infinite, lazily described family.

    ``indices_of(m)`` lists the (finitely many) ``k`` with ``m`` in the
    support of ``mu_k`` and ``weight(k, m)`` gives ``mu_k({m})``. Only the
    measures meeting the evaluated set are ever touched.
    """

    def __init__(self, indices_of: Callable[[int], Iterable], weight: Callable[[object, int], object],
                 name: str = "indexed_sup"):
        self.indices_of = indices_of
        self.weight = weight
        self.name = name

    def _eval(self, F):
        sums: dict = defaultdict(Fraction)
        for m in F:
            for k in self.indices_of(m):
                sums[k] += as_ext(self.weight(k, m))
        return max(sums.values(), default=Fraction(0))

    def accumulator(self):
        return _IndexedSupAccumulator(self)

    def measure_on(self, k, A: Iterable[int]) -> PointMeasure:
        """``mu_k`` restricted to ``A``."""
        return PointMeasure({m: self.weight(k, m) for m in A if k in list(self.indices_of(m))})


# ---------------------------------------------------------------------------
# Vector sequences in c00 under the sup norm


class _VectorAccumulator(Accumulator):
    def __init__(self, spec: VectorSeq):
        super().__init__(spec)
        self._pos: dict[int, Fraction] = defaultdict(Fraction)
        self._neg: dict[int, Fraction] = defaultdict(Fraction)
        self._best = Fraction(0)

    def add(self, n):
        if n in self.elements:
            return
        self.spec._check_index(n)
        self.elements.add(n)
        for k, v in self.spec.vector(n).items():
            if v > 0:
                s = self._pos[k] = self._pos[k] + v
            else:
                s = self._neg[k] = self._neg[k] - v
            if s > self._best:
                self._best = s

    @property
    def value(self):
        return self._best


class VectorSeq(Submeasure):
    """A sequence ``x_n`` of finitely supported vectors, read as ``phi_x``.

    ``phi_x(A)`` is the sup over finite ``F`` in ``A`` of ``||sum_F x_n||_inf``;
    on a finite set it equals the largest, over coordinates ``k``, of the
    positive-part sum or the negative-part sum of ``x_n(k)``.

    ``entries`` is a list of ``{coordinate: value}`` maps or a function
    ``n -> map`` (then ``length`` may be ``None`` for an infinite sequence).
    """

    def __init__(
        self,
        entries: Sequence[Mapping[int, object]] | Callable[[int], Mapping[int, object]],
        length: int | None = None,
        nonneg: bool | None = None,
        name: str = "vector_seq",
    ):
        self.name = name
        self._cache: dict[int, dict[int, Fraction]] = {}
        if callable(entries):
            self._fn = entries
            self.length = length
        else:
            entries = list(entries)
            self._fn = entries.__getitem__
            self.length = len(entries) if length is None else length
        self.universe = self.length
        if nonneg is None:
            if self.length is None:
                nonneg = False
            else:
                nonneg = all(v >= 0 for n in range(self.length) for v in self.vector(n).values())
        self.nonneg = nonneg

    def _check_index(self, n: int) -> None:
        if self.length is not None and n >= self.length:
            raise UniverseError(f"{self.name}: index {n} beyond length {self.length}")

    def vector(self, n: int) -> dict[int, Fraction]:
        """``x_n`` as a sparse map with zero entries dropped."""
        cached = self._cache.get(n)
        if cached is not None:
            return cached
        self._check_index(n)
        raw = self._fn(n)
        vec = {}
        for k, v in raw.items():
            k = int(k)
            if k < 0:
                raise PreconditionError(f"{self.name}: negative coordinate {k}")
            if type(v) is not Fraction:
                v = as_ext(v)
            if v is INF:
                raise PreconditionError(f"{self.name}: infinite entry in x_{n}")
            if v:
                vec[k] = v
        vec = dict(sorted(vec.items()))
        if getattr(self, "nonneg", False) and any(v < 0 for v in vec.values()):
            raise PreconditionError(f"{self.name}: declared nonnegative but x_{n} has negative entries")
        if len(self._cache) >= VECTOR_CACHE_CAP:
            self._cache.clear()
        self._cache[n] = vec
        return vec

    def coord(self, n: int, k: int) -> Fraction:
        return self.vector(n).get(k, Fraction(0))

    def norm(self, n: int) -> Fraction:
        return max((abs(v) for v in self.vector(n).values()), default=Fraction(0))

    def support(self, n: int) -> frozenset[int]:
        return frozenset(self.vector(n))

    def _eval(self, F):
        pos: dict[int, Fraction] = defaultdict(Fraction)
        neg: dict[int, Fraction] = defaultdict(Fraction)
        for n in F:
            for k, v in self.vector(n).items():
                if v > 0:
                    pos[k] += v
                else:
                    neg[k] -= v
        return max(itertools.chain(pos.values(), neg.values()), default=Fraction(0))

    def accumulator(self):
        return _VectorAccumulator(self)

    def row_measure(self, k: int, A: Iterable[int]) -> PointMeasure:
        """``mu_k`` restricted to ``A``: ``n -> x_n(k)`` (requires nonnegative entries)."""
        return PointMeasure({n: self.coord(n, k) for n in A})

    def to_sup_measures(self) -> SupMeasures:
        """Row measures ``mu_k({n}) = x_n(k)`` of a finite nonnegative sequence."""
        if self.length is None:
            raise PreconditionError("only finite sequences can be listed as measures")
        if not self.nonneg:
            raise PreconditionError("row measures need nonnegative entries")
        rows: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for n in range(self.length):
            for k, v in self.vector(n).items():
                rows[k][n] = v
        return SupMeasures([PointMeasure(rows[k]) for k in sorted(rows)], name=f"{self.name}^T")

    def map(self, f: Callable[[int, dict[int, Fraction]], Mapping[int, object]], nonneg=None, name=None):
        return VectorSeq(lambda n: f(n, self.vector(n)), length=self.length, nonneg=nonneg,
                         name=name or self.name)


def abs_transform(x: VectorSeq) -> VectorSeq:
    """``x'_n(k) = |x_n(k)|``. A nonnegative input is returned as is."""
    if x.nonneg:
        return x
    return VectorSeq(
        lambda n: {k: abs(v) for k, v in x.vector(n).items()},
        length=x.length,
        nonneg=True,
        name=f"|{x.name}|",
    )


# ---------------------------------------------------------------------------
# Filtrations and cover numbers (integer-valued, Mazur style)


class Filtration(Submeasure):
    """``phi(F) = min{n + 1 : K(n, F)}`` for a growing hereditary family ``K(n, .)``.

    ``K`` is a predicate, so infinite families are fine. When no level up
    to ``max_level`` contains ``F`` the search stops with
    :class:`BudgetExhausted` whose ``progress`` is the proven lower bound,
    unless ``exhaustive`` says the levels up to ``max_level`` are all there
    is; then the value is infinite.
    """

    def __init__(self, K: Callable[[int, frozenset[int]], bool], max_level: int | None = None,
                 universe: int | None = None, name: str = "filtration", exhaustive: bool = False):
        self.K = K
        self.max_level = default_budget() if max_level is None else max_level
        self.universe = universe
        self.name = name
        self.exhaustive = exhaustive

    def _eval(self, F):
        for n in range(self.max_level + 1):
            if self.K(n, F):
                return Fraction(n + 1)
        if self.exhaustive:
            return INF
        bound = self.max_level + 2
        raise BudgetExhausted(f"{self.name}: budget exhausted, value >= {bound}", progress=Fraction(bound))


def maximal_base_sets(x: int, U: Sequence[int], base: Callable[[frozenset[int]], bool]):
    """All inclusion-maximal ``S`` with ``x in S``, ``S`` inside ``U`` and ``base(S)``."""
    others = [y for y in U if y != x]
    found: list[frozenset[int]] = []

    def grow(S: frozenset[int], start: int):
        extended = False
        for j in range(start, len(others)):
            T = S | {others[j]}
            if base(T):
                extended = True
                grow(T, j + 1)
        if not extended:
            # maximal among sets grown so far only if no skipped element fits either
            if all(y in S or not base(S | {y}) for y in others):
                found.append(S)

    grow(frozenset([x]), 0)
    return found


def min_cover(F: Iterable[int], base: Callable[[frozenset[int]], bool], cap: int = COVER_CAP):
    """Fewest base sets covering ``F`` (exact branch and bound).

    ``base`` must be hereditary and accept all singletons. Returns
    ``(count, cover)`` where ``cover`` is a list of disjoint base sets,
    chosen deterministically.
    """
    elems = sorted(F)
    if len(elems) > cap:
        raise CapExceeded(f"cover search over {len(elems)} points exceeds cap {cap}")
    for x in elems:
        if not base(frozenset([x])):
            raise PreconditionError(f"base family rejects the singleton {{{x}}}")
    if not elems:
        return 0, []
    if base(frozenset(elems)):
        return 1, [frozenset(elems)]
    best: list = [len(elems), [frozenset([x]) for x in elems]]

    def search(U: list[int], chosen: list[frozenset[int]]):
        if not U:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        if len(chosen) + 1 >= best[0]:
            return
        if base(frozenset(U)):
            search([], chosen + [frozenset(U)])
            return
        x = U[0]
        cands = maximal_base_sets(x, U, base)
        cands.sort(key=lambda S: (-len(S), sorted_tuple(S)))
        for S in cands:
            search([y for y in U if y not in S], chosen + [S])

    search(elems, [])
    return best[0], best[1]


class CoverNumber(Submeasure):
    """``phi(F)`` = least number of base sets whose union contains ``F``."""

    def __init__(self, base: Callable[[frozenset[int]], bool], cap: int = COVER_CAP,
                 universe: int | None = None, name: str = "cover"):
        self.base = base
        self.cap = cap
        self.universe = universe
        self.name = name

    def _eval(self, F):
        return Fraction(min_cover(F, self.base, self.cap)[0])

    def cover(self, F: Iterable[int]) -> list[frozenset[int]]:
        return min_cover(finset(F), self.base, self.cap)[1]


# ---------------------------------------------------------------------------
# Combinations


class SupCombined(Submeasure):
    """Pointwise maximum of finitely many submeasures."""

    def __init__(self, parts: Sequence[Submeasure], name: str = "sup"):
        self.parts = tuple(parts)
        finite = [p.universe for p in self.parts if p.universe is not None]
        self.universe = min(finite) if finite else None
        self.name = name

    def _eval(self, F):
        return max(evaluate(p, F) for p in self.parts)


def sup_combine(specs: Sequence[Submeasure]) -> Submeasure:
    """``sup_n phi_n``; stays a :class:`SupMeasures` when every input is one."""
    specs = list(specs)
    if not specs:
        raise PreconditionError("sup_combine needs at least one submeasure")
    if len(specs) == 1:
        return specs[0]
    if all(isinstance(s, SupMeasures) for s in specs):
        return SupMeasures([mu for s in specs for mu in s.measures], name="sup")
    return SupCombined(specs)


def _member(block, m: int) -> bool:
    if callable(block):
        return bool(block(m))
    return m in block


class SumCombined(Submeasure):
    """``phi(F) = sum_n phi_n(F & B_n)`` over a point-finite cover ``(B_n)``.

    Two forms:

    * finite: ``parts`` a list of submeasures and ``blocks`` a matching list
      of containers or membership predicates;
    * indexed: ``parts`` a function ``n -> submeasure`` and ``cover`` a
      function ``m -> indices n with m in B_n`` (finite by point-finiteness).
    """

    def __init__(self, parts, blocks=None, cover=None, max_multiplicity: int = 64, name: str = "sum"):
        if (blocks is None) == (cover is None):
            raise PreconditionError("give exactly one of blocks= or cover=")
        self.parts = parts
        self.blocks = blocks
        self.cover = cover
        self.max_multiplicity = max_multiplicity
        self.name = name
        if blocks is not None and len(blocks) != len(parts):
            raise PreconditionError("one block per summand is required")

    def split(self, F: Iterable[int]) -> dict[int, frozenset[int]]:
        """``{n: F & B_n}`` for the blocks that meet ``F``."""
        pieces: dict[int, set[int]] = defaultdict(set)
        if self.blocks is not None:
            for n, block in enumerate(self.blocks):
                for m in F:
                    if _member(block, m):
                        pieces[n].add(m)
        else:
            for m in F:
                idx = list(self.cover(m))
                if len(idx) > self.max_multiplicity:
                    raise PreconditionError(
                        f"{self.name}: {m} lies in {len(idx)} blocks; cover is not point-finite here"
                    )
                for n in idx:
                    pieces[n].add(m)
        return {n: frozenset(p) for n, p in sorted(pieces.items())}

    def part(self, n: int) -> Submeasure:
        return self.parts[n] if self.blocks is not None else self.parts(n)

    def accumulator(self):
        return _SumAccumulator(self)

    def _eval(self, F):
        total: ExtendedRational = Fraction(0)
        for n, piece in self.split(F).items():
            total = total + evaluate(self.part(n), piece)
        return total


class _SumAccumulator(Accumulator):
    """Keeps one accumulator per block and the running total of their values."""

    def __init__(self, spec: SumCombined):
        super().__init__(spec)
        self._parts: dict[int, Accumulator] = {}
        self._values: dict[int, ExtendedRational] = {}
        self._finite_total = Fraction(0)
        self._infinite = 0

    def add(self, m):
        if m in self.elements:
            return
        self.elements.add(m)
        for n, piece in self.spec.split([m]).items():
            acc = self._parts.get(n)
            if acc is None:
                acc = self._parts[n] = self.spec.part(n).accumulator()
            old = self._values.get(n, Fraction(0))
            acc.add(m)
            new = self._values[n] = acc.value
            if old is INF:
                self._infinite -= 1
            else:
                self._finite_total -= old
            if new is INF:
                self._infinite += 1
            else:
                self._finite_total += new

    @property
    def value(self):
        return INF if self._infinite else self._finite_total


#: Above this many product measures sum_combine keeps the implicit form.
SUM_PRODUCT_CAP = 65_536


def sum_combine(specs, blocks=None, *, cover=None) -> Submeasure:
    """``sum_n phi_n`` with ``phi_n`` living on block ``B_n``.

    When every input is a :class:`SupMeasures` (finite form) the result is
    again a :class:`SupMeasures`, built from the product family
    ``mu_s = sum_n nu_n^{s(n)}``: one measure per choice of a measure from
    each summand. That family has the same supremum as the sum, because the
    summands live on disjoint or point-finitely overlapping blocks and each
    sup is attained independently.
    """
    if cover is not None:
        return SumCombined(specs, cover=cover)
    specs = list(specs)
    blocks = list(blocks)
    if specs and all(isinstance(s, SupMeasures) for s in specs):
        for s, block in zip(specs, blocks):
            stray = [n for n in s.support if not _member(block, n)]
            if stray:
                raise PreconditionError(f"summand support {sorted(stray)} lies outside its block")
        families = [s.measures for s in specs if s.measures]
        size = math.prod(len(f) for f in families)
        if len(specs) == 1:
            return specs[0]
        if size <= SUM_PRODUCT_CAP:
            out = []
            for choice in itertools.product(*families):
                total = PointMeasure({})
                for mu in choice:
                    total = total + mu
                out.append(total)
            return SupMeasures(out, name="sum")
        log.warning("sum_combine: %d product measures exceed cap; keeping implicit sum", size)
    return SumCombined(specs, blocks=blocks)


# ---------------------------------------------------------------------------
# The Fin-group metric and Exh/Sum diagnostics


def symdiff_metric(spec: Submeasure, A: Iterable[int], B: Iterable[int]) -> ExtendedRational:
    """``d(A, B) = phi(A symmetric-difference B)``."""
    return evaluate(spec, finset(A) ^ finset(B))


@dataclass
class ExhSumReport:
    """Finite evidence about ``Sum(phi)`` and ``Exh(phi)`` membership.

    ``partial_sums[i]`` pairs a count ``c`` with ``sum of phi({a_j}), j < c``;
    ``tails[i]`` pairs a cut ``m`` with ``phi({a_j : m <= j < length})``.
    No limit is claimed.
    """

    length: int
    exhausted: bool
    partial_sums: list[tuple[int, Fraction]]
    tails: list[tuple[int, ExtendedRational]]

    def to_json(self) -> dict:
        from .extended import format_ext

        return {
            "length": self.length,
            "exhausted": self.exhausted,
            "partial_sums": [[c, format_ext(v)] for c, v in self.partial_sums],
            "tails": [[m, format_ext(v)] for m, v in self.tails],
        }


def _default_schedule(length: int) -> list[int]:
    cuts = {0, length}
    p = 1
    while p < length:
        cuts.add(p)
        p *= 2
    return sorted(cuts)


def sum_exh_diagnostics(spec: Submeasure, stream: SetStream, prefix: int,
                        schedule: Iterable[int] | None = None) -> ExhSumReport:
    """Partial singleton sums and tail values along the first ``prefix`` stream elements."""
    elems = stream.prefix(prefix)
    length = len(elems)
    cuts = sorted(set(schedule)) if schedule is not None else _default_schedule(length)
    cuts = [c for c in cuts if 0 <= c]
    point = stream.point_value or spec.singleton

    wanted = set(cuts)
    partial = []
    running = Fraction(0)
    for i, a in enumerate(elems):
        if i in wanted:
            partial.append((i, running))
        running = running + as_ext(point(a))
    for c in cuts:
        if c >= length:
            partial.append((c, running))

    tails: dict[int, ExtendedRational] = {c: Fraction(0) for c in cuts if c >= length}
    acc = spec.accumulator()
    for j in range(length - 1, -1, -1):
        acc.add(elems[j])
        if j in wanted:
            tails[j] = acc.value
    return ExhSumReport(
        length=length,
        exhausted=length < prefix,
        partial_sums=sorted(set(partial)),
        tails=sorted(tails.items()),
    )

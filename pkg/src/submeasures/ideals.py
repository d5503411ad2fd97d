"""Partition schemes, the standard ideals built on them, and budgeted verdicts.

The fixed scheme ``arith-v1`` splits N along the Cantor pairing
``pair(n, j) = (n + j)(n + j + 1)/2 + j``: block ``B_n`` is
``{pair(n, j) : j >= 0}`` listed in increasing ``j``. So ``B_0 = {0, 2, 5,
9, ...}``, ``B_1 = {1, 4, 8, 13, ...}``, ``B_2 = {3, 7, 12, ...}``.
"""
from __future__ import annotations

import enum
import itertools
import math
from abc import ABC, abstractmethod
from collections import Counter, defaultdict
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .core import (
    CoverNumber,
    Filtration,
    IndexedSupMeasures,
    Submeasure,
    SumCombined,
    default_budget,
    evaluate,
    finset,
    min_cover,
)
from .errors import BudgetExhausted, CapExceeded, PreconditionError
from .extended import INF, ExtendedRational, as_ext, format_ext
from .streams import SetStream

# ---------------------------------------------------------------------------
# Partition schemes


class PartitionScheme(ABC):
    """A partition of N into blocks ``B_0, B_1, ...`` with exact arithmetic access."""

    name: str

    @abstractmethod
    def block_of(self, m: int) -> int: ...

    @abstractmethod
    def position(self, m: int) -> int:
        """Index of ``m`` inside its block (0 for the least element)."""

    @abstractmethod
    def element(self, n: int, j: int) -> int:
        """The ``j``-th least element of ``B_n``."""

    def block_size(self, n: int) -> int | None:
        """``None`` for an infinite block."""
        return None

    def block(self, n: int) -> Iterator[int]:
        size = self.block_size(n)
        js = range(size) if size is not None else itertools.count()
        return (self.element(n, j) for j in js)

    def block_prefix(self, n: int, count: int) -> list[int]:
        size = self.block_size(n)
        if size is not None:
            count = min(count, size)
        return [self.element(n, j) for j in range(count)]

    def in_block(self, n: int) -> Callable[[int], bool]:
        return lambda m: self.block_of(m) == n

    def blocks_met(self, A: Iterable[int]) -> Counter:
        """``{n: |A & B_n|}``."""
        return Counter(self.block_of(m) for m in A)

    def is_partial_selector(self, A: Iterable[int]) -> bool:
        return all(c <= 1 for c in self.blocks_met(A).values())


def pair(n: int, j: int) -> int:
    return (n + j) * (n + j + 1) // 2 + j


def unpair(m: int) -> tuple[int, int]:
    d = (math.isqrt(8 * m + 1) - 1) // 2
    j = m - d * (d + 1) // 2
    return d - j, j


class ArithScheme(PartitionScheme):
    """``arith-v1``: blocks are the rows of the Cantor pairing."""

    name = "arith-v1"

    def block_of(self, m):
        return unpair(m)[0]

    def position(self, m):
        return unpair(m)[1]

    def element(self, n, j):
        return pair(n, j)

    def __repr__(self):
        return "ArithScheme('arith-v1')"


class SegmentScheme(PartitionScheme):
    """Consecutive finite blocks with ``|P_n| = n``: ``P_0 = {}``, ``P_1 = {0}``, ``P_2 = {1, 2}``..."""

    name = "segments-v1"

    @staticmethod
    def start(n: int) -> int:
        return n * (n - 1) // 2

    def block_of(self, m):
        n = (1 + math.isqrt(8 * m + 1)) // 2
        while self.start(n) > m:
            n -= 1
        while self.start(n + 1) <= m:
            n += 1
        return n

    def position(self, m):
        return m - self.start(self.block_of(m))

    def element(self, n, j):
        if not 0 <= j < n:
            raise PreconditionError(f"P_{n} has only {n} elements")
        return self.start(n) + j

    def block_size(self, n):
        return n

    def __repr__(self):
        return "SegmentScheme()"


ARITH_V1 = ArithScheme()
SEGMENTS_V1 = SegmentScheme()
SCHEMES = {"arith-v1": ARITH_V1, "segments-v1": SEGMENTS_V1}


def scheme_by_name(name: str) -> PartitionScheme:
    try:
        return SCHEMES[name]
    except KeyError:
        raise PreconditionError(f"unknown partition scheme {name!r}") from None


# ---------------------------------------------------------------------------
# fin x {empty}


def phi_fin_times_empty(scheme: PartitionScheme, A: Iterable[int]) -> ExtendedRational:
    """``1 + max{m : A meets B_m}``, and 0 on the empty set."""
    A = finset(A)
    if not A:
        return Fraction(0)
    return Fraction(max(scheme.block_of(m) for m in A) + 1)


def fin_times_empty_measures(scheme: PartitionScheme) -> IndexedSupMeasures:
    """Sup of point masses ``mu_k = (m + 1) delta_k`` for ``k`` in ``B_m``."""
    return IndexedSupMeasures(lambda m: (m,), lambda k, m: scheme.block_of(m) + 1, name="fin_x_empty_sup")


def fin_times_empty_filtration(scheme: PartitionScheme, max_level: int | None = None) -> Filtration:
    """``K_n`` = all subsets of ``B_0 u ... u B_n``."""
    return Filtration(lambda n, F: all(scheme.block_of(m) <= n for m in F), max_level=max_level,
                      name="fin_x_empty_filtration")


def psi_block_cover(scheme: PartitionScheme, A: Iterable[int]) -> ExtendedRational:
    """Fewest blocks whose union contains ``A``: the number of blocks ``A`` meets."""
    return Fraction(len(scheme.blocks_met(finset(A))))


class BlockCover(Submeasure):
    def __init__(self, scheme: PartitionScheme):
        self.scheme = scheme
        self.name = "block_cover"

    def _eval(self, F):
        return psi_block_cover(self.scheme, F)


class FinTimesEmpty(Submeasure):
    def __init__(self, scheme: PartitionScheme):
        self.scheme = scheme
        self.name = "fin_x_empty"

    def _eval(self, F):
        return phi_fin_times_empty(self.scheme, F)


# ---------------------------------------------------------------------------
# ED


@dataclass(frozen=True)
class Piece:
    """The whole block ``B_j``, as a symbolic (infinite) argument."""

    j: int


def psi_ED(scheme: PartitionScheme, A) -> ExtendedRational:
    """Least ``m`` with ``|A & B_n| <= m`` for every ``n > m``."""
    if isinstance(A, Piece):
        # |B_j & B_n| is infinite for n = j and 0 otherwise, so j > m must fail
        return Fraction(A.j)
    counts = scheme.blocks_met(finset(A))
    m = 0
    while any(n > m and c > m for n, c in counts.items()):
        m += 1
    return Fraction(m)


class EDGrowth(Submeasure):
    """``psi_ED`` as a submeasure on finite sets."""

    def __init__(self, scheme: PartitionScheme):
        self.scheme = scheme
        self.name = "ed_growth"

    def _eval(self, F):
        return psi_ED(self.scheme, F)


def ed_sup_representation(scheme: PartitionScheme, A: Iterable[int]) -> ExtendedRational:
    """Sup of counting measures on ``(n+1)``-subsets of ``B_n``: ``max_n min(|A & B_n|, n + 1)``."""
    counts = scheme.blocks_met(finset(A))
    return Fraction(max((min(c, n + 1) for n, c in counts.items()), default=0))


class EDSup(Submeasure):
    def __init__(self, scheme: PartitionScheme):
        self.scheme = scheme
        self.name = "ed_sup"

    def _eval(self, F):
        return ed_sup_representation(self.scheme, F)

    def dominating_measure(self, F) -> dict[int, int]:
        """A counting measure from the family attaining the value on ``F``."""
        F = sorted(finset(F))
        counts = self.scheme.blocks_met(F)
        if not counts:
            return {}
        best = max(counts, key=lambda n: (min(counts[n], n + 1), -n))
        chosen = [m for m in F if self.scheme.block_of(m) == best][: best + 1]
        return {m: 1 for m in chosen}


def ed_base(scheme: PartitionScheme) -> Callable[[frozenset[int]], bool]:
    """Subsets of one block, or partial selectors."""

    def base(S: frozenset[int]) -> bool:
        counts = scheme.blocks_met(S)
        return len(counts) <= 1 or all(c <= 1 for c in counts.values())

    return base


def ed_cover(scheme: PartitionScheme, cap: int = 14) -> CoverNumber:
    """Fewest pieces-or-selectors covering the set."""
    return CoverNumber(ed_base(scheme), cap=cap, name="ed_cover")


def ed_literal_filtration(scheme: PartitionScheme, max_level: int = 8, cap: int = 14) -> Filtration:
    """``min{n + 1 : F in K_n}`` with ``K_1`` the base and ``K_{n+1}`` the ``(n+1)``-fold unions of ``K_n``.

    Unwinding the recursion, ``K_n`` (``n >= 1``) holds the unions of ``n!``
    base sets, so membership is a cover-number test.
    """
    base = ed_base(scheme)

    def K(n: int, F: frozenset[int]) -> bool:
        if n == 0:
            return not F
        return min_cover(F, base, cap)[0] <= math.factorial(n)

    return Filtration(K, max_level=max_level, name="ed_literal_filtration")


def edfin_member(scheme: PartitionScheme, m: int) -> bool:
    """``m`` lies in ``C_n``, the first ``n + 1`` elements of its block ``B_n``."""
    return scheme.position(m) <= scheme.block_of(m)


def edfin_piece(scheme: PartitionScheme, n: int) -> list[int]:
    return scheme.block_prefix(n, n + 1)


def edfin_stream(scheme: PartitionScheme = ARITH_V1) -> SetStream:
    return SetStream.from_predicate(lambda m: edfin_member(scheme, m), name="edfin_universe")


class Restricted(Submeasure):
    """A submeasure restricted to a subset of N given by a predicate."""

    def __init__(self, spec: Submeasure, member: Callable[[int], bool], name: str | None = None):
        self.spec = spec
        self.member = member
        self.universe = spec.universe
        self.name = name or f"{spec.name}|restricted"

    def _eval(self, F):
        outside = sorted(m for m in F if not self.member(m))
        if outside:
            raise PreconditionError(f"{self.name}: {outside[:5]} outside the restricted domain")
        return evaluate(self.spec, F)


# ---------------------------------------------------------------------------
# Sub-block constructions with property A


class SubBlocks:
    """``B_n`` cut into consecutive sub-blocks ``B_n^0, B_n^1, ...``.

    Variant ``a``: ``|B_n^k| = 2^n (n+1)`` for all ``k``.
    Variant ``b``: ``|B_n^k| = (n+1)(2^n + k)``.
    """

    def __init__(self, scheme: PartitionScheme, variant: str):
        if variant not in ("a", "b"):
            raise PreconditionError("variant must be 'a' or 'b'")
        self.scheme = scheme
        self.variant = variant

    def size(self, n: int, k: int) -> int:
        if self.variant == "a":
            return (1 << n) * (n + 1)
        return (n + 1) * ((1 << n) + k)

    def start(self, n: int, k: int) -> int:
        """Position in ``B_n`` of the least element of ``B_n^k``."""
        if self.variant == "a":
            return k * (1 << n) * (n + 1)
        return (n + 1) * (k * (1 << n) + k * (k - 1) // 2)

    def sub_index(self, n: int, j: int) -> int:
        """The ``k`` with position ``j`` of ``B_n`` inside ``B_n^k``."""
        if self.variant == "a":
            return j // ((1 << n) * (n + 1))
        J = j // (n + 1)
        b = (1 << (n + 1)) - 1
        k = max(0, (math.isqrt(b * b + 8 * J) - b) // 2)
        f = lambda k: k * (1 << n) + k * (k - 1) // 2  # noqa: E731
        while f(k + 1) <= J:
            k += 1
        while k > 0 and f(k) > J:
            k -= 1
        return k

    def locate(self, m: int) -> tuple[int, int]:
        n = self.scheme.block_of(m)
        return n, self.sub_index(n, self.scheme.position(m))

    def sub_block(self, n: int, k: int) -> list[int]:
        s = self.start(n, k)
        return [self.scheme.element(n, j) for j in range(s, s + self.size(n, k))]

    def first_of(self, n: int, k: int) -> int:
        return self.scheme.element(n, self.start(n, k))

    def point_weight(self, n: int, k: int) -> Fraction:
        """``nu_n^k({x}) = (n + 1) / |B_n^k|``."""
        return Fraction(n + 1, self.size(n, k))


@dataclass(frozen=True)
class LevelSet:
    """``{n : phi{n} > eps}`` (or ``>=``) described by the blocks it is made of."""

    eps: Fraction
    strict: bool
    value: ExtendedRational
    blocks: tuple[int, ...]
    member: Callable[[int], bool] = field(compare=False, repr=False)

    def to_json(self):
        return {"eps": format_ext(self.eps), "strict": self.strict, "value": format_ext(self.value),
                "blocks": list(self.blocks)}


class SubBlockLevelSets:
    """Exact level sets of the sub-block construction.

    A point of ``B_n^k`` has value ``(n+1)/|B_n^k|``, at most ``2^-n``. The
    level set collects whole sub-blocks; each block it meets contributes
    ``n + 1`` to the value.
    """

    def __init__(self, sub: SubBlocks):
        self.sub = sub

    def total_value(self) -> ExtendedRational:
        return INF

    def _passes(self, w: Fraction, eps: Fraction, strict: bool) -> bool:
        return w > eps if strict else w >= eps

    def level_set(self, eps, strict: bool = True) -> LevelSet:
        eps = as_ext(eps)
        if eps is INF or eps <= 0:
            raise PreconditionError("eps must be a positive rational")
        sub = self.sub
        blocks = []
        n = 0
        # the largest point value in B_n is 2^-n, reached at k = 0
        while self._passes(sub.point_weight(n, 0), eps, strict):
            blocks.append(n)
            n += 1
        value = Fraction(sum(n + 1 for n in blocks))

        def member(m: int) -> bool:
            n, k = sub.locate(m)
            return self._passes(sub.point_weight(n, k), eps, strict)

        return LevelSet(eps, strict, value, tuple(blocks), member)


class IntegerUnitLevelSets:
    """Level sets of an integer-valued submeasure with all singletons equal to 1."""

    def __init__(self, total: ExtendedRational = INF):
        self.total = as_ext(total)

    def total_value(self):
        return self.total

    def level_set(self, eps, strict: bool = True) -> LevelSet:
        eps = as_ext(eps)
        everything = (1 > eps) if strict else (1 >= eps)
        if everything:
            return LevelSet(eps, strict, self.total, (), lambda m: True)
        return LevelSet(eps, strict, Fraction(0), (), lambda m: False)


@dataclass
class SubBlockConstruction:
    scheme: PartitionScheme
    sub: SubBlocks
    spec: Submeasure
    level_sets: SubBlockLevelSets

    @property
    def variant(self) -> str:
        return self.sub.variant

    def point_value(self, m: int) -> Fraction:
        n, k = self.sub.locate(m)
        return self.sub.point_weight(n, k)

    def check_facts(self, max_block: int = 3, max_sub: int = 3, prefix: int = 2000) -> dict:
        return check_sub_block_facts(self, max_block, max_sub, prefix)


def ejemadecuada_generator(variant: str, scheme: PartitionScheme = ARITH_V1) -> SubBlockConstruction:
    """``phi = sum_n sup_k nu_n^k`` with ``nu_n^k`` uniform on ``B_n^k`` of total mass ``n + 1``."""
    sub = SubBlocks(scheme, variant)

    @lru_cache(maxsize=None)
    def part(n: int) -> IndexedSupMeasures:
        return IndexedSupMeasures(
            lambda m: (sub.sub_index(n, scheme.position(m)),),
            lambda k, m: sub.point_weight(n, k),
            name=f"sup_k nu_{n}^k",
        )

    spec = SumCombined(part, cover=lambda m: (scheme.block_of(m),), name=f"subblocks-{variant}")
    spec.point_value = lambda m: sub.point_weight(*sub.locate(m))
    levels = SubBlockLevelSets(sub)
    spec.level_sets = levels
    return SubBlockConstruction(scheme, sub, spec, levels)


def check_sub_block_facts(con: SubBlockConstruction, max_block: int, max_sub: int, prefix: int) -> dict:
    """Finite-prefix checks of the four checkable facts of the construction.

    ``block_value``: ``phi(B_n^k) = n + 1`` and ``phi`` of a union of sub-blocks of ``B_n`` is ``n + 1``.
    ``level_sets``: points with value ``>= eps`` lie in ``B_0 u ... u B_N`` once ``2^-N < eps``.
    ``selectors``: a partial selector has value at most ``sum 2^-n <= 2``.
    ``not_exhaustive``: every tail of ``B_n`` still contains a sub-block of value ``n + 1``.
    """
    spec, sub, scheme = con.spec, con.sub, con.scheme
    report: dict[str, dict] = {}

    bad = []
    checked = 0
    for n in range(max_block + 1):
        union: list[int] = []
        for k in range(max_sub + 1):
            blk = sub.sub_block(n, k)
            union += blk
            checked += 1
            if spec(blk) != n + 1:
                bad.append((n, k, format_ext(spec(blk))))
        if spec(union) != n + 1:
            bad.append((n, "union", format_ext(spec(union))))
    report["block_value"] = {"passed": not bad, "checked": checked, "failures": bad}

    bad = []
    for N in range(0, 6):
        eps = Fraction(1, 2**N) + Fraction(1, 2 ** (N + 3))  # 2^-N < eps
        ls = con.level_sets.level_set(eps, strict=False)
        outside = [m for m in range(prefix) if con.point_value(m) >= eps and scheme.block_of(m) > N]
        if outside or any(b > N for b in ls.blocks):
            bad.append((N, outside[:3], ls.blocks))
    report["level_sets"] = {"passed": not bad, "checked": 6, "failures": bad}

    bad = []
    blocks_seen: dict[int, int] = {}
    for m in range(prefix):
        blocks_seen.setdefault(scheme.block_of(m), m)
    selector = sorted(blocks_seen.values())
    point_sum = sum((con.point_value(m) for m in selector), Fraction(0))
    value = spec(selector)
    dyadic = sum((Fraction(1, 2**n) for n in blocks_seen), Fraction(0))
    if not (value <= point_sum <= dyadic <= 2):
        bad.append((format_ext(value), format_ext(point_sum), format_ext(dyadic)))
    report["selectors"] = {"passed": not bad, "checked": len(selector), "failures": bad,
                           "value": format_ext(value), "point_sum": format_ext(point_sum)}

    bad = []
    checked = 0
    for n in range(max_block + 1):
        for cut in (0, 10, 100, 1000):
            # first sub-block lying entirely above the cut
            k = 0
            while sub.first_of(n, k) <= cut:
                k += 1
            checked += 1
            if spec(sub.sub_block(n, k)) != n + 1:
                bad.append((n, cut, k))
    report["not_exhaustive"] = {"passed": not bad, "checked": checked, "failures": bad}
    report["all_passed"] = all(v["passed"] for v in report.values() if isinstance(v, dict))
    return report


# ---------------------------------------------------------------------------
# Property A


class Status(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class PropertyAVerdict:
    status: Status
    reason: str
    bounds: list[LevelSet] = field(default_factory=list)
    failing_eps: Fraction | None = None

    def to_json(self):
        return {
            "status": self.status.value,
            "reason": self.reason,
            "bounds": [b.to_json() for b in self.bounds],
            "failing_eps": None if self.failing_eps is None else format_ext(self.failing_eps),
        }


def default_eps_schedule(depth: int = 12) -> list[Fraction]:
    return [Fraction(1, 2**i) for i in range(1, depth + 1)]


def has_property_A(spec: Submeasure | None = None, schedule: Iterable | None = None,
                   oracle=None) -> PropertyAVerdict:
    """Level sets ``{n : phi{n} > eps}`` of finite value for each tested ``eps``, and ``phi(N)`` infinite.

    Needs a level-set oracle (``oracle=`` or ``spec.level_sets``); without
    one the answer is INCONCLUSIVE. HOLDS only speaks for the tested ``eps``.
    """
    oracle = oracle if oracle is not None else getattr(spec, "level_sets", None)
    if oracle is None:
        return PropertyAVerdict(Status.INCONCLUSIVE, "no level-set oracle; level sets are infinite objects")
    total = oracle.total_value()
    if total is not INF:
        return PropertyAVerdict(Status.FAILS, f"phi(N) = {format_ext(total)} is finite")
    schedule = default_eps_schedule() if schedule is None else [as_ext(e) for e in schedule]
    bounds = []
    for eps in schedule:
        ls = oracle.level_set(eps)
        if ls.value is INF:
            return PropertyAVerdict(Status.FAILS, f"level set above {format_ext(eps)} has infinite value",
                                    bounds, failing_eps=eps)
        bounds.append(ls)
    return PropertyAVerdict(Status.HOLDS, f"{len(bounds)} level sets of finite value; phi(N) infinite", bounds)


# ---------------------------------------------------------------------------
# Boundedness along a stream


@dataclass(frozen=True)
class BoundedSoFar:
    bound: ExtendedRational
    observed: ExtendedRational
    prefix: int
    exhausted: bool = False  # the stream ended, so the whole set was checked

    def to_json(self):
        return {"verdict": "BoundedSoFar", "bound": format_ext(self.bound),
                "observed": format_ext(self.observed), "prefix": self.prefix, "exhausted": self.exhausted}


@dataclass(frozen=True)
class Exceeded:
    bound: ExtendedRational
    element: int
    witness: frozenset[int]
    value: ExtendedRational

    def to_json(self):
        return {"verdict": "Exceeded", "bound": format_ext(self.bound), "element": self.element,
                "witness": sorted(self.witness), "value": format_ext(self.value)}


@dataclass(frozen=True)
class Inconclusive:
    budget: int
    reason: str

    def to_json(self):
        return {"verdict": "Inconclusive", "budget": self.budget, "reason": self.reason}


BoundednessVerdict = BoundedSoFar | Exceeded | Inconclusive


def bounded_on_prefix(spec: Submeasure, stream: SetStream, M, budget: int | None = None) -> BoundednessVerdict:
    """Evaluate ``spec`` on growing prefixes of the stream against the bound ``M``.

    Returns at the first prefix whose value exceeds ``M``; otherwise reports
    the largest value seen within ``budget`` elements. Says nothing about
    the infinite set itself.
    """
    M = as_ext(M)
    budget = default_budget() if budget is None else budget
    acc = spec.accumulator()
    taken: list[int] = []
    value: ExtendedRational = Fraction(0)
    try:
        for i in range(budget):
            m = stream.element(i)
            if m is None:
                return BoundedSoFar(M, value, len(taken), exhausted=True)
            acc.add(m)
            taken.append(m)
            value = acc.value
            if value > M:
                return Exceeded(M, m, frozenset(taken), value)
    except (BudgetExhausted, CapExceeded) as exc:
        return Inconclusive(budget, f"evaluation gave up after {len(taken)} elements: {exc}")
    return BoundedSoFar(M, value, len(taken))


# ---------------------------------------------------------------------------
# Named ideals


@dataclass(frozen=True)
class CanonicalIdeal:
    """A named ideal with its available submeasure representations."""

    kind: str  # FinTimesEmpty | ED | EDfin | Summable | HomColoring | SubBlocksA | SubBlocksB
    scheme: PartitionScheme = ARITH_V1
    params: tuple = ()

    def representations(self) -> tuple[str, ...]:
        return {
            "FinTimesEmpty": ("sup", "filtration", "block_cover"),
            "ED": ("cover", "sup", "growth", "literal"),
            "EDfin": ("cover", "sup", "growth"),
            "Summable": ("measure",),
            "HomColoring": ("cover",),
            "SubBlocksA": ("sum",),
            "SubBlocksB": ("sum",),
        }[self.kind]

    def representation(self, name: str | None = None) -> Submeasure:
        name = name or self.representations()[0]
        if name not in self.representations():
            raise PreconditionError(f"{self.kind} has no representation {name!r}")
        s = self.scheme
        if self.kind == "FinTimesEmpty":
            return {"sup": lambda: fin_times_empty_measures(s), "filtration": lambda: fin_times_empty_filtration(s),
                    "block_cover": lambda: BlockCover(s)}[name]()
        if self.kind in ("ED", "EDfin"):
            spec = {"cover": lambda: ed_cover(s), "sup": lambda: EDSup(s), "growth": lambda: EDGrowth(s),
                    "literal": lambda: ed_literal_filtration(s)}[name]()
            if self.kind == "EDfin":
                spec = Restricted(spec, lambda m: edfin_member(s, m), name=f"edfin_{name}")
            return spec
        if self.kind == "Summable":
            weight = self.params[0] if self.params else (lambda n: Fraction(1, n + 1))
            return IndexedSupMeasures(lambda m: (0,), lambda k, m: weight(m), name="summable")
        if self.kind == "HomColoring":
            from .colorings import hom_cover_submeasure

            return hom_cover_submeasure(self.params[0])
        return ejemadecuada_generator("a" if self.kind == "SubBlocksA" else "b", s).spec


def group_by_block(scheme: PartitionScheme, A: Iterable[int]) -> dict[int, list[int]]:
    out: dict[int, list[int]] = defaultdict(list)
    for m in sorted(finset(A)):
        out[scheme.block_of(m)].append(m)
    return dict(out)

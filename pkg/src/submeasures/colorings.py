"""Pair colorings, homogeneous sets and the partitions attached to vector sequences."""
from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import COVER_CAP, CoverNumber, VectorSeq, default_budget, finset, min_cover
from .errors import BudgetExhausted, CapExceeded, PreconditionError
from .streams import SetStream

HOM_COVER_CAP = 12


class Coloring:
    """A symmetric map ``{n, m} -> {0, 1}`` on pairs of distinct naturals.

    ``rule(n, m)`` is only ever called with ``n < m``, which makes the
    coloring symmetric by construction.
    """

    def __init__(self, rule: Callable[[int, int], int], kind: str = "custom", name: str | None = None):
        self.rule = rule
        self.kind = kind
        self.name = name or kind

    def __call__(self, n: int, m: int) -> int:
        if n == m:
            raise PreconditionError("colorings are defined on pairs of distinct points")
        if n > m:
            n, m = m, n
        c = self.rule(n, m)
        if c not in (0, 1):
            raise PreconditionError(f"{self.name}: color {c!r} is not 0 or 1")
        return c

    def __repr__(self):
        return f"Coloring({self.name!r})"


def homogeneous_color(c: Coloring, A: Iterable[int]) -> int | None:
    """The common color of all pairs of ``A``; ``None`` if two colors occur.

    Sets with fewer than two points are homogeneous of both colors; for them
    the function returns ``-1``.
    """
    elems = sorted(finset(A))
    if len(elems) < 2:
        return -1
    first = c(elems[0], elems[1])
    for n, m in itertools.combinations(elems, 2):
        if c(n, m) != first:
            return None
    return first


def is_homogeneous(c: Coloring, A: Iterable[int], color: int | None = None) -> bool:
    h = homogeneous_color(c, A)
    if h is None:
        return False
    return color is None or h == -1 or h == color


def partition_coloring(scheme) -> Coloring:
    """Color 0 exactly on pairs inside one block."""
    return Coloring(lambda n, m: 0 if scheme.block_of(n) == scheme.block_of(m) else 1,
                    kind="partition", name=f"partition[{scheme.name}]")


# ---------------------------------------------------------------------------
# Stern-Brocot enumeration and the Sierpinski coloring


@lru_cache(maxsize=1 << 16)
def stern_brocot(i: int) -> Fraction:
    """The ``i``-th rational of [0, 1] in breadth-first Stern-Brocot order.

    ``r_0 = 0``, ``r_1 = 1``; level ``L >= 1`` holds indices
    ``2^(L-1) + 1 .. 2^L`` and lists the depth-``L`` nodes of the tree below
    ``1/2`` from left to right: ``1/2 | 1/3, 2/3 | 1/4, 2/5, 3/5, 3/4 | ...``.
    """
    if i < 0:
        raise PreconditionError("index must be a natural number")
    if i < 2:
        return Fraction(i)
    level = (i - 1).bit_length()
    pos = i - (1 << (level - 1)) - 1
    lo_p, lo_q, hi_p, hi_q = 0, 1, 1, 1
    mid_p, mid_q = 1, 2
    for bit in range(level - 2, -1, -1):
        if pos >> bit & 1:
            lo_p, lo_q = mid_p, mid_q
        else:
            hi_p, hi_q = mid_p, mid_q
        mid_p, mid_q = lo_p + hi_p, lo_q + hi_q
    return Fraction(mid_p, mid_q)


def stern_brocot_index(r) -> int:
    """Inverse of :func:`stern_brocot`."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise PreconditionError("only rationals in [0, 1] are enumerated")
    if r == 0:
        return 0
    if r == 1:
        return 1
    lo, hi = Fraction(0), Fraction(1)
    mid = Fraction(1, 2)
    path = 0
    depth = 1
    while mid != r:
        path <<= 1
        if r > mid:
            path |= 1
            lo = mid
        else:
            hi = mid
        mid = Fraction(lo.numerator + hi.numerator, lo.denominator + hi.denominator)
        depth += 1
    return (1 << (depth - 1)) + 1 + path


def sierpinski_coloring(enumeration: Callable[[int], Fraction] = stern_brocot) -> Coloring:
    """For ``n < m``: color 0 iff ``r_n < r_m``. Homogeneous sets are monotone runs."""
    return Coloring(lambda n, m: 0 if enumeration(n) < enumeration(m) else 1, kind="sierpinski")


def sierpinski_favoring_domain(enumeration: Callable[[int], Fraction] = stern_brocot) -> SetStream:
    """Indices of ``X = union of X_j``, each ``X_j`` increasing inside ``(j/(j+1), (j+1)/(j+2))``.

    ``X_j`` is read greedily: an index joins when its rational lies in the
    ``j``-th interval above the last member taken there. Decreasing runs in
    ``X`` must move to lower intervals, so they stay finite.
    """

    def gen():
        last: dict[int, Fraction] = {}
        n = 0
        while True:
            r = enumeration(n)
            if 0 < r < 1:
                # the j with j/(j+1) < r < (j+1)/(j+2), i.e. j < r/(1-r) < j+1
                t = r / (1 - r)
                j = t.numerator // t.denominator
                if t != j and (j not in last or r > last[j]):
                    last[j] = r
                    yield n
            n += 1

    return SetStream(gen(), name="sierpinski_X")


def sierpinski_interval(r: Fraction) -> int | None:
    """The ``j`` with ``r`` strictly inside ``(j/(j+1), (j+1)/(j+2))``."""
    if not 0 < r < 1:
        return None
    t = r / (1 - r)
    j = t.numerator // t.denominator
    return None if t == j else j


# ---------------------------------------------------------------------------
# Extraction of homogeneous sets


@dataclass(frozen=True)
class RamseyResult:
    color: int
    elements: tuple[int, ...]
    scanned: int


def ramsey_extract(c: Coloring, stream: SetStream, L: int, scan_budget: int | None = None) -> RamseyResult:
    """A ``c``-homogeneous ``L``-subset of the stream by majority-color pivoting.

    Scan a prefix; take its least element as pivot, keep the larger of its
    two color classes (ties keep color 0) and repeat. Pivots sharing a
    recorded color form a homogeneous set. The output is re-checked pair by
    pair before it is returned.
    """
    if L < 2:
        raise PreconditionError("L must be at least 2")
    budget = default_budget() if scan_budget is None else scan_budget
    cands = stream.prefix(budget)
    scanned = len(cands)
    by_color: dict[int, list[int]] = {0: [], 1: []}
    while cands:
        pivot, rest = cands[0], cands[1:]
        classes: dict[int, list[int]] = {0: [], 1: []}
        for m in rest:
            classes[c(pivot, m)].append(m)
        color = 0 if len(classes[0]) >= len(classes[1]) else 1
        by_color[color].append(pivot)
        if len(by_color[color]) == L:
            out = tuple(by_color[color])
            if not is_homogeneous(c, out, color):  # pragma: no cover - guarded invariant
                raise AssertionError("pivot set failed the homogeneity re-check")
            return RamseyResult(color, out, scanned)
        cands = classes[color]
    best_color = max((0, 1), key=lambda i: (len(by_color[i]), -i))
    raise BudgetExhausted(
        f"only {len(by_color[best_color])} homogeneous points from a prefix of {scanned}",
        progress=RamseyResult(best_color, tuple(by_color[best_color]), scanned),
    )


def hom_cover_number(A: Iterable[int], c: Coloring, cap: int = HOM_COVER_CAP) -> int:
    """Fewest ``c``-homogeneous sets covering ``A`` (exact branch and bound)."""
    A = finset(A)
    if len(A) > cap:
        raise CapExceeded(f"homogeneous cover over {len(A)} points exceeds cap {cap}")
    return min_cover(A, lambda S: is_homogeneous(c, S), cap)[0]


def hom_cover_submeasure(c: Coloring, cap: int = HOM_COVER_CAP) -> CoverNumber:
    """The cover-number submeasure of the ideal generated by ``c``-homogeneous sets."""
    return CoverNumber(lambda S: is_homogeneous(c, S), cap=min(cap, COVER_CAP), name=f"hom[{c.name}]")


def favors_witness(c: Coloring, i: int, n: int, avoid: Iterable[int] = (), budget: int | None = None,
                   domain: SetStream | None = None, node_limit: int = 1_000_000) -> frozenset[int]:
    """A ``(1 - i)``-homogeneous ``n``-set disjoint from ``avoid``.

    Looks among the first ``budget`` allowed elements of ``domain`` (default
    N) and returns the lexicographically least such set.
    """
    if i not in (0, 1):
        raise PreconditionError("color must be 0 or 1")
    if n <= 0:
        return frozenset()
    budget = default_budget() if budget is None else budget
    avoid = set(avoid)
    domain = domain if domain is not None else SetStream.naturals()
    pool = []
    idx = 0
    while len(pool) < budget:
        m = domain.element(idx)
        if m is None:
            break
        if m not in avoid:
            pool.append(m)
        idx += 1
    want = 1 - i
    nodes = 0

    def extend(chosen: list[int], start: int):
        nonlocal nodes
        if len(chosen) == n:
            return list(chosen)
        for j in range(start, len(pool) - (n - len(chosen)) + 1):
            nodes += 1
            if nodes > node_limit:
                raise BudgetExhausted(f"search exceeded {node_limit} nodes", progress=list(chosen))
            m = pool[j]
            if all(c(h, m) == want for h in chosen):
                chosen.append(m)
                found = extend(chosen, j + 1)
                if found:
                    return found
                chosen.pop()
        return None

    found = extend([], 0)
    if found is None:
        raise BudgetExhausted(f"no {want}-homogeneous {n}-set among {len(pool)} allowed elements")
    return frozenset(found)


# ---------------------------------------------------------------------------
# Dyadic level partitions of vector sequences


def dyadic_level(v: Fraction) -> int:
    """The ``i`` with ``2^-(i+1) <= v < 2^-i``; the value 1 goes to level 0."""
    if not 0 < v <= 1:
        raise PreconditionError(f"value {v} outside (0, 1]")
    if v == 1:
        return 0
    p, q = v.numerator, v.denominator
    # smallest e with 2^e * p >= q, then i = e - 1
    e = max(0, q.bit_length() - p.bit_length() - 1)
    while (p << e) < q:
        e += 1
    return e - 1


@dataclass(frozen=True)
class LevelPartition:
    """Coordinates of ``x_n`` sorted into dyadic levels.

    ``levels[i]`` is ``A^n_i``; every coordinate outside ``support`` forms
    ``A^n_inf``.
    """

    index: int
    levels: Mapping[int, frozenset[int]]
    support: frozenset[int]

    @property
    def level_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.levels))

    def level_of(self, k: int) -> int | None:
        """Level of coordinate ``k``; ``None`` stands for the infinite level."""
        for i, block in self.levels.items():
            if k in block:
                return i
        return None


def level_partition(x: VectorSeq, n: int) -> LevelPartition:
    vec = x.vector(n)
    levels: dict[int, set[int]] = {}
    for k, v in vec.items():
        if v < 0:
            raise PreconditionError(f"x_{n}({k}) = {v} is negative; apply abs_transform first")
        if v > 1:
            raise PreconditionError(f"x_{n}({k}) = {v} exceeds 1; scale the sequence first")
        levels.setdefault(dyadic_level(v), set()).add(k)
    return LevelPartition(n, {i: frozenset(s) for i, s in sorted(levels.items())}, frozenset(vec))


def _level_map(x: VectorSeq, n: int) -> dict[int, int]:
    return {k: dyadic_level(v) for k, v in x.vector(n).items()}


def c0like_coloring(x: VectorSeq) -> Coloring:
    """For ``n < m`` color 1 iff each coordinate at level ``i`` in ``x_n`` is zero or deeper than ``i`` in ``x_m``."""
    cache: dict[int, dict[int, int]] = {}

    def levels(n):
        lv = cache.get(n)
        if lv is None:
            level_partition(x, n)  # validates sign and scale
            lv = cache[n] = _level_map(x, n)
        return lv

    def rule(n, m):
        ln, lm = levels(n), levels(m)
        for k, i in ln.items():
            j = lm.get(k)
            if j is not None and j <= i:
                return 0
        return 1

    return Coloring(rule, kind="c0like")


def level_partitions(x: VectorSeq) -> Callable[[int], dict[int, frozenset[int]]]:
    """``n -> {i: A^n_i}`` for use with :func:`eventually_disjoint_extract`."""
    return lambda n: dict(level_partition(x, n).levels)


# ---------------------------------------------------------------------------
# Eventually disjoint subsequences


def check_eventually_disjoint(partitions, A: Iterable[int], p: int) -> list[tuple[int, int, int]]:
    """Triples ``(n, m, i)`` with ``i > p`` and ``B^n_i & B^m_i`` nonempty."""
    A = sorted(A)
    blocks = {n: {i: frozenset(b) for i, b in partitions(n).items() if b} for n in A}
    bad = []
    for n, m in itertools.combinations(A, 2):
        for i, b in blocks[n].items():
            if i > p and b & blocks[m].get(i, frozenset()):
                bad.append((n, m, i))
    return bad


def eventually_disjoint_extract(partitions: Callable[[int], Mapping[int, Iterable[int]]], l: int,
                                target_len: int, budget: int | None = None,
                                indices: Iterable[int] | None = None) -> tuple[tuple[int, ...], int]:
    """Indices ``A`` and a threshold ``p`` with ``B^n_i & B^m_i`` empty for ``i > p``, ``n != m`` in ``A``.

    Follows the induction on ``l``, the bound on the number of nonempty
    blocks: either enough partitions have pairwise disjoint level sets
    (then ``p = 0``), or many share their least level ``i*``, which is
    dropped before recursing with ``p = max(p', i*)``.
    """
    budget = default_budget() if budget is None else budget
    cands = list(itertools.islice(indices if indices is not None else itertools.count(), budget))
    levels: dict[int, frozenset[int]] = {}
    for n in cands:
        L = frozenset(i for i, b in partitions(n).items() if b)
        if len(L) > l:
            raise PreconditionError(f"partition {n} has {len(L)} nonempty blocks, more than l = {l}")
        levels[n] = L

    def solve(pool: list[int], removed: dict[int, frozenset[int]], depth: int):
        live = {n: levels[n] - removed.get(n, frozenset()) for n in pool}
        # pairwise disjoint level sets: no index is shared at all
        chain, used = [], set()
        for n in pool:
            if not live[n] & used:
                chain.append(n)
                used |= live[n]
                if len(chain) == target_len:
                    return chain, 0
        if depth == 0:
            return None
        mins = Counter(min(live[n]) for n in pool if live[n])
        if not mins:
            return None
        # the most frequent least level stands in for the infinite constant class
        i_star, count = min(mins.items(), key=lambda t: (-t[1], t[0]))
        if count < target_len:
            return None
        sub = [n for n in pool if live[n] and min(live[n]) == i_star]
        new_removed = dict(removed)
        for n in sub:
            new_removed[n] = removed.get(n, frozenset()) | {i_star}
        got = solve(sub, new_removed, depth - 1)
        if got is None:
            return None
        return got[0][:target_len], max(got[1], i_star)

    result = solve(cands, {}, l)
    if result is None:
        raise BudgetExhausted(f"no eventually disjoint family of size {target_len} among {len(cands)} indices")
    A, p = tuple(result[0]), result[1]
    bad = check_eventually_disjoint(partitions, A, p)
    if bad:  # pragma: no cover - guarded invariant
        raise AssertionError(f"eventual disjointness fails at {bad[:3]}")
    return A, p


# ---------------------------------------------------------------------------
# The Schreier barrier coloring


@dataclass(frozen=True)
class SchreierElement:
    """``{q, n_1, ..., n_q}`` with ``q < n_1 < ... < n_q``."""

    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(self.elements)))
        if not els or len(els) != els[0] + 1:
            raise PreconditionError(f"{els} is not in the Schreier barrier (size must be min + 1)")
        object.__setattr__(self, "elements", els)

    @property
    def q(self) -> int:
        return self.elements[0]

    @property
    def tail(self) -> tuple[int, ...]:
        return self.elements[1:]


def schreier_c3(s: SchreierElement | Iterable[int], x: VectorSeq, p: int) -> int:
    """1 iff one coordinate ``k`` has ``x_{n_j}(k) >= 2^-(p+1)`` for every ``j``."""
    if not isinstance(s, SchreierElement):
        s = SchreierElement(tuple(s))
    threshold = Fraction(1, 2 ** (p + 1))
    common = None
    for n in s.tail:
        big = {k for k, v in x.vector(n).items() if v >= threshold}
        common = big if common is None else common & big
        if not common:
            return 0
    return 1

"""The non-pathological hull, the pathology degree and integer-valued criteria.

``hat_phi(spec, A)`` is the largest total mass on ``A`` of a measure
dominated by the submeasure. Since such a measure may be restricted to
``A``, it is the optimum of the packing LP

    maximize sum_{i in A} w_i  s.t.  sum_{i in B} w_i <= phi(B) for nonempty B in A,

which :mod:`submeasures.lp` solves exactly. Every answer is re-verified
against all ``2^|A| - 1`` constraints with an exact dual certificate.
"""
from __future__ import annotations

import enum
import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .core import PointMeasure, Submeasure, evaluate, finset
from .errors import BudgetExhausted, CapExceeded, PreconditionError
from .extended import INF, ExtendedRational, format_ext
from .lp import solve_packing_lp, verify_packing_certificate

HULL_CAP = 14


class EvalCache:
    """Memoized evaluations of one submeasure."""

    def __init__(self, spec: Submeasure):
        self.spec = spec
        self._memo: dict[frozenset[int], ExtendedRational] = {}

    def __call__(self, F) -> ExtendedRational:
        F = finset(F)
        v = self._memo.get(F)
        if v is None:
            v = self._memo[F] = evaluate(self.spec, F)
        return v


@dataclass(frozen=True)
class HullResult:
    """``hat_phi(A)`` with a dominated measure attaining it and a dual proof.

    ``dual`` maps subsets ``B`` of ``A`` to multipliers ``y_B >= 0`` with
    ``sum_{B containing i} y_B >= 1`` for every ``i`` and
    ``sum_B y_B phi(B) = value``.
    """

    A: tuple[int, ...]
    value: Fraction
    witness: PointMeasure
    dual: dict[tuple[int, ...], Fraction]
    constraints: int  # rows handed to the solver after pruning


def hat_phi(spec: Submeasure, A: Iterable[int], cap: int = HULL_CAP, *, prune: bool = True,
            cache: EvalCache | None = None) -> HullResult:
    """Exact value of the hull on the finite set ``A``."""
    ev = cache if cache is not None else EvalCache(spec)
    elems = sorted(finset(A))
    a = len(elems)
    if a > cap:
        raise CapExceeded(f"hull LP over {a} points exceeds cap {cap}")
    if not elems:
        return HullResult((), Fraction(0), PointMeasure({}), {}, 0)
    if ev(elems) is INF:
        raise PreconditionError(f"phi({elems}) is infinite; the hull LP needs a finite value")

    full = 1 << a
    vals: list = [Fraction(0)] * full
    for mask in range(1, full):
        vals[mask] = ev(elems[j] for j in range(a) if mask >> j & 1)

    rows, rhs = [], []
    for mask in range(1, full):
        v = vals[mask]
        if v is INF:
            continue  # no constraint
        if prune and mask != full - 1:
            implied = False
            for j in range(a):
                bit = 1 << j
                if not mask & bit and vals[mask | bit] is not INF and vals[mask | bit] <= v:
                    implied = True
                    break
            if implied:
                continue
        rows.append(mask)
        rhs.append(v)

    sol = solve_packing_lp(rows, rhs, a)

    # independent check against every nonempty subset, not only the kept rows
    all_rows = [m for m in range(1, full) if vals[m] is not INF]
    index = {m: i for i, m in enumerate(all_rows)}
    dual_all = {index[rows[r]]: y for r, y in sol.dual.items()}
    value = verify_packing_certificate(all_rows, [vals[m] for m in all_rows], a, sol.primal, dual_all)

    witness = PointMeasure({elems[j]: sol.primal[j] for j in range(a)})
    dual = {
        tuple(elems[j] for j in range(a) if rows[r] >> j & 1): y for r, y in sorted(sol.dual.items())
    }
    return HullResult(tuple(elems), value, witness, dual, len(rows))


@dataclass
class PathologyReport:
    degree: Fraction
    witness_set: tuple[int, ...]
    witness_value: ExtendedRational
    witness_hull: Fraction
    witness_measure: PointMeasure
    universe: int
    max_size: int
    scanned: int
    skipped_infinite: int = 0
    skipped_null: int = 0
    empty_family: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def family(self) -> str:
        return f"nonempty subsets of {{0..{self.universe - 1}}} with at most {self.max_size} elements"

    def to_json(self) -> dict:
        return {
            "degree": format_ext(self.degree),
            "witness_set": list(self.witness_set),
            "witness_value": format_ext(self.witness_value),
            "witness_hull": format_ext(self.witness_hull),
            "witness_measure": {str(n): format_ext(w) for n, w in self.witness_measure.weights.items()},
            "family": self.family,
            "scanned": self.scanned,
            "skipped_infinite": self.skipped_infinite,
            "skipped_null": self.skipped_null,
            "empty_family": self.empty_family,
            "notes": list(self.notes),
        }


def pathology_degree(spec: Submeasure, universe: int, max_size: int, cap: int = HULL_CAP) -> PathologyReport:
    """Exact ``max phi(A) / hat_phi(A)`` over the scanned family.

    Sets of infinite value and sets with null hull are left out. Ties go to
    the lexicographically least sorted tuple. An empty family yields degree
    1 with ``empty_family`` set.
    """
    if max_size > cap:
        raise CapExceeded(f"max_size {max_size} exceeds hull cap {cap}")
    if spec.universe is not None and universe > spec.universe:
        raise PreconditionError(f"universe {universe} exceeds the spec's universe {spec.universe}")
    ev = EvalCache(spec)
    best = None  # (ratio, tuple, value, HullResult)
    scanned = skipped_inf = skipped_null = 0
    for size in range(1, min(max_size, universe) + 1):
        for A in itertools.combinations(range(universe), size):
            scanned += 1
            v = ev(A)
            if v is INF:
                skipped_inf += 1
                continue
            h = hat_phi(spec, A, cap=cap, cache=ev)
            if h.value == 0:
                skipped_null += 1
                continue
            ratio = v / h.value
            if best is None or ratio > best[0] or (ratio == best[0] and A < best[1]):
                best = (ratio, A, v, h)
    if best is None:
        return PathologyReport(
            Fraction(1), (), Fraction(0), Fraction(0), PointMeasure({}), universe, max_size,
            scanned, skipped_inf, skipped_null, empty_family=True,
            notes=["no set with finite value and nonzero hull; degree 1 by convention"],
        )
    ratio, A, v, h = best
    return PathologyReport(Fraction(ratio), A, v, h.value, h.witness, universe, max_size,
                           scanned, skipped_inf, skipped_null)


class Verdict(enum.Enum):
    FIRED = "FIRED"
    NOT_FIRED = "NOT_FIRED"
    INAPPLICABLE = "INAPPLICABLE"


@dataclass(frozen=True)
class CriterionResult:
    verdict: Verdict
    reason: str
    value: ExtendedRational | None = None
    drops: dict[int, ExtendedRational] | None = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "value": None if self.value is None else format_ext(self.value),
            "drops": None if self.drops is None else {str(k): format_ext(v) for k, v in self.drops.items()},
        }


def _is_integer(v) -> bool:
    return v is not INF and Fraction(v).denominator == 1


def integer_pathology_criterion(spec: Submeasure, A: Iterable[int]) -> CriterionResult:
    """Fires when ``|A| >= 2``, every one-point removal lowers the value, and ``phi(A) < |A|``.

    For an integer-valued submeasure a firing proves pathology: the hull
    of ``A`` is then strictly below ``phi(A)``.
    """
    A = finset(A)
    v = evaluate(spec, A)
    drops = {x: evaluate(spec, A - {x}) for x in sorted(A)}
    if not _is_integer(v) or not all(_is_integer(d) for d in drops.values()):
        return CriterionResult(Verdict.INAPPLICABLE, "non-integer or infinite value on the tested sets", v, drops)
    if len(A) < 2:
        return CriterionResult(Verdict.NOT_FIRED, "needs at least two points", v, drops)
    if any(d >= v for d in drops.values()):
        return CriterionResult(Verdict.NOT_FIRED, "some one-point removal keeps the value", v, drops)
    if v >= len(A):
        return CriterionResult(Verdict.NOT_FIRED, f"phi(A) = {v} is not below |A| = {len(A)}", v, drops)
    return CriterionResult(Verdict.FIRED, f"phi(A) = {v} < |A| = {len(A)} and every removal drops", v, drops)


def minimal_witness(spec: Submeasure, k: int, budget: int = 100_000,
                    domain: Iterable[int] | None = None, max_size: int = 12) -> frozenset[int]:
    """A set ``B`` with ``phi(B) = k`` whose proper subsets all have value below ``k``.

    Searches subsets of ``domain`` by increasing size, then lexicographically,
    so the answer is deterministic. ``budget`` counts evaluations.
    """
    if k < 0 or int(k) != k:
        raise PreconditionError("k must be a natural number")
    if k == 0:
        return frozenset()
    if domain is None:
        if spec.universe is None:
            raise PreconditionError("give a finite domain for a spec on all of N")
        domain = range(spec.universe)
    dom = sorted(set(domain))
    ev = EvalCache(spec)
    spent = 0
    for size in range(1, min(max_size, len(dom)) + 1):
        for B in itertools.combinations(dom, size):
            spent += 1
            if spent > budget:
                raise BudgetExhausted(f"no minimal set of value {k} within {budget} evaluations",
                                      progress={"size_reached": size})
            if ev(B) != k:
                continue
            proper_ok = all(
                ev(C) < k for r in range(size) for C in itertools.combinations(B, r)
            )
            if proper_ok:
                return frozenset(B)
    raise BudgetExhausted(f"no minimal set of value {k} among subsets of size <= {max_size}",
                          progress={"size_reached": max_size})


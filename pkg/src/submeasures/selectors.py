"""Selectors that pick finite prefixes of infinite sets inside ``Fin(phi)``.

Every selector returns a :class:`SelectorCertificate`: the chosen indices,
a claimed bound ``M`` and a ledger of exact inequalities. The last ledger
entry is always ``phi(B) <= M`` computed directly; since a submeasure is
monotone this bounds ``phi(F)`` for every ``F`` inside ``B``.
"""
from __future__ import annotations

import itertools
import operator
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .colorings import (
    c0like_coloring,
    check_eventually_disjoint,
    dyadic_level,
    level_partition,
    level_partitions,
)
from .core import Submeasure, VectorSeq, default_budget, evaluate, finset
from .errors import BudgetExhausted, CertificateError, PreconditionError, SelectorFailure
from .extended import INF, ExtendedRational, as_ext, format_ext
from .ideals import Status, has_property_A
from .streams import SetStream

_OPS = {"<": operator.lt, "<=": operator.le, "==": operator.eq, ">=": operator.ge, ">": operator.gt}


@dataclass(frozen=True)
class Inequality:
    label: str
    lhs: ExtendedRational
    op: str
    rhs: ExtendedRational

    @property
    def holds(self) -> bool:
        return _OPS[self.op](self.lhs, self.rhs)

    def to_json(self) -> dict:
        return {"label": self.label, "lhs": format_ext(self.lhs), "op": self.op,
                "rhs": format_ext(self.rhs), "holds": self.holds}


@dataclass
class SelectorCertificate:
    selector: str
    indices: tuple[int, ...]
    bound: ExtendedRational
    evidence: list[Inequality]
    verified: bool
    mode: str = "certified"  # or "heuristic" when a hypothesis was only scanned for
    route: str | None = None
    notes: list[str] = field(default_factory=list)

    def failures(self) -> list[Inequality]:
        return [q for q in self.evidence if not q.holds]

    def to_json(self) -> dict:
        return {
            "selector": self.selector,
            "indices": list(self.indices),
            "bound": format_ext(self.bound),
            "verified": self.verified,
            "mode": self.mode,
            "route": self.route,
            "evidence": [q.to_json() for q in self.evidence],
            "notes": list(self.notes),
        }


def _certify(selector: str, spec: Submeasure, indices: Sequence[int], bound, evidence: list[Inequality],
             mode: str = "certified", route: str | None = None, notes: Iterable[str] = ()) -> SelectorCertificate:
    bound = as_ext(bound)
    value = evaluate(spec, indices)
    evidence = list(evidence) + [Inequality("value of the selected set", value, "<=", bound)]
    verified = all(q.holds for q in evidence)
    return SelectorCertificate(selector, tuple(indices), bound, evidence, verified, mode, route, list(notes))


def verify_certificate(spec: Submeasure, cert: SelectorCertificate) -> bool:
    """Recompute the value of the selected set and every ledger entry."""
    if any(not q.holds for q in cert.evidence):
        return False
    return evaluate(spec, cert.indices) <= cert.bound


def _point_value_fn(spec: Submeasure | None, stream: SetStream | None) -> Callable[[int], Fraction]:
    if isinstance(spec, VectorSeq):
        return spec.norm
    if spec is not None and getattr(spec, "point_value", None) is not None:
        return spec.point_value
    if stream is not None and stream.point_value is not None:
        return stream.point_value
    if spec is not None:
        return spec.singleton
    raise PreconditionError("no way to compute point values: pass a spec or a stream with point_value")


# ---------------------------------------------------------------------------
# Reductions to finitely supported sequences


def _band(v: Fraction, norm: Fraction) -> int:
    """The ``i`` with ``norm / 2^(i+1) < v <= norm / 2^i``."""
    r = v / norm
    p, q = r.numerator, r.denominator
    i = 0
    while (p << (i + 1)) <= q:
        i += 1
    return i


def quantize_c00(x: VectorSeq) -> VectorSeq:
    """Round each entry of ``x_n`` up to ``||x_n|| / 2^i`` on its band, for bands ``i < n``.

    Entries at most ``||x_n|| / 2^n`` become 0, so ``y_n`` takes at most
    ``n + 1`` values and ``y_0 = 0``. The zeroed entries move by at most
    ``||x_n|| / 2^n``, but rounding inside band ``i`` can move an entry by
    up to ``||x_n|| / 2^(i+1)``, so for ``n >= 1`` the error ``||x_n - y_n||``
    is only bounded by ``||x_n|| / 2``. Use :func:`quantize_grid` when a summable error is
    needed.
    """

    def quantize(n: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        if any(v < 0 for v in vec.values()):
            raise PreconditionError(f"x_{n} has negative entries; apply abs_transform first")
        norm = max(vec.values(), default=Fraction(0))
        out = {}
        for k, v in vec.items():
            i = _band(v, norm)
            if i < n:
                out[k] = norm / 2**i
        return out

    return x.map(quantize, nonneg=True, name=f"quantized({x.name})")


def quantize_grid(x: VectorSeq) -> VectorSeq:
    """Round each entry of ``x_n`` down to the grid ``||x_n|| j / 2^n``.

    ``y_n`` takes at most ``2^n + 1`` values, ``||y_n|| = ||x_n||`` and
    ``||x_n - y_n|| < ||x_n|| / 2^n``, so the errors are summable whenever
    the norms are bounded.
    """

    def quantize(n: int, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        if any(v < 0 for v in vec.values()):
            raise PreconditionError(f"x_{n} has negative entries; apply abs_transform first")
        norm = max(vec.values(), default=Fraction(0))
        if not norm:
            return {}
        step = norm / 2**n
        return {k: (v // step) * step for k, v in vec.items()}

    return x.map(quantize, nonneg=True, name=f"grid({x.name})")


@dataclass(frozen=True)
class C0Sequence:
    """A sequence in ``c0`` given coordinate-wise.

    ``modulus(n, eps)`` returns ``K`` with ``|x_n(k)| < eps`` for all ``k > K``.
    """

    coord: Callable[[int, int], object]
    modulus: Callable[[int, Fraction], int] | None = None
    length: int | None = None
    name: str = "c0_sequence"


def truncate_to_c00(x: C0Sequence | VectorSeq, modulus: Callable[[int, Fraction], int] | None = None) -> VectorSeq:
    """Cut ``x_n`` after ``k_n = modulus(n, 2^-n)``, so ``||x_n - y_n|| <= 2^-n``."""
    if isinstance(x, VectorSeq):
        return x  # already finitely supported
    modulus = modulus if modulus is not None else x.modulus
    if modulus is None:
        raise PreconditionError("truncation needs a tail modulus for each vector")

    def vec(n: int) -> dict[int, object]:
        k_n = modulus(n, Fraction(1, 2**n))
        if k_n < 0:
            raise PreconditionError(f"modulus returned {k_n} for x_{n}")
        return {k: x.coord(n, k) for k in range(k_n + 1)}

    return VectorSeq(vec, length=x.length, name=f"truncated({x.name})")


def wstar_nullify(x: VectorSeq, sets: Iterable[Iterable[int]]) -> VectorSeq:
    """``y_n(j) = mu_j({n})`` where ``mu_j`` is a measure attaining ``phi_x`` on the ``j``-th set.

    ``mu_j`` is the row of the coordinate with the largest column sum over
    ``A_j``, restricted to ``A_j``. Then ``phi_y(A_j) = phi_x(A_j)`` for each
    listed set, ``phi_y <= phi_x`` everywhere, and column ``j`` of ``y`` is
    supported on the finite set ``A_j``. Listing singletons makes
    ``||y_n|| = ||x_n||``.
    """
    rows: dict[int, dict[int, Fraction]] = defaultdict(dict)
    for j, A in enumerate(sets):
        A = sorted(finset(A))
        col: dict[int, Fraction] = defaultdict(Fraction)
        for n in A:
            for k, v in x.vector(n).items():
                if v < 0:
                    raise PreconditionError(f"x_{n} has negative entries; apply abs_transform first")
                col[k] += v
        if not col:
            continue
        best = max(col.values())
        k_star = min(k for k, s in col.items() if s == best)
        for n in A:
            v = x.coord(n, k_star)
            if v:
                rows[n][j] = v
    length = x.length
    return VectorSeq(lambda n: rows.get(n, {}), length=length, nonneg=True, name=f"wstar({x.name})")


# ---------------------------------------------------------------------------
# Small norms and property A


def _sparse_picks(stream: SetStream, L: int, value: Callable[[int], Fraction], budget: int):
    """Indices ``b_0 < b_1 < ...`` of the stream with ``value(b_k) <= 2^-k``.

    Returns ``(picks, pos, failed_stage_scan)``; the last item lists the
    elements scanned in vain at the stage where the budget ran out.
    """
    picks: list[int] = []
    pos = 0
    for k in range(L):
        tol = Fraction(1, 2**k)
        scanned: list[int] = []
        while True:
            if len(scanned) >= budget:
                return picks, pos, scanned
            m = stream.element(pos)
            if m is None:
                return picks, pos, scanned
            pos += 1
            if value(m) <= tol:
                picks.append(m)
                break
            scanned.append(m)
    return picks, pos, None


def _sparse_evidence(picks: Sequence[int], value: Callable[[int], Fraction]) -> list[Inequality]:
    ev = [Inequality(f"point value of pick {k} (index {m})", value(m), "<=", Fraction(1, 2**k))
          for k, m in enumerate(picks)]
    total = sum((value(m) for m in picks), Fraction(0))
    ev.append(Inequality("sum of point values of the picks", total, "<=", Fraction(2)))
    return ev


def small_norm_selector(stream: SetStream, L: int, *, spec: Submeasure | None = None,
                        value: Callable[[int], Fraction] | None = None,
                        budget: int | None = None) -> SelectorCertificate:
    """Picks ``b_k`` with point value at most ``2^-k``; certificate ``M = 2``.

    ``phi(B)`` is at most the sum of the point values by subadditivity,
    which is below ``sum_k 2^-k = 2``.
    """
    if L < 1:
        raise PreconditionError("L must be positive")
    budget = default_budget() if budget is None else budget
    value = value or _point_value_fn(spec, stream)
    picks, _, stuck = _sparse_picks(stream, L, value, budget)
    if stuck is not None:
        raise BudgetExhausted(
            f"no element with point value <= 2^-{len(picks)} among {len(stuck)} scanned",
            progress={"picks": picks, "stage": len(picks)},
        )
    if spec is None:
        raise PreconditionError("a spec is needed to evaluate the selected set")
    return _certify("small-norm", spec, picks, 2, _sparse_evidence(picks, value))


def property_A_selector(spec: Submeasure, stream: SetStream, L: int, *, oracle=None,
                        budget: int | None = None) -> SelectorCertificate:
    """Sparse picks when the stream keeps reaching small point values, else the trapped branch.

    If stage ``k`` scans ``budget`` elements without finding a point value
    ``<= 2^-k``, all of them lie in the level set ``{n : phi{n} > 2^-k}``,
    whose value the level-set oracle bounds.
    """
    oracle = oracle if oracle is not None else getattr(spec, "level_sets", None)
    verdict = has_property_A(spec, oracle=oracle)
    if verdict.status is not Status.HOLDS:
        raise PreconditionError(f"property A not established: {verdict.status.value} ({verdict.reason})")
    if L < 1:
        raise PreconditionError("L must be positive")
    budget = default_budget() if budget is None else budget
    value = _point_value_fn(spec, stream)
    picks, _, stuck = _sparse_picks(stream, L, value, budget)
    if stuck is None:
        return _certify("property-a", spec, picks, 2, _sparse_evidence(picks, value), route="sparse")
    stage = len(picks)
    eps = Fraction(1, 2**stage)
    if len(stuck) < min(L, budget) or len(stuck) < L:
        raise BudgetExhausted(
            f"stage {stage}: only {len(stuck)} elements scanned before the stream or budget ended",
            progress={"picks": picks, "stage": stage},
        )
    level = oracle.level_set(eps)
    chosen = stuck[:L]
    ev = [Inequality(f"point value of {m}", value(m), ">", eps) for m in chosen]
    outside = [m for m in chosen if not level.member(m)]
    if outside:  # pragma: no cover - the oracle disagrees with the point values
        raise CertificateError(f"level-set oracle rejects {outside[:3]} although their values exceed {eps}")
    ev.append(Inequality(f"oracle value of the level set above {format_ext(eps)}", level.value, "<", INF))
    return _certify("property-a", spec, chosen, level.value, ev, route="trapped",
                    notes=[f"stage {stage} found no point value <= {format_ext(eps)} in {len(stuck)} elements"])


# ---------------------------------------------------------------------------
# Coloring selectors


def c0like_selector(x: VectorSeq, stream: SetStream, L: int, budget: int | None = None, *,
                    witness_bound: Callable[[int], int] | None = None) -> SelectorCertificate:
    """A 1-homogeneous ``L``-set for the level coloring, with ``M = 2``.

    Along a 1-homogeneous set the level of each coordinate strictly
    increases, so each column sum is below ``sum_i 2^-i = 2``.

    Each step takes the least later stream element of color 1 with every
    member chosen so far; ``budget`` bounds the candidates tested per step.
    ``witness_bound(n)``, when given, promises that every ``m >=
    witness_bound(n)`` extends a homogeneous set with maximum ``n``, and
    candidates below it are skipped untested.
    """
    if L < 1:
        raise PreconditionError("L must be positive")
    budget = default_budget() if budget is None else budget
    first = stream.element(0)
    if first is None:
        raise BudgetExhausted("empty stream")
    level_partition(x, first)  # validates sign and scale
    H = [first]
    # deepest level of each coordinate over H; a candidate must go strictly deeper
    ceiling: dict[int, int] = {k: dyadic_level(v) for k, v in x.vector(first).items()}
    pos = 1
    while len(H) < L:
        if witness_bound is not None:
            hit = stream.first_at_least(witness_bound(H[-1]), pos)
            if hit is None:
                raise BudgetExhausted("stream ended before the promised witness", progress={"homogeneous": H})
            pos = hit[0]
        found = None
        for _ in range(budget):
            m = stream.element(pos)
            pos += 1
            if m is None:
                break
            levels = level_partition(x, m)
            if all(ceiling.get(k, -1) < i for i, block in levels.levels.items() for k in block):
                found = m
                break
        if found is None:
            raise BudgetExhausted(
                f"no extension of a 1-homogeneous set of size {len(H)} within {budget} elements",
                progress={"homogeneous": H},
            )
        H.append(found)
        for k, v in x.vector(found).items():
            ceiling[k] = dyadic_level(v)
    if L == 1:
        return _certify("c0like", x, H, x.norm(first), [])
    # per coordinate: strictly increasing levels, column sum under the dyadic sum
    columns: dict[int, list[tuple[int, Fraction]]] = defaultdict(list)
    for n in H:
        for k, v in x.vector(n).items():
            columns[k].append((n, v))
    c = c0like_coloring(x)
    off = sum(1 for a, b in itertools.combinations(H, 2) if c(a, b) != 1)
    ev = [Inequality("pairs of the selected set with color 0", off, "==", 0)]
    for k in sorted(columns):
        entries = columns[k]
        levels = [dyadic_level(v) for _, v in entries]
        for a, b in zip(levels, levels[1:]):
            ev.append(Inequality(f"coordinate {k}: consecutive levels", a, "<", b))
        column_sum = sum((v for _, v in entries), Fraction(0))
        dyadic = sum((Fraction(1, 2**i) for i in levels), Fraction(0))
        ev.append(Inequality(f"coordinate {k}: column sum", column_sum, "<=", dyadic))
        ev.append(Inequality(f"coordinate {k}: dyadic bound", dyadic, "<=", 2))
    return _certify("c0like", x, H, 2, ev)


def schreier_selector(x: VectorSeq, p: int, stream: SetStream, L: int,
                      budget: int | None = None) -> SelectorCertificate:
    """A set whose Schreier subsets all have color 0 under ``c3``, with ``M = q + 2``.

    With ``q = min(H)``, color 0 everywhere means each coordinate has fewer
    than ``q`` entries ``>= 2^-(p+1)`` above ``q``. The remaining entries sit
    at distinct levels above ``p`` (eventual disjointness), so they add up
    to less than ``2^-p``.
    """
    if L < 1:
        raise PreconditionError("L must be positive")
    budget = default_budget() if budget is None else budget
    threshold = Fraction(1, 2 ** (p + 1))
    partitions = level_partitions(x)
    cands = stream.prefix(budget)
    blocking: dict | None = None
    for qi, q in enumerate(cands):
        if q == 0:
            continue  # {0} is a Schreier set of color 1
        H = [q]
        big: dict[int, int] = defaultdict(int)
        for m in cands[qi + 1:]:
            if len(H) == L:
                break
            partitions(m)  # validates scale and sign
            over = [k for k, v in x.vector(m).items() if v >= threshold and big[k] + 1 >= q]
            if over:
                if blocking is None:
                    blocking = {"q": q, "element": m, "coordinate": over[0]}
                continue
            for k, v in x.vector(m).items():
                if v >= threshold:
                    big[k] += 1
            H.append(m)
        if len(H) == L:
            break
    else:
        raise SelectorFailure(
            f"every candidate minimum met color-1 Schreier sets within {len(cands)} elements",
            report={"blocking": blocking, "scanned": len(cands)},
        )
    q = H[0]
    bad = check_eventually_disjoint(partitions, H, p)
    if bad:
        raise PreconditionError(f"level partitions are not eventually disjoint above {p}: {bad[:3]}")
    ev = [Inequality("same-index level blocks meeting above the threshold", len(bad), "==", 0)]
    columns: dict[int, list[tuple[int, Fraction]]] = defaultdict(list)
    for n in H:
        for k, v in x.vector(n).items():
            columns[k].append((n, v))
    for k in sorted(columns):
        large = [v for n, v in columns[k] if n != q and v >= threshold]
        small = [v for n, v in columns[k] if v < threshold]
        ev.append(Inequality(f"coordinate {k}: large entries above q", len(large), "<", q))
        ev.append(Inequality(f"coordinate {k}: small entries", sum(small, Fraction(0)), "<", Fraction(1, 2**p)))
        ev.append(Inequality(f"coordinate {k}: column sum", sum((v for _, v in columns[k]), Fraction(0)),
                             "<=", q + 2))
    return _certify("schreier", x, H, q + 2, ev, notes=[f"q = {q}, p = {p}"])


# ---------------------------------------------------------------------------
# Block selection in c0


def _head_norm(vec: dict[int, Fraction], n: int) -> Fraction:
    """``||S_n(x)||``, where ``S_n`` keeps coordinates ``k < n``."""
    return max((abs(v) for k, v in vec.items() if k < n), default=Fraction(0))


def _tail_norm(vec: dict[int, Fraction], n: int) -> Fraction:
    """``||x - S_n(x)||``."""
    return max((abs(v) for k, v in vec.items() if k >= n), default=Fraction(0))


@dataclass
class BPSelection:
    indices: tuple[int, ...]      # b_1 < b_2 < ...
    cuts: tuple[int, ...]         # n_1 < n_2 < ...
    blocks: list[dict[int, Fraction]]  # y_k = S_{n_k} x_{b_k} - S_{n_{k-1}} x_{b_k}
    alpha: Fraction

    def to_json(self) -> dict:
        return {
            "indices": list(self.indices),
            "cuts": list(self.cuts),
            "alpha": format_ext(self.alpha),
            "blocks": [{str(k): format_ext(v) for k, v in y.items()} for y in self.blocks],
        }


def bp_select(x: VectorSeq, stream: SetStream, alpha, L: int, *,
              moduli: Callable[[int, Fraction], int] | None = None,
              budget: int | None = None) -> tuple[BPSelection, SelectorCertificate]:
    """Block selection with tolerance ``alpha / 2^(k+3)`` at step ``k >= 1``.

    ``S_n`` keeps coordinates ``0..n-1``. Step ``k`` takes the least stream
    element ``b_k > b_{k-1}`` with ``||S_{n_{k-1}} x_{b_k}||`` under the
    tolerance, then the least cut ``n_k > n_{k-1}`` with
    ``||x_{b_k} - S_{n_k} x_{b_k}||`` under it. With ``moduli`` (a
    ``(coordinate, eps) -> N`` bound standing for the w*-null hypothesis) the
    search for ``b_k`` is guaranteed to stop; without it the run is
    heuristic and only scans ``budget`` elements per step.
    """
    alpha = as_ext(alpha)
    if alpha is INF or alpha <= 0:
        raise PreconditionError("alpha must be a positive rational")
    if L < 1:
        raise PreconditionError("L must be positive")
    budget = default_budget() if budget is None else budget
    moduli = moduli if moduli is not None else stream.modulus
    mode = "certified" if moduli is not None else "heuristic"

    def checked_norm(m: int) -> Fraction:
        nm = x.norm(m)
        if nm < alpha:
            raise PreconditionError(f"||x_{m}|| = {nm} is below alpha = {alpha}")
        return nm

    b: list[int] = []
    cuts: list[int] = []
    blocks: list[dict[int, Fraction]] = []
    ev: list[Inequality] = []
    pos = 0
    prev_cut = 0
    for k in range(1, L + 1):
        tol = alpha / 2 ** (k + 3)
        # choose b_k
        guarantee = None
        if moduli is not None and k > 1:
            guarantee = max(moduli(j, tol) for j in range(prev_cut)) if prev_cut else 0
        chosen = None
        for _ in range(budget):
            m = stream.element(pos)
            if m is None:
                break
            pos += 1
            checked_norm(m)
            head = _head_norm(x.vector(m), prev_cut)
            if k == 1 or head < tol:
                chosen = m
                break
            if guarantee is not None and m >= guarantee:
                raise CertificateError(f"modulus promised ||S_{prev_cut} x_m|| < {tol} from {guarantee}, "
                                       f"but index {m} has {head}")
        if chosen is None:
            raise BudgetExhausted(f"step {k}: no element with small head within {budget} elements",
                                  progress={"indices": b, "cuts": cuts})
        vec = x.vector(chosen)
        # least cut n_k > n_{k-1} with a small tail; supports are finite, so it exists
        last = max(vec, default=-1)
        n_k = prev_cut + 1
        while _tail_norm(vec, n_k) >= tol:
            n_k += 1
            if n_k > last + 1:  # pragma: no cover - tail vanishes past the support
                break
        y = {c: v for c, v in vec.items() if prev_cut <= c < n_k}
        head = _head_norm(vec, prev_cut)
        tail = _tail_norm(vec, n_k)
        diff = max((abs(v) for c, v in vec.items() if not prev_cut <= c < n_k), default=Fraction(0))
        y_norm = max((abs(v) for v in y.values()), default=Fraction(0))
        if k > 1:
            ev.append(Inequality(f"step {k}: head of x_{chosen} before cut {prev_cut}", head, "<", tol))
            ev.append(Inequality(f"step {k}: head, conclusion scale", head, "<", alpha / 2 ** k))
        ev.append(Inequality(f"step {k}: tail of x_{chosen} after cut {n_k}", tail, "<", tol))
        ev.append(Inequality(f"step {k}: tail, conclusion scale", tail, "<", alpha / 2 ** (k + 1)))
        ev.append(Inequality(f"step {k}: cuts increase", prev_cut, "<", n_k))
        ev.append(Inequality(f"step {k}: perturbation ||x_b - y||", diff, "<=", alpha / 2 ** (k + 2)))
        ev.append(Inequality(f"step {k}: block norm ||y||", y_norm, ">=", alpha - alpha / 2 ** (k + 2)))
        b.append(chosen)
        cuts.append(n_k)
        blocks.append(y)
        prev_cut = n_k

    # disjoint supports: block k lives in [n_{k-1}, n_k)
    lows = [0] + cuts[:-1]
    overlaps = sum(1 for y, lo, hi in zip(blocks, lows, cuts) if any(not lo <= c < hi for c in y))
    ev.append(Inequality("coordinates of blocks outside their cut interval", overlaps, "==", 0))
    ratio = Fraction(0)
    for m, y in zip(b, blocks):
        vec = x.vector(m)
        diff = max((abs(v - y.get(c, 0)) for c, v in vec.items()), default=Fraction(0))
        y_norm = max((abs(v) for v in y.values()), default=Fraction(0))
        if y_norm == 0:
            raise CertificateError(f"block for index {m} is zero")
        ratio += diff / y_norm
    ev.append(Inequality("sum of perturbation ratios", ratio, "<", Fraction(1, 2)))
    sup_norm = max(x.norm(m) for m in b)
    bound = sup_norm + alpha / 2
    sel = BPSelection(tuple(b), tuple(cuts), blocks, alpha)
    notes = [] if mode == "certified" else ["no w*-null modulus: the search for each b_k was only scanned"]
    return sel, _certify("bp", x, b, bound, ev, mode=mode, notes=notes)


def tall_selector(x: VectorSeq, stream: SetStream, L: int, *, norm_bound=None,
                  budget: int | None = None) -> SelectorCertificate:
    """Dispatch on the norms along the stream.

    Route ``i`` (norms tend to 0) and route ``ii-a`` (some subsequence has
    small norms) use :func:`small_norm_selector`; route ``ii-b`` (norms
    bounded below) uses :func:`bp_select` with ``alpha`` the least positive
    norm seen. The hypothesis that ``x`` is weakly null needs bounded norms;
    without ``norm_bound`` the scan must show the running maximum settling
    within its first half, otherwise the selector fails.
    """
    budget = default_budget() if budget is None else budget
    prefix = stream.prefix(budget)
    if not prefix:
        raise SelectorFailure("empty stream")
    norms = [x.norm(m) for m in prefix]
    if norm_bound is not None:
        norm_bound = as_ext(norm_bound)
        over = [(m, nm) for m, nm in zip(prefix, norms) if nm > norm_bound]
        if over:
            raise SelectorFailure(f"norm {over[0][1]} of x_{over[0][0]} exceeds the declared bound {norm_bound}",
                                  report={"index": over[0][0], "norm": format_ext(over[0][1])})
    else:
        half = max(1, len(prefix) // 2)
        early, late = max(norms[:half]), max(norms)
        if late > early:
            raise SelectorFailure(
                "norms keep growing along the scanned prefix; no evidence the sequence is weakly null",
                report={"max_first_half": format_ext(early), "max_prefix": format_ext(late),
                        "scanned": len(prefix)},
            )
    try:
        cert = small_norm_selector(stream, L, spec=x, budget=budget)
    except BudgetExhausted:
        cert = None
    if cert is not None:
        quarter = norms[-max(1, len(norms) // 4):]
        cert.route = "i" if max(quarter) <= Fraction(1, 2 ** (L - 1)) else "ii-a"
        return cert
    positive = [nm for nm in norms if nm > 0]
    if not positive:
        raise SelectorFailure("all scanned norms vanish yet no small-norm subsequence was found")
    alpha = min(positive)
    sub = SetStream((m for m in stream if x.norm(m) >= alpha), modulus=stream.modulus, name=f"{stream.name}|norm>=alpha")
    _, cert = bp_select(x, sub, alpha, L, budget=budget)
    cert.route = "ii-b"
    return cert

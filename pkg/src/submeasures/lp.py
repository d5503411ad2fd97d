"""Exact rational simplex for packing LPs with 0/1 constraint rows.

Solves::

    maximize    sum_j c_j w_j
    subject to  sum_{j in row_r} w_j <= b_r   for every row r
                w >= 0

with ``b >= 0`` so ``w = 0`` is a feasible start. Rows are bitmasks over
the columns. There can be thousands of rows but only a handful of columns,
so the basis is kept implicitly: a set of basic columns ``cols`` and an
equally large set of tight rows ``tight``; every other slack is basic.
Only the small square system ``M[tight, cols]`` is ever solved. Bland's
rule (smallest index enters, ties in the ratio test go to the smallest
index) guarantees termination.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import CertificateError, PreconditionError

try:  # gmpy2 rationals are several times faster than Fraction inside the pivots
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction


def _q(v) -> object:
    v = Fraction(v)
    return _Q(v.numerator, v.denominator)


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    primal: tuple[Fraction, ...]
    dual: dict[int, Fraction]  # row index -> multiplier, zero entries omitted
    pivots: int


def _bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


def _subset_sums(values: list[int], n: int) -> list[int]:
    """``table[mask] = sum of values[j] for j in mask``."""
    table = [0]
    for j in range(n):
        v = values[j]
        table += [t + v for t in table] if v else table
    return table


def solve_square(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination in exact arithmetic; the matrix must be nonsingular."""
    n = len(matrix)
    a = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ArithmeticError("singular basis matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        if p != 1:
            a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * u for v, u in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def _common(values) -> tuple[list[int], int]:
    """Integer numerators over a shared positive denominator."""
    den = 1
    for v in values:
        den = lcm(den, int(v.denominator))
    return [int(v.numerator) * (den // int(v.denominator)) for v in values], den


def solve_packing_lp(
    rows: list[int],
    rhs: list[Fraction],
    ncols: int,
    objective: list[Fraction] | None = None,
    max_pivots: int = 100_000,
) -> LPSolution:
    c = [_Q(1)] * ncols if objective is None else [_q(v) for v in objective]
    b = [_q(v) for v in rhs]
    if len(b) != len(rows):
        raise PreconditionError("one right-hand side per row is required")
    if any(v < 0 for v in b):
        raise PreconditionError("packing LP needs nonnegative right-hand sides")
    row_bits = [_bits(r) for r in rows]
    m = len(rows)
    # every column with positive cost must be capped by some row, else unbounded
    covered = 0
    for r in rows:
        covered |= r
    for j in range(ncols):
        if c[j] > 0 and not covered >> j & 1:
            raise PreconditionError(f"column {j} is unbounded (appears in no row)")
    b_num, b_den = _common(b) if b else ([], 1)
    # subset-sum tables cost 2^ncols per pivot; worth it once rows are plentiful
    small = ncols <= 16 and m >= (1 << ncols) // 4

    cols: list[int] = []   # basic structural columns
    tight: list[int] = []  # rows whose slack is nonbasic
    pivots = 0
    while True:
        k = len(cols)
        G = [[_Q(rows[r] >> j & 1) for j in cols] for r in tight]
        w_basic = solve_square(G, [b[r] for r in tight]) if k else []
        Gt = [[G[i][j] for i in range(k)] for j in range(k)]
        y = solve_square(Gt, [c[j] for j in cols]) if k else []

        # pricing, Bland: structural columns 0..ncols-1 first, then slacks by row
        entering = None
        basic_set = set(cols)
        for j in range(ncols):
            if j in basic_set:
                continue
            d = c[j] - sum((y[i] for i, r in enumerate(tight) if rows[r] >> j & 1), _Q(0))
            if d > 0:
                entering = ("w", j)
                break
        if entering is None:
            slack_cands = sorted((r, i) for i, r in enumerate(tight) if y[i] < 0)
            if slack_cands:
                entering = ("s", slack_cands[0][0])
        if entering is None:
            primal = [Fraction(0)] * ncols
            for j, v in zip(cols, w_basic):
                primal[j] = _frac(v)
            dual = {r: _frac(y[i]) for i, r in enumerate(tight) if y[i] != 0}
            value = sum((_frac(c[j]) * primal[j] for j in range(ncols)), Fraction(0))
            return LPSolution(value, tuple(primal), dual, pivots)

        # direction of the basic columns per unit increase of the entering variable
        if entering[0] == "w":
            j_in = entering[1]
            col_rhs = [_Q(-(rows[r] >> j_in & 1)) for r in tight]
        else:
            r_in = entering[1]
            col_rhs = [_Q(-1) if r == r_in else _Q(0) for r in tight]
        delta = solve_square(G, col_rhs) if k else []
        full_delta = dict(zip(cols, delta))
        if entering[0] == "w":
            full_delta[j_in] = _Q(1)

        # ratio test; variable order is w_0..w_{n-1}, s_0..s_{m-1}
        best_ratio = None
        best_var = None
        for i, j in enumerate(cols):
            if delta[i] < 0:
                t = w_basic[i] / -delta[i]
                key = j
                if best_ratio is None or t < best_ratio or (t == best_ratio and key < best_var):
                    best_ratio, best_var = t, key
        # Basic slacks. With w = w_num / w_den, delta = d_num / d_den and
        # b = b_num / b_den, row r allows
        #   t <= (b_num[r] * w_den - used_r * b_den) / rate_r * d_den / (b_den * w_den),
        # where used_r and rate_r are integer row sums taken from subset-sum tables.
        d_vals = [_Q(0)] * ncols
        for j, v in full_delta.items():
            d_vals[j] = v
        d_num, d_den = _common(d_vals)
        w_vals = [_Q(0)] * ncols
        for j, v in zip(cols, w_basic):
            w_vals[j] = v
        w_num, w_den = _common(w_vals)
        used_tab = _subset_sums(w_num, ncols) if small else None
        rate_tab = _subset_sums(d_num, ncols) if small else None
        tight_set = set(tight)
        best_num = best_rate = None
        best_row = None
        for r in range(m):
            if r in tight_set:
                continue
            if small:
                rate = rate_tab[rows[r]]
            else:
                rate = sum(d_num[j] for j in row_bits[r])
            if rate <= 0:
                continue
            used = used_tab[rows[r]] if small else sum(w_num[j] for j in row_bits[r])
            num = b_num[r] * w_den - used * b_den
            # num / rate < best_num / best_rate, both rates positive; ties keep the earlier row
            if best_row is None or num * best_rate < best_num * rate:
                best_num, best_rate, best_row = num, rate, r
        if best_row is not None:
            t = _Q(best_num * d_den, best_rate * b_den * w_den)
            key = ncols + best_row
            if best_ratio is None or t < best_ratio or (t == best_ratio and key < best_var):
                best_ratio, best_var = t, key
        if best_var is None:
            raise PreconditionError("packing LP is unbounded")

        # pivot
        if entering[0] == "w":
            cols.append(j_in)
        else:
            tight.remove(r_in)
        if best_var < ncols:
            cols.remove(best_var)
        else:
            tight.append(best_var - ncols)
        pivots += 1
        if pivots > max_pivots:
            raise RuntimeError("simplex pivot limit reached")


def verify_packing_certificate(
    rows: list[int],
    rhs: list[Fraction],
    ncols: int,
    primal,
    dual: dict[int, Fraction],
    objective: list[Fraction] | None = None,
) -> Fraction:
    """Check optimality of ``(primal, dual)`` from scratch; returns the optimum.

    Primal feasibility, dual feasibility (``sum_r y_r M[r, j] >= c_j``,
    ``y >= 0``), equal objective values and complementary slackness, all
    exact. Raises :class:`CertificateError` on any failure.
    """
    c = [Fraction(1)] * ncols if objective is None else [Fraction(v) for v in objective]
    w = [Fraction(v) for v in primal]
    if len(w) != ncols or any(v < 0 for v in w):
        raise CertificateError("primal has wrong length or a negative entry")
    # row sums in integers: lhs_r = used_r / w_den against b_r = b_num[r] / b_den
    w_num, w_den = _common(w)
    b_num, b_den = _common([Fraction(v) for v in rhs])
    table = _subset_sums(w_num, ncols) if ncols <= 16 else None
    for r, mask in enumerate(rows):
        used = table[mask] if table is not None else sum(w_num[j] for j in _bits(mask))
        if used * b_den > b_num[r] * w_den:
            raise CertificateError(f"primal violates row {r}: {Fraction(used, w_den)} > {rhs[r]}")
    for r, v in dual.items():
        if v < 0:
            raise CertificateError(f"negative dual multiplier on row {r}")
        if not 0 <= r < len(rows):
            raise CertificateError(f"dual refers to unknown row {r}")
    cover = [Fraction(0)] * ncols
    for r, v in dual.items():
        for j in _bits(rows[r]):
            cover[j] += v
    for j in range(ncols):
        if cover[j] < c[j]:
            raise CertificateError(f"dual infeasible on column {j}: {cover[j]} < {c[j]}")
    primal_value = sum((c[j] * w[j] for j in range(ncols)), Fraction(0))
    dual_value = sum((v * Fraction(rhs[r]) for r, v in dual.items()), Fraction(0))
    if primal_value != dual_value:
        raise CertificateError(f"duality gap: {primal_value} != {dual_value}")
    for r, v in dual.items():
        if v and sum((w[j] for j in _bits(rows[r])), Fraction(0)) != rhs[r]:
            raise CertificateError(f"complementary slackness fails on row {r}")
    for j in range(ncols):
        if w[j] and cover[j] != c[j]:
            raise CertificateError(f"complementary slackness fails on column {j}")
    return primal_value

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from submeasures.core import SupMeasures, evaluate
from submeasures.errors import PreconditionError
from submeasures.extended import INF
from submeasures.ideals import (
    ARITH_V1,
    SEGMENTS_V1,
    BoundedSoFar,
    CanonicalIdeal,
    EDGrowth,
    EDSup,
    Exceeded,
    IntegerUnitLevelSets,
    Piece,
    Status,
    SubBlocks,
    bounded_on_prefix,
    ed_cover,
    ed_literal_filtration,
    ed_sup_representation,
    edfin_member,
    edfin_stream,
    ejemadecuada_generator,
    fin_times_empty_filtration,
    group_by_block,
    has_property_A,
    pair,
    phi_fin_times_empty,
    psi_block_cover,
    psi_ED,
    unpair,
)
from submeasures.instances import block_multiples, diagonal_stream
from submeasures.streams import SetStream

SCHEMES = [ARITH_V1, SEGMENTS_V1]


def test_arith_scheme_first_members():
    # documented in the README
    assert [ARITH_V1.element(0, j) for j in range(5)] == [0, 2, 5, 9, 14]
    assert [ARITH_V1.element(1, j) for j in range(5)] == [1, 4, 8, 13, 19]
    assert [ARITH_V1.element(4, j) for j in range(5)] == [10, 16, 23, 31, 40]


@given(st.integers(0, 10**9))
def test_pairing_is_a_bijection(m):
    n, j = unpair(m)
    assert pair(n, j) == m


@pytest.mark.parametrize("scheme", SCHEMES)
def test_blocks_partition_an_initial_segment(scheme):
    seen = {}
    for m in range(500):
        n = scheme.block_of(m)
        assert scheme.element(n, scheme.position(m)) == m
        seen.setdefault(n, []).append(m)
    for n, members in seen.items():
        assert members == scheme.block_prefix(n, len(members))


def test_segment_scheme_blocks_are_finite():
    assert [SEGMENTS_V1.block_size(n) for n in range(5)] == [0, 1, 2, 3, 4]
    assert list(SEGMENTS_V1.block(3)) == [3, 4, 5]
    with pytest.raises(PreconditionError):
        SEGMENTS_V1.element(2, 2)
    assert ARITH_V1.block_size(0) is None


def test_fin_times_empty_examples():
    s = ARITH_V1
    A = {s.element(3, 2), s.element(1, 0), s.element(1, 5)}
    assert phi_fin_times_empty(s, A) == 4
    assert phi_fin_times_empty(s, set()) == 0
    B = {s.element(1, 0), s.element(4, 3), s.element(4, 7)}
    assert psi_block_cover(s, B) == 2
    assert psi_block_cover(s, set()) == 0


@settings(max_examples=50, deadline=None)
@given(st.frozensets(st.integers(0, 80), max_size=8))
def test_fin_times_empty_formula_matches_filtration(A):
    for s in SCHEMES:
        assert phi_fin_times_empty(s, A) == fin_times_empty_filtration(s)(A)
        sup = CanonicalIdeal("FinTimesEmpty", s).representation("sup")
        assert sup(A) == phi_fin_times_empty(s, A)


def test_ed_growth_examples():
    s = ARITH_V1
    assert psi_ED(s, Piece(5)) == 5
    assert psi_ED(s, set()) == 0
    selector = {s.element(n, 0) for n in range(6)}
    assert psi_ED(s, selector) == 1
    assert psi_ED(s, s.block_prefix(3, 7)) == 3


def test_ed_sup_examples():
    s = ARITH_V1
    for n in range(6):
        assert ed_sup_representation(s, s.block_prefix(n, n + 1)) == n + 1
    assert ed_sup_representation(s, s.block_prefix(3, 7)) == 4
    assert ed_sup_representation(s, set()) == 0
    sup = EDSup(s)
    F = s.block_prefix(2, 5) + [s.element(0, 0)]
    mu = sup.dominating_measure(F)
    assert sum(mu.values()) == sup(F) == 3


def test_ed_cover_triple():
    s = ARITH_V1
    triple = {s.element(0, 0), s.element(1, 0), s.element(1, 1)}
    cover = ed_cover(s)
    assert cover(triple) == 2
    assert all(cover(triple - {y}) == 1 for y in triple)
    # the literal n! filtration reading needs level 2 here, so value 3
    assert ed_literal_filtration(s)(triple) == 3


def test_ed_representations_classify_structured_families_alike():
    s = ARITH_V1
    growth, sup = EDGrowth(s), EDSup(s)
    # pieces: unbounded in both along n; selectors: bounded in both
    for n in range(1, 7):
        piece = s.block_prefix(n, n + 1)
        assert sup(piece) == n + 1 and growth(piece) >= 1
        selector = [s.element(k, 0) for k in range(n + 1)]
        assert sup(selector) == 1 and growth(selector) <= 1
        two = selector + [s.element(k, 1) for k in range(n + 1)]
        assert sup(two) <= 2 and growth(two) <= 2


def test_edfin_restriction_is_consistent():
    s = ARITH_V1
    universe = edfin_stream(s).prefix(20)
    assert all(edfin_member(s, m) for m in universe)
    sub = CanonicalIdeal("EDfin", s).representation("sup")
    full = EDSup(s)
    rng = random.Random(1)
    for _ in range(30):
        A = rng.sample(universe, rng.randint(0, 8))
        assert sub(A) == full(A)
    outside = next(m for m in range(100) if not edfin_member(s, m))
    with pytest.raises(PreconditionError):
        sub([outside])


@pytest.mark.parametrize("variant", ["a", "b"])
def test_sub_block_layout(variant):
    sub = SubBlocks(ARITH_V1, variant)
    for n in range(4):
        assert sub.size(n, 0) == 2**n * (n + 1)
        for k in range(6):
            assert sub.size(n, k + 1) >= sub.size(n, k)
            assert sub.start(n, k + 1) == sub.start(n, k) + sub.size(n, k)
            for j in (sub.start(n, k), sub.start(n, k + 1) - 1):
                assert sub.sub_index(n, j) == k
    with pytest.raises(PreconditionError):
        SubBlocks(ARITH_V1, "c")


def test_sub_block_point_values():
    a = ejemadecuada_generator("a")
    b = ejemadecuada_generator("b")
    for n in range(4):
        for j in (0, 5, 40):
            m = ARITH_V1.element(n, j)
            assert a.spec.singleton(m) == Fraction(1, 2**n)
        for k in range(5):
            m = b.sub.first_of(n, k)
            assert b.spec.singleton(m) == Fraction(1, 2**n + k)


@pytest.mark.parametrize("variant", ["a", "b"])
def test_sub_block_facts(variant):
    con = ejemadecuada_generator(variant)
    rep = con.check_facts(max_block=2, max_sub=2, prefix=500)
    assert rep["all_passed"], rep
    for n in range(3):
        for k in range(3):
            assert con.spec(con.sub.sub_block(n, k)) == n + 1


def test_property_a_verdicts():
    a = ejemadecuada_generator("a")
    v = has_property_A(a.spec)
    assert v.status is Status.HOLDS
    for i, ls in enumerate(v.bounds, start=1):
        # above 2^-i only blocks n with 2^-n > 2^-i, i.e. n < i
        assert ls.blocks == tuple(range(i)) and ls.value == i * (i + 1) // 2
    unit = has_property_A(oracle=IntegerUnitLevelSets())
    assert unit.status is Status.FAILS and unit.failing_eps == Fraction(1, 2)
    assert has_property_A(oracle=IntegerUnitLevelSets(total=5)).status is Status.FAILS
    assert has_property_A(SupMeasures([{0: 1}])).status is Status.INCONCLUSIVE


def test_bounded_on_prefix_verdicts():
    s = ARITH_V1
    x = block_multiples(s)
    for M in (1, 3, 10):
        r = bounded_on_prefix(x, diagonal_stream(s), M)
        assert isinstance(r, Exceeded)
        assert r.value > M and x(r.witness) == r.value == max(s.block_of(m) for m in r.witness)
    inside = SetStream.from_function(lambda j: s.element(3, j))
    r = bounded_on_prefix(x, inside, 3, budget=50)
    assert isinstance(r, BoundedSoFar) and r.observed == 3 and r.prefix == 50
    r = bounded_on_prefix(SupMeasures([]), SetStream.naturals(), 0, budget=10)
    assert isinstance(r, BoundedSoFar) and r.observed == 0
    r = bounded_on_prefix(x, SetStream([1, 2]), 5)
    assert r.exhausted


def test_canonical_ideal_representations():
    for kind in ("FinTimesEmpty", "ED", "EDfin", "Summable", "SubBlocksA", "SubBlocksB"):
        ideal = CanonicalIdeal(kind)
        for name in ideal.representations():
            if name == "literal":
                continue
            spec = ideal.representation(name)
            assert evaluate(spec, []) == 0
    with pytest.raises(PreconditionError):
        CanonicalIdeal("ED").representation("nonsense")
    summable = CanonicalIdeal("Summable").representation()
    assert summable({0, 1, 2}) == Fraction(11, 6)


def test_group_by_block():
    s = ARITH_V1
    assert group_by_block(s, {0, 1, 2, 4}) == {0: [0, 2], 1: [1, 4]}

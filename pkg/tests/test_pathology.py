import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import degree_oracle, random_lscsm_table, vertex_hull
from submeasures.core import CoverNumber, SupMeasures, TableSubmeasure
from submeasures.errors import BudgetExhausted, CapExceeded, PreconditionError
from submeasures.extended import INF
from submeasures.instances import phi0_table
from submeasures.pathology import (
    Verdict,
    hat_phi,
    integer_pathology_criterion,
    minimal_witness,
    pathology_degree,
)


def test_phi0_hull_and_degree_against_oracle():
    phi0 = phi0_table()
    h = hat_phi(phi0, {0, 1, 2})
    assert h.value == vertex_hull(phi0, [0, 1, 2]) == Fraction(3, 2)
    assert h.witness.weights == {0: Fraction(1, 2), 1: Fraction(1, 2), 2: Fraction(1, 2)}
    rep = pathology_degree(phi0, 3, 3)
    assert rep.degree == degree_oracle(phi0, 3, 3) == Fraction(4, 3)
    assert rep.witness_set == (0, 1, 2)


def test_hull_dual_certifies_value():
    phi = CoverNumber(lambda S: len(S) <= 2)
    h = hat_phi(phi, range(5))
    for B, y in h.dual.items():
        assert y >= 0
    for i in range(5):
        assert sum(y for B, y in h.dual.items() if i in B) >= 1
    assert sum(y * phi(B) for B, y in h.dual.items()) == h.value == Fraction(5, 2)


def test_pruning_does_not_change_the_hull():
    rng = random.Random(4)
    for _ in range(20):
        t = random_lscsm_table(rng, 5)
        A = rng.sample(range(5), rng.randint(1, 5))
        assert hat_phi(t, A).value == hat_phi(t, A, prune=False).value


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_hull_matches_vertex_enumeration(seed, a):
    t = random_lscsm_table(random.Random(seed), 4)
    A = list(range(a))
    h = hat_phi(t, A)
    assert h.value == vertex_hull(t, A)
    assert h.value <= t(A)
    # the witness is dominated
    for r in range(1, a + 1):
        for B in itertools.combinations(A, r):
            assert h.witness(B) <= t(B)


def test_measure_has_degree_one():
    mu = SupMeasures([{0: 1, 1: 2, 2: Fraction(1, 3)}])
    rep = pathology_degree(mu, 3, 3)
    assert rep.degree == 1


def test_sup_of_measures_has_degree_one():
    rng = random.Random(8)
    for _ in range(5):
        s = SupMeasures([{k: rng.randint(0, 3) for k in range(5)} for _ in range(3)])
        assert pathology_degree(s, 5, 4).degree == 1


def test_degree_caps_and_empty_family():
    with pytest.raises(CapExceeded):
        pathology_degree(phi0_table(), 3, 20)
    zero = TableSubmeasure.from_function(2, lambda F: 0)
    rep = pathology_degree(zero, 2, 2)
    assert rep.empty_family and rep.degree == 1
    with pytest.raises(PreconditionError):
        pathology_degree(phi0_table(), 5, 2)


def test_infinite_values_are_skipped():
    t = TableSubmeasure.from_function(2, lambda F: INF if len(F) == 2 else len(F))
    rep = pathology_degree(t, 2, 2)
    assert rep.skipped_infinite == 1 and rep.degree == 1
    with pytest.raises(PreconditionError):
        hat_phi(t, {0, 1})


def test_criterion_verdicts():
    phi0 = phi0_table()
    assert integer_pathology_criterion(phi0, {0, 1, 2}).verdict is Verdict.FIRED
    assert integer_pathology_criterion(phi0, {0, 1}).verdict is Verdict.NOT_FIRED
    assert integer_pathology_criterion(phi0, {0}).verdict is Verdict.NOT_FIRED
    half = SupMeasures([{0: Fraction(1, 2), 1: 1}])
    assert integer_pathology_criterion(half, {0, 1}).verdict is Verdict.INAPPLICABLE
    counting = SupMeasures([{0: 1, 1: 1, 2: 1}])
    assert integer_pathology_criterion(counting, {0, 1, 2}).verdict is Verdict.NOT_FIRED


def test_fired_criterion_implies_hull_below_value():
    rng = random.Random(9)
    fired = 0
    for _ in range(60):
        k = rng.randint(2, 3)
        phi = CoverNumber(lambda S, k=k: len(S) <= k)
        A = range(rng.randint(2, 7))
        r = integer_pathology_criterion(phi, A)
        if r.verdict is Verdict.FIRED:
            fired += 1
            assert hat_phi(phi, A).value < phi(A)
    assert fired


def test_minimal_witness():
    phi0 = phi0_table()
    assert minimal_witness(phi0, 2) == frozenset({0, 1, 2})
    assert minimal_witness(phi0, 1) == frozenset({0})
    assert minimal_witness(phi0, 0) == frozenset()
    with pytest.raises(BudgetExhausted):
        minimal_witness(phi0, 3)
    with pytest.raises(PreconditionError):
        minimal_witness(SupMeasures([{0: 1}]), 1)

import itertools

import pytest
from hypothesis import given, strategies as st

from symprog.core import BudgetExceeded, SpaceParams, SymmetricSet, WeightArrangement, compositions, multinomial
from symprog.count import (
    FullPatternCounts,
    RestrictedPatternCounts,
    arrangement_table,
    count_arrangement_full,
    count_arrangement_restricted,
    count_product_hits,
    patterns_to_arrangement,
    product_arrangements,
    solve_full_patterns,
    solve_restricted_patterns,
)
from symprog.feasible import is_feasible
from symprog.generate import random_set_tuple
from symprog.oracle import FULL, RESTRICTED, arrangement_histogram, oracle_count


def arr(tuples):
    return WeightArrangement.from_json(tuples)


def test_patterns_to_arrangement_examples():
    p6 = SpaceParams(3, 6)
    assert patterns_to_arrangement(RestrictedPatternCounts((1, 1, 1), (1, 1, 1), p6)).tuples == ((2, 2, 2),) * 3
    p3 = SpaceParams(3, 3)
    assert patterns_to_arrangement(RestrictedPatternCounts((3, 0, 0), (0, 0, 0), p3)).tuples == ((3, 0, 0),) * 3
    m = ((0, 2, 0), (0, 0, 0), (0, 0, 0))
    assert patterns_to_arrangement(FullPatternCounts(m, SpaceParams(3, 2))).tuples == ((2, 0, 0), (0, 2, 0), (0, 0, 2))


def test_restricted_family_example():
    fam = solve_restricted_patterns(arr([[2, 2, 2]] * 3))
    assert len(fam) == 3
    sols = sorted(fam.solutions())
    expected = sorted((2 - c,) * 3 + (c,) * 3 for c in range(3))
    assert sols == expected


@pytest.mark.parametrize("n, q", [(4, 3), (5, 4), (3, 5)])
def test_constant_arrangement_has_unique_solution(n, q):
    fam = solve_restricted_patterns(arr([[n] + [0] * (q - 1)] * q))
    assert list(fam.solutions()) == [(n,) + (0,) * (q - 1) + (0,) * q]


def test_infeasible_family_is_empty():
    a = arr([[2, 2, 2], [2, 2, 2], [1, 3, 2]])
    assert not solve_restricted_patterns(a)
    assert count_arrangement_restricted(a) == 0


def test_count_restricted_example():
    assert count_arrangement_restricted(arr([[2, 2, 2]] * 3)) == 900


def test_count_full_examples():
    assert count_arrangement_full(arr([[2, 0, 0], [0, 2, 0], [0, 0, 2]])) == 1
    assert count_arrangement_full(arr([[1, 1, 0]] * 3)) == 2
    # frozen from an independent plain-loop enumeration
    assert count_arrangement_full(arr([[2, 1, 1]] * 3)) == 60


def test_count_product_examples():
    p = SpaceParams(3, 6)
    s = SymmetricSet(p, frozenset({(2, 2, 2)}))
    assert count_product_hits([s] * 3, RESTRICTED) == 900
    assert count_product_hits([SymmetricSet(p, frozenset()), s, s], RESTRICTED) == 0
    full = SymmetricSet.full(SpaceParams(3, 4))
    assert count_product_hits([full] * 3, RESTRICTED) == 6**4


@pytest.mark.parametrize("q, n", [(3, 6), (3, 5), (4, 4), (4, 3), (5, 3)])
def test_total_over_arrangements(q, n):
    table = arrangement_table(SpaceParams(q, n), RESTRICTED)
    assert sum(table.values()) == (2 * q) ** n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_full_total_over_arrangements(n):
    table = arrangement_table(SpaceParams(3, n), FULL)
    assert sum(table.values()) == 9**n


@pytest.mark.parametrize("p, n", [(3, 5), (5, 2)])
def test_full_compositions_multinomial_total(p, n):
    assert sum(multinomial(c) for c in compositions(n, p * p)) == p ** (2 * n)


@pytest.mark.parametrize("q, n", [(3, 2), (3, 4), (3, 6), (3, 7), (4, 3), (4, 5)])
def test_restricted_tables_match_oracle(q, n):
    params = SpaceParams(q, n)
    assert arrangement_table(params, RESTRICTED) == arrangement_histogram(params, RESTRICTED)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_full_tables_match_oracle(n):
    params = SpaceParams(3, n)
    assert arrangement_table(params, FULL) == arrangement_histogram(params, FULL)


@pytest.mark.parametrize("seed", range(6))
def test_product_hits_match_oracle(seed):
    sets = random_set_tuple(3, 5, seed)
    total, hist = oracle_count(sets, RESTRICTED)
    assert count_product_hits(sets, RESTRICTED) == total
    assert product_arrangements(sets, RESTRICTED) == hist
    sets = random_set_tuple(3, 4, seed)
    total, hist = oracle_count(sets, FULL)
    assert count_product_hits(sets, FULL) == total
    assert product_arrangements(sets, FULL) == hist


def test_product_budget():
    full = SymmetricSet.full(SpaceParams(3, 20))
    with pytest.raises(BudgetExceeded):
        count_product_hits([full] * 3, FULL, budget=1000)


@st.composite
def restricted_patterns(draw):
    q = draw(st.sampled_from([3, 4, 5]))
    n = draw(st.integers(1, 30))
    cuts = sorted(draw(st.lists(st.integers(0, n), min_size=2 * q - 1, max_size=2 * q - 1)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return RestrictedPatternCounts(tuple(parts[:q]), tuple(parts[q:]), SpaceParams(q, n))


@given(restricted_patterns())
def test_family_reproduces_arrangement(pc):
    a = patterns_to_arrangement(pc)
    assert is_feasible(a)
    fam = solve_restricted_patterns(a)
    assert fam
    assert pc.same + pc.cycle in set(fam.solutions())
    for sol in fam.solutions():
        q = pc.params.q
        back = RestrictedPatternCounts(sol[:q], sol[q:], pc.params)
        assert patterns_to_arrangement(back) == a


@st.composite
def full_patterns(draw):
    n = draw(st.integers(1, 12))
    cuts = sorted(draw(st.lists(st.integers(0, n), min_size=8, max_size=8)))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    return FullPatternCounts(tuple(tuple(parts[3 * a:3 * a + 3]) for a in range(3)), SpaceParams(3, n))


@given(full_patterns())
def test_full_family_reproduces_arrangement(pc):
    a = patterns_to_arrangement(pc)
    fam = solve_full_patterns(a)
    flat = tuple(x for row in pc.m for x in row)
    assert flat in set(fam.solutions())
    for sol in fam.solutions():
        m = tuple(tuple(sol[3 * r:3 * r + 3]) for r in range(3))
        assert patterns_to_arrangement(FullPatternCounts(m, pc.params)) == a


@pytest.mark.parametrize("q, n", [(3, 5), (4, 4)])
def test_positive_count_iff_feasible_with_nonnegative_family(q, n):
    params = SpaceParams(q, n)
    realised = arrangement_histogram(params, RESTRICTED)
    simplex = SymmetricSet.full(params).tuples
    # every triple of tuples sharing the first two from realised arrangements,
    # plus all pairs: covers feasible-but-unrealisable and infeasible cases
    firsts = sorted({a[:2] for a in realised})
    for pair in firsts[:40]:
        for last in simplex:
            a = WeightArrangement(pair + (last,) * (q - 2), params)
            c = count_arrangement_restricted(a)
            assert (c > 0) == (is_feasible(a) and bool(solve_restricted_patterns(a)))
            assert c == realised.get(a.tuples, 0)

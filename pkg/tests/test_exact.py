import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_count, series_count
from partlab import (
    ApplicabilityError,
    ValidationError,
    binomial_all_ones,
    count_k1,
    count_one,
    count_table,
    delta,
    make_part_system,
    nearest_int_formula,
    popoviciu,
)
from partlab.exact import system_of


class TestPointValues:
    @pytest.mark.parametrize("parts,n,expected", [
        ((1, 2, 4), 6, 6),
        ((1, 2, 3, 4), 4, 5),
        ((1, 2, 2, 3, 3), 4, 8),
        ((1, 1), 5, 6),
        ((2, 3), 1, 0),
        ((7,), 13, 0),
    ])
    def test_known(self, parts, n, expected):
        s = system_of(*parts)
        assert count_table(s, n)[n] == expected
        assert count_one(s, n) == expected

    def test_empty_partition(self, corpus_system):
        assert count_table(corpus_system, 0)[0] == 1
        assert count_one(corpus_system, 0) == 1

    def test_negative_argument(self, corpus_system):
        assert count_one(corpus_system, -3) == 0
        assert count_table(corpus_system, 5)[-3] == 0

    def test_table_bound(self):
        with pytest.raises(IndexError):
            count_table(system_of(1, 2), 10)[11]

    def test_k1(self):
        assert count_k1(3, 9) == 1
        assert count_k1(3, 10) == 0
        assert count_k1(1, 0) == 1


def test_evaluators_match_brute_force(corpus_system):
    n_max = 40
    table = count_table(corpus_system, n_max)
    expected = series_count(corpus_system.parts, n_max)
    assert list(table.values) == expected
    assert [count_one(corpus_system, n) for n in range(n_max + 1)] == expected
    assert [brute_count(corpus_system.parts, n) for n in range(0, n_max + 1, 7)] == expected[::7]


@given(st.lists(st.integers(1, 6), min_size=1, max_size=4), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_permutation_invariance(parts, rnd):
    shuffled = list(parts)
    rnd.shuffle(shuffled)
    a = count_table(make_part_system(parts), 60)
    b = count_table(make_part_system(shuffled), 60)
    assert a.values == b.values


@given(st.lists(st.integers(1, 6), min_size=2, max_size=4))
@settings(max_examples=40, deadline=None)
def test_adding_a_part_never_decreases(parts):
    fewer = count_table(make_part_system(parts[:-1]), 60)
    more = count_table(make_part_system(parts), 60)
    assert all(x <= y for x, y in zip(fewer.values, more.values))


class TestPopoviciu:
    @pytest.mark.parametrize("pair", [(2, 3), (3, 5), (4, 7), (5, 9), (1, 2), (1, 7)])
    def test_matches_table(self, pair):
        s = system_of(*pair)
        a1, a2 = pair
        n_max = 10 * a1 * a2
        table = count_table(s, n_max)
        for n in range(1, n_max + 1):
            value = popoviciu(s, n)
            assert value == table[n]
            assert Fraction(n, a1 * a2) - 1 < value <= Fraction(n, a1 * a2) + 1

    def test_examples(self):
        assert popoviciu(system_of(3, 5), 8) == 1
        assert popoviciu(system_of(3, 5), 7) == 0
        assert popoviciu(system_of(1, 2), 9) == 5 == 9 // 2 + 1

    @pytest.mark.parametrize("parts,n", [((2, 4), 5), ((1, 2, 3), 5), ((2, 3), 0)])
    def test_preconditions(self, parts, n):
        with pytest.raises(ApplicabilityError):
            popoviciu(system_of(*parts), n)


class TestClosedForms:
    @pytest.mark.parametrize("k", [3, 4, 5])
    def test_nearest_integer(self, k):
        table = count_table(system_of(*range(1, k + 1)), 600)
        assert [nearest_int_formula(k, n) for n in range(601)] == list(table.values)

    def test_nearest_integer_examples(self):
        assert nearest_int_formula(3, 4) == 4
        assert nearest_int_formula(3, 0) == 1

    def test_nearest_integer_k_range(self):
        with pytest.raises(ApplicabilityError):
            nearest_int_formula(6, 10)

    def test_binomial(self):
        assert binomial_all_ones(2, 5) == 6
        assert binomial_all_ones(1, 7) == 1
        assert binomial_all_ones(3, 4) == 15
        for k in range(1, 7):
            table = count_table(system_of(*[1] * k), 500)
            assert all(binomial_all_ones(k, n) == table[n] for n in range(501))


class TestDelta:
    def test_examples(self):
        assert delta(system_of(1, 2, 4), 3) < 0
        assert delta(system_of(1, 1), 5) == 1
        # p = 1, 1, 2, 3, 4, 5, 7, 8 for parts (1,2,3): 7^2 - 8*5
        assert delta(system_of(1, 2, 3), 6) == 9

    def test_domain(self):
        with pytest.raises(ValidationError):
            delta(system_of(1, 2), 0)

    @pytest.mark.parametrize("m", [2, 3])
    @pytest.mark.parametrize("k", [3, 4])
    def test_m_ary_sign_law(self, m, k):
        s = system_of(*[m ** i for i in range(k)])
        table = count_table(s, 502)
        for n in range(1, 501):
            assert (table.delta(n) < 0) == (n % m == m - 1), n

    @pytest.mark.parametrize("m", [2, 3])
    def test_m_ary_plateau(self, m):
        table = count_table(system_of(*[m ** i for i in range(4)]), 600)
        for n in range(600):
            assert table[n] == table[n - n % m]


def test_large_values_exact():
    # values far beyond 64 bits must stay exact
    s = system_of(*[1] * 10)
    value = count_table(s, 3000)[3000]
    assert value == count_one(s, 3000) == binomial_all_ones(10, 3000)
    assert value > 2 ** 64


def test_random_spot_checks_against_brute_force():
    rnd = random.Random(20261016)
    for _ in range(30):
        parts = [rnd.randint(1, 8) for _ in range(rnd.randint(1, 4))]
        n = rnd.randint(0, 60)
        assert count_one(make_part_system(parts), n) == brute_count(sorted(parts), n)

import pytest
from hypothesis import given, settings, strategies as st

from ncgb.hilbert import (NegativeCount, NonUnitConstantTerm, PowerSeries, count_irreducible,
                          hilbert_driven_counts, q_from_resolution, series_free,
                          series_inverse, series_weighted_poly, solve_shift)

from oracles import all_degree_tables, brute_irreducible_counts, seeded, words_by_weight


def test_series_baselines():
    assert list(series_weighted_poly((1, 1, 1, 1, 2), 3)) == [1, 4, 11, 24]
    assert list(series_free((1, 1, 1, 1), 3)) == [1, 4, 16, 64]
    assert list(series_weighted_poly((1, 1, 2, 3, 5), 8)) == [1, 2, 4, 7, 11, 17, 25, 35, 48]


@pytest.mark.parametrize("degrees", [(1,), (1, 2), (2, 3), (1, 1, 3), (1, 2, 2, 3)])
def test_free_series_counts_words(degrees):
    assert list(series_free(degrees, 8)) == [len(l) for l in words_by_weight(degrees, 8)]


def _random_leads(rng, degrees, max_weight):
    levels = words_by_weight(degrees, max_weight)
    pool = [w for l in levels[1:] for w in l if len(w) >= 1]
    k = rng.randint(0, 5)
    return sorted({rng.choice(pool) for _ in range(k)}) if pool else []


TABLES = list(all_degree_tables(4, 3))


@pytest.mark.parametrize("degrees", TABLES, ids=lambda d: "".join(map(str, d)))
def test_count_irreducible_matches_brute_force(degrees):
    rng = seeded(hash(degrees) & 0xffff)
    for _ in range(4):
        leads = _random_leads(rng, degrees, 4)
        assert list(count_irreducible(leads, degrees, 8)) == brute_irreducible_counts(leads, degrees, 8)


def test_count_irreducible_four_letters_degree_eight():
    leads = [(1, 0), (2, 1), (2, 0), (3, 2), (3, 1)]
    assert list(count_irreducible(leads, (1, 1, 1, 1), 8)) == brute_irreducible_counts(leads, (1, 1, 1, 1), 8)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4), max_size=6))
def test_count_irreducible_random_leads(leads):
    leads = [tuple(w) for w in leads]
    degrees = (1, 2, 1)
    assert list(count_irreducible(leads, degrees, 7)) == brute_irreducible_counts(leads, degrees, 7)


R = {"x2": 0, "x3": 1, "x4": 2, "x5": 3}
ALL_SIX = ["x3x2", "x4x3", "x4x2", "x5x4", "x5x3", "x5x2"]


def _leads(names):
    return [(R[w[:2]], R[w[2:]]) for w in names]


@pytest.mark.parametrize("omitted,count", [("x5x2", 4), ("x4x2", 3), ("x5x3", 3),
                                           ("x3x2", 2), ("x4x3", 2), ("x5x4", 2)])
def test_hilbert_driven_degree_three(omitted, count):
    target = series_weighted_poly((1, 1, 1, 1, 2), 3)
    leads = _leads([w for w in ALL_SIX if w != omitted])
    assert hilbert_driven_counts({2: leads}, target, 3, [1] * 4) == {3: count}
    assert count_irreducible(leads, [1] * 4, 3)[3] == 24 + count


def test_hilbert_driven_counts_close_the_gap():
    target = series_weighted_poly((1, 1, 1, 1, 2), 3)
    leads = _leads(["x3x2", "x4x3", "x4x2", "x5x4", "x5x3"])
    # any four degree-three words avoiding the degree-two leads close the gap at degree 3
    free3 = [w for w in words_by_weight((1, 1, 1, 1), 3)[3]
             if not any(w[i:i + 2] == l for l in leads for i in range(2))]
    rng = seeded(11)
    for _ in range(5):
        extra = rng.sample(free3, 4)
        assert hilbert_driven_counts({2: leads, 3: extra}, target, 3, [1] * 4) == {}


def test_hilbert_driven_counts_negative():
    target = series_weighted_poly((1, 1), 2)
    with pytest.raises(NegativeCount):
        hilbert_driven_counts({2: [(0, 0), (1, 0), (1, 1)]}, target, 2, [1, 1])


def test_q_polynomials():
    assert list(q_from_resolution(3, (2, 3, 3, 3, 3, 3), 7, 7)) == [1, -3, 1, 5, -5, -1, 3, -1]
    assert list(q_from_resolution(3, (2, 2, 3), 8, 8)) == [1, -3, 2, 1, 0, -1, -2, 3, -1]
    h = series_weighted_poly((1, 1, 1, 2, 2), 12)
    assert (q_from_resolution(3, (2, 3, 3, 3, 3, 3), 7, 12) * h).is_one()
    assert solve_shift(3, (2, 3, 3, 3, 3, 3), h) == 7
    assert solve_shift(3, (2, 2, 3), series_weighted_poly((1, 1, 1, 2, 3), 12)) == 8
    assert solve_shift(3, (2, 2, 2), h) is None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=10))
def test_series_inverse(tail):
    s = PowerSeries([1] + tail)
    assert (s * series_inverse(s)).is_one()


def test_series_inverse_needs_unit():
    with pytest.raises(NonUnitConstantTerm):
        series_inverse(PowerSeries([2, 1]))


def test_weighted_series_is_inverse_of_product():
    degs = (1, 1, 2, 3, 5)
    prod = PowerSeries([1], 12)
    for d in degs:
        prod = prod * PowerSeries([1] + [0] * (d - 1) + [-1], 12)
    assert (prod * series_weighted_poly(degs, 12)).is_one()
    assert series_weighted_poly(degs, 12).format().startswith("1 + 2t + 4t^2")

"""Difference sets, distance sets, correlation, and the energy oracles."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffdelta.field import Field
from ffdelta.pointspace import Space
from ffdelta.setops import (
    RoundingError,
    correlation_table,
    difference_set,
    distance_set,
    energy,
    energy_brute,
    energy_corr,
    energy_spectral,
    round_to_int,
    translate_profile,
)
from ffdelta.varieties import LineSpec, line_set, sphere


def _brute_difference(space, A, B):
    """Independent O(|A||B|) oracle on coordinate tuples."""
    f = space.field
    out = set()
    for a in A.points:
        ca = space.decode(int(a))
        for b in B.points:
            cb = space.decode(int(b))
            out.add(tuple(f.sub(x, y) for x, y in zip(ca, cb)))
    return out


def _brute_distances(space, A, B):
    f = space.field
    out = set()
    for a in A.points:
        ca = space.decode(int(a))
        for b in B.points:
            cb = space.decode(int(b))
            out.add(space.norm(tuple(f.sub(x, y) for x, y in zip(ca, cb))))
    return out


# ---------------------------------------------------------------------
# Difference sets
# ---------------------------------------------------------------------

def test_difference_full_space():
    sp = Space(Field(3), 2)
    full = sp.full_space()
    assert difference_set(full, full) == full


def test_difference_singletons():
    sp = Space(Field(5), 2)
    A = sp.set_from_points([(2, 3)])
    B = sp.set_from_points([(1, 1)])
    D = difference_set(A, B)
    assert D.card == 1
    assert (1, 2) in D


def test_difference_circle_brute():
    sp = Space(Field(5), 2)
    C = sphere(sp, 1)
    expected = _brute_difference(sp, C, C)
    D = difference_set(C, C)
    assert D.card == len(expected)
    assert {sp.decode(int(i)) for i in D.points} == expected


def test_difference_lower_trivial_bound():
    sp = Space(Field(7), 2)
    for seed in range(5):
        A = sp.random_set(6, seed=seed)
        B = sp.random_set(9, seed=seed + 50)
        assert difference_set(A, B).card >= max(A.card, B.card)


# ---------------------------------------------------------------------
# Distance sets
# ---------------------------------------------------------------------

def test_distance_singleton():
    sp = Space(Field(7), 2)
    A = sp.set_from_points([(3, 4)])
    assert distance_set(A, A) == {0}


@pytest.mark.parametrize("q", [3, 5, 7])
def test_distance_full_space_everything(q):
    """Every field element is a sum of two squares, brute-checked per q."""
    sums = {(x * x + y * y) % q for x in range(q) for y in range(q)}
    assert sums == set(range(q))
    sp = Space(Field(q), 2)
    full = sp.full_space()
    assert distance_set(full, full) == set(range(q))


def test_distance_circle_brute():
    sp = Space(Field(5), 2)
    C = sphere(sp, 1)
    assert distance_set(C, C) == _brute_distances(sp, C, C)


def test_distance_matches_norms_of_difference_set():
    sp = Space(Field(7), 2)
    A = sp.random_set(8, seed=0)
    B = sp.random_set(5, seed=1)
    D = difference_set(A, B)
    via_diff = {sp.norm(int(i)) for i in D.points}
    assert distance_set(A, B) == via_diff


# ---------------------------------------------------------------------
# Correlation tables
# ---------------------------------------------------------------------

def test_correlation_singleton():
    sp = Space(Field(3), 2)
    Z = sp.set_from_points([(0, 0)])
    counts = correlation_table(Z, Z).counts
    assert counts[0] == 1 and counts.sum() == 1


def test_correlation_mass_and_bounds():
    sp = Space(Field(5), 2)
    for seed in range(10):
        A = sp.random_set(7, seed=seed)
        B = sp.random_set(4, seed=seed + 100)
        counts = correlation_table(A, B).counts
        assert counts.sum() == A.card * B.card
        assert counts.min() >= 0
        assert counts.max() <= min(A.card, B.card)


def test_correlation_support_is_difference_set():
    sp = Space(Field(7), 2)
    A = sp.random_set(10, seed=3)
    B = sp.random_set(6, seed=4)
    assert correlation_table(A, B).support_set() == difference_set(A, B)


def test_correlation_counts_translate_intersections():
    sp = Space(Field(5), 2)
    A = sp.random_set(9, seed=7)
    B = sp.random_set(7, seed=8)
    counts = correlation_table(A, B).counts
    for c in range(sp.size):
        assert counts[c] == A.intersect(B.translate(c)).card


# ---------------------------------------------------------------------
# Energy: three independent algorithms
# ---------------------------------------------------------------------

def test_energy_full_space():
    sp = Space(Field(3), 2)
    full = sp.full_space()
    assert energy_corr(full, full) == 3**6 == 729
    assert energy_spectral(full, full) == 729
    assert energy_brute(full, full) == 729


def test_energy_singletons():
    sp = Space(Field(5), 2)
    A = sp.set_from_points([(1, 2)])
    B = sp.set_from_points([(0, 4)])
    assert energy_brute(A, B) == energy_corr(A, B) == energy_spectral(A, B) == 1


@pytest.mark.parametrize("q", [5, 7])
def test_energy_triple_agreement_random(q):
    sp = Space(Field(q), 2)
    rng = np.random.default_rng(q)
    for seed in range(25):
        A = sp.random_set(int(rng.integers(1, 12)), seed=seed)
        B = sp.random_set(int(rng.integers(1, 12)), seed=seed + 1000)
        eb = energy_brute(A, B)
        assert eb == energy_corr(A, B) == energy_spectral(A, B)


def test_energy_triple_agreement_extension_field():
    sp = Space(Field(3, 2), 2)
    for seed in range(10):
        A = sp.random_set(8, seed=seed)
        B = sp.random_set(5, seed=seed + 31)
        assert energy_brute(A, B) == energy_corr(A, B) == energy_spectral(A, B)


def test_energy_upper_bound():
    sp = Space(Field(7), 2)
    for seed in range(10):
        A = sp.random_set(8, seed=seed)
        B = sp.random_set(11, seed=seed + 60)
        lam = energy_corr(A, B)
        assert lam <= min(A.card**2 * B.card, A.card * B.card**2)


def test_difference_energy_inequality_exact():
    sp = Space(Field(5), 2)
    for seed in range(20):
        A = sp.random_set(6, seed=seed)
        B = sp.random_set(9, seed=seed + 77)
        lam = energy_corr(A, B)
        assert difference_set(A, B).card * lam >= A.card**2 * B.card**2


def test_energy_facade_uses_corr():
    sp = Space(Field(5), 2)
    A = sp.random_set(5, seed=1)
    B = sp.random_set(5, seed=2)
    assert energy(A, B) == energy_corr(A, B)


def test_energy_brute_guard():
    sp = Space(Field(5), 2)
    A = sp.random_set(10, seed=0)
    B = sp.random_set(10, seed=1)
    with pytest.raises(ValueError, match="guard"):
        energy_brute(A, B, guard=100)


def test_round_to_int():
    assert round_to_int(4.9999999) == 5
    assert round_to_int(5.2, tol=0.25) == 5
    with pytest.raises(RoundingError):
        round_to_int(5.3, tol=0.25)


@settings(max_examples=20, deadline=None)
@given(
    st.sets(st.integers(0, 24), min_size=1, max_size=10),
    st.sets(st.integers(0, 24), min_size=1, max_size=10),
)
def test_energy_agreement_property(ids_a, ids_b):
    sp = Space(Field(5), 2)
    A = sp.set_from_indices(ids_a)
    B = sp.set_from_indices(ids_b)
    assert energy_brute(A, B) == energy_corr(A, B) == energy_spectral(A, B)


# ---------------------------------------------------------------------
# Translate profiles
# ---------------------------------------------------------------------

def test_profile_line_has_full_parallel_class():
    q = 7
    sp = Space(Field(q), 2)
    L = line_set(sp, LineSpec(0, 0))  # the x-axis
    profile = translate_profile(L, 1)
    assert len(profile.exceptional) == q - 1
    # exceptional translates are exactly the nonzero multiples of (1, 0)
    assert {sp.decode(c) for c in profile.exceptional} == {(t, 0) for t in range(1, q)}
    assert profile.histogram[q] == q  # the parallel class, including c = 0


def test_profile_circle_is_tame():
    sp = Space(Field(5), 2)
    C = sphere(sp, 1)
    profile = translate_profile(C, 4)
    assert profile.exceptional == ()


def test_profile_origin_excluded():
    sp = Space(Field(5), 2)
    Z = sp.set_from_points([(0, 0)])
    assert translate_profile(Z, 1).exceptional == ()


def test_profile_requires_positive_threshold():
    sp = Space(Field(5), 2)
    with pytest.raises(ValueError):
        translate_profile(sp.full_space(), 0)


# ---------------------------------------------------------------------
# Monotonicity
# ---------------------------------------------------------------------

def test_enlarging_a_never_shrinks_outputs():
    sp = Space(Field(7), 2)
    B = sphere(sp, 1)
    small = sp.random_set(5, seed=5)
    grown = small.union(sp.random_set(9, seed=6))
    assert difference_set(grown, B).card >= difference_set(small, B).card
    assert distance_set(small, B) <= distance_set(grown, B)

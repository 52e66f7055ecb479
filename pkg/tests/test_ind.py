import json
import math
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from cobinv.ind import (binom_mod2, evaluate, ind_poly, ind_poly_uncached, ind_table, invariant,
                        is_gray, is_mersenne, period, verify_initial_zeros, verify_periodicity)
from cobinv.profiles import FixedComponent, InvolutionProfile, NormalProfile
from cobinv.symfunc import PolyGF2, V, partitions

GOLDEN = json.loads((Path(__file__).parent / "data" / "ind_table_golden.json").read_text())


def test_table_matches_golden_cells():
    rows = ind_table(16, 4)
    assert len(rows) == 17 and all(len(r) == 5 for r in rows)
    bad = [(n, d) for n in range(17) for d in range(5) if rows[n][d] != GOLDEN["rows"][n][d]]
    assert bad == []


def test_gray_cells():
    got = [[int(is_gray(n, d)) for d in range(5)] for n in range(17)]
    assert got == GOLDEN["gray"]


@given(st.integers(0, 200), st.integers(0, 200))
def test_binom_mod2_matches_comb(n, j):
    assert binom_mod2(n, j) == math.comb(n, j) % 2


def test_period():
    assert [period(d) for d in range(10)] == [2, 2, 4, 4, 8, 8, 8, 8, 16, 16]


def test_mersenne():
    assert [n for n in range(40) if is_mersenne(n)] == [0, 1, 3, 7, 15, 31]


@given(st.integers(0, 64), st.integers(0, 8))
@settings(max_examples=80, deadline=None)
def test_periodicity(n, d):
    assert verify_periodicity(n, d) == 1


@given(st.integers(0, 40), st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_cache_agrees_with_direct(n, d):
    assert ind_poly(n, d) == ind_poly_uncached(n, d)


@given(st.integers(0, 40), st.integers(0, 9))
@settings(max_examples=60, deadline=None)
def test_homogeneous(n, d):
    p = ind_poly(n, d)
    assert not p or p.is_homogeneous(d)


@pytest.mark.parametrize("n", range(0, 20))
def test_low_columns(n):
    # I_{n,0} = (n+1) mod 2 and I_{n,1} = n v1 + n v1 = 0
    assert ind_poly(n, 0) == (PolyGF2.one() if n % 2 == 0 else PolyGF2.zero())
    assert ind_poly(n, 1) == PolyGF2.zero()


@pytest.mark.parametrize("k,m", [(1, 1), (1, 3), (2, 1), (2, 3), (3, 1)])
def test_initial_zeros(k, m):
    assert verify_initial_zeros(k, m) == 1


def test_initial_zeros_rejects_even_m():
    with pytest.raises(ValueError):
        verify_initial_zeros(2, 2)


def test_negative_arguments():
    with pytest.raises(ValueError):
        ind_poly(-1, 0)
    with pytest.raises(ValueError):
        ind_table(-1, 2)


# --- evaluation and the invariant ---------------------------------------------------


def test_evaluate_requires_matching_degree():
    prof = NormalProfile(2, {(2,): 1, (1, 1): 0})
    assert evaluate(V(2), prof) == 1
    assert evaluate(V(1) ** 2 + V(2), prof) == 1
    assert evaluate(PolyGF2.zero(), prof) == 0
    with pytest.raises(ValueError):
        evaluate(V(1), prof)


def test_profile_must_be_total():
    with pytest.raises(ValueError):
        NormalProfile(2, {(2,): 1})
    with pytest.raises(ValueError):
        NormalProfile(0, {(): 0})


def test_component_dim_below_ambient():
    with pytest.raises(ValueError):
        InvolutionProfile(2, (FixedComponent(NormalProfile.trivial(2)),))


def profiles_of_dim(d):
    return st.lists(st.integers(0, 1), min_size=len(partitions(d)), max_size=len(partitions(d))).map(
        lambda bits: NormalProfile(d, dict(zip(partitions(d), bits)) if d else {(): 1}))


components = st.integers(0, 3).flatmap(profiles_of_dim).map(FixedComponent)
inv_profiles = st.lists(components, max_size=5).map(lambda cs: InvolutionProfile(4, tuple(cs)))


@given(inv_profiles, inv_profiles, st.integers(4, 30))
@settings(max_examples=60, deadline=None)
def test_invariant_additive(a, b, n):
    assert invariant(n, a.disjoint_union(b)) == invariant(n, a) ^ invariant(n, b)


@given(inv_profiles, st.integers(4, 30))
@settings(max_examples=40, deadline=None)
def test_invariant_periodic(a, n):
    assert invariant(n, a) == invariant(n + 4, a)


def test_points_count_mod_two_in_even_dimension():
    pts = InvolutionProfile(3, tuple(FixedComponent(NormalProfile.point()) for _ in range(3)))
    assert invariant(4, pts) == 1
    assert invariant(5, pts) == 0


def test_json_round_trip():
    prof = InvolutionProfile(3, (FixedComponent(NormalProfile(2, {(2,): 0, (1, 1): 1}), "S"),
                                 FixedComponent(NormalProfile.point(), "p")), euler_parity=0)
    assert InvolutionProfile.from_json(json.loads(json.dumps(prof.to_json()))) == prof

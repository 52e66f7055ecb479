import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from cobinv.construction import (ConstructionError, ConstructionPlan, certify, cobordism_rank,
                                 coverage_report, embed_step, empty_extras,
                                 ensure_even_characteristic, feasibility_requirement,
                                 random_extras, random_profile, twist_step)
from cobinv.ind import invariant
from cobinv.polytope import dodecahedron, shipped_path
from cobinv.profiles import FixedComponent, InvolutionProfile, NormalProfile
from cobinv.smallcover import census, from_bits, load_coloring

LAT = dodecahedron()
CENSUS = {r.g: r.profile for r in census(LAT, load_coloring(LAT, shipped_path("dodecahedron_coloring.json")))}
TAU_011 = CENSUS[from_bits((0, 1, 1))]
TAU_001 = CENSUS[from_bits((0, 0, 1))]
POINT = InvolutionProfile(4, (FixedComponent(NormalProfile.point(), "p"),))


def test_embed_with_no_extras_has_zero_invariant():
    out = embed_step(TAU_011, InvolutionProfile(4))
    assert out.ambient_dim == 4
    assert [c.dim for c in out.components] == [3]
    assert out.components[0].distinguished
    assert invariant(4, out) == 0


def test_embed_with_a_point():
    assert invariant(4, embed_step(TAU_011, POINT)) == 1


def test_embed_rejects_dim_zero_and_large_extras():
    with pytest.raises(ConstructionError):
        embed_step(InvolutionProfile(0), InvolutionProfile(1))
    big = InvolutionProfile(5, (FixedComponent(NormalProfile.trivial(4)),))
    with pytest.raises(ConstructionError):
        embed_step(TAU_011, big)


def test_twist_restores_the_old_fixed_set():
    embedded = embed_step(TAU_011, InvolutionProfile(4))
    out = twist_step(TAU_011, embedded)
    assert out.ambient_dim == 4
    assert [c.profile for c in out.components] == [c.profile for c in TAU_011.components]
    assert invariant(4, out) == 1


def test_twist_needs_the_distinguished_component():
    with pytest.raises(ConstructionError):
        twist_step(TAU_011, POINT)


def test_certify_forces_a_twist():
    plan = certify(TAU_011, 4, [InvolutionProfile(4)])
    assert [s.kind for s in plan.steps] == ["embed", "twist"]
    assert invariant(4, plan.final) == 1


def test_certify_with_points():
    extras = [InvolutionProfile(4, (FixedComponent(NormalProfile.point()),)),
              InvolutionProfile(5, (FixedComponent(NormalProfile.point()),))]
    plan = certify(TAU_001, 5, extras)
    assert plan.final.ambient_dim == 5
    assert invariant(5, plan.final) == 1
    # I_{5,0} = 0, so the points add nothing and every embedding is undone by a twist
    assert [s.kind for s in plan.steps] == ["embed", "twist", "embed", "twist"]


def test_certify_errors():
    with pytest.raises(ConstructionError):
        certify(TAU_011, 5, empty_extras(3, 5))      # invariant 0 at n = 5
    with pytest.raises(ConstructionError):
        certify(TAU_011, 2, [])                       # start above target
    with pytest.raises(ConstructionError):
        certify(TAU_011, 8, empty_extras(3, 6))       # wrong number of extras


@given(st.integers(0, 10 ** 6), st.integers(4, 14))
@settings(max_examples=40, deadline=None)
def test_certify_survives_adversarial_extras(seed, n):
    starts = [p for p in CENSUS.values() if invariant(n, p) == 1]
    for start in starts:
        plan = certify(start, n, random_extras(seed, 3, n))
        assert plan.final.ambient_dim == n
        assert invariant(n, plan.final) == 1
        dims = [s.ambient_dim for s in plan.steps if s.kind == "embed"]
        assert dims == list(range(4, n + 1))
        for a, b in zip(plan.steps, plan.steps[1:]):
            assert not (a.kind == "twist" and b.kind == "twist")


@given(st.integers(0, 10 ** 6), st.integers(3, 9))
@settings(max_examples=40, deadline=None)
def test_embed_adds_nothing_and_twist_is_additive(seed, m):
    rng = random.Random(seed)
    prev = random_profile(rng, m, m - 1, rng.randint(0, 4))
    extra = random_profile(rng, m + 1, m, rng.randint(0, 4))
    embedded = embed_step(prev, extra)
    for n in range(m + 1, m + 9):
        assert invariant(n, embedded) == invariant(n, extra)
        twisted = twist_step(prev, embedded)
        assert invariant(n, twisted) == invariant(n, prev) ^ invariant(n, extra)


def test_twist_keeps_parity():
    extra = InvolutionProfile(4, euler_parity=1)
    embedded = embed_step(TAU_011, extra)
    assert embedded.euler_parity == 1
    assert twist_step(TAU_011, embedded).euler_parity == 1


def test_random_extras_are_seeded():
    assert random_extras(7, 3, 10) == random_extras(7, 3, 10)
    assert random_extras(7, 3, 10) != random_extras(8, 3, 10)
    assert all(c.dim <= e.ambient_dim - 1 for e in random_extras(1, 3, 12) for c in e.components)


def test_plan_json_is_replayable():
    plan = certify(TAU_011, 8, random_extras(3, 3, 8))
    data = json.loads(plan.dumps())
    extras = [InvolutionProfile.from_json(s["extra"]) for s in data["steps"] if s["kind"] == "embed"]
    again = certify(InvolutionProfile.from_json(data["start"]), 8, extras)
    assert again.dumps() == plan.dumps()
    assert data["final_invariant"] == 1
    assert all("invariant_after" in s for s in data["steps"])


# --- parity ledger ------------------------------------------------------------------


def test_even_chi_at_four():
    plan = ensure_even_characteristic(certify(TAU_011, 4, empty_extras(3, 4)))
    assert plan.final.euler_parity == 0
    assert "[RP4 + RP2xRP2]" in plan.report
    assert all(s.note for s in plan.steps if s.kind == "embed")
    assert [s.kind for s in plan.steps] == ["embed", "twist"]


def test_even_chi_at_six_is_not_enough():
    plan = ensure_even_characteristic(certify(TAU_001, 6, empty_extras(3, 6)))
    assert "not determined" in plan.report
    assert plan.final.euler_parity == 0


def test_cobordism_ranks():
    # OEIS A000041 restricted to parts not of the form 2^k - 1
    assert [cobordism_rank(n) for n in range(1, 9)] == [0, 1, 0, 2, 1, 3, 1, 5]


# --- coverage and feasibility ---------------------------------------------------------


def test_coverage_tau_011():
    rep = coverage_report(TAU_011, 40)
    assert [(c["residue"], c["modulus"]) for c in rep["classes"]] == [(0, 4), (2, 4)]
    assert 4 in rep["values"] and 8 in rep["values"]


def test_coverage_tau_001():
    rep = coverage_report(TAU_001, 40)
    assert [(c["residue"], c["from"]) for c in rep["classes"]] == [(1, 5), (2, 6)]


@pytest.mark.parametrize("g", range(1, 8))
def test_no_three_manifold_reaches_3_mod_4(g):
    rep = coverage_report(CENSUS[g], 35)
    assert all(n % 4 != 3 for n in rep["values"])


def test_coverage_flags_mersenne_dimensions():
    prof = InvolutionProfile(5, (FixedComponent(NormalProfile(4, {p: 1 for p in
                             NormalProfile.trivial(4).charnums})),))
    rep = coverage_report(prof, 40)
    assert rep["modulus"] == 8
    assert set(rep["phi_undefined"]) <= {7, 15, 31}


@pytest.mark.parametrize("n,k,start", [(5, 1, 3), (9, 1, 3), (11, 2, 5), (19, 2, 5), (23, 3, 9),
                                       (47, 4, 17)])
def test_feasibility(n, k, start):
    req = feasibility_requirement(n)
    assert (req.k, req.start_dim) == (k, start)
    assert f"w1^{2 ** k}" in req.condition


@pytest.mark.parametrize("n", [4, 7, 15, 31])
def test_feasibility_rejects(n):
    with pytest.raises(ConstructionError):
        feasibility_requirement(n)

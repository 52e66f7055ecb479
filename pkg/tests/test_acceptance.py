"""End-to-end acceptance checks, one test per criterion.

Each test prints a PASS/FAIL line; the lines are repeated in the pytest
terminal summary under "acceptance criteria".  Timings are measured from
cold caches.
"""
import json
import time
from math import comb
from pathlib import Path

import pytest

from cobinv import ind, symfunc
from cobinv.construction import (certify, coverage_report, ensure_even_characteristic,
                                 random_extras)
from cobinv.ind import ind_table, invariant, is_gray, verify_initial_zeros, verify_periodicity
from cobinv.oracle import cross_check, default_catalog, phi_of, product, real_projective
from cobinv.polytope import dodecahedron
from cobinv.smallcover import (ELEMENTS, census, find_numbering, fmt, from_bits, reference_multiset,
                               reference_target)
from cobinv.symfunc import PolyGF2, V, dual_class, expand_in_variables, power_sum

GOLDEN = json.loads((Path(__file__).parent / "data" / "ind_table_golden.json").read_text())
TARGETS = [n for n in range(4, 15) if n % 4 != 3]


def cold():
    for f in (symfunc.partitions, symfunc._dual_class, symfunc.power_sum, ind._ind_poly_reduced):
        f.cache_clear()


@pytest.fixture(scope="module")
def derived_census():
    lat = dodecahedron()
    col = find_numbering(lat, reference_multiset(), reference_target())
    return lat, col, {r.g: r for r in census(lat, col)}


def test_criterion_1_table(report):
    cold()
    t = time.perf_counter()
    rows = ind_table(16, 4)
    gray = [[int(is_gray(n, d)) for d in range(5)] for n in range(17)]
    elapsed = time.perf_counter() - t
    matched = sum(rows[n][d] == GOLDEN["rows"][n][d] for n in range(17) for d in range(5))
    ok = matched == 85 and gray == GOLDEN["gray"] and elapsed < 1.0
    assert report("1 table of I_{n,d}, n<=16, d<=4", ok, f"{matched}/85 cells, {elapsed:.3f}s")


def test_criterion_2_initial_zeros(report):
    cold()
    t = time.perf_counter()
    results = {(k, m): verify_initial_zeros(k, m) for k in (1, 2, 3, 4) for m in (1, 3, 5)}
    elapsed = time.perf_counter() - t
    ok = all(results.values()) and elapsed < 30
    assert report("2 initial zeros at n = m 2^k - 1", ok, f"{sum(results.values())}/12, {elapsed:.2f}s")


def test_criterion_3_periodicity(report):
    failures = [(n, d) for n in range(33) for d in range(9) if not verify_periodicity(n, d)]
    assert report("3 periodicity n<=32, d<=8", not failures, f"{len(failures)} failures")


def test_criterion_4_dodecahedral_census(report):
    lat = dodecahedron()
    t = time.perf_counter()
    col = find_numbering(lat, reference_multiset(), reference_target())
    search = time.perf_counter() - t
    t = time.perf_counter()
    rows = census(lat, col)
    census_time = time.perf_counter() - t
    want = reference_target()
    cells = sum(a == b for r in rows for a, b in zip(r.counts(), want[r.g]))
    surfaces = [i for r in rows for i in r.surface_info]
    shape = all(i.euler_char == -1 and not i.orientable for i in surfaces)
    ok = cells == 28 and len(rows) == 7 and shape and search < 300 and census_time < 1
    assert report("4 fixed-point census of the dodecahedral small cover", ok,
                  f"{cells}/28 cells, chi=-1 non-orientable: {shape}, "
                  f"search {search:.2f}s, census {census_time:.3f}s")


def test_criterion_5_invariants(report, derived_census):
    _, _, rows = derived_census
    t011, t001 = rows[from_bits((0, 1, 1))].profile, rows[from_bits((0, 0, 1))].profile
    good = all(invariant(4 * m, t011) == 1 and invariant(4 * m + 1, t001) == 1
               and invariant(4 * m + 2, t001) == 1 for m in range(1, 9))
    hits_3mod4 = [(fmt(g), n) for g, r in rows.items() for n in range(4, 36)
                  if n % 4 == 3 and invariant(n, r.profile) == 1]
    ok = good and not hits_3mod4
    assert report("5 invariants of the census profiles", ok,
                  f"4m/4m+1/4m+2 for m<=8: {good}, hits at 3 mod 4: {len(hits_3mod4)}")


def test_criterion_6_oracle(report):
    cases = default_catalog()
    results = [cross_check(n, spec)[0] for *_, n, spec in cases]
    ok = len(cases) >= 40 and all(results)
    assert report("6 oracle on projective bundles", ok, f"{sum(results)}/{len(cases)} cases")


def test_criterion_7_phi_sanity(report):
    rp = real_projective
    values = (phi_of(rp(2)), phi_of(rp(4)), phi_of(product(rp(2), rp(2))))
    assert report("7 phi on RP2, RP4, RP2xRP2", values == (1, 1, 0), f"got {values}")


def test_criterion_8_certifier(report, derived_census):
    _, _, rows = derived_census
    runs = failures = 0
    parity_ok = True
    for g in ELEMENTS:
        start = rows[g].profile
        reachable = set(coverage_report(start, 14)["values"])
        for n in TARGETS:
            if n not in reachable:
                continue
            for seed in range(100):
                plan = certify(start, n, random_extras(1000 * n + seed, start.ambient_dim, n))
                runs += 1
                if plan.final.ambient_dim != n or invariant(n, plan.final) != 1:
                    failures += 1
                even = ensure_even_characteristic(plan)
                if even.final.euler_parity != 0 or invariant(n, even.final) != 1:
                    parity_ok = False
    at4 = ensure_even_characteristic(certify(rows[from_bits((0, 1, 1))].profile, 4,
                                             random_extras(0, 3, 4)))
    named = "[RP4 + RP2xRP2]" in at4.report
    ok = runs > 0 and failures == 0 and parity_ok and named
    assert report("8 certifier under adversarial extras", ok,
                  f"{runs} runs, {failures} failures, even chi: {parity_ok}, class at 4 named: {named}")


def test_criterion_9_identities(report):
    bad = []
    for d in range(1, 13):
        acc = PolyGF2.zero()
        for j in range(d + 1):
            acc = acc + (PolyGF2.one() if j == d else V(d - j)) * dual_class(j)
        if acc:
            bad.append(("inverse", d))
        newton = power_sum(d) + (V(d) if d % 2 else PolyGF2.zero())
        for i in range(1, d):
            newton = newton + V(i) * power_sum(d - i)
        if newton:
            bad.append(("newton", d))
    for j in range(1, 11):
        p = expand_in_variables(power_sum(j), j).terms()
        if p != {tuple(j if k == i else 0 for k in range(j)) for i in range(j)}:
            bad.append(("p", j))
        h = expand_in_variables(dual_class(j), j)
        # h_j in j variables has C(2j-1, j) monomials, each with coefficient 1
        if len(h) != comb(2 * j - 1, j) or any(sum(t) != j for t in h.terms()):
            bad.append(("vbar", j))
    assert report("9 symmetric-function identities", not bad, f"{len(bad)} failures")


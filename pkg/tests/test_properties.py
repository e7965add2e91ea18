from fractions import Fraction as F

import numpy as np
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from qojets import (
    Kind, build_graph, classify, component, component_set, contains, gamma_from_lambda,
    graphs_equal, jet_expand, lambda_from_gamma, lct_closed_form, lct_mustata, profile,
    recover_invariants, sample_point, verify_component,
)
from qojets.components import is_empty_at, j_indices, level
from qojets.generate import random_surface
from qojets.graph import export, from_json, recovery_depth
from qojets.oracle import check_point, quasi_degree
from qojets.surface import RegFan, nu_in_lattice, pairing

settings.register_profile("qojets", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qojets")

surfaces = st.integers(0, 2 ** 32 - 1).map(random_surface)
levels = st.integers(1, 40)


def _reference_minimal(data, m):
    """F_m straight from its definition, point by point."""
    box = [(a, b) for a in range(m + 1) for b in range(m + 1)]
    kinds = {nu: classify(data, nu, m) for nu in box}
    hl = [nu for nu in box if kinds[nu] in (Kind.Hyperplane, Kind.LatticeEq)]
    pmin = [nu for nu in hl
            if not any(o != nu and o[0] <= nu[0] and o[1] <= nu[1] for o in hl)]
    pool = pmin + [nu for nu in box if kinds[nu] is Kind.LatticeLess]

    def below(o, nu):
        if o == nu or not (o[0] <= nu[0] and o[1] <= nu[1]):
            return False
        fan = data.reg_fan(j_indices(data, o, m)[1])
        return fan.contains((nu[0] - o[0], nu[1] - o[1]))

    return sorted(nu for nu in pool if not any(below(o, nu) for o in pool))


# surface invariants -----------------------------------------------------

@given(surfaces)
def test_round_trip(data):
    assert lambda_from_gamma(gamma_from_lambda(list(data.lam))) == list(data.lam)
    assert tuple(gamma_from_lambda(list(data.lam))) == data.gamma


@given(surfaces)
def test_index_chain(data):
    e, n = data.e, data.n
    assert e[-1] == 1
    assert all(e[j - 1] == n[j - 1] * e[j] for j in range(1, data.g + 1))
    assert all(k > 1 for k in n)


@given(surfaces)
def test_tower_relations(data):
    for j, (alpha, r) in enumerate(data.tower.relations, start=1):
        assert min(alpha) >= 0
        assert all(0 <= ri < data.n[i] for i, ri in enumerate(r))
        lhs = tuple(data.n[j - 1] * x for x in data.gamma[j - 1])
        rhs = [F(alpha[0]), F(alpha[1])]
        for i, ri in enumerate(r, start=1):
            rhs[0] += ri * data.gamma[i - 1][0]
            rhs[1] += ri * data.gamma[i - 1][1]
        assert lhs == tuple(rhs)
    assert all(f.degree("z") == int(np.prod(data.n[:j]))
               for j, f in enumerate(data.tower.polys))


@given(surfaces)
def test_gamma_growth(data):
    for j in range(1, data.g):
        a = tuple(data.n[j - 1] * x for x in data.gamma[j - 1])
        b = data.gamma[j]
        assert b[0] >= a[0] and b[1] >= a[1] and b != a


@given(surfaces)
def test_g1_g2_and_fans(data):
    g, g1, g2 = data.g, data.g1, data.g2
    if data.c == 1:
        assert g1 == g2 == g + 1
    else:
        assert data.gamma_at(g1)[1] == 0 < data.gamma[g1][1]
        assert (g2 == g1 + 1) == (data.gamma[g1][1] == F(1, data.n[g1]))
    n1 = data.n[0]
    for j in range(1, g + 1):
        if j <= g2:
            diag = data.gamma[0] == (F(1, n1), F(1, n1)) and j == 1
            assert data.reg_fan(j) is (RegFan.Rho1Rho2 if diag else RegFan.Rho2)
        else:
            assert data.reg_fan(j) is RegFan.OriginOnly


# profiles and classification --------------------------------------------

@given(surfaces, st.integers(0, 12), st.integers(0, 12))
def test_profile_order(data, a, b):
    p = profile(data, (a, b))
    l = p.l
    assert l[p.c_nu] == 0
    assert all(l[k] <= l[k + 1] for k in range(data.g))
    if p.c_nu < data.g:
        assert l[p.c_nu + 1] > 0
    for i in range(min(p.i_nu, data.g) + 1):
        assert F(l[i]).denominator == 1
    assert p.c_nu <= p.m_nu or p.c_nu == data.g
    assert p.in_n[data.g] == (p.i_nu == data.g + 1)


@given(surfaces, levels)
def test_grid_matches_pointwise(data, m):
    lev = level(data, m)
    for (a, b), kind in lev.kinds.items():
        assert kind is classify(data, (a, b), m)
        if kind.alive:
            j, jp = j_indices(data, (a, b), m)
            assert (int(lev.j[a, b]), lev.jp((a, b))) == (j, jp)


@settings(max_examples=25)
@given(surfaces, st.integers(1, 16))
def test_minimal_matches_definition(data, m):
    assert [c.nu for c in component_set(data, m)] == _reference_minimal(data, m)


@given(surfaces, st.integers(1, 25))
def test_antichain_and_cover(data, m):
    comps = [c.nu for c in component_set(data, m)]
    assert comps
    for u in comps:
        assert not any(v != u and contains(data, v, u, m) for v in comps)
    assert classify(data, (m, m), m) is Kind.Hyperplane
    lev = level(data, m)
    alive = [nu for nu, k in lev.kinds.items() if k.alive]
    for nu in alive[:: max(1, len(alive) // 40)]:
        assert any(contains(data, u, nu, m) for u in comps)


@given(surfaces)
def test_codim_recurrence(data):
    for m in range(2, 41):
        for nu in {c.nu for c in component_set(data, m)} | {c.nu for c in component_set(data, m - 1)}:
            if not (classify(data, nu, m - 1).alive and classify(data, nu, m).alive):
                continue
            j = j_indices(data, nu, m - 1)[0]
            step = component(data, nu, m).codim - component(data, nu, m - 1).codim
            assert step == (1 if m % data.e[j] == 0 else 0)


@given(surfaces)
def test_emptiness_boundary(data):
    for nu in ((a, b) for a in range(13) for b in range(13)):
        p = profile(data, nu)
        if not (p.i_nu <= data.g and p.in_n[1] and data.in_sigma_sing(nu)):
            continue
        edge = int(p.l[p.i_nu])
        if edge < 1:
            continue
        assert classify(data, nu, edge - 1) is not Kind.Empty
        assert classify(data, nu, edge) is Kind.Empty
        assert is_empty_at(data, nu, edge)


@given(surfaces, levels)
def test_hyperplane_criterion(data, m):
    for c in component_set(data, m):
        total = 3 * (m + 1)
        assert (c.kind is Kind.Hyperplane) == (c.embdim + c.codim == total)
        assert (c.kind is Kind.Hyperplane) == (c.j == 0)


@given(surfaces, st.integers(1, 6))
def test_stability(data, q):
    # first (q, 0) and (0, q) style vectors in N_g stay components once born
    for nu in ((q, 0), (0, q), (q, q)):
        if not (nu_in_lattice(data, nu, data.g) and data.in_sigma_sing(nu)):
            continue
        lg = int(profile(data, nu).l[data.g])
        if lg < 1 or lg > 60:
            continue
        if nu in {c.nu for c in component_set(data, lg)}:
            for m in (lg + 1, lg + 2, lg + 5):
                assert nu in {c.nu for c in component_set(data, m)}


# oracle ------------------------------------------------------------------

@settings(max_examples=15)
@given(surfaces, st.integers(1, 10), st.integers(0, 3))
def test_verify_random_component(data, m, pick):
    comps = component_set(data, m)
    c = comps[pick % len(comps)]
    assert verify_component(data, c.nu, m, trials=3, seed=pick).passed


@settings(max_examples=15)
@given(surfaces, st.integers(0, 5))
def test_jet_expand_quasi_homogeneous(data, m):
    f = data.tower.polys[min(1, data.g)]
    for l, Fl in enumerate(jet_expand(f, m)):
        assert quasi_degree(Fl) in (l, -1)
        # v^(l) appears in F^(l) and never earlier
        assert ("z", l) in Fl.variables()
        assert all(k <= l for (_, k) in Fl.variables())


@settings(max_examples=15)
@given(surfaces, st.integers(1, 10), st.integers(0, 3))
def test_truncation_functorial(data, m, pick):
    comps = component_set(data, m + 1)
    c = comps[pick % len(comps)]
    nu = (min(c.nu[0], m), min(c.nu[1], m))
    assume(nu == c.nu and classify(data, nu, m).alive)
    jet = sample_point(data, nu, m + 1, seed=pick).truncate(m)
    rep = check_point(data, jet, component(data, nu, m).codim)
    assert rep.vanishing and rep.orders


# graphs ------------------------------------------------------------------

@settings(max_examples=20)
@given(surfaces, st.integers(2, 30))
def test_graph_structure(data, m_max):
    g = build_graph(data, m_max, "gamma")
    down = g.parents()
    assert all(a[0] == b[0] + 1 for a, b in g.edges)
    for v in g.vertices():
        if v.m > 1:
            assert v.key in down   # every vertex truncates into some component
    gp = build_graph(data, m_max, "gprime")
    up = gp.children()
    for m in range(1, m_max):
        lev = level(data, m)
        upper = {v.nu for v in gp.levels[m + 1]}
        for v in gp.levels[m]:
            if v.kind == "L<":
                j = int(lev.j[v.nu])
                column = [a for a in upper if a[0] == v.nu[0] and a[1] >= v.nu[1]]
                if (j <= data.g2 and column) or (j > data.g2 and v.nu in upper):
                    assert len(up.get(v.key, [])) == 1
    assert from_json(export(gp, "json")).edges == gp.edges
    assert graphs_equal(gp, build_graph(data, m_max, "gprime"))


@settings(max_examples=12)
@given(surfaces)
def test_recover_invariants(data):
    depth = recovery_depth(data)
    assume(depth <= 160)
    r = recover_invariants(build_graph(data, depth))
    assert r == {"n": data.degree, "n_i": list(data.n), "e_i": list(data.e), "g": data.g}


# lct ---------------------------------------------------------------------

@settings(max_examples=25)
@given(surfaces)
def test_lct_routes_agree(data):
    closed = lct_closed_form(data)
    mus = lct_mustata(data)
    assert closed.value == mus.value
    assert 0 < closed.value <= 1
    nu = closed.witness_nu
    stage = 2 if not closed.monomial_contributed else 1
    assert nu[1] == 0 and nu_in_lattice(data, nu, stage)
    if mus.witness_nu is not None:
        assert mus.witness_nu[1] == 0
    diag = data.lam[0] == (F(1, data.n[0]), F(1, data.n[0]))
    assert closed.monomial_contributed == (not (data.g > 1 and diag))

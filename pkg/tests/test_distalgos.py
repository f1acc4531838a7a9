import random
from fractions import Fraction

import pytest

from graphdecomp import (DisconnectedGraphError, FamilySpec, build_graph,
                         betweenness_nd, betweenness_split,
                         eccentricities_modular, eccentricities_qq3,
                         eccentricities_split, gen_family,
                         hyperbolicity_mw_gate, hyperbolicity_nd,
                         hyperbolicity_qq3, hyperbolicity_split,
                         modular_decomposition, modular_width, nd_partition,
                         oracle_betweenness, oracle_eccentricities,
                         oracle_hyperbolicity, random_degenerate_split_tree,
                         random_instance, split_decomposition, split_width,
                         substitute)
from graphdecomp.distances import Half

from conftest import complete, connected_er, cycle, path, star


def mixed_connected_instances(rng, count, max_n, families=None):
    families = families or ("er", "distance-hereditary", "cograph",
                            "substitution", "thin-spider", "thick-spider",
                            "qq3-mix", "cycle", "co-cycle")
    out = []
    for i in range(count):
        fam = families[i % len(families)]
        n = rng.randint(4, max_n if fam != "er" else min(max_n, 40))
        out.append(random_instance(fam, n, rng).graph)
    return out


# -- eccentricities ----------------------------------------------------------


def test_ecc_split_known_values():
    c5 = cycle(5)
    assert eccentricities_split(c5, split_decomposition(c5)) == [2] * 5
    # star with a pendant path grafted through a split
    g = build_graph(6, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])
    got = eccentricities_split(g, split_decomposition(g))
    assert got == oracle_eccentricities(g)


def test_ecc_modular_cograph_bound(rng):
    for _ in range(10):
        g = random_instance("cograph", rng.randint(4, 40), rng).graph
        ecc = eccentricities_modular(g, modular_decomposition(g))
        assert max(ecc) <= 2


def test_ecc_complete_graph():
    g = complete(7)
    assert eccentricities_modular(g, modular_decomposition(g)) == [1] * 7


def test_ecc_rejects_disconnected():
    g = build_graph(4, [(0, 1)])
    with pytest.raises(DisconnectedGraphError):
        eccentricities_split(g, split_decomposition(g))
    with pytest.raises(DisconnectedGraphError):
        eccentricities_modular(g, modular_decomposition(g))


def test_ecc_qq3_chain_formulas():
    gg = gen_family(FamilySpec(kind="SpikedPk", k=8, with_x=True), 0)
    ecc = eccentricities_qq3(gg.graph, modular_decomposition(gg.graph))
    roles = gg.annotations["chain"]["roles"]
    assert ecc[roles["x"]] == 6                      # k - 2
    assert ecc[roles["v1"]] == 7
    gg = gen_family(FamilySpec(kind="SpikedQk", k=8, zs=(2,)), 0)
    ecc = eccentricities_qq3(gg.graph, modular_decomposition(gg.graph))
    roles = gg.annotations["chain"]["roles"]
    assert [ecc[roles[f"v{i}"]] for i in (1, 3, 5)] == [3, 3, 3]
    assert ecc[roles["v7"]] == 2 and ecc[roles["z2"]] == 2


def test_ecc_all_methods_equal_oracle(rng):
    for g in mixed_connected_instances(rng, 60, 60):
        want = oracle_eccentricities(g)
        md = modular_decomposition(g)
        assert eccentricities_split(g, split_decomposition(g)) == want
        assert eccentricities_modular(g, md) == want
        assert eccentricities_qq3(g, md) == want
        assert max(want) <= max(modular_width(md), 2)    # diameter corollary


# -- hyperbolicity -----------------------------------------------------------


def test_hyp_tree_is_zero(rng):
    edges = [(i, rng.randrange(i)) for i in range(1, 12)]
    g = build_graph(12, edges)
    assert hyperbolicity_split(g, split_decomposition(g)) == Half(0)


def test_hyp_split_c4_across_a_split():
    # two C5s glued along a split with both boundaries of size two:
    # neither side is a clique, so the gap term forces delta >= 1
    edges = [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]
    edges += [(u, v) for u in (0, 3) for v in (4, 7)]
    g = build_graph(8, edges)
    st = split_decomposition(g)
    got = hyperbolicity_split(g, st)
    assert got == oracle_hyperbolicity(g)
    assert got >= Half(2)


def test_hyp_mw_gate():
    sub = substitute(cycle(12), [build_graph(2, [(0, 1)])] * 12)
    gate, val = hyperbolicity_mw_gate(sub, modular_decomposition(sub))
    assert gate and val == oracle_hyperbolicity(sub)
    cog = random_instance("cograph", 20, random.Random(5)).graph
    gate, val = hyperbolicity_mw_gate(cog, modular_decomposition(cog))
    assert not gate and val is None
    sub5 = substitute(cycle(5), [build_graph(2, [(0, 1)])] * 5)
    gate, val = hyperbolicity_mw_gate(sub5, modular_decomposition(sub5))
    assert not gate    # delta(C5) = 1 fails the strict gate


def test_hyp_qq3_class_values():
    thin = gen_family(FamilySpec(kind="ThinSpider", k=4), 0).graph
    assert hyperbolicity_qq3(thin, modular_decomposition(thin)) == Half(0)
    cc8 = gen_family(FamilySpec(kind="CoCycle", n=8), 0).graph
    assert hyperbolicity_qq3(cc8, modular_decomposition(cc8)) == Half(2)
    assert oracle_hyperbolicity(cc8) == Half(2)


def test_hyp_all_methods_equal_oracle(rng):
    for g in mixed_connected_instances(rng, 50, 26):
        if g.n > 30:
            continue
        want = oracle_hyperbolicity(g)
        md = modular_decomposition(g)
        assert hyperbolicity_split(g, split_decomposition(g)) == want
        assert hyperbolicity_nd(g, nd_partition(g)) == want
        assert hyperbolicity_qq3(g, md) == want
        gate, val = hyperbolicity_mw_gate(g, md)
        if gate:
            assert val == want
        sw = split_width(split_decomposition(g))
        assert want <= max(Half(2), Half.of_int((sw - 1) // 2))
        diam = max(oracle_eccentricities(g))
        assert want <= Half.of_int(diam // 2)


# -- betweenness -------------------------------------------------------------


def test_bc_star_closed_form():
    g = star(4)
    got = betweenness_split(g, split_decomposition(g))
    assert got == [Fraction(6), 0, 0, 0, 0]


def test_bc_kn_zero():
    g = complete(6)
    assert betweenness_nd(g, nd_partition(g)) == [Fraction(0)] * 6


def test_bc_weighted_all_ones_is_brandes(rng):
    from graphdecomp.bc import weighted_component_bc
    for _ in range(20):
        g = connected_er(rng, rng.randint(2, 12))
        ones = [1] * g.n
        got = weighted_component_bc([list(r) for r in g.adj], ones, ones)
        assert got == oracle_betweenness(g)


def test_bc_methods_equal_oracle(rng):
    for g in mixed_connected_instances(rng, 50, 40):
        want = oracle_betweenness(g)
        assert betweenness_split(g, split_decomposition(g)) == want
        assert betweenness_nd(g, nd_partition(g)) == want


def test_bc_planted_twin_classes(rng):
    for _ in range(10):
        q = connected_er(rng, rng.randint(2, 5))
        parts = [complete(rng.randint(1, 4)) if rng.random() < 0.5
                 else build_graph(rng.randint(1, 4), [])
                 for _ in range(q.n)]
        g = substitute(q, parts)
        if not g.is_connected():
            continue
        assert betweenness_nd(g, nd_partition(g)) == oracle_betweenness(g)


# -- kernel consistency ------------------------------------------------------


def test_split_and_modular_agree_everywhere(rng):
    for _ in range(25):
        st = random_degenerate_split_tree(rng.randint(3, 50), rng)
        g = st.recompose()
        want = oracle_eccentricities(g)
        assert eccentricities_split(g, st) == want
        assert eccentricities_modular(g, modular_decomposition(g)) == want

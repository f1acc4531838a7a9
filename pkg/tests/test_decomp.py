import json
from itertools import combinations

import pytest

from graphdecomp import (FamilySpec, GraphError, build_graph,
                         classify_prime_graph, effective_q, gen_family,
                         is_module, modular_decomposition, modular_width,
                         nd_partition, quotient_graph,
                         random_degenerate_split_tree, split_decomposition,
                         split_tree_from_modular, split_tree_from_nd,
                         split_width, substitute)
from graphdecomp.classify import (DISC_COCYCLE, DISC_CYCLE, SMALL_PRIME,
                                  SPIKED_PK, SPIKED_QK, THICK_SPIDER,
                                  THIN_SPIDER, is_prime)
from graphdecomp.modular import FALSE_TWINS, PRIME, TRUE_TWINS
from graphdecomp.splitdec import STAR, is_marker

from conftest import complete, connected_er, cycle, path, star


# -- modular decomposition ---------------------------------------------------


def test_cograph_has_no_prime_nodes():
    g = gen_family(FamilySpec(kind="Cograph", n=20), 3).graph
    md = modular_decomposition(g)
    assert all(node.kind != PRIME for node in md.iter_nodes())
    assert modular_width(md) == 2


def test_p4_is_prime():
    md = modular_decomposition(path(4))
    assert md.kind == PRIME and modular_width(md) == 4


def test_substitution_recovers_modules():
    c5 = cycle(5)
    parts = [build_graph(2, [(0, 1)])] * 5
    g = substitute(c5, parts)
    md = modular_decomposition(g)
    assert md.kind == PRIME
    assert sorted(c.vertices for c in md.children) == \
        [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9)]
    assert modular_width(md) == 5
    q = quotient_graph(g, [list(c.vertices) for c in md.children])
    # the quotient is C5 again up to relabeling
    assert q.m == 5 and all(q.degree(v) == 2 for v in range(5))


def test_every_tree_node_is_a_module(rng):
    for _ in range(60):
        n = rng.randint(1, 16)
        g = build_graph(n, [(u, v) for u in range(n)
                            for v in range(u + 1, n)
                            if rng.random() < rng.random()])
        md = modular_decomposition(g)
        for node in md.iter_nodes():
            assert is_module(g, node.vertices)
            if node.children:
                vs = sorted(v for c in node.children for v in c.vertices)
                assert vs == list(node.vertices)


def test_prime_quotients_are_prime(rng):
    for _ in range(50):
        n = rng.randint(4, 13)
        g = connected_er(rng, n)
        md = modular_decomposition(g)
        for node in md.iter_nodes():
            if node.kind != PRIME:
                continue
            q = node.quotient
            if q.n <= 12:
                for size in range(2, q.n):
                    for mod in combinations(range(q.n), size):
                        assert not is_module(q, mod)


# -- split decomposition -----------------------------------------------------


def test_tree_splits_into_stars(rng):
    edges = [(i, rng.randrange(i)) for i in range(1, 14)]
    st = split_decomposition(build_graph(14, edges))
    assert all(c.kind == STAR for c in st.components)
    assert split_width(st) == 2


def test_c5_is_split_prime():
    st = split_decomposition(cycle(5))
    assert len(st.components) == 1 and split_width(st) == 5


def test_recomposition_identity(rng):
    for _ in range(80):
        n = rng.randint(1, 15)
        g = build_graph(n, [(u, v) for u in range(n)
                            for v in range(u + 1, n)
                            if rng.random() < rng.random()])
        st = split_decomposition(g)
        assert st.recompose() == g


def test_distance_hereditary_width_two(rng):
    for _ in range(15):
        st0 = random_degenerate_split_tree(rng.randint(2, 40), rng)
        g = st0.recompose()
        st = split_decomposition(g)
        assert split_width(st) == 2
        assert st.recompose() == g


def test_marker_vertices_follow_the_naming_convention(rng):
    g = connected_er(rng, 12)
    st = split_decomposition(g)
    for comp in st.components:
        for lab in comp.labels:
            assert lab >= 0 or is_marker(lab)


def test_split_width_vs_modular_width(rng):
    # folklore bound: sw <= mw + 1 on every tested instance
    for _ in range(50):
        n = rng.randint(2, 16)
        g = build_graph(n, [(u, v) for u in range(n)
                            for v in range(u + 1, n)
                            if rng.random() < rng.random()])
        if not g.is_connected():
            continue
        sw = split_width(split_decomposition(g))
        mw = modular_width(modular_decomposition(g))
        assert sw <= mw + 1


def test_partial_split_tree_from_modular(rng):
    for _ in range(40):
        g = connected_er(rng, rng.randint(2, 14))
        st = split_tree_from_modular(g, modular_decomposition(g))
        assert st.recompose() == g
    sub = substitute(cycle(5), [build_graph(2, [(0, 1)])] * 5)
    st = split_tree_from_modular(sub, modular_decomposition(sub))
    assert st.recompose() == sub


def test_nd_split_tree(rng):
    for _ in range(40):
        g = connected_er(rng, rng.randint(2, 14))
        st = split_tree_from_nd(g, nd_partition(g))
        assert st.recompose() == g


# -- neighbourhood diversity -------------------------------------------------


def test_nd_examples():
    assert nd_partition(complete(6)).nd == 1
    assert nd_partition(complete(6)).tags == [TRUE_TWINS]
    ndp = nd_partition(star(4))
    assert ndp.nd == 2 and set(ndp.tags) == {TRUE_TWINS, FALSE_TWINS}
    g = substitute(path(4), [build_graph(2, [(0, 1)]), build_graph(2, []),
                             build_graph(1, []), build_graph(1, [])])
    ndp = nd_partition(g)
    assert ndp.classes == [(0, 1), (2, 3), (4,), (5,)]


def test_nd_classes_are_modules(rng):
    for _ in range(40):
        g = connected_er(rng, rng.randint(2, 14))
        ndp = nd_partition(g)
        for cls in ndp.classes:
            assert is_module(g, cls)
        assert modular_width(modular_decomposition(g)) <= max(2, ndp.nd)


# -- classification ----------------------------------------------------------


def test_classify_examples():
    assert classify_prime_graph(cycle(7)).tag == DISC_CYCLE
    thick = gen_family(FamilySpec(kind="ThickSpider", k=3), 0)
    cls = classify_prime_graph(thick.graph)
    assert cls.tag == THICK_SPIDER
    wit = cls.witness
    assert sorted(wit["S"]) == thick.annotations["spider"]["S"]
    qk = gen_family(FamilySpec(kind="SpikedQk", k=8, zs=(2, 3)), 0)
    cls = classify_prime_graph(qk.graph)
    assert cls.tag == SPIKED_QK and cls.witness["zs"] == (2, 3)


def test_classify_rejects_non_prime():
    with pytest.raises(GraphError, match="prime"):
        classify_prime_graph(complete(5))


def test_classify_witness_reverifies(rng):
    # relabeled family members keep their class, with a checkable witness
    cases = []
    for k in (6, 9, 12):
        cases.append(gen_family(FamilySpec(kind="SpikedPk", k=k, with_x=True,
                                           with_y=(k > 6)), 1))
        cases.append(gen_family(FamilySpec(kind="SpikedQk", k=k,
                                           zs=(2,) if k >= 7 else ()), 1))
    for k in (2, 4):
        cases.append(gen_family(FamilySpec(kind="ThinSpider", k=k), 1))
    for gg in cases:
        g = gg.graph
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        cls = classify_prime_graph(h, check_prime=False)
        assert cls.tag in (SPIKED_PK, SPIKED_QK, THIN_SPIDER)
        if "roles" in cls.witness:
            # mapping the witness roles back must reproduce the adjacency
            roles = cls.witness["roles"]
            assert len(set(roles.values())) == h.n


def test_small_prime_and_effective_q(rng):
    spider = gen_family(FamilySpec(kind="ThinSpider", k=4,
                                   r=FamilySpec(kind="Cograph", n=5)), 3)
    md = modular_decomposition(spider.graph)
    assert effective_q(spider.graph, md) == 7

    disc = substitute(cycle(9), [build_graph(1, [])] * 9)
    assert effective_q(disc, modular_decomposition(disc)) == 7

    while True:
        g = connected_er(rng, 12)
        if is_prime(g) and classify_prime_graph(g).tag == SMALL_PRIME:
            break
    assert effective_q(g, modular_decomposition(g)) == 12


def test_decomposition_json_shapes(rng):
    g = connected_er(rng, 8)
    md = modular_decomposition(g)
    payload = json.loads(json.dumps(md.to_json()))
    assert payload["kind"] in ("leaf", "parallel", "series", "prime")
    st = split_decomposition(g)
    payload = json.loads(json.dumps(st.to_json()))
    assert set(payload) == {"n", "components", "marker_pairs"}

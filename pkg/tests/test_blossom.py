import pytest

from graphdecomp import (GraphError, Matching, augment, build_graph,
                         find_augmenting_path, maximum_matching)
from graphdecomp.oracles import exhaustive_maximum_matching_size

from conftest import cycle, path


def test_p3_single_step():
    g = path(3)
    f = Matching.empty(3)
    p = find_augmenting_path(g, f)
    assert p is not None and len(p) == 2
    f = augment(f, p, g)
    assert f.cardinality() == 1


def test_c4_reaches_perfect_matching():
    g = cycle(4)
    f = Matching([None, 2, 1, None])
    p = find_augmenting_path(g, f)
    assert p is not None
    f = augment(f, p, g)
    f.validate(g)
    assert f.cardinality() == 2


def test_forced_length_three_path():
    g = path(4)
    f = Matching([None, 2, 1, None])
    p = find_augmenting_path(g, f)
    assert p == [0, 1, 2, 3] or p == [3, 2, 1, 0]
    f = augment(f, p, g)
    f.validate(g)
    assert f.cardinality() == 2


def test_blossom_contraction_instance():
    # C5 with a pendant, matched so the search must shrink the odd cycle
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    f = Matching([1, 0, 3, 2, None, None])
    p = find_augmenting_path(g, f)
    assert p is not None
    f = augment(f, p, g)
    f.validate(g)
    assert f.cardinality() == 3
    assert find_augmenting_path(g, f) is None


def test_augment_rejects_bad_paths():
    g = path(4)
    f = Matching.empty(4)
    with pytest.raises(GraphError):
        augment(f, [0], g)
    with pytest.raises(GraphError):
        augment(f, [0, 2], g)          # not an edge
    f2 = Matching([1, 0, None, None])
    with pytest.raises(GraphError):
        augment(f2, [0, 1], g)         # endpoints matched


def test_incremental_path_search_reaches_optimum(rng):
    for _ in range(200):
        n = rng.randint(1, 9)
        g = build_graph(n, [(u, v) for u in range(n)
                            for v in range(u + 1, n) if rng.random() < 0.5])
        f = Matching.empty(n)
        while True:
            p = find_augmenting_path(g, f)
            if p is None:
                break
            f = augment(f, p, g)
        f.validate(g)
        assert f.cardinality() == exhaustive_maximum_matching_size(g)


def test_warm_start(rng):
    for _ in range(50):
        n = rng.randint(2, 12)
        g = build_graph(n, [(u, v) for u in range(n)
                            for v in range(u + 1, n) if rng.random() < 0.4])
        first = maximum_matching(g)
        again = maximum_matching(g, initial=first)
        assert again.cardinality() == first.cardinality()

import itertools

import pytest

from stabdisk.hypergraph import (
    EdgeNotFound, Hypergraph, RootedTree, build_f, build_h2, build_h3, complete_mary_tree,
    extend, find_coloring, find_monochromatic_edge, is_siblings_first_order, rooted_trees,
    single_edge_hypergraph, siblings_first_order, tree_hypergraph,
)

TREE_COUNTS = [1, 1, 2, 4, 9, 20, 48, 115, 286, 719, 1842, 4766, 12486]


def edge_set(h):
    return {frozenset(e) for e in h.edges}


def test_complete_tree_sizes():
    assert complete_mary_tree(1).n == 1
    t2 = complete_mary_tree(2)
    assert t2.n == 3 and t2.children[0] == (1, 2)
    for m in range(2, 5):
        assert complete_mary_tree(m).n == (m ** m - 1) // (m - 1)


def test_tree_rejects_bad_parent_maps():
    with pytest.raises(ValueError):
        RootedTree((None, None))
    with pytest.raises(ValueError):
        RootedTree((1, 0, None))


def test_siblings_first_examples():
    path = RootedTree((None, 0, 1))
    assert siblings_first_order(path) == [0, 1, 2]
    t = RootedTree((None, 0, 0, 1))  # root, x, y, z under x
    assert siblings_first_order(t) == [0, 1, 2, 3]
    # exhaustive: the only valid orders of that tree
    valid = [list(p) for p in itertools.permutations(range(4)) if is_siblings_first_order(t, p)]
    assert valid == [[0, 1, 2, 3], [0, 2, 1, 3]]
    binary = complete_mary_tree(2)
    assert is_siblings_first_order(binary, siblings_first_order(binary))


def test_siblings_first_valid_for_all_small_trees():
    for n in range(1, 10):
        for t in rooted_trees(n):
            assert is_siblings_first_order(t, siblings_first_order(t))


def test_rooted_tree_counts():
    for n, want in enumerate(TREE_COUNTS[:11], start=1):
        assert sum(1 for _ in rooted_trees(n)) == want


def test_tree_hypergraph_examples():
    tri = tree_hypergraph(complete_mary_tree(2))
    assert edge_set(tri) == {frozenset({1, 2}), frozenset({0, 1}), frozenset({0, 2})}
    assert edge_set(tree_hypergraph(RootedTree((None,)))) == {frozenset({0})}
    h = tree_hypergraph(complete_mary_tree(3))
    sizes = [len(e) for e in h.edges]
    assert h.n == 13 and len(h.edges) == 13 and set(sizes) == {3}
    ext = tree_hypergraph(complete_mary_tree(2), extended=True)
    assert frozenset({0}) in edge_set(ext)


def test_extend_examples():
    k4 = extend(single_edge_hypergraph(1), build_h2(2), frozenset({0}))
    assert k4.n == 4 and len(k4.edges) == 6
    assert edge_set(k4) == {frozenset(p) for p in itertools.combinations(range(4), 2)}
    g2 = single_edge_hypergraph(2)
    h = extend(g2, single_edge_hypergraph(1), {0, 1})
    assert h.n == 3 and edge_set(h) == {frozenset({0, 1, 2}), frozenset({2})}
    with pytest.raises(EdgeNotFound):
        extend(g2, g2, {0})


def test_extend_keeps_other_edges():
    a = build_h2(3)
    f = a.edges[4]
    h = extend(a, build_h2(2), f)
    kept = [e for e in a.edges if e != f]
    assert h.edges[:4] == a.edges[:4]
    assert set(kept) <= set(h.edges)


def test_extend_raises_uniformity():
    a = build_h2(2)
    h = a
    for e in list(a.edges):
        h = extend(h, build_h2(3), e)
    assert h.is_uniform(3)


def test_single_edge():
    g1 = single_edge_hypergraph(1)
    assert g1.n == 1 and g1.star == 0
    assert single_edge_hypergraph(3).edges == (frozenset({0, 1, 2}),)
    for c in range(1, 5):
        assert not find_coloring(g1, c)


def test_h2_h3_shapes():
    for m in range(1, 5):
        assert build_h2(m).is_uniform(m)
    k4 = build_h3(2)
    assert k4.n == 4 and edge_set(k4) == {frozenset(p) for p in itertools.combinations(range(4), 2)}
    f23 = build_f(2, 3)
    assert f23.n == 14
    assert edge_set(f23) >= {frozenset({0, 1 + j}) for j in range(13)}
    assert len(f23.edges) == 13 + 13
    h3 = build_h3(3)
    assert h3.is_uniform(3)
    # one new H2(3) copy per edge through the star, in both rounds
    assert h3.n == 1 + 13 + 13 * 13
    assert len(h3.edges) == 13 * 13 + 13 * 13 + 13


def test_find_coloring_examples():
    tri = build_h2(2)
    assert not find_coloring(tri, 2)
    assert not find_coloring(build_h3(2), 3)
    assert not find_coloring(build_h2(3), 2)
    ok = find_coloring(tri, 3)
    assert ok and find_monochromatic_edge(tri, ok.coloring) is None


def test_find_coloring_finds_proper_colorings():
    h = Hypergraph(5, ({0, 1, 2}, {2, 3, 4}, {0, 4}))
    res = find_coloring(h, 2)
    assert res and find_monochromatic_edge(h, res.coloring) is None


def test_no_f_is_three_colorable():
    for i in (1, 2):
        assert not find_coloring(build_f(i, 2), 3)


def test_h3_3_not_three_colorable():
    assert not find_coloring(build_h3(3), 3)


def test_every_tree_hypergraph_up_to_13_vertices_is_not_2_colorable():
    count = 0
    for n in range(1, 14):
        for t in rooted_trees(n):
            assert not find_coloring(tree_hypergraph(t), 2)
            count += 1
    assert count == sum(TREE_COUNTS)


def test_find_monochromatic_edge_examples():
    tri = build_h2(2)
    assert find_monochromatic_edge(tri, [0, 0, 1]) == frozenset({0, 1})
    k4 = build_h3(2)
    for col in itertools.product(range(3), repeat=4):
        assert find_monochromatic_edge(k4, col) is not None
    assert find_monochromatic_edge(Hypergraph(2, ({0, 1},)), [0, 1]) is None


def test_json_round_trip():
    h = build_h3(2)
    assert Hypergraph.from_json(h.to_json()) == h

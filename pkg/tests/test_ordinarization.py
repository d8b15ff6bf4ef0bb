import pytest

from oracles import depth_of_gapset, gap_sets_of_genus
from ordtree import NumericalSemigroup, OrdinaryInput, ResourceLimit, from_gaps, from_generators, ordinary
from ordtree.ordinarization import (
    build_ordinarization_tree,
    children_h0_count,
    children_in_tree,
    effective_descent_holds,
    effectivity_histogram,
    enumerate_genus,
    h0_children_bound_holds,
    n_g_r_brute,
    ordinarization_number,
    ordinarization_transform,
    tk_family,
)

# N(g) for g = 0..15, frozen from the gap-set oracle (g <= 10) and the
# genus-tree enumeration (all g); both routes agree where they overlap.
N_G = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001, 1693, 2857]


@pytest.fixture(scope="module")
def trees():
    return {g: build_ordinarization_tree(g) for g in range(13)}


def test_transform_examples():
    S = from_generators([2, 15])
    assert ordinarization_transform(S).gaps() == [1, 2, 3, 5, 7, 9, 11]
    for bad in (ordinary(1), ordinary(7), NumericalSemigroup(0, 0), from_generators([2, 3])):
        with pytest.raises(OrdinaryInput):
            ordinarization_transform(bad)


def test_transform_preserves_genus_and_moves_f_and_m():
    for S in enumerate_genus(9):
        if S.is_ordinary():
            continue
        T = ordinarization_transform(S)
        assert T.genus == S.genus
        assert T.frobenius < S.frobenius and T.multiplicity > S.multiplicity


def test_printed_parent_in_genus_seven():
    # a depth-two node of T_7 and the depth-one node it hangs from
    child = from_gaps([1, 2, 3, 4, 7, 8, 9])
    assert ordinarization_number(child) == 2
    assert ordinarization_transform(child) == from_gaps([1, 2, 3, 4, 5, 7, 8])


def test_ordinarization_number_examples():
    assert ordinarization_number(ordinary(9)) == 0
    assert ordinarization_number(NumericalSemigroup(0, 0)) == 0
    assert ordinarization_number(from_generators([2, 15])) == 3
    assert ordinarization_number(from_generators([105, 165, 231, 385])) == 228


def test_children_examples():
    kids = children_in_tree(ordinary(7))
    assert len(kids) == 18
    keys = [(c.multiplicity, c.frobenius) for c in kids]
    assert keys == sorted(keys)
    S = from_generators([7, 8, 10, 11, 12, 13])
    assert children_h0_count(S) == 3 == S.multiplicity // 2
    assert h0_children_bound_holds(S)
    leaf = from_generators([105, 165, 231, 385])
    assert leaf.generator_data.effectivity == 0 and children_in_tree(leaf) == []
    assert children_in_tree(NumericalSemigroup(0, 0)) == []
    assert children_h0_count(leaf) == 0
    assert children_h0_count(ordinary(4)) <= 2


def test_children_invert_transform():
    for g in range(1, 11):
        for S in enumerate_genus(g):
            for child in children_in_tree(S):
                assert ordinarization_transform(child) == S


def test_tk_family():
    T2 = tk_family(2)
    assert T2.frobenius == 7 and T2.generator_data.effectivity == 4
    for k in range(2, 7):
        T = tk_family(k)
        assert T.multiplicity == 2 * k + 1
        assert T.frobenius == (k - 1) * (2 * k + 1) + 2
        assert T.generator_data.effectivity == 4
        assert children_in_tree(T)
    T3 = tk_family(3)
    assert T3.replace(3 * 7 + 1, 6) in children_in_tree(T3)


@pytest.mark.parametrize("g", range(0, 11))
def test_enumeration_matches_gap_set_oracle(g):
    expected = sorted(gap_sets_of_genus(g))
    found = sorted(tuple(S.gaps()) for S in enumerate_genus(g))
    assert found == expected
    assert len(found) == N_G[g]


def test_enumeration_counts_to_fifteen():
    assert [len(enumerate_genus(g)) for g in range(16)] == N_G


def test_parallel_enumeration_is_identical():
    assert enumerate_genus(13, workers=2) == enumerate_genus(13)


def test_node_cap():
    with pytest.raises(ResourceLimit):
        enumerate_genus(12, node_cap=100)
    with pytest.raises(ResourceLimit):
        build_ordinarization_tree(12, node_cap=100)


def test_tree_examples(trees):
    T7 = trees[7]
    assert len(T7) == 39 and T7.level_counts == [1, 18, 19, 1]
    assert trees[6].level_counts == [1, 12, 9, 1]
    T0 = trees[0]
    assert len(T0) == 1 and T0.parent == [None] and T0.level_counts == [1]
    assert set(T7.nodes) == set(enumerate_genus(7))


@pytest.mark.parametrize("g", range(1, 11))
def test_tree_levels_match_gap_set_depths(trees, g):
    census = {}
    for gaps in gap_sets_of_genus(g):
        r = depth_of_gapset(gaps, g)
        census[r] = census.get(r, 0) + 1
    assert trees[g].level_counts == [census[r] for r in range(max(census) + 1)]


def test_tree_structure(trees):
    for g, tree in trees.items():
        assert tree.nodes[0] == ordinary(g)
        for i, S in enumerate(tree.nodes):
            assert S.genus == g
            assert tree.depth[i] == ordinarization_number(S)
            p = tree.parent[i]
            if p is None:
                continue
            parent = tree.nodes[p]
            assert ordinarization_transform(S) == parent
            assert ordinarization_number(S) == 1 + ordinarization_number(parent)
            assert effective_descent_holds(parent, S)
            assert parent.generator_data.effectivity > S.generator_data.effectivity
            assert tree.index[S] == i


def test_h0_bound_everywhere(trees):
    for tree in trees.values():
        for S in tree.nodes:
            assert children_h0_count(S) <= S.multiplicity // 2


def test_children_order_in_tree(trees):
    tree = trees[9]
    for i in range(len(tree)):
        kids = [tree.nodes[j] for j in tree.children(i)]
        assert kids == children_in_tree(tree.nodes[i])


def test_tree_is_deterministic():
    a, b = build_ordinarization_tree(11), build_ordinarization_tree(11, workers=2)
    assert a.nodes == b.nodes and a.parent == b.parent


def test_brute_force_counts():
    assert n_g_r_brute(7, 1) == 18
    assert n_g_r_brute(7, 2) == 19
    assert n_g_r_brute(10, 1) == 35 and n_g_r_brute(10, 2) == 118
    assert n_g_r_brute(20, 1) == 145 and n_g_r_brute(20, 2) == 2956
    assert n_g_r_brute(5, 0) == 1
    for g in range(1, 13):
        for r in range(g // 2 + 2):
            by_census = n_g_r_brute(g, r, "census")
            assert n_g_r_brute(g, r, "tree") == by_census
            if r <= 3:
                assert n_g_r_brute(g, r, "tuples") == by_census


def test_deepest_level_sizes():
    # One semigroup at depth floor(g/2), except g = 3 (three) and g = 5 (two).
    expected = {g: 1 for g in range(1, 21)}
    expected.update({3: 3, 5: 2})
    found = {g: n_g_r_brute(g, g // 2, "tree") for g in range(1, 21)}
    assert found == expected
    for g in range(1, 21):
        assert n_g_r_brute(g, g // 2 + 1, "tree") == 0


def test_brute_force_rejects_bad_input():
    with pytest.raises(ValueError):
        n_g_r_brute(3, 1, "guess")
    with pytest.raises(ValueError):
        n_g_r_brute(-1, 1)


def test_effectivity_histogram():
    assert effectivity_histogram(0) == {1: 1}
    assert sum(effectivity_histogram(7).values()) == 39
    assert sum(effectivity_histogram(12).values()) == N_G[12]


def test_level_sums_and_monotonicity():
    census = {}
    for g in range(15):
        levels = build_ordinarization_tree(g).level_counts
        assert sum(levels) == N_G[g]
        census[g] = levels
    for g in range(1, 14):
        for r in range(1, len(census[g])):
            nxt = census[g + 1][r] if r < len(census[g + 1]) else 0
            assert census[g][r] <= nxt

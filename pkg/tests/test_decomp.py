import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tree_partitions.decomp import (PathDecomposition, TreeDecomposition, compact, concatenate,
                                    flatten, normalize_ends, path_decomposition_from_ordering,
                                    pd_width, relabel, restrict, restrict_to,
                                    tree_decomposition_from_path, td_width,
                                    validate_path_decomposition, validate_tree_decomposition)
from tree_partitions.errors import InputError, InvalidDecompositionError
from tree_partitions.generators import gen_cycle, gen_fan, gen_path, gen_star
from tree_partitions.graph import Graph, remove_vertices
from tree_partitions.validity import ViolationKind

from .strategies import graphs, tree_decompositions


def test_fan_decomposition_is_valid():
    fan = gen_fan(5)
    report = validate_path_decomposition(fan.graph, fan.decomposition)
    assert report.valid
    assert bool(report)
    assert pd_width(fan.decomposition) == 2


def test_width_conventions():
    assert pd_width(PathDecomposition([(0,), (0, 1)])) == 1
    assert pd_width(PathDecomposition([(), ()])) == -1
    assert pd_width(PathDecomposition([])) == -1


def test_uncovered_edge():
    g = gen_path(3)
    report = validate_path_decomposition(g, PathDecomposition([(0, 1), (2,)]))
    assert report.kinds() == {ViolationKind.EDGE_UNCOVERED}
    assert report.of_kind(ViolationKind.EDGE_UNCOVERED) == [(1, 2)]


def test_scattered_vertex():
    g = gen_path(3)
    report = validate_path_decomposition(g, PathDecomposition([(0, 1), (1, 2), (0,)]))
    assert report.of_kind(ViolationKind.VERTEX_SCATTERED) == [0]


def test_absent_and_unknown_vertex():
    g = Graph(3, [(0, 1)])
    report = validate_path_decomposition(g, PathDecomposition([(0, 1), (5,)]))
    assert report.of_kind(ViolationKind.VERTEX_ABSENT) == [2]
    assert report.of_kind(ViolationKind.UNKNOWN_VERTEX) == [(1, 5)]
    assert "vertex-absent" in report.summary()


def test_normalize_ends():
    g = gen_path(3)
    pd = PathDecomposition([(0, 1), (1, 2)], host=g)
    normalized = normalize_ends(pd)
    assert normalized.bags == (frozenset(), frozenset({0, 1}), frozenset({1, 2}), frozenset())
    assert normalize_ends(normalized).bags == normalized.bags
    assert normalize_ends(PathDecomposition([])).bags == (frozenset(),)
    with pytest.raises(InvalidDecompositionError):
        normalize_ends(PathDecomposition([(0,), (2,)], host=g))
    with pytest.raises(InvalidDecompositionError):
        normalize_ends(PathDecomposition([(0,), (2,)]), g)


def test_normalize_ends_without_a_host_checks_contiguity():
    scattered = PathDecomposition([(0, 1), (1,), (0,)])
    with pytest.raises(InvalidDecompositionError):
        normalize_ends(scattered)
    assert len(normalize_ends(PathDecomposition([(0, 1), (1,)]))) == 4


@pytest.mark.parametrize("bags", [[(0, 1.7)], [(True,)], [("1",)]])
def test_non_integral_ids_are_rejected(bags):
    with pytest.raises(InputError):
        PathDecomposition(bags)


def test_restrict_lowers_width_on_a_valid_subgraph():
    fan = gen_fan(6)
    rest = restrict(fan.decomposition, {0})
    assert pd_width(rest) == 1
    assert rest.vertices() == frozenset(range(1, 6))
    assert restrict_to(fan.decomposition, {1, 2}).vertices() == frozenset({1, 2})


def test_compact_relabel_concatenate():
    pd = PathDecomposition([(), (3,), (), (3, 4)])
    assert compact(pd).bags == (frozenset({3}), frozenset({3, 4}))
    assert relabel(compact(pd), {3: 0, 4: 1}).bags == (frozenset({0}), frozenset({0, 1}))
    joined = concatenate(PathDecomposition([(0,)]), PathDecomposition([(1, 2)]))
    assert joined.bags == (frozenset({0}), frozenset({1, 2}))
    assert validate_path_decomposition(Graph(3, [(1, 2)]), joined).valid


def test_decomposition_from_ordering():
    g = gen_star(3)
    centre_first = path_decomposition_from_ordering(g, [0, 1, 2, 3])
    assert validate_path_decomposition(g, centre_first).valid
    assert pd_width(centre_first) == 1
    with pytest.raises(InputError):
        path_decomposition_from_ordering(g, [0, 1, 2])


@given(graphs(max_vertices=8), st.randoms(use_true_random=False))
def test_any_ordering_gives_a_valid_decomposition(g, rng):
    order = list(g.vertices)
    rng.shuffle(order)
    assert validate_path_decomposition(g, path_decomposition_from_ordering(g, order)).valid


def test_tree_decomposition_validation():
    g = gen_cycle(4)
    tree = Graph(2, [(0, 1)])
    td = TreeDecomposition(tree, [(0, 1, 2), (0, 2, 3)])
    assert validate_tree_decomposition(g, td).valid
    assert td_width(td) == 2

    split = TreeDecomposition(Graph(3, [(0, 1), (1, 2)]), [(0, 1, 2), (2, 3), (0, 3)])
    assert split.width == 2
    report = validate_tree_decomposition(g, split)
    assert report.of_kind(ViolationKind.VERTEX_SCATTERED) == [0]

    not_a_tree = TreeDecomposition(Graph(2), [(0, 1, 2), (0, 2, 3)])
    assert ViolationKind.NOT_A_TREE in validate_tree_decomposition(g, not_a_tree).kinds()

    short = TreeDecomposition(tree, [(0, 1, 2, 3)])
    assert ViolationKind.BAG_INDEX_MISMATCH in validate_tree_decomposition(g, short).kinds()


@given(graphs(max_vertices=7), st.randoms(use_true_random=False))
def test_path_and_tree_validators_agree(g, rng):
    order = list(g.vertices)
    rng.shuffle(order)
    pd = path_decomposition_from_ordering(g, order)
    broken = PathDecomposition(pd.bags[::-1][:max(len(pd) - 1, 0)])
    for candidate in (pd, broken):
        as_tree = tree_decomposition_from_path(candidate)
        assert (validate_path_decomposition(g, candidate).valid
                == validate_tree_decomposition(g, as_tree).valid)


def test_flatten_star_over_path():
    # vertex i of the star's host sits in the bag of tree node i
    tree = gen_star(3)
    host = Graph(4, [(0, 1), (0, 2), (0, 3)])
    td = TreeDecomposition(tree, [(0,), (0, 1), (0, 2), (0, 3)], host=host)
    pd_tree = PathDecomposition([(0, 1), (0, 2), (0, 3)])
    flat = flatten(td, pd_tree)
    assert validate_path_decomposition(host, flat).valid
    assert pd_width(flat) <= (pd_width(pd_tree) + 1) * (td_width(td) + 1) - 1


def test_flatten_needs_valid_inputs():
    tree = Graph(2, [(0, 1)])
    host = gen_path(3)
    td = TreeDecomposition(tree, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        flatten(td, PathDecomposition([(0, 1)]))
    with pytest.raises(InvalidDecompositionError):
        flatten(td, PathDecomposition([(0,)]), host)
    bad = TreeDecomposition(tree, [(0, 1), (2,)])
    with pytest.raises(InvalidDecompositionError):
        flatten(bad, PathDecomposition([(0, 1)]), host)


def _shuffled_decomposition(g, rng):
    order = list(g.vertices)
    rng.shuffle(order)
    return path_decomposition_from_ordering(g, order)


def _check_restrict(g, rng):
    pd = _shuffled_decomposition(g, rng)
    z = {vertex for vertex in g.vertices if rng.random() < 0.3}
    sub = remove_vertices(g, z)
    rest = relabel(restrict(pd, z), sub.to_sub)
    assert validate_path_decomposition(sub.graph, rest).valid
    assert pd_width(rest) <= pd_width(pd)


@settings(max_examples=100, deadline=None)
@given(graphs(max_vertices=30), st.randoms(use_true_random=False))
def test_restrict_keeps_validity(g, rng):
    _check_restrict(g, rng)


@pytest.mark.slow
@settings(max_examples=500, deadline=None)
@given(graphs(max_vertices=30), st.randoms(use_true_random=False))
def test_restrict_keeps_validity_full(g, rng):
    _check_restrict(g, rng)


def _check_flatten(host, td, rng):
    assert validate_tree_decomposition(host, td).valid
    pd_tree = _shuffled_decomposition(td.tree, rng)
    flat = flatten(td, pd_tree)
    assert validate_path_decomposition(host, flat).valid
    assert pd_width(flat) <= (pd_width(pd_tree) + 1) * (td_width(td) + 1) - 1


@settings(max_examples=100, deadline=None)
@given(tree_decompositions(), st.randoms(use_true_random=False))
def test_flatten_width_bound(decomposed, rng):
    _check_flatten(*decomposed, rng)


@pytest.mark.slow
@settings(max_examples=500, deadline=None)
@given(tree_decompositions(max_nodes=15, max_vertices=20), st.randoms(use_true_random=False))
def test_flatten_width_bound_full(decomposed, rng):
    _check_flatten(*decomposed, rng)

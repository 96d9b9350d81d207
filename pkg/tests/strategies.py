"""Hypothesis strategies for graphs, trees and decompositions"""
import itertools

from hypothesis import strategies as st

from tree_partitions.decomp import TreeDecomposition
from tree_partitions.graph import Graph


@st.composite
def graphs(draw, min_vertices=0, max_vertices=8):
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, chosen)


@st.composite
def trees(draw, min_vertices=1, max_vertices=15):
    """Random recursive trees: vertex v > 0 attaches to an earlier vertex"""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    parents = [draw(st.integers(min_value=0, max_value=v - 1)) for v in range(1, n)]
    return Graph(n, ((v, parent) for v, parent in enumerate(parents, start=1)))


@st.composite
def connected_graphs(draw, min_vertices=1, max_vertices=8):
    """A random tree plus random chords"""
    tree = draw(trees(min_vertices=min_vertices, max_vertices=max_vertices))
    n = tree.vertex_count
    missing = [pair for pair in itertools.combinations(range(n), 2) if pair not in tree.edges]
    chords = draw(st.lists(st.sampled_from(missing), unique=True)) if missing else []
    return Graph(n, tree.sorted_edges() + chords)


@st.composite
def tree_decompositions(draw, max_nodes=8, max_vertices=10):
    """
    A random tree T with a valid tree-decomposition of a random host over it.
    Each host vertex occupies a random connected subtree of T and host edges
    join only vertices sharing a bag. Returns (host, td).
    """
    tree = draw(trees(max_vertices=max_nodes))
    m = draw(st.integers(min_value=1, max_value=max_vertices))
    bags = [set() for _ in tree.vertices]
    for vertex in range(m):
        grown = {draw(st.sampled_from(list(tree.vertices)))}
        for _ in range(draw(st.integers(min_value=0, max_value=tree.vertex_count - 1))):
            frontier = sorted({nbr for node in grown for nbr in tree.adjacency[node]} - grown)
            if not frontier:
                break
            grown.add(draw(st.sampled_from(frontier)))
        for node in grown:
            bags[node].add(vertex)
    shared = sorted({pair for bag in bags for pair in itertools.combinations(sorted(bag), 2)})
    edges = draw(st.lists(st.sampled_from(shared), unique=True)) if shared else []
    host = Graph(m, edges)
    return host, TreeDecomposition(tree, bags, host=host)

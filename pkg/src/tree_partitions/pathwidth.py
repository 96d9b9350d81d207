"""
This module provides pathwidth computations for tree_partitions.

exact_pathwidth solves small graphs exactly through the vertex separation
number; extract_path and assemble_tree_pd are the two directions of the
spine characterisation of tree pathwidth: a tree has pathwidth at most k
(k >= 1) iff it has a path P with pw(T - V(P)) <= k - 1.
"""
import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np

from .config import resolve_limit
from .decomp import (PathDecomposition, compact, concatenate,
                     path_decomposition_from_ordering, relabel,
                     require_valid_path_decomposition, restrict, restrict_to)
from .errors import DisconnectedGraphError, InputError, SizeLimitError
from .graph import connected_components, induced_subgraph, is_connected, is_tree

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathwidthResult():
    """Pathwidth value with a witness decomposition of exactly that width"""
    value: int
    witness: PathDecomposition


def _vertex_separation_table(g):
    """
    Return best[S] for every vertex subset S (as a bitmask): the minimum over
    orderings of S of the largest boundary of a prefix, where the boundary of
    a prefix counts its vertices with a neighbour outside it.
    """
    n = g.vertex_count
    subsets = np.arange(1 << n, dtype=np.int64)
    popcount = np.zeros(1 << n, dtype=np.int64)
    cost = np.zeros(1 << n, dtype=np.int64)
    for vertex in range(n):
        nbr_mask = sum(1 << nbr for nbr in g.adjacency[vertex])
        inside = ((subsets >> vertex) & 1).astype(bool)
        escapes = (nbr_mask & ~subsets) != 0
        cost += inside & escapes
        popcount += inside

    unset = n + 1
    best = np.full(1 << n, unset, dtype=np.int64)
    best[0] = 0
    by_size = np.argsort(popcount, kind="stable")
    layer_ends = np.cumsum(np.bincount(popcount, minlength=n + 1))
    for size in range(1, n + 1):
        layer = by_size[layer_ends[size - 1]:layer_ends[size]]
        candidate = np.full(len(layer), unset, dtype=np.int64)
        for vertex in range(n):
            bit = 1 << vertex
            has = (layer & bit) != 0
            candidate[has] = np.minimum(candidate[has], best[layer[has] ^ bit])
        best[layer] = np.maximum(cost[layer], candidate)
    return best


def exact_pathwidth(g, limit=None):
    """
    Return the pathwidth of g with a witness, by dynamic programming over
    vertex subsets. The empty graph has pathwidth -1.
    """
    limit = resolve_limit(limit, "exact_pathwidth_limit")
    n = g.vertex_count
    if n > limit:
        raise SizeLimitError("exact_pathwidth", n, limit)
    if n == 0:
        return PathwidthResult(-1, PathDecomposition((), host=g))

    best = _vertex_separation_table(g)
    remaining = (1 << n) - 1
    reversed_order = []
    while remaining:
        _, vertex = min((int(best[remaining ^ (1 << v)]), v)
                        for v in range(n) if (remaining >> v) & 1)
        reversed_order.append(vertex)
        remaining ^= 1 << vertex
    value = int(best[(1 << n) - 1])
    witness = path_decomposition_from_ordering(g, reversed(reversed_order))
    logger.debug("exact pathwidth of %s is %s", g, value)
    return PathwidthResult(value, witness)


def tree_pathwidth_exact(t, limit=None):
    """Return the exact pathwidth of a tree with a witness"""
    if not is_tree(t):
        raise InputError(f"{t} is not a tree")
    return exact_pathwidth(t, limit=limit)


def extract_path(g, pd):
    """
    Return a path of g meeting every bag of pd, as a vertex sequence.

    The path joins the smallest vertex of the first non-empty bag to the
    smallest vertex of the last non-empty bag; since consecutive path vertices
    share a bag it meets every bag in between. Removing it lowers the width of
    pd by at least one.
    """
    if g.vertex_count == 0 or not is_connected(g):
        raise DisconnectedGraphError(f"extract_path needs a connected non-empty graph, got {g}")
    require_valid_path_decomposition(g, pd)

    occupied = [idx for idx, bag in enumerate(pd.bags) if bag]
    source = min(pd.bags[occupied[0]])
    target = min(pd.bags[occupied[-1]])
    path = nx.shortest_path(g.nx, source, target)

    on_path = set(path)
    missed = [idx for idx in occupied if not pd.bags[idx] & on_path]
    if missed:
        raise RuntimeError(f"Path {path} misses bags {missed} of a valid decomposition")
    logger.debug("extracted path of length %s from %s bags", len(path), len(pd))
    return path


def spine_decomposition(spine, hanging):
    """
    Concatenate the spine bags: for each spine vertex v_i the bags of its
    hanging decomposition each extended by v_i, then the separator
    {v_i, v_i+1}.

    hanging maps a spine vertex to the bags of the graph hanging off it;
    missing or empty entries contribute no C-bags. A one-vertex spine with
    nothing hanging yields the single bag {v_1}.
    """
    bags = []
    for idx, vertex in enumerate(spine):
        for bag in hanging.get(vertex, ()):
            bags.append(frozenset(bag) | {vertex})
        if idx + 1 < len(spine):
            bags.append(frozenset((vertex, spine[idx + 1])))
    if not bags and spine:
        bags.append(frozenset((spine[0],)))
    return PathDecomposition(bags)


def hanging_sets(t, spine):
    """
    Return, per spine vertex, the union of the components of t - V(spine)
    adjacent to it. Raise InputError when a component touches several spine
    vertices or none.
    """
    on_spine = set(spine)
    remainder = induced_subgraph(t, (v for v in t.vertices if v not in on_spine))
    hanging = {vertex: set() for vertex in spine}
    for component in connected_components(remainder.graph):
        members = {remainder.to_host[v] for v in component}
        anchors = {nbr for v in members for nbr in t.adjacency[v] if nbr in on_spine}
        if len(anchors) != 1:
            raise InputError(f"Component {sorted(members)} is adjacent to spine vertices "
                             f"{sorted(anchors)}; exactly one is required")
        hanging[anchors.pop()].update(members)
    return hanging


def assemble_tree_pd(t, p, subs):
    """
    Build a path-decomposition of the tree t from the spine p and
    decompositions of what hangs off each spine vertex.

    subs maps a spine vertex to a PathDecomposition (in t's ids) of the union
    of the components of t - V(p) adjacent to it. If those have width at most
    k-1, the result has width at most max(k, 1).
    """
    if not is_tree(t):
        raise InputError(f"{t} is not a tree")
    p = list(p)
    if not p or len(set(p)) != len(p):
        raise InputError("The spine must be a non-empty sequence of distinct vertices")
    t.check_vertices(p)
    for u, v in zip(p, p[1:]):
        if not t.has_edge(u, v):
            raise InputError(f"Spine vertices {u} and {v} are not adjacent")

    hanging = hanging_sets(t, p)
    hanging_bags = dict()
    for vertex in p:
        members = hanging[vertex]
        sub = subs.get(vertex)
        if not members:
            continue
        if sub is None:
            raise InputError(f"No decomposition given for the subtrees hanging off {vertex}")
        strays = sub.vertices() - members
        if strays:
            raise InputError(f"Decomposition hanging off {vertex} holds foreign vertices {sorted(strays)}")
        local = induced_subgraph(t, members)
        require_valid_path_decomposition(local.graph, relabel(sub, local.to_sub),
                                         f"decomposition hanging off {vertex}")
        hanging_bags[vertex] = compact(sub).bags
    return spine_decomposition(p, hanging_bags).with_host(t)


def rebuild_tree_pd(t, pd):
    """
    Rebuild a path-decomposition of the tree t, of width at most
    max(pd_width(pd), 1), by extracting a spine from pd and recursing on the
    hanging subtrees with pd restricted to them.
    """
    spine = extract_path(t, pd)
    rest = restrict(pd, spine)
    subs = dict()
    for vertex, members in hanging_sets(t, spine).items():
        if not members:
            continue
        hung = induced_subgraph(t, members)
        parts = []
        for component in connected_components(hung.graph):
            sub = induced_subgraph(t, (hung.to_host[v] for v in component))
            sub_pd = relabel(compact(restrict_to(rest, sub.to_host)), sub.to_sub)
            parts.append(relabel(rebuild_tree_pd(sub.graph, sub_pd), sub.to_host))
        subs[vertex] = concatenate(*parts)
    return assemble_tree_pd(t, spine, subs)

"""
This module provides brute-force oracles for tree_partitions.

The oracles work from the definitions alone and never call the
decomposition, pathwidth or construction modules they are used to check.
Size limits are hard errors.
"""
import itertools
import logging

import networkx as nx

from .config import resolve_limit
from .errors import SizeLimitError

logger = logging.getLogger(__name__)


def _check_limit(g, limit, setting, what):
    limit = resolve_limit(limit, setting)
    if g.vertex_count > limit:
        raise SizeLimitError(what, g.vertex_count, limit)


def brute_pathwidth(g, limit=None):
    """
    Return the minimum over all vertex orderings of the largest boundary of a
    prefix (placed vertices with an unplaced neighbour), which is the
    pathwidth. Orderings that cannot beat the best found so far are cut
    short, as are prefixes already reached with a smaller or equal largest
    boundary. The empty graph gives -1.
    """
    _check_limit(g, limit, "brute_pathwidth_limit", "brute_pathwidth")
    n = g.vertex_count
    if n == 0:
        return -1
    masks = _neighbor_masks(g)
    full = (1 << n) - 1
    best = [n]
    seen = dict()

    def boundary(placed):
        return sum(1 for u in _bits(placed) if masks[u] & ~placed)

    def extend(placed, worst):
        if worst >= best[0] or seen.get(placed, n + 1) <= worst:
            return
        seen[placed] = worst
        if placed == full:
            best[0] = worst
            return
        for vertex in range(n):
            bit = 1 << vertex
            if not placed & bit:
                extend(placed | bit, max(worst, boundary(placed | bit)))

    extend(0, 0)
    return best[0]


def _neighbor_masks(g):
    return [sum(1 << nbr for nbr in g.adjacency[v]) for v in range(g.vertex_count)]


def _bits(mask):
    return [v for v in range(mask.bit_length()) if (mask >> v) & 1]


def _closed_union(masks, mask):
    out = 0
    for v in _bits(mask):
        out |= masks[v]
    return out


def _path_partition_fits(g, width):
    n = g.vertex_count
    full = (1 << n) - 1
    masks = _neighbor_masks(g)
    failed = set()

    def extend(placed, last):
        if placed == full:
            return True
        if (placed, last) in failed:
            return False
        unplaced = full & ~placed
        if _closed_union(masks, placed & ~last) & unplaced:
            failed.add((placed, last))
            return False
        forced = _closed_union(masks, last) & unplaced
        room = width - bin(forced).count("1")
        if room < 0:
            failed.add((placed, last))
            return False
        optional = _bits(unplaced & ~forced)
        for size in range(min(room, len(optional)), -1, -1):
            for extra in itertools.combinations(optional, size):
                bag = forced | sum(1 << v for v in extra)
                if bag and extend(placed | bag, bag):
                    return True
        failed.add((placed, last))
        return False

    return extend(0, 0)


def brute_path_partition_width(g, limit=None):
    """
    Return the minimum width of a path-partition of g: an ordered partition
    into bags where every edge lies inside a bag or between consecutive bags.
    Widths are tried in increasing order with failed (placed, last bag)
    states memoised.
    """
    _check_limit(g, limit, "brute_path_partition_limit", "brute_path_partition_width")
    for width in range(1, g.vertex_count + 1):
        if _path_partition_fits(g, width):
            logger.debug("path-partition-width of %s is %s", g, width)
            return width
    return 0


def _restricted_growth_strings(n, cap):
    """Yield set partitions of 0..n-1 as block labels, skipping blocks larger than cap"""
    labels = [0] * n
    sizes = []

    def extend(vertex):
        if vertex == n:
            yield list(labels)
            return
        for block in range(len(sizes) + 1):
            if block == len(sizes):
                sizes.append(0)
            if sizes[block] < cap:
                sizes[block] += 1
                labels[vertex] = block
                yield from extend(vertex + 1)
                sizes[block] -= 1
            if sizes[block] == 0:
                sizes.pop()

    yield from extend(0)


def brute_tree_partition_width(g, limit=None):
    """
    Return the minimum width over all partitions of V(g) whose quotient
    graph (blocks adjacent when an edge crosses between them) is a forest.
    """
    _check_limit(g, limit, "brute_tree_partition_limit", "brute_tree_partition_width")
    n = g.vertex_count
    if n == 0:
        return 0
    best = n
    for width in range(1, n + 1):
        for labels in _restricted_growth_strings(n, width):
            quotient = nx.Graph()
            quotient.add_nodes_from(set(labels))
            quotient.add_edges_from((labels[u], labels[v]) for u, v in g.edges
                                    if labels[u] != labels[v])
            if nx.is_forest(quotient):
                return width
    return best

"""
This module provides path- and tree-decompositions for tree_partitions.

A path-decomposition is an ordered sequence of bags; a tree-decomposition
indexes its bags by the nodes 0..N-1 of a tree. Bags are frozensets of host
vertex ids and empty bags are allowed anywhere.
"""
import logging
from dataclasses import dataclass, field

import networkx as nx

from .errors import InputError, InvalidDecompositionError
from .graph import Graph, is_tree
from .utils import as_vertex_id, union_of
from .validity import ReportBuilder, ViolationKind

logger = logging.getLogger(__name__)


def _as_bags(bags):
    return tuple(frozenset(as_vertex_id(v) for v in bag) for bag in bags)


@dataclass(frozen=True)
class PathDecomposition():
    """
    Ordered bags over a host graph.

    Validity is checked by validate_path_decomposition, never assumed. The
    host is informative only and does not take part in equality.
    """
    bags: tuple
    host: Graph = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "bags", _as_bags(self.bags))

    def __len__(self):
        return len(self.bags)

    def __iter__(self):
        return iter(self.bags)

    def __getitem__(self, idx):
        return self.bags[idx]

    @property
    def width(self):
        return pd_width(self)

    def vertices(self):
        """Return every vertex occurring in some bag"""
        return union_of(self.bags)

    def occurrences(self):
        """Return, per vertex, the ascending list of bag indices holding it"""
        found = dict()
        for idx, bag in enumerate(self.bags):
            for vertex in bag:
                found.setdefault(vertex, []).append(idx)
        return found

    def with_host(self, host):
        return PathDecomposition(self.bags, host=host)


@dataclass(frozen=True)
class TreeDecomposition():
    """
    Bags indexed by the nodes of a tree.

    bags[x] is the bag of tree node x, so the tree's node ids index the bags
    exactly when len(bags) == tree.vertex_count.
    """
    tree: Graph
    bags: tuple
    host: Graph = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "bags", _as_bags(self.bags))

    @property
    def width(self):
        return td_width(self)


def _check_bag_vertices(g, bags, report):
    for idx, bag in enumerate(bags):
        for vertex in sorted(bag):
            if not 0 <= vertex < g.vertex_count:
                report.add(ViolationKind.UNKNOWN_VERTEX, (idx, vertex))


def _check_edge_property(g, bags, occurrences, report):
    for u, v in g.sorted_edges():
        u_at = occurrences.get(u, ())
        v_at = occurrences.get(v, ())
        if len(v_at) < len(u_at):
            u, v, u_at = v, u, v_at
        if not any(v in bags[idx] for idx in u_at):
            report.add(ViolationKind.EDGE_UNCOVERED, (min(u, v), max(u, v)))


def validate_path_decomposition(g, pd):
    """
    Check the edge-property and the vertex-property of pd against g.

    On a path the vertex-property is checked as contiguity of each vertex's
    bag indices.
    """
    report = ReportBuilder()
    _check_bag_vertices(g, pd.bags, report)
    occurrences = pd.occurrences()
    _check_edge_property(g, pd.bags, occurrences, report)
    for vertex in g.vertices:
        if not occurrences.get(vertex):
            report.add(ViolationKind.VERTEX_ABSENT, vertex)
    _check_contiguity(occurrences, report)
    return report.build()


def _check_contiguity(occurrences, report):
    for vertex in sorted(occurrences):
        at = occurrences[vertex]
        if at[-1] - at[0] + 1 != len(at):
            report.add(ViolationKind.VERTEX_SCATTERED, vertex)


def require_valid_path_decomposition(g, pd, what="path-decomposition"):
    """Raise InvalidDecompositionError unless pd is valid for g"""
    report = validate_path_decomposition(g, pd)
    if not report.valid:
        raise InvalidDecompositionError(what, report)


def pd_width(pd):
    """Return the maximum bag size minus 1; -1 when every bag is empty"""
    return max((len(bag) for bag in pd.bags), default=0) - 1


def normalize_ends(pd, g=None):
    """
    Return pd with an empty first bag and an empty last bag, adding them only
    where missing. A decomposition with no bags becomes a single empty bag.

    pd is validated against g, or its host when g is None. Without either,
    only the vertex-property is checked.
    """
    g = g if g is not None else pd.host
    if g is not None:
        require_valid_path_decomposition(g, pd)
    else:
        report = ReportBuilder()
        _check_contiguity(pd.occurrences(), report)
        report = report.build()
        if not report.valid:
            raise InvalidDecompositionError("path-decomposition", report)
    bags = list(pd.bags)
    if not bags:
        return PathDecomposition((frozenset(),), host=pd.host)
    if bags[0]:
        bags.insert(0, frozenset())
    if bags[-1]:
        bags.append(frozenset())
    return PathDecomposition(bags, host=pd.host)


def restrict(pd, z):
    """
    Return (D - z) for every bag D of pd.

    Ids are kept in the host labelling; relabel with the map of
    remove_vertices to obtain a decomposition of the relabelled host - z.
    """
    z = frozenset(z)
    return PathDecomposition(tuple(bag - z for bag in pd.bags))


def restrict_to(pd, keep):
    """Return (D & keep) for every bag D of pd, in the host labelling"""
    keep = frozenset(keep)
    return PathDecomposition(tuple(bag & keep for bag in pd.bags))


def compact(pd):
    """Return pd without its empty bags"""
    return PathDecomposition(tuple(bag for bag in pd.bags if bag), host=pd.host)


def relabel(pd, mapping):
    """Return pd with every vertex v replaced by mapping[v]"""
    return PathDecomposition(tuple(frozenset(mapping[v] for v in bag) for bag in pd.bags))


def concatenate(*pds):
    """Concatenate decompositions of vertex-disjoint graphs into one of their union"""
    bags = []
    for pd in pds:
        bags.extend(pd.bags)
    return PathDecomposition(bags)


def path_decomposition_from_ordering(g, order):
    """
    Turn a vertex ordering into a path-decomposition.

    Bag i is {v_i} together with the vertices placed before v_i that still
    have a neighbour not placed before v_i, so the width equals the largest
    such boundary.
    """
    order = list(order)
    if sorted(order) != list(g.vertices):
        raise InputError("An ordering must list every vertex exactly once")
    position = {vertex: idx for idx, vertex in enumerate(order)}
    last_needed = {vertex: max((position[nbr] for nbr in g.adjacency[vertex]),
                               default=position[vertex])
                   for vertex in order}
    bags = []
    boundary = set()
    for idx, vertex in enumerate(order):
        boundary = {u for u in boundary if last_needed[u] >= idx}
        bags.append(frozenset(boundary | {vertex}))
        if last_needed[vertex] > idx:
            boundary.add(vertex)
    return PathDecomposition(bags, host=g)


def tree_decomposition_from_path(pd, host=None):
    """View pd as a tree-decomposition over a path with one node per bag"""
    bags = pd.bags or (frozenset(),)
    tree = Graph(len(bags), ((idx, idx + 1) for idx in range(len(bags) - 1)))
    return TreeDecomposition(tree, bags, host=host if host is not None else pd.host)


def validate_tree_decomposition(g, td):
    """
    Check the edge-property and the vertex-property of td against g.

    Each vertex's node set must induce a non-empty connected subtree.
    """
    report = ReportBuilder()
    tree_ok = is_tree(td.tree)
    if not tree_ok:
        report.add(ViolationKind.NOT_A_TREE, td.tree.vertex_count)
    if len(td.bags) != td.tree.vertex_count:
        report.add(ViolationKind.BAG_INDEX_MISMATCH, (len(td.bags), td.tree.vertex_count))
    _check_bag_vertices(g, td.bags, report)
    occurrences = dict()
    for node, bag in enumerate(td.bags):
        for vertex in bag:
            occurrences.setdefault(vertex, []).append(node)
    _check_edge_property(g, td.bags, occurrences, report)
    for vertex in g.vertices:
        nodes = [node for node in occurrences.get(vertex, ()) if node < td.tree.vertex_count]
        if not nodes:
            report.add(ViolationKind.VERTEX_ABSENT, vertex)
        elif not nx.is_connected(td.tree.nx.subgraph(nodes)):
            report.add(ViolationKind.VERTEX_SCATTERED, vertex)
    return report.build()


def td_width(td):
    return max((len(bag) for bag in td.bags), default=0) - 1


def flatten(td, pdT, g=None):
    """
    Turn a tree-decomposition of G over T plus a path-decomposition of T into
    a path-decomposition of G: bag x becomes the union of C_y over y in B_x.

    The width is at most (l+1)(k+1)-1 for l = pd_width(pdT), k = td_width(td).
    """
    g = g if g is not None else td.host
    if g is None:
        raise InputError("flatten needs the host graph of the tree-decomposition")
    report = validate_tree_decomposition(g, td)
    if not report.valid:
        raise InvalidDecompositionError("tree-decomposition", report)
    require_valid_path_decomposition(td.tree, pdT, "path-decomposition of the indexing tree")

    bags = [union_of(td.bags[y] for y in bag) for bag in pdT.bags]
    flat = PathDecomposition(bags, host=g)
    logger.debug("flattened td width %s over pd width %s into width %s",
                 td_width(td), pd_width(pdT), pd_width(flat))
    return flat

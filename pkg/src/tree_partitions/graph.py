"""
This module provides the graph representation for tree_partitions.

Graphs are undirected and simple, with vertices labelled 0..n-1. They are
immutable once built; the networkx view used by the traversal queries is a
frozen networkx.Graph built on first use.
"""
import logging
from collections import namedtuple
from functools import cached_property

import networkx as nx

from .errors import DisconnectedGraphError, InputError
from .utils import as_vertex_id, canonical_edge, sorted_ids

logger = logging.getLogger(__name__)

#: Result of induced_subgraph. to_sub maps host ids to subgraph ids and
#: to_host is indexed by subgraph id.
Subgraph = namedtuple("Subgraph", ["graph", "to_sub", "to_host"])


class Graph():
    """
    Represent an undirected simple graph on the vertices 0..vertex_count-1.

    Self-loops, duplicate edges and out of range endpoints are rejected rather
    than silently dropped, since every width bound assumes a simple graph.
    """

    def __init__(self, vertex_count, edges=()):
        vertex_count = as_vertex_id(vertex_count)
        if vertex_count < 0:
            raise InputError(f"vertex_count must be non-negative, got {vertex_count}")

        adjacency = [set() for _ in range(vertex_count)]
        edge_set = set()
        for u, v in edges:
            u, v = as_vertex_id(u), as_vertex_id(v)
            if u == v:
                raise InputError(f"Self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputError(f"Edge ({u},{v}) has an endpoint outside 0..{vertex_count - 1}")
            edge = canonical_edge(u, v)
            if edge in edge_set:
                raise InputError(f"Duplicate edge ({u},{v})")
            edge_set.add(edge)
            adjacency[u].add(v)
            adjacency[v].add(u)

        self._vertex_count = vertex_count
        self._edges = frozenset(edge_set)
        self._adjacency = tuple(frozenset(nbrs) for nbrs in adjacency)

    @property
    def vertex_count(self):
        return self._vertex_count

    @property
    def edges(self):
        return self._edges

    @property
    def adjacency(self):
        return self._adjacency

    @property
    def vertices(self):
        return range(self._vertex_count)

    @property
    def edge_count(self):
        return len(self._edges)

    def neighbors(self, vertex):
        """Return N_G(vertex)"""
        return self._adjacency[vertex]

    def degree(self, vertex):
        return len(self._adjacency[vertex])

    def has_edge(self, u, v):
        return v in self._adjacency[u]

    def sorted_edges(self):
        """Return the edges in lexicographic order"""
        return sorted(self._edges)

    @cached_property
    def nx(self):
        """Frozen networkx view of the graph"""
        view = nx.Graph()
        view.add_nodes_from(range(self._vertex_count))
        view.add_edges_from(self.sorted_edges())
        return nx.freeze(view)

    @classmethod
    def from_networkx(cls, nx_graph):
        """Build a Graph from a networkx graph whose nodes are 0..n-1"""
        nodes = set(nx_graph.nodes)
        if nodes != set(range(len(nodes))):
            raise InputError("networkx graph nodes must be labelled 0..n-1")
        return cls(len(nodes), nx_graph.edges)

    def check_vertices(self, ids):
        """Raise InputError unless every id is a vertex of this graph"""
        for vertex in ids:
            if not (isinstance(vertex, int) and 0 <= vertex < self._vertex_count):
                raise InputError(f"{vertex!r} is not a vertex of a graph on {self._vertex_count} vertices")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertex_count == other._vertex_count and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertex_count, self._edges))

    def __str__(self):
        return f"{type(self).__name__}-n{self._vertex_count}-m{len(self._edges)}"

    def __repr__(self):
        return f"{type(self).__name__}({self._vertex_count}, {self.sorted_edges()!r})"


def max_degree(g):
    """Return the maximum degree, 0 for edgeless or empty graphs"""
    return max((len(nbrs) for nbrs in g.adjacency), default=0)


def neighbors_of_set(g, s):
    """Return N_G(S): the vertices outside s adjacent to a vertex of s"""
    s = set(s)
    g.check_vertices(s)
    found = set()
    for vertex in s:
        found.update(g.adjacency[vertex])
    return sorted_ids(found - s)


def connected_components(g):
    """Return the components as sorted tuples, ordered by smallest member"""
    components = [sorted_ids(comp) for comp in nx.connected_components(g.nx)]
    components.sort(key=lambda comp: comp[0])
    return components


def is_connected(g):
    return g.vertex_count > 0 and nx.is_connected(g.nx)


def bfs_distance(g, u, v):
    """Return the length of a shortest uv-path, or None when v is unreachable"""
    g.check_vertices((u, v))
    try:
        return nx.shortest_path_length(g.nx, u, v)
    except nx.NetworkXNoPath:
        return None


def diameter(g):
    """Return the diameter of a connected non-empty graph"""
    if g.vertex_count == 0:
        raise InputError("The diameter of the empty graph is undefined")
    if not nx.is_connected(g.nx):
        raise DisconnectedGraphError(f"{g} is disconnected, its diameter is undefined")
    return nx.diameter(g.nx)


def induced_subgraph(g, keep):
    """
    Return G[keep] relabelled to 0..|keep|-1 in ascending host order, with
    the maps between the two labellings.
    """
    to_host = sorted_ids(set(keep))
    g.check_vertices(to_host)
    to_sub = {host: sub for sub, host in enumerate(to_host)}
    edges = []
    for host in to_host:
        for nbr in g.adjacency[host]:
            if host < nbr and nbr in to_sub:
                edges.append((to_sub[host], to_sub[nbr]))
    return Subgraph(Graph(len(to_host), edges), to_sub, to_host)


def remove_vertices(g, z):
    """Return induced_subgraph(g, V(g) - z)"""
    z = set(z)
    return induced_subgraph(g, (v for v in g.vertices if v not in z))


def is_tree(g):
    """Return True iff g is connected with |E| = |V| - 1 and |V| >= 1"""
    if g.vertex_count == 0:
        return False
    return g.edge_count == g.vertex_count - 1 and nx.is_connected(g.nx)


def is_path_graph(g):
    """Return True iff g is a tree with maximum degree at most 2"""
    return is_tree(g) and max_degree(g) <= 2

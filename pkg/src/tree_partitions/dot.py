"""
This module exports graphs and tree-partitions in Graphviz DOT format
with pydot. Tree-partition bags become cluster_<node> subgraphs and the
tree edges join the clusters.
"""
import logging

import pydot

logger = logging.getLogger(__name__)


def graph_to_dot(g, name="G"):
    """Return a pydot graph of g, one node per vertex"""
    dot = pydot.Dot(name, graph_type="graph", strict=True)
    for vertex in g.vertices:
        dot.add_node(pydot.Node(str(vertex)))
    for u, v in g.sorted_edges():
        dot.add_edge(pydot.Edge(str(u), str(v)))
    return dot


def tree_partition_to_dot(tp, g=None, name="T"):
    """
    Return a pydot graph of the tree-partition tp of g.

    Each tree node x becomes the cluster cluster_<x> holding the vertices of
    its bag. The host edges are drawn between vertices; the tree edges are
    drawn dashed between invisible anchor nodes of the clusters.
    """
    g = g if g is not None else tp.host
    dot = pydot.Dot(name, graph_type="graph", strict=True, compound="true")
    for node, bag in enumerate(tp.bags):
        cluster = pydot.Cluster(str(node), label=f"B{node}")
        cluster.add_node(pydot.Node(f"t{node}", shape="point", style="invis"))
        for vertex in sorted(bag):
            cluster.add_node(pydot.Node(str(vertex)))
        dot.add_subgraph(cluster)
    for a, b in tp.tree.sorted_edges():
        dot.add_edge(pydot.Edge(f"t{a}", f"t{b}", style="dashed",
                                ltail=f"cluster_{a}", lhead=f"cluster_{b}"))
    if g is not None:
        for u, v in g.sorted_edges():
            dot.add_edge(pydot.Edge(str(u), str(v)))
    logger.debug("exported %s bags and %s tree edges to dot", len(tp.bags), tp.tree.edge_count)
    return dot


def write_dot(dot, path):
    """Write the DOT source of dot to path"""
    with open(path, "w") as dot_file:
        dot_file.write(dot.to_string())

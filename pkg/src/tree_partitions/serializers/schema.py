"""
This module converts graphs, decompositions and tree-partitions to and from
the plain-dict artifact schema shared by the JSON and YAML artifacts.

Vertex and node ids in artifacts are the 0-based internal ids; only the
graph text format is 1-based. Bags of tree-indexed artifacts are keyed by
the node id as a string.
"""
import logging
from collections.abc import Mapping

from ..decomp import PathDecomposition, TreeDecomposition
from ..errors import InputError
from ..graph import Graph
from ..tpart import ConstructionTrace, TreePartition

logger = logging.getLogger(__name__)


def _tree_dict(tree):
    return {"nodes": tree.vertex_count, "edges": [list(edge) for edge in tree.sorted_edges()]}


def _node_bags(bags):
    return {str(node): sorted(bag) for node, bag in enumerate(bags)}


def graph_to_dict(g):
    return {"kind": "graph", "vertices": g.vertex_count,
            "edges": [list(edge) for edge in g.sorted_edges()]}


def pd_to_dict(pd):
    return {"kind": "path-decomposition", "bags": [sorted(bag) for bag in pd.bags]}


def td_to_dict(td):
    return {"kind": "tree-decomposition", "tree": _tree_dict(td.tree), "bags": _node_bags(td.bags)}


def tp_to_dict(tp):
    data = {"kind": "tree-partition", "tree": _tree_dict(tp.tree), "bags": _node_bags(tp.bags),
            "witness": pd_to_dict(tp.witness) if tp.witness is not None else None}
    if tp.root is not None:
        data["root"] = tp.root
    return data


_TO_DICT = {
    Graph: graph_to_dict,
    PathDecomposition: pd_to_dict,
    TreeDecomposition: td_to_dict,
    TreePartition: tp_to_dict,
    ConstructionTrace: ConstructionTrace.to_dict,
}


def to_dict(obj):
    """Return the schema dict of a graph, decomposition, partition or trace"""
    for kind, converter in _TO_DICT.items():
        if isinstance(obj, kind):
            return converter(obj)
    if isinstance(obj, dict):
        return obj
    raise InputError(f"No artifact schema for {type(obj).__name__}")


def _require(data, key, kind, shape=None):
    if not isinstance(data, Mapping):
        raise InputError(f"A {kind} artifact must be a mapping, got {type(data).__name__}")
    if key not in data:
        raise InputError(f"A {kind} artifact needs the key '{key}'")
    value = data[key]
    if shape is not None and not isinstance(value, shape):
        raise InputError(f"'{key}' of a {kind} artifact must be a {shape.__name__}, "
                         f"got {type(value).__name__}")
    return value


def _tree_from(data, kind):
    tree = _require(data, "tree", kind, Mapping)
    return Graph(_require(tree, "nodes", kind), (tuple(edge) for edge in tree.get("edges", ())))


def _bags_by_node(data, tree, kind):
    raw = _require(data, "bags", kind, Mapping)
    bags = [[] for _ in range(tree.vertex_count)]
    for node, bag in raw.items():
        node = int(node)
        if not 0 <= node < tree.vertex_count:
            raise InputError(f"Bag for node {node} of a {tree.vertex_count}-node tree")
        bags[node] = bag
    return bags


def graph_from_dict(data):
    return Graph(_require(data, "vertices", "graph"),
                 (tuple(edge) for edge in data.get("edges", ())))


def pd_from_dict(data, host=None):
    return PathDecomposition(_require(data, "bags", "path-decomposition", list), host=host)


def td_from_dict(data, host=None):
    tree = _tree_from(data, "tree-decomposition")
    return TreeDecomposition(tree, _bags_by_node(data, tree, "tree-decomposition"), host=host)


def tp_from_dict(data, host=None):
    tree = _tree_from(data, "tree-partition")
    witness = data.get("witness")
    return TreePartition(tree, _bags_by_node(data, tree, "tree-partition"), host=host,
                         witness=pd_from_dict(witness, host=tree) if witness else None,
                         root=data.get("root"))


_FROM_DICT = {
    "graph": lambda data, host: graph_from_dict(data),
    "path-decomposition": pd_from_dict,
    "tree-decomposition": td_from_dict,
    "tree-partition": tp_from_dict,
}


def from_dict(data, host=None):
    """Build the object described by a schema dict, dispatching on its 'kind'"""
    if not isinstance(data, dict):
        raise InputError(f"An artifact must be a mapping, got {type(data).__name__}")
    kind = data.get("kind")
    if kind not in _FROM_DICT:
        raise InputError(f"Unknown artifact kind {kind!r}; known kinds are {sorted(_FROM_DICT)}")
    logger.debug("building %s from its schema dict", kind)
    return _FROM_DICT[kind](data, host)

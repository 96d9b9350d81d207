"""
This module provides tree-partitions for tree_partitions.

The centre of the module is build_tree_partition: given a graph with a
path-decomposition of width at most k and maximum degree at most d, it
builds a T-partition of width at most f(k, d, |S|) <= 4d(k+1)^2 together with
a path-decomposition of T of width at most 2k+1, recording every
intermediate set in a ConstructionTrace so the bounds can be audited.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .decomp import (PathDecomposition, compact, flatten, normalize_ends, pd_width, relabel,
                     require_valid_path_decomposition, restrict, validate_path_decomposition)
from .errors import DegreeBoundError, InputError, InvalidDecompositionError
from .graph import Graph, diameter, induced_subgraph, is_path_graph, is_tree, max_degree
from .pathwidth import spine_decomposition
from .utils import as_vertex_id, union_of
from .validity import ReportBuilder, ViolationKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FParams():
    """Arguments of the width recurrence: pathwidth bound k, degree bound d, seed-set size s"""
    k: int
    d: int
    s: int = 0

    def __post_init__(self):
        if min(self.k, self.d, self.s) < 0:
            raise InputError(f"k, d and s must be non-negative, got {self}")

    def bound(self):
        return f_bound(self.k, self.d, self.s)


@lru_cache(maxsize=None)
def f_bound(k, d, s):
    """
    Width bound of the construction:
    f(0,d,s) = max(s, 1) and
    f(k,d,s) = max(s(k+1), 2(k+1) + f(k-1, d, 4d(k+1))) for k >= 1.
    """
    if min(k, d, s) < 0:
        raise InputError(f"f is defined on non-negative integers, got ({k}, {d}, {s})")
    if k == 0:
        return max(s, 1)
    return max(s * (k + 1), 2 * (k + 1) + f_bound(k - 1, d, 4 * d * (k + 1)))


def quadratic_bound(k, d):
    """Return 4d(k+1)^2, which bounds f(k, d, s) whenever s <= 4d(k+1)"""
    return 4 * d * (k + 1) ** 2


def extension_bound(k, d, tree_pathwidth):
    """
    Return (width bound, pathwidth bound of the partition tree) for a graph
    with a tree-decomposition of width k over a tree of pathwidth
    tree_pathwidth, reached by flattening into a path-decomposition of width
    (l+1)(k+1)-1 first.
    """
    flat_width = (tree_pathwidth + 1) * (k + 1) - 1
    return f_bound(flat_width, d, 0), 2 * flat_width + 1


@dataclass(frozen=True)
class TreePartition():
    """
    A partition of V(host) into bags indexed by the nodes of a tree.

    bags[x] is the bag of tree node x. witness, when present, is a
    path-decomposition of the tree; root is the node whose bag holds the seed
    set of the construction.
    """
    tree: Graph
    bags: tuple
    host: Graph = field(default=None, compare=False, repr=False)
    witness: Optional[PathDecomposition] = None
    root: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(as_vertex_id(v) for v in bag)
                                               for bag in self.bags))

    @property
    def width(self):
        return tp_width(self)


def tp_width(tp):
    """Return the largest bag size"""
    return max((len(bag) for bag in tp.bags), default=0)


def validate_tree_partition(g, tp):
    """
    Check that tp is a tree-partition of g: the indexing graph is a tree,
    every vertex lies in exactly one bag, and every edge lies inside a bag or
    across a tree edge.
    """
    report = ReportBuilder()
    if not is_tree(tp.tree):
        report.add(ViolationKind.NOT_A_TREE, tp.tree.vertex_count)
    if len(tp.bags) != tp.tree.vertex_count:
        report.add(ViolationKind.BAG_INDEX_MISMATCH, (len(tp.bags), tp.tree.vertex_count))

    owner = dict()
    for node, bag in enumerate(tp.bags):
        for vertex in sorted(bag):
            if not 0 <= vertex < g.vertex_count:
                report.add(ViolationKind.UNKNOWN_VERTEX, (node, vertex))
            elif vertex in owner:
                report.add(ViolationKind.VERTEX_DUPLICATED, (vertex, owner[vertex], node))
            else:
                owner[vertex] = node
    for vertex in g.vertices:
        if vertex not in owner:
            report.add(ViolationKind.VERTEX_ABSENT, vertex)

    nodes = tp.tree.vertex_count
    for v, w in g.sorted_edges():
        if v not in owner or w not in owner:
            continue
        a, b = owner[v], owner[w]
        if a == b:
            continue
        if a >= nodes or b >= nodes or not tp.tree.has_edge(a, b):
            report.add(ViolationKind.EDGE_STRETCHED, (v, w))
    return report.build()


def validate_witness(tp):
    """Check the witness of tp against its tree"""
    if tp.witness is None:
        builder = ReportBuilder()
        builder.add(ViolationKind.VERTEX_ABSENT, "no witness")
        return builder.build()
    return validate_path_decomposition(tp.tree, tp.witness)


def is_path_partition(tp):
    return is_path_graph(tp.tree)


def path_partition_order(tp):
    """Return the nodes of a path-shaped tree from its smaller-id endpoint"""
    if not is_path_partition(tp):
        raise InputError("The partition is not indexed by a path")
    tree = tp.tree
    if tree.vertex_count == 1:
        return [0]
    start = min(node for node in tree.vertices if tree.degree(node) == 1)
    order = [start]
    previous = None
    while len(order) < tree.vertex_count:
        here = order[-1]
        step = next(nbr for nbr in sorted(tree.adjacency[here]) if nbr != previous)
        previous = here
        order.append(step)
    return order


def check_path_partition_diameter(g, pp):
    """
    Return True iff |V(g)| <= width(pp) * (diameter(g) + 1), which every
    path-partition of a connected graph satisfies.
    """
    report = validate_tree_partition(g, pp)
    if report.valid and not is_path_partition(pp):
        builder = ReportBuilder()
        builder.add(ViolationKind.NOT_A_PATH, pp.tree.vertex_count)
        report = builder.build()
    if not report.valid:
        raise InvalidDecompositionError("path-partition", report)
    return g.vertex_count <= tp_width(pp) * (diameter(g) + 1)


def select_minimal_X(pd, s):
    """
    Return an inclusion-minimal set of bag indices holding the first and last
    index whose bags cover s. pd must have empty end bags.

    Each seed vertex in ascending order contributes the leftmost bag holding
    it; a single left-to-right pass then drops every interior index whose
    removal keeps s covered.
    """
    bags = pd.bags
    if not bags or bags[0] or bags[-1]:
        raise InputError("select_minimal_X needs a decomposition with empty end bags")
    seeds = sorted(set(s))
    first_at = dict()
    for idx, bag in enumerate(bags):
        for vertex in bag:
            first_at.setdefault(vertex, idx)
    uncovered = [vertex for vertex in seeds if vertex not in first_at]
    if uncovered:
        raise InputError(f"Seed vertices {uncovered} are in no bag")

    first, last = 0, len(bags) - 1
    chosen = {first, last} | {first_at[vertex] for vertex in seeds}
    seed_set = set(seeds)
    cover = {vertex: 0 for vertex in seeds}
    for idx in chosen:
        for vertex in bags[idx] & seed_set:
            cover[vertex] += 1
    for idx in sorted(chosen - {first, last}):
        held = bags[idx] & seed_set
        if all(cover[vertex] > 1 for vertex in held):
            chosen.discard(idx)
            for vertex in held:
                cover[vertex] -= 1
    return tuple(sorted(chosen))


def select_maximal_Y(pd, x):
    """
    Return an inclusion-maximal set of indices outside x whose bags are
    pairwise disjoint and disjoint from every bag indexed by x, by a single
    left-to-right greedy sweep.
    """
    x = set(x)
    taken = set(union_of(pd.bags[idx] for idx in x))
    chosen = []
    for idx, bag in enumerate(pd.bags):
        if idx in x:
            continue
        if taken.isdisjoint(bag):
            chosen.append(idx)
            taken.update(bag)
    return tuple(chosen)


def key_subpaths(p_prime, x):
    """
    Split the path p_prime (a node sequence) into its key subpaths: maximal
    subpaths whose ends are in x and whose interior avoids x. Together they
    partition the edges of p_prime.
    """
    p_prime = list(p_prime)
    x = set(x)
    if not p_prime:
        return []
    if p_prime[0] not in x or p_prime[-1] not in x:
        raise InputError("Both ends of the contracted path must be in X")
    subpaths = []
    current = [p_prime[0]]
    for node in p_prime[1:]:
        current.append(node)
        if node in x:
            subpaths.append(tuple(current))
            current = [node]
    return subpaths


def map_edges_to_levels(q):
    """
    Level the nodes of a key subpath q by their distance to its ends and map
    each edge to one level.

    Returns (levels, assignment): levels[i] lists the nodes at distance i
    (at most two), for i = 0..m with m the last non-empty level;
    assignment[i] lists the edges mapped to level i for i = 0..m+1, where
    an edge whose nearer end is at distance i goes to level i+1.
    """
    q = list(q)
    length = len(q) - 1
    if length < 1:
        raise InputError("A key subpath has at least one edge")
    dist = [min(pos, length - pos) for pos in range(len(q))]
    last = length // 2
    levels = tuple(tuple(q[pos] for pos in range(len(q)) if dist[pos] == i)
                   for i in range(last + 1))
    assignment = [[] for _ in range(last + 2)]
    for pos in range(length):
        assignment[min(dist[pos], dist[pos + 1]) + 1].append((q[pos], q[pos + 1]))
    return levels, tuple(tuple(edges) for edges in assignment)


@dataclass(frozen=True)
class EdgeRecord():
    """One edge z1z2 of the contracted path, with G_e and its boundary S_e"""
    ends: tuple
    vertices: frozenset
    boundary: frozenset
    subpath: int
    level: int


@dataclass(frozen=True)
class KeySubpathRecord():
    """One key subpath Q with its levels, edge assignment and attachment nodes"""
    nodes: tuple
    levels: tuple
    edge_levels: tuple
    seeds: tuple
    attachments: tuple
    bag_sizes: tuple
    children: tuple


@dataclass(frozen=True)
class LevelRecord():
    """
    Everything one call of the construction chose, in the labelling of that
    call's graph. vertex_map[v] is the top-level id of local vertex v.
    """
    record_id: int
    parent: Optional[int]
    depth: int
    k: int
    d: int
    seeds: frozenset
    vertex_map: tuple
    bag_count: int = 0
    x: tuple = ()
    y: tuple = ()
    z: frozenset = frozenset()
    root_bag: frozenset = frozenset()
    restricted_width: int = -1
    p_prime: tuple = ()
    edges: tuple = ()
    key_subpaths: tuple = ()
    alpha: int = 0
    tree_size: int = 0
    width: int = 0
    witness_width: int = -1
    base: bool = False

    def to_host(self, vertices):
        """Return local vertex ids translated to top-level ids"""
        return frozenset(self.vertex_map[v] for v in vertices)


@dataclass(frozen=True)
class ConstructionTrace():
    """Records of every call of the construction, parents before children"""
    records: tuple

    @property
    def root(self):
        return self.records[0]

    def to_dict(self):
        return {"kind": "construction-trace", "records": [_record_dict(r) for r in self.records]}


def _ids(vertices):
    return sorted(vertices)


def _record_dict(record):
    return {
        "id": record.record_id,
        "parent": record.parent,
        "depth": record.depth,
        "k": record.k,
        "d": record.d,
        "base": record.base,
        "seeds": _ids(record.seeds),
        "vertex_map": list(record.vertex_map),
        "bag_count": record.bag_count,
        "X": list(record.x),
        "Y": list(record.y),
        "Z": _ids(record.z),
        "root_bag": _ids(record.root_bag),
        "restricted_width": record.restricted_width,
        "P_prime": list(record.p_prime),
        "edges": [{"ends": list(e.ends), "G_e": _ids(e.vertices), "S_e": _ids(e.boundary),
                   "subpath": e.subpath, "level": e.level} for e in record.edges],
        "key_subpaths": [{"nodes": list(q.nodes),
                          "levels": [list(level) for level in q.levels],
                          "edge_levels": [[list(e) for e in edges] for edges in q.edge_levels],
                          "seeds": [_ids(seeds) for seeds in q.seeds],
                          "attachments": list(q.attachments),
                          "bag_sizes": list(q.bag_sizes),
                          "children": list(q.children)} for q in record.key_subpaths],
        "alpha": record.alpha,
        "tree_size": record.tree_size,
        "width": record.width,
        "witness_width": record.witness_width,
    }


def _path_tree(count):
    return Graph(count, ((node, node + 1) for node in range(count - 1)))


def _build_base(g, seeds, k, d, vertex_map, depth, parent, records):
    if g.edge_count:
        raise InputError(f"A width-0 decomposition cannot cover the {g.edge_count} edges of {g}")
    others = [v for v in g.vertices if v not in seeds]
    bags = [frozenset(seeds)] + [frozenset((v,)) for v in others]
    tree = _path_tree(len(bags))
    witness = spine_decomposition(list(range(len(bags))), {}).with_host(tree)
    tp = TreePartition(tree, bags, host=g, witness=witness, root=0)
    records.append(LevelRecord(record_id=len(records), parent=parent, depth=depth, k=k, d=d,
                               seeds=frozenset(seeds), vertex_map=vertex_map, base=True,
                               tree_size=len(bags), width=tp_width(tp),
                               witness_width=pd_width(witness)))
    return tp, records[-1].record_id


def _build(g, pd, seeds, k, d, vertex_map, depth, parent, records):
    if k == 0:
        return _build_base(g, seeds, k, d, vertex_map, depth, parent, records)

    record_id = len(records)
    records.append(None)

    pd = normalize_ends(pd)
    bags = pd.bags
    x = select_minimal_X(pd, seeds)
    y = select_maximal_Y(pd, x)
    p_prime = tuple(sorted(set(x) | set(y)))
    z = union_of(bags[idx] for idx in p_prime)
    root_bag = union_of(bags[idx] for idx in x)
    restricted_width = pd_width(restrict(pd, z))
    logger.debug("depth %s k=%s: %s bags, |X|=%s |Y|=%s |Z|=%s", depth, k, len(bags),
                 len(x), len(y), len(z))

    edge_at = dict()
    edge_parts = []
    for z1, z2 in zip(p_prime, p_prime[1:]):
        interior = [bags[idx] - z for idx in range(z1 + 1, z2)]
        vertices = union_of(interior)
        boundary = frozenset(v for v in vertices if not g.adjacency[v] <= vertices)
        edge_at[(z1, z2)] = len(edge_parts)
        edge_parts.append((interior, vertices, boundary))

    tree_edges = []
    out_bags = [root_bag]
    witness_parts = []
    edge_place = dict()
    subpath_records = []
    for q_idx, q in enumerate(key_subpaths(p_prime, x)):
        levels, assignment = map_edges_to_levels(q)
        attachments = [0]
        level_seeds = [frozenset()]
        bag_sizes = []
        children = [None]
        hanging = dict()
        for level in range(1, len(assignment)):
            node = len(out_bags)
            tree_edges.append((attachments[-1], node))
            attachments.append(node)
            level_edges = [edge_at[e] for e in assignment[level]]
            for idx in level_edges:
                edge_place[idx] = (q_idx, level)
            y_bag = union_of(bags[idx] for idx in levels[level]) if level < len(levels) else frozenset()
            seeds_here = union_of(edge_parts[idx][2] for idx in level_edges)
            level_seeds.append(seeds_here)
            out_bags.append(y_bag)
            if not level_edges:
                children.append(None)
                bag_sizes.append(len(y_bag))
                continue

            members = union_of(edge_parts[idx][1] for idx in level_edges)
            sub = induced_subgraph(g, members)
            sub_pd = relabel(compact(PathDecomposition(
                [bag for idx in level_edges for bag in edge_parts[idx][0]])), sub.to_sub)
            child, child_id = _build(sub.graph, sub_pd, frozenset(sub.to_sub[v] for v in seeds_here),
                                     k - 1, d, tuple(vertex_map[v] for v in sub.to_host),
                                     depth + 1, record_id, records)
            children.append(child_id)

            place = {child.root: node}
            for child_node in child.tree.vertices:
                if child_node != child.root:
                    place[child_node] = len(out_bags)
                    out_bags.append(frozenset())
            for child_node, child_bag in enumerate(child.bags):
                lifted = frozenset(sub.to_host[v] for v in child_bag)
                out_bags[place[child_node]] = out_bags[place[child_node]] | lifted
            tree_edges.extend((place[a], place[b]) for a, b in child.tree.sorted_edges())
            bag_sizes.append(len(out_bags[node]))
            below_root = compact(restrict(child.witness, (child.root,)))
            hanging[node] = relabel(below_root, place).bags

        witness_parts.append(spine_decomposition(attachments[1:], hanging))
        subpath_records.append(KeySubpathRecord(
            nodes=q, levels=levels, edge_levels=assignment, seeds=tuple(level_seeds),
            attachments=tuple(attachments), bag_sizes=tuple(bag_sizes), children=tuple(children)))

    tree = Graph(len(out_bags), tree_edges)
    witness_bags = [bag | {0} for part in witness_parts for bag in part.bags] or [frozenset((0,))]
    witness = PathDecomposition(witness_bags, host=tree)
    tp = TreePartition(tree, out_bags, host=g, witness=witness, root=0)

    edge_records = tuple(
        EdgeRecord(ends=ends, vertices=edge_parts[idx][1], boundary=edge_parts[idx][2],
                   subpath=edge_place[idx][0], level=edge_place[idx][1])
        for ends, idx in edge_at.items())
    records[record_id] = LevelRecord(
        record_id=record_id, parent=parent, depth=depth, k=k, d=d, seeds=frozenset(seeds),
        vertex_map=vertex_map, bag_count=len(bags), x=x, y=y, z=z, root_bag=root_bag,
        restricted_width=restricted_width, p_prime=p_prime, edges=edge_records,
        key_subpaths=tuple(subpath_records), alpha=0, tree_size=tree.vertex_count,
        width=tp_width(tp), witness_width=pd_width(witness))
    return tp, record_id


def build_tree_partition(g, pd, s=(), d=None, k=None):
    """
    Build a tree-partition of g from a path-decomposition pd of width at most k.

    Returns (TreePartition, ConstructionTrace). The partition has width at
    most f_bound(k, d, |s|), holds s inside the bag of its root node, and
    carries a witness path-decomposition of its tree of width at most 2k+1.
    d defaults to the maximum degree of g and k to the width of pd.
    """
    require_valid_path_decomposition(g, pd)
    width = max(pd_width(pd), 0)
    if k is None:
        k = width
    elif k < width:
        raise InputError(f"The decomposition has width {width}, above k={k}")
    degree = max_degree(g)
    if d is None:
        d = degree
    elif degree > d:
        raise DegreeBoundError(degree, d)
    seeds = frozenset(s)
    g.check_vertices(seeds)

    records = []
    tp, _ = _build(g, PathDecomposition(pd.bags), seeds, k, d, tuple(g.vertices), 0, None, records)
    logger.info("built tree-partition of %s: %s nodes, width %s, witness width %s",
                g, tp.tree.vertex_count, tp_width(tp), pd_width(tp.witness))
    return tp, ConstructionTrace(tuple(records))


def build_from_tree_decomposition(g, td, pdT, d=None):
    """Flatten a tree-decomposition over a tree of small pathwidth, then build"""
    return build_tree_partition(g, flatten(td, pdT, g), (), d)


def audit_trace(g, trace):
    """
    Evaluate every bound recorded in trace against the top-level graph g.

    Returns a list of messages, one per violated bound; empty when all hold.
    """
    problems = []

    def check(ok, record, message):
        if not ok:
            problems.append(f"record {record.record_id} (depth {record.depth}): {message}")

    for record in trace.records:
        k, d, s = record.k, record.d, len(record.seeds)
        check(record.width <= f_bound(k, d, s), record,
              f"width {record.width} > f({k},{d},{s})")
        check(record.witness_width <= 2 * k + 1, record,
              f"witness width {record.witness_width} > {2 * k + 1}")
        if record.base:
            continue
        check(len(record.root_bag) <= s * (k + 1), record,
              f"|B_alpha| = {len(record.root_bag)} > {s * (k + 1)}")
        check(record.seeds <= record.root_bag, record, "seeds outside B_alpha")
        check(record.restricted_width <= k - 1, record,
              f"restricted width {record.restricted_width} > {k - 1}")
        for edge in record.edges:
            check(len(edge.boundary) <= 2 * (k + 1) * d, record,
                  f"|S_e| = {len(edge.boundary)} for e={edge.ends}")
        level_bag_bound = 2 * (k + 1) + f_bound(k - 1, d, 4 * d * (k + 1))
        for q in record.key_subpaths:
            for level in q.levels:
                check(len(level) <= 2, record, f"|Y_Q,i| = {len(level)} on {q.nodes}")
            for edges in q.edge_levels:
                check(len(edges) <= 2, record, f"|E_Q,i| = {len(edges)} on {q.nodes}")
            for seeds in q.seeds:
                check(len(seeds) <= 4 * (k + 1) * d, record, f"|S_Q,i| = {len(seeds)} on {q.nodes}")
            for size in q.bag_sizes:
                check(size <= level_bag_bound, record, f"|B_l| = {size} > {level_bag_bound}")

        owner = dict()
        for idx, edge in enumerate(record.edges):
            for host in sorted(record.to_host(edge.vertices)):
                if owner.setdefault(host, idx) != idx:
                    check(False, record, f"G_e for edges {owner[host]} and {idx} share vertex {host}")
        for host, idx in owner.items():
            for nbr in g.adjacency[host]:
                if owner.get(nbr, idx) != idx:
                    check(False, record, f"G_e for edges {idx} and {owner[nbr]} touch at {host}-{nbr}")
    return problems

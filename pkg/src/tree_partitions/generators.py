"""
This module provides deterministic generators for tree_partitions.

Labelling schemes are fixed so tests can address named vertices:

- fan: hub 0, path vertices 1..n-1 in path order.
- comb S_n: spine 0..n-1 first, then tooth i as n + i*n + j for j = 0..n-1,
  with spine vertex i adjacent to tooth vertex n + i*n.
- G_i (lower-bound trees): central path 0..n-1, then the copies of G_{i-1}
  in spine order, each laid out the same way; the root is 0.
"""
import logging
from collections import namedtuple
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .decomp import PathDecomposition
from .errors import InputError
from .graph import Graph, induced_subgraph
from .pathwidth import assemble_tree_pd
from .tpart import TreePartition
from .utils import ceil_sqrt

logger = logging.getLogger(__name__)

Fan = namedtuple("Fan", ["graph", "decomposition", "partition"])
Comb = namedtuple("Comb", ["graph", "decomposition"])
LowerBoundTree = namedtuple("LowerBoundTree", ["graph", "decomposition", "root"])
Generated = namedtuple("Generated", ["name", "graph", "decomposition"])


@dataclass(frozen=True)
class SeededConfig():
    """Size parameters and seed of a generator run; equal configs give equal output"""
    n: int
    seed: int = 0
    i: Optional[int] = None


class FamilyMgr():
    """
    Keep track of the graph families available to the command line.

    A family builder takes a SeededConfig and returns a Generated instance;
    new families can be made available with @FamilyMgr.register_family
    """
    _families = dict()

    @classmethod
    def register_family(cls, name):
        """Register a family builder under name"""
        def anon_reg_func(builder):
            logger.debug("registering family '%s'", name)
            cls._families[name] = builder
            return builder
        return anon_reg_func

    @classmethod
    def known_families(cls):
        return sorted(cls._families)

    @classmethod
    def generate(cls, name, cfg):
        if name not in cls._families:
            raise InputError(f"Unknown family '{name}', known families are {cls.known_families()}")
        return cls._families[name](cfg)


def _path_edges(vertices):
    return list(zip(vertices, vertices[1:]))


def _path_decomposition(vertices):
    if len(vertices) == 1:
        return PathDecomposition([vertices])
    return PathDecomposition([(u, v) for u, v in _path_edges(vertices)])


def gen_path(n):
    """Return the path 0-1-...-(n-1)"""
    if n < 1:
        raise InputError(f"A path needs at least one vertex, got n={n}")
    return Graph(n, _path_edges(list(range(n))))


def gen_cycle(n):
    if n < 3:
        raise InputError(f"A cycle needs at least three vertices, got n={n}")
    return Graph(n, _path_edges(list(range(n))) + [(n - 1, 0)])


def gen_star(leaves):
    """Return K_{1,leaves} with centre 0"""
    return Graph(leaves + 1, ((0, leaf) for leaf in range(1, leaves + 1)))


def gen_fan(n):
    """
    Return the fan on n vertices with its width-2 path-decomposition and a
    star-shaped tree-partition of width at most 2*ceil(sqrt(n)).

    The centre bag holds the hub and every ceil(sqrt(n))-th path vertex;
    each leaf bag is a run of path vertices between two of them.
    """
    if n < 2:
        raise InputError(f"A fan needs at least two vertices, got n={n}")
    path = list(range(1, n))
    graph = Graph(n, [(0, v) for v in path] + _path_edges(path))
    if n == 2:
        decomposition = PathDecomposition([(0, 1)], host=graph)
    else:
        decomposition = PathDecomposition([(0, v, v + 1) for v in path[:-1]], host=graph)

    block = ceil_sqrt(n)
    centre = {0} | {v for v in path if v % block == 0}
    segments = []
    for v in path:
        if v in centre:
            continue
        if segments and segments[-1][-1] == v - 1:
            segments[-1].append(v)
        else:
            segments.append([v])
    tree = Graph(len(segments) + 1, ((0, leaf) for leaf in range(1, len(segments) + 1)))
    partition = TreePartition(tree, [centre] + segments, host=graph, root=0)
    return Fan(graph, decomposition, partition)


def gen_comb(n):
    """Return the comb S_n with the width-2 path-decomposition built along its spine"""
    if n < 1:
        raise InputError(f"A comb needs n >= 1, got n={n}")
    spine = list(range(n))
    teeth = [list(range(n + i * n, n + (i + 1) * n)) for i in range(n)]
    edges = _path_edges(spine)
    for i, tooth in enumerate(teeth):
        edges.append((i, tooth[0]))
        edges.extend(_path_edges(tooth))
    graph = Graph(n * (n + 1), edges)
    subs = {i: _path_decomposition(tooth) for i, tooth in enumerate(teeth)}
    return Comb(graph, assemble_tree_pd(graph, spine, subs))


def _shift(pd, offset):
    return PathDecomposition([frozenset(v + offset for v in bag) for bag in pd.bags])


def gen_lower_bound_tree(i, n):
    """
    Return G_i for the given n: G_1 is the n-vertex path rooted at an end;
    G_i is an n-vertex central path with a copy of G_{i-1} hung off every
    central vertex by an edge to the copy's root. The decomposition has
    width at most i.
    """
    if i < 1 or n < 1:
        raise InputError(f"G_i needs i >= 1 and n >= 1, got i={i}, n={n}")
    spine = list(range(n))
    if i == 1:
        graph = gen_path(n)
        return LowerBoundTree(graph, _path_decomposition(spine).with_host(graph), 0)

    child = gen_lower_bound_tree(i - 1, n)
    size = child.graph.vertex_count
    edges = _path_edges(spine)
    subs = dict()
    for v in spine:
        offset = n + v * size
        edges.append((v, offset + child.root))
        edges.extend((a + offset, b + offset) for a, b in child.graph.sorted_edges())
        subs[v] = _shift(child.decomposition, offset)
    graph = Graph(n + n * size, edges)
    logger.debug("G_%s with n=%s has %s vertices", i, n, graph.vertex_count)
    return LowerBoundTree(graph, assemble_tree_pd(graph, spine, subs), 0)


def lower_bound_comb(i, n):
    """
    Return the subgraph of G_i (i >= 2) spanned by its central path and the
    central paths of the copies of G_{i-1}; in the labelling above it is
    exactly the comb S_n.
    """
    if i < 2:
        raise InputError(f"The comb inside G_i needs i >= 2, got i={i}")
    size = gen_lower_bound_tree(i - 1, n).graph.vertex_count
    whole = gen_lower_bound_tree(i, n).graph
    keep = list(range(n)) + [n + v * size + j for v in range(n) for j in range(n)]
    return induced_subgraph(whole, keep).graph


def gen_random_tree(cfg):
    """
    Return a random recursive tree on cfg.n vertices: vertex v > 0 attaches
    to a uniformly chosen earlier vertex, drawn from numpy's default_rng
    seeded with cfg.seed.
    """
    if cfg.n < 1:
        raise InputError(f"A tree needs at least one vertex, got n={cfg.n}")
    rng = np.random.default_rng(cfg.seed)
    return Graph(cfg.n, ((v, int(rng.integers(0, v))) for v in range(1, cfg.n)))


@FamilyMgr.register_family("fan")
def fan_family(cfg):
    fan = gen_fan(cfg.n)
    return Generated(f"fan-{cfg.n}", fan.graph, fan.decomposition)


@FamilyMgr.register_family("comb")
def comb_family(cfg):
    comb = gen_comb(cfg.n)
    return Generated(f"comb-{cfg.n}", comb.graph, comb.decomposition)


@FamilyMgr.register_family("lower-bound")
def lower_bound_family(cfg):
    if cfg.i is None:
        raise InputError("The lower-bound family needs the parameter i")
    tree = gen_lower_bound_tree(cfg.i, cfg.n)
    return Generated(f"G{cfg.i}-{cfg.n}", tree.graph, tree.decomposition)


@FamilyMgr.register_family("path")
def path_family(cfg):
    graph = gen_path(cfg.n)
    return Generated(f"path-{cfg.n}", graph, _path_decomposition(list(range(cfg.n))).with_host(graph))


@FamilyMgr.register_family("random-tree")
def random_tree_family(cfg):
    return Generated(f"random-tree-{cfg.n}-s{cfg.seed}", gen_random_tree(cfg), None)

"""
This module provide miscellaneous support for tree_partitions
"""
import logging
import math
import operator

from .errors import InputError

logger = logging.getLogger(__name__)


def canonical_edge(u, v):
    """Return the edge uv as an (smaller, larger) tuple"""
    return (u, v) if u < v else (v, u)


def sorted_ids(ids):
    """Return the ids as an ascending tuple"""
    return tuple(sorted(ids))


def ceil_sqrt(n):
    """Return the smallest integer b with b*b >= n"""
    root = math.isqrt(n)
    return root if root * root == n else root + 1


def union_of(sets):
    """Return the union of an iterable of sets as a frozenset"""
    out = set()
    for each in sets:
        out.update(each)
    return frozenset(out)


def as_vertex_id(value):
    """Return value as a plain int, rejecting bools and non-integral numbers"""
    if isinstance(value, bool):
        raise InputError(f"Vertex ids must be integers, got {value!r}")
    try:
        return operator.index(value)
    except TypeError:
        raise InputError(f"Vertex ids must be integers, got {value!r}") from None

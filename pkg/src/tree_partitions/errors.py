"""
This module provides the exception hierarchy for tree_partitions
"""


class TreePartitionError(Exception):
    """Root of every error raised by tree_partitions"""


class InputError(TreePartitionError, ValueError):
    """An argument does not satisfy the precondition of an operation"""


class SizeLimitError(InputError):
    """An instance is above the size limit of an exact or brute-force search"""

    def __init__(self, what, size, limit):
        super().__init__(f"{what} is limited to {limit} vertices, got {size}")
        self.size = size
        self.limit = limit


class DegreeBoundError(InputError):
    """The graph has a vertex of degree above the supplied bound d"""

    def __init__(self, degree, bound):
        super().__init__(f"Maximum degree {degree} exceeds the degree bound d={bound}")
        self.degree = degree
        self.bound = bound


class InvalidDecompositionError(InputError):
    """A decomposition or partition failed validation where validity is required"""

    def __init__(self, what, report):
        super().__init__(f"Invalid {what}: {report.summary()}")
        self.report = report


class DisconnectedGraphError(InputError):
    """An operation that needs a connected graph got a disconnected one"""


class ParseError(TreePartitionError):
    """A graph or artifact file could not be parsed"""

    def __init__(self, path, line_num, message):
        where = f"{path}:{line_num}" if line_num else f"{path}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line_num = line_num

"""
This module provides the validity reports returned by the validators.

Violations are data: validators collect every violation they find and never
raise for them.
"""
from dataclasses import dataclass
from enum import Enum


class ViolationKind(Enum):
    UNKNOWN_VERTEX = "unknown-vertex"
    EDGE_UNCOVERED = "edge-uncovered"
    VERTEX_ABSENT = "vertex-absent"
    VERTEX_SCATTERED = "vertex-scattered"
    VERTEX_DUPLICATED = "vertex-duplicated"
    EDGE_STRETCHED = "edge-stretched"
    NOT_A_TREE = "not-a-tree"
    NOT_A_PATH = "not-a-path"
    BAG_INDEX_MISMATCH = "bag-index-mismatch"


@dataclass(frozen=True)
class Violation():
    """One violated condition and the vertex, edge or node it concerns"""
    kind: ViolationKind
    subject: object = None

    def __str__(self):
        return f"{self.kind.value}: {self.subject}"


@dataclass(frozen=True)
class ValidityReport():
    """
    Outcome of a validator.

    A report is valid iff it holds no violations. Violations keep the order
    in which the validator found them, which is deterministic.
    """
    violations: tuple = ()

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def of_kind(self, kind):
        """Return the subjects of every violation of the given kind"""
        return [violation.subject for violation in self.violations if violation.kind is kind]

    def kinds(self):
        """Return the set of violation kinds present"""
        return {violation.kind for violation in self.violations}

    def summary(self, limit=5):
        if self.valid:
            return "valid"
        shown = "; ".join(str(violation) for violation in self.violations[:limit])
        more = len(self.violations) - limit
        if more > 0:
            shown += f"; ... {more} more"
        return shown

    def as_dict(self):
        return {
            "valid": self.valid,
            "violations": [{"kind": v.kind.value, "subject": _plain(v.subject)}
                           for v in self.violations],
        }


def _plain(subject):
    if isinstance(subject, (tuple, list, frozenset, set)):
        items = sorted(subject) if isinstance(subject, (frozenset, set)) else subject
        return [_plain(item) for item in items]
    return subject


class ReportBuilder():
    """Accumulate violations for a validator"""

    def __init__(self):
        self._violations = []

    def add(self, kind, subject=None):
        self._violations.append(Violation(kind, subject))

    def build(self):
        return ValidityReport(tuple(self._violations))

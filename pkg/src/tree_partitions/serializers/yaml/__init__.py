"""
YAML tags for tree_partitions artifacts.

Each tag carries the schema dict of its object without the 'kind' key,
which the tag replaces.
"""
import io

import ruamel.yaml

from tree_partitions.decomp import PathDecomposition, TreeDecomposition
from tree_partitions.graph import Graph
from tree_partitions.serializers.schema import from_dict, to_dict
from tree_partitions.tpart import TreePartition


class MyYAML(ruamel.yaml.YAML):
    def dump(self, data, stream=None, **kw):
        inefficient = False
        if stream is None:
            inefficient = True
            stream = io.StringIO()
        ruamel.yaml.YAML.dump(self, data, stream, **kw)
        if inefficient:
            return stream.getvalue()


yaml = MyYAML(typ='safe')
yaml.default_flow_style = None

TAGS = {
    Graph: "!graph",
    PathDecomposition: "!path-decomposition",
    TreeDecomposition: "!tree-decomposition",
    TreePartition: "!tree-partition",
}


def _representer(tag):
    def represent(representer, obj):
        data = to_dict(obj)
        return representer.represent_mapping(tag, {key: value for key, value in data.items()
                                                   if key != "kind"})
    return represent


def _constructor(tag):
    kind = tag.lstrip("!")

    def construct(constructor, node):
        mapping = constructor.construct_mapping(node, deep=True)
        return from_dict(dict(mapping, kind=kind))
    return construct


for _cls, _tag in TAGS.items():
    yaml.representer.add_representer(_cls, _representer(_tag))
    yaml.constructor.add_constructor(_tag, _constructor(_tag))

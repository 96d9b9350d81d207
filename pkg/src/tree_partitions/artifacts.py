"""
This module reads and writes the files of tree_partitions.

Graphs use a DIMACS-style text format: a problem line `p <n> <m>` followed
by m edge lines `e <u> <v>` with 1-based vertex ids; lines starting with `c`
are comments. Decompositions, partitions, traces and manifests are JSON
artifacts, or YAML when the path ends in .yml or .yaml.
"""
import json
import logging
import pathlib
from dataclasses import is_dataclass, replace

from .errors import InputError, ParseError
from .graph import Graph
from .serializers.schema import from_dict, to_dict

logger = logging.getLogger(__name__)


def parse_graph(lines, path="<string>"):
    """Parse the lines of a graph text file into a Graph"""
    header = None
    edges = []
    for line_num, raw in enumerate(lines, start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        if fields[0] == "p":
            if header is not None:
                raise ParseError(path, line_num, "Second problem line")
            if len(fields) != 3:
                raise ParseError(path, line_num, f"Expected 'p <n> <m>', got '{raw.strip()}'")
            header = (_number(fields[1], path, line_num), _number(fields[2], path, line_num))
        elif fields[0] == "e":
            if header is None:
                raise ParseError(path, line_num, "Edge line before the problem line")
            if len(fields) != 3:
                raise ParseError(path, line_num, f"Expected 'e <u> <v>', got '{raw.strip()}'")
            u, v = (_number(field, path, line_num) for field in fields[1:])
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise ParseError(path, line_num, f"Vertex id outside 1..{header[0]}")
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(path, line_num, f"Unknown line type '{fields[0]}'")
    if header is None:
        raise ParseError(path, 0, "Missing problem line")
    if len(edges) != header[1]:
        raise ParseError(path, 0, f"Problem line announces {header[1]} edges, found {len(edges)}")
    try:
        return Graph(header[0], edges)
    except InputError as err:
        raise ParseError(path, 0, str(err)) from err


def _number(field, path, line_num):
    try:
        value = int(field)
    except ValueError:
        raise ParseError(path, line_num, f"Expected an integer, got '{field}'") from None
    if value < 0:
        raise ParseError(path, line_num, f"Expected a non-negative integer, got {value}")
    return value


def format_graph(g):
    """Return the text format of g"""
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def read_graph(path):
    logger.debug("reading graph from %s", path)
    with open(path, "r") as graph_file:
        return parse_graph(graph_file, path)


def write_graph(g, path):
    logger.debug("writing %s to %s", g, path)
    with open(path, "w") as graph_file:
        graph_file.write(format_graph(g))


class ArtifactMgr():
    """
    Read and write artifacts, dispatching on the file suffix.

    Parsers turn a file into plain data or objects; writers take plain data.
    New formats can be provided with @ArtifactMgr.register_artifact_parser
    and @ArtifactMgr.register_artifact_writer
    """
    _artifact_parsers = dict()
    _artifact_writers = dict()

    @classmethod
    def register_artifact_parser(cls, extension):
        def anon_reg_func(callback):
            logger.debug("registering artifact parser for '%s'", extension)
            cls._artifact_parsers[extension] = callback
            return callback
        return anon_reg_func

    @classmethod
    def register_artifact_writer(cls, extension):
        def anon_reg_func(callback):
            logger.debug("registering artifact writer for '%s'", extension)
            cls._artifact_writers[extension] = callback
            return callback
        return anon_reg_func

    @classmethod
    def _lookup(cls, table, path):
        suffix = pathlib.Path(path).suffix
        if suffix not in table:
            raise InputError(f"No artifact format for '{suffix}' files; known are {sorted(table)}")
        return table[suffix]

    @classmethod
    def load_data(cls, path):
        """Return the raw content of an artifact file"""
        return cls._lookup(cls._artifact_parsers, path)(path)

    @classmethod
    def load(cls, path, host=None):
        """
        Return the graph, decomposition or partition stored at path. host
        becomes the host graph of the loaded decomposition.
        """
        data = cls.load_data(path)
        if isinstance(data, dict):
            try:
                return from_dict(data, host=host)
            except (InputError, TypeError, ValueError) as err:
                raise ParseError(path, 0, str(err)) from err
        if host is not None and is_dataclass(data) and hasattr(data, "host"):
            data = replace(data, host=host)
        return data

    @classmethod
    def write(cls, obj, path):
        """Write a graph, decomposition, partition, trace or plain dict to path"""
        logger.debug("writing %s artifact to %s", type(obj).__name__, path)
        cls._lookup(cls._artifact_writers, path)(obj, path)


@ArtifactMgr.register_artifact_parser('.json')
def load_artifact_json(path):
    """Parse an artifact written in json"""
    with open(path, "r") as json_file:
        try:
            return json.load(json_file)
        except json.JSONDecodeError as err:
            raise ParseError(path, err.lineno, err.msg) from err


@ArtifactMgr.register_artifact_writer('.json')
def write_artifact_json(obj, path):
    with open(path, "w") as json_file:
        json.dump(to_dict(obj), json_file, indent=2, sort_keys=True)
        json_file.write("\n")


@ArtifactMgr.register_artifact_parser('.yml')
@ArtifactMgr.register_artifact_parser('.yaml')
def load_artifact_yml(path):
    """Parse an artifact written in yaml"""
    import ruamel.yaml
    from .serializers.yaml import yaml
    with open(path, "r") as yaml_file:
        try:
            return yaml.load(yaml_file)
        except ruamel.yaml.YAMLError as err:
            mark = getattr(err, "problem_mark", None)
            raise ParseError(path, mark.line + 1 if mark else 0, str(err)) from err
        except (InputError, TypeError) as err:
            raise ParseError(path, 0, str(err)) from err


@ArtifactMgr.register_artifact_writer('.yml')
@ArtifactMgr.register_artifact_writer('.yaml')
def write_artifact_yml(obj, path):
    from .serializers.yaml import yaml, TAGS
    if not isinstance(obj, tuple(TAGS)):
        obj = to_dict(obj)
    with open(path, "w") as yaml_file:
        yaml.dump(obj, yaml_file)

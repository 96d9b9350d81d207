"""
Command-line interface of tree_partitions.

Subcommands:

- gen: write a generated graph (text format) and its shipped decomposition
- pw: exact pathwidth of a small graph
- partition: build a tree-partition from a graph and a path-decomposition
- verify: validate a decomposition or partition artifact against a graph
- oracle: brute-force widths of tiny graphs
- sweep: measured width versus bound over a family, as CSV rows

Exit codes are 0 on success (verify: valid), 1 when verify finds
violations and 2 on I/O, parse or input errors. Every subcommand that writes
files also writes a run manifest next to them.
"""
import argparse
import csv
import json
import logging
import pathlib
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .artifacts import ArtifactMgr, read_graph, write_graph
from .config import SettingsMgr
from .decomp import (PathDecomposition, TreeDecomposition, pd_width, td_width,
                     validate_path_decomposition, validate_tree_decomposition)
from .dot import graph_to_dot, tree_partition_to_dot, write_dot
from .errors import InputError, TreePartitionError
from .generators import FamilyMgr, SeededConfig
from .oracles import brute_path_partition_width, brute_pathwidth, brute_tree_partition_width
from .pathwidth import exact_pathwidth
from .tpart import (TreePartition, audit_trace, build_tree_partition, f_bound, tp_width,
                    validate_tree_partition)
from .validity import ValidityReport

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_ERROR = 2

CSV_HEADER = ["instance", "k", "d", "s", "width", "f_bound", "witness_pw", "pw_bound"]

ORACLES = {
    "pathwidth": brute_pathwidth,
    "path-partition": brute_path_partition_width,
    "tree-partition": brute_tree_partition_width,
}


@dataclass(frozen=True)
class RunManifest():
    """What a run read, with which parameters, and what it wrote"""
    subcommand: str
    inputs: tuple = ()
    parameters: dict = field(default_factory=dict)
    outputs: tuple = ()
    version: str = __version__

    def to_dict(self):
        return {"kind": "run-manifest", "subcommand": self.subcommand,
                "inputs": [str(path) for path in self.inputs],
                "parameters": self.parameters,
                "outputs": [str(path) for path in self.outputs],
                "settings": SettingsMgr.current().as_dict(),
                "version": self.version}

    def write(self, path):
        ArtifactMgr.write(self.to_dict(), path)
        return path


def parse_seeds(text):
    """Turn a comma separated list of 1-based vertex ids into 0-based ids"""
    if not text:
        return frozenset()
    try:
        ids = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"Seeds must be comma separated integers, got '{text}'") from None
    if any(vertex < 1 for vertex in ids):
        raise InputError(f"Seed ids are 1-based, got {ids}")
    return frozenset(vertex - 1 for vertex in ids)


def _emit(data):
    print(json.dumps(data, indent=2, sort_keys=True))


def cmd_gen(args):
    cfg = SeededConfig(n=args.n, seed=args.seed, i=args.i)
    generated = FamilyMgr.generate(args.family, cfg)
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    graph_path = out_dir / f"{generated.name}.gr"
    write_graph(generated.graph, graph_path)
    outputs = [graph_path]
    if generated.decomposition is not None:
        pd_path = out_dir / f"{generated.name}.pd.{args.format}"
        ArtifactMgr.write(generated.decomposition, pd_path)
        outputs.append(pd_path)
    if args.dot:
        write_dot(graph_to_dot(generated.graph, generated.name), args.dot)
        outputs.append(args.dot)

    manifest = RunManifest("gen", (), {"family": args.family, "n": args.n, "i": args.i,
                                       "seed": args.seed}, tuple(outputs))
    manifest.write(out_dir / f"{generated.name}.manifest.json")
    logger.info("generated %s into %s", generated.name, out_dir)
    _emit({"instance": generated.name, "outputs": [str(path) for path in outputs]})
    return EXIT_OK


def cmd_pw(args):
    g = read_graph(args.graph)
    result = exact_pathwidth(g)
    outputs = []
    if args.out:
        ArtifactMgr.write(result.witness, args.out)
        outputs.append(args.out)
        RunManifest("pw", (args.graph,), {}, tuple(outputs)).write(f"{args.out}.manifest.json")
    _emit({"graph": str(args.graph), "vertices": g.vertex_count, "edges": g.edge_count,
           "pathwidth": result.value, "witness_width": pd_width(result.witness)})
    return EXIT_OK


def cmd_partition(args):
    g = read_graph(args.graph)
    pd = ArtifactMgr.load(args.pd, host=g)
    if not isinstance(pd, PathDecomposition):
        raise InputError(f"{args.pd} does not hold a path-decomposition")
    seeds = parse_seeds(args.seeds)
    tp, trace = build_tree_partition(g, pd, seeds, d=args.d, k=args.k)
    for problem in audit_trace(g, trace):
        logger.warning("construction bound violated: %s", problem)

    prefix = args.out
    tp_path = f"{prefix}.tp.{args.format}"
    tree_path = f"{prefix}.tree.gr"
    witness_path = f"{prefix}.witness.{args.format}"
    trace_path = f"{prefix}.trace.json"
    ArtifactMgr.write(tp, tp_path)
    # the witness is a decomposition of the tree, so verify needs the tree as a graph
    write_graph(tp.tree, tree_path)
    ArtifactMgr.write(tp.witness, witness_path)
    ArtifactMgr.write(trace, trace_path)
    outputs = [tp_path, tree_path, witness_path, trace_path]
    if args.dot:
        write_dot(tree_partition_to_dot(tp, g), args.dot)
        outputs.append(args.dot)

    root = trace.root
    parameters = {"k": root.k, "d": root.d, "s": sorted(vertex + 1 for vertex in seeds)}
    RunManifest("partition", (args.graph, args.pd), parameters, tuple(outputs)).write(
        f"{prefix}.manifest.json")
    _emit({"instance": str(args.graph), **parameters, "width": tp_width(tp),
           "f_bound": f_bound(root.k, root.d, len(seeds)),
           "witness_pw": pd_width(tp.witness), "pw_bound": 2 * root.k + 1,
           "outputs": [str(path) for path in outputs]})
    return EXIT_OK


def validate_artifact(g, artifact):
    """Return (ValidityReport, width) for a loaded artifact against g"""
    if isinstance(artifact, TreePartition):
        report = validate_tree_partition(g, artifact)
        if artifact.witness is not None:
            witness = validate_path_decomposition(artifact.tree, artifact.witness)
            report = ValidityReport(report.violations + witness.violations)
        return report, tp_width(artifact)
    if isinstance(artifact, TreeDecomposition):
        return validate_tree_decomposition(g, artifact), td_width(artifact)
    if isinstance(artifact, PathDecomposition):
        return validate_path_decomposition(g, artifact), pd_width(artifact)
    raise InputError(f"Cannot verify an artifact of type {type(artifact).__name__}")


def cmd_verify(args):
    g = read_graph(args.graph)
    artifact = ArtifactMgr.load(args.artifact, host=g)
    report, width = validate_artifact(g, artifact)
    _emit({"artifact": str(args.artifact), "width": width, **report.as_dict()})
    if not report.valid:
        logger.info("%s is invalid: %s", args.artifact, report.summary())
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_oracle(args):
    g = read_graph(args.graph)
    value = ORACLES[args.kind](g)
    _emit({"graph": str(args.graph), "oracle": args.kind, "value": value})
    return EXIT_OK


def sweep_row(task):
    """Build one sweep instance and return its CSV row; runs in worker processes"""
    family, cfg, d, settings = task
    SettingsMgr.update(**settings)
    generated = FamilyMgr.generate(family, cfg)
    pd = generated.decomposition
    if pd is None:
        pd = exact_pathwidth(generated.graph).witness
    tp, trace = build_tree_partition(generated.graph, pd, (), d=d)
    k, d = trace.root.k, trace.root.d
    return {"instance": generated.name, "k": k, "d": d, "s": 0, "width": tp_width(tp),
            "f_bound": f_bound(k, d, 0), "witness_pw": pd_width(tp.witness),
            "pw_bound": 2 * k + 1}


def cmd_sweep(args):
    settings = SettingsMgr.current().as_dict()
    tasks = [(args.family, SeededConfig(n=n, seed=args.seed, i=args.i), args.d, settings)
             for n in args.n]
    jobs = args.jobs if args.jobs is not None else SettingsMgr.current().sweep_jobs
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(sweep_row, tasks))
    else:
        rows = [sweep_row(task) for task in tasks]

    csv_path = pathlib.Path(args.csv)
    fresh = not csv_path.exists() or csv_path.stat().st_size == 0
    with open(csv_path, "a", newline="") as csv_file:
        writer = csv.DictWriter(csv_file, fieldnames=CSV_HEADER)
        if fresh:
            writer.writeheader()
        for row in rows:
            if row["width"] > row["f_bound"] or row["witness_pw"] > row["pw_bound"]:
                logger.warning("sweep row %s exceeds its bound", row)
            writer.writerow(row)

    RunManifest("sweep", (), {"family": args.family, "n": list(args.n), "i": args.i,
                              "d": args.d, "seed": args.seed}, (csv_path,)).write(
        f"{csv_path}.manifest.json")
    logger.info("appended %s rows to %s", len(rows), csv_path)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="tpartition", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--config", help="YAML settings file")
    parser.add_argument("--log-level", help="logging level, default from the settings")
    parser.add_argument("--seed", type=int, default=0, help="seed of randomized generators")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a graph family instance")
    gen.add_argument("family", choices=FamilyMgr.known_families())
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--i", type=int)
    gen.add_argument("--out-dir", default=".")
    gen.add_argument("--format", choices=["json", "yml"], default="json")
    gen.add_argument("--dot", help="also write the graph as DOT")
    gen.set_defaults(func=cmd_gen)

    pw = commands.add_parser("pw", help="exact pathwidth of a small graph")
    pw.add_argument("graph")
    pw.add_argument("--out", help="write the witness decomposition here")
    pw.set_defaults(func=cmd_pw)

    partition = commands.add_parser("partition", help="build a tree-partition")
    partition.add_argument("graph")
    partition.add_argument("pd")
    partition.add_argument("--seeds", default="", help="comma separated 1-based vertex ids")
    partition.add_argument("--d", type=int)
    partition.add_argument("--k", type=int)
    partition.add_argument("--out", required=True, help="prefix of the written artifacts")
    partition.add_argument("--format", choices=["json", "yml"], default="json")
    partition.add_argument("--dot", help="also write the tree-partition as DOT")
    partition.set_defaults(func=cmd_partition)

    verify = commands.add_parser("verify", help="validate an artifact against a graph")
    verify.add_argument("graph")
    verify.add_argument("artifact")
    verify.set_defaults(func=cmd_verify)

    oracle = commands.add_parser("oracle", help="brute-force width of a tiny graph")
    oracle.add_argument("kind", choices=sorted(ORACLES))
    oracle.add_argument("graph")
    oracle.set_defaults(func=cmd_oracle)

    sweep = commands.add_parser("sweep", help="measured width against the bounds")
    sweep.add_argument("family", choices=FamilyMgr.known_families())
    sweep.add_argument("--n", type=int, nargs="+", required=True)
    sweep.add_argument("--i", type=int)
    sweep.add_argument("--d", type=int)
    sweep.add_argument("--csv", required=True)
    sweep.add_argument("--jobs", type=int)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            SettingsMgr.load(args.config)
        level = (args.log_level or SettingsMgr.current().log_level).upper()
        logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except (TreePartitionError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

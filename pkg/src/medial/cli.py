"""Command-line surface: build polytope instances by key, classify their
medial layer graphs, reproduce the summary table, and run the 54-vertex
cross-validation pipeline.

Keys:
    universal:3,6:<s1>,<s2>:<t1>,<t2>   universal polytope with toroidal
                                        facets {3,6}_(s1,s2) and vertex
                                        figures {6,3}_(t1,t2)
    eisenstein:m=<expr>:A=<gens>        Eisenstein matrix construction;
                                        <expr> is a product of a+bw factors
                                        separated by '*', <gens> extra unit
                                        scalars (empty: A = {1, -1})

Exit codes: 0 success, 2 overflow/undecided, 3 validation failure,
4 bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import graphsym
from .catalog import TABLE1_ROWS, ToroidalParams, universal_locally_toroidal
from .eisenstein import (
    EisensteinInt,
    ResidueRing,
    ScalarGroup,
    format_eisenstein,
    parse_eisenstein,
)
from .graphsym import (
    BipartiteCubicGraph,
    Classification,
    GraphError,
    InconsistencyError,
    automorphism_group,
    classify,
    gray_oracle,
    is_isomorphic,
)
from .matgroup import ConfigurationError, OverflowResult, generate_group
from .polytope import (
    PolytopeHandle,
    PolytopeValidationError,
    handle_from_matrix_group,
    handle_from_presentation,
    medial_layer_graph,
)

EXIT_OK = 0
EXIT_OVERFLOW = 2
EXIT_VALIDATION = 3
EXIT_BAD_INPUT = 4

CSV_COLUMNS = ["key", "params", "group_order", "N", "verdict", "aut_order",
               "seconds"]


class BadInput(ValueError):
    """Unrecognized key or malformed argument."""


@dataclass
class JobSpec:
    key: str
    max_cosets: int = 10**7
    max_elements: int = 2 * 10**6
    time_budget: float | None = None
    max_vertices: int = graphsym.DEFAULT_VERTEX_CAP
    fmt: str = "csv"
    extended: bool = False
    jobs: int = 1

    def __post_init__(self):
        if self.max_cosets < 1 or self.max_elements < 1 or self.jobs < 1:
            raise BadInput("limits must be positive")
        if self.fmt not in ("csv", "md", "dot", "adj", "graph6"):
            raise BadInput(f"unknown format {self.fmt!r}")


@dataclass
class InstanceReport:
    key: str
    params: str
    handle: PolytopeHandle
    graph: BipartiteCubicGraph
    classification: Classification | None = None
    seconds: float = 0.0


def parse_eisenstein_product(text: str) -> EisensteinInt:
    """A '*'-separated product of a+bw factors, parentheses optional."""
    value = EisensteinInt(1, 0)
    for part in text.split("*"):
        part = part.strip()
        if part.startswith("(") and part.endswith(")"):
            part = part[1:-1]
        value = value * parse_eisenstein(part)
    return value


def build_instance(spec: JobSpec) -> InstanceReport:
    start = time.monotonic()
    parts = spec.key.split(":")
    if parts[0] == "universal":
        if len(parts) != 4 or parts[1] != "3,6":
            raise BadInput(f"malformed universal key {spec.key!r}")
        try:
            s = ToroidalParams(*(int(x) for x in parts[2].split(",")))
            t = ToroidalParams(*(int(x) for x in parts[3].split(",")))
        except (TypeError, ValueError) as exc:
            raise BadInput(f"bad toroidal parameters in {spec.key!r}: {exc}")
        pres = universal_locally_toroidal(s, t)
        handle = handle_from_presentation(
            pres, spec.key, max_cosets=spec.max_cosets,
            time_budget=spec.time_budget)
        params = f"s=({s.s},{s.t}) t=({t.s},{t.t})"
    elif parts[0] == "eisenstein":
        if len(parts) != 3 or not parts[1].startswith("m=") \
                or not parts[2].startswith("A="):
            raise BadInput(f"malformed eisenstein key {spec.key!r}")
        try:
            m = parse_eisenstein_product(parts[1][2:])
        except ValueError as exc:
            raise BadInput(f"bad modulus in {spec.key!r}: {exc}")
        gens = [parse_eisenstein(g) for g in parts[2][2:].split(",") if g]
        ring = ResidueRing(m)
        A = ScalarGroup(ring, gens)
        mg = generate_group(m, A, max_elements=spec.max_elements)
        handle = handle_from_matrix_group(mg, spec.key)
        scalars = ",".join(format_eisenstein(x) for x in A.members)
        params = f"m={format_eisenstein(m)} A={{{scalars}}}"
    else:
        raise BadInput(f"unknown key kind {parts[0]!r}")
    graph = medial_layer_graph(handle)
    return InstanceReport(spec.key, params, handle, graph,
                          seconds=time.monotonic() - start)


def classify_instance(spec: JobSpec, report: InstanceReport) -> InstanceReport:
    start = time.monotonic()
    aut = automorphism_group(report.graph, max_vertices=spec.max_vertices)
    report.classification = classify(report.graph, aut,
                                     max_vertices=spec.max_vertices)
    report.seconds += time.monotonic() - start
    return report


def _row(report: InstanceReport) -> list[str]:
    c = report.classification
    return [
        report.key,
        report.params,
        str(report.handle.group_order),
        str(report.graph.n),
        c.label() if c else "",
        str(c.aut_order) if c and c.verdict != "undecided" else "",
        f"{report.seconds:.1f}",
    ]


def _emit_rows(rows: list[list[str]], fmt: str, out) -> None:
    if fmt == "md":
        out.write("| " + " | ".join(CSV_COLUMNS) + " |\n")
        out.write("|" + "|".join(["---"] * len(CSV_COLUMNS)) + "|\n")
        for r in rows:
            out.write("| " + " | ".join(r) + " |\n")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
        out.write(buf.getvalue())


def _export_graph(graph: BipartiteCubicGraph, fmt: str, out) -> None:
    if fmt == "dot":
        out.write(graphsym.to_dot(graph))
    elif fmt == "adj":
        out.write(graphsym.to_adjacency_text(graph))
    elif fmt == "graph6":
        out.write(graphsym.to_graph6(graph) + "\n")


def cmd_build(spec: JobSpec, out) -> int:
    report = build_instance(spec)
    if spec.fmt in ("dot", "adj", "graph6"):
        _export_graph(report.graph, spec.fmt, out)
        return EXIT_OK
    out.write(f"key: {report.key}\n")
    out.write(f"params: {report.params}\n")
    out.write(f"kind: {report.handle.kind}\n")
    out.write(f"schlafli: {report.handle.schlafli}\n")
    out.write(f"group_order: {report.handle.group_order}\n")
    out.write(f"N: {report.graph.n}\n")
    validated = "full" if report.handle.cgroup is not None else "relations"
    out.write(f"validation: {validated}\n")
    if report.handle.self_dual is not None:
        out.write(f"self_dual: {report.handle.self_dual}\n")
    out.write(f"seconds: {report.seconds:.1f}\n")
    return EXIT_OK


def _load_graph(path: str) -> BipartiteCubicGraph:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".g6") or path.endswith(".graph6"):
        return graphsym.from_graph6(text)
    return graphsym.from_adjacency_text(text)


def cmd_classify(spec: JobSpec, out) -> int:
    if ":" in spec.key:
        report = classify_instance(spec, build_instance(spec))
        rows = [_row(report)]
        verdict = report.classification.verdict
    else:
        graph = _load_graph(spec.key)
        start = time.monotonic()
        c = classify(graph, max_vertices=spec.max_vertices,
                     type_order="unordered")
        rows = [[spec.key, "", "", str(graph.n), c.label(),
                 str(c.aut_order) if c.verdict != "undecided" else "",
                 f"{time.monotonic() - start:.1f}"]]
        verdict = c.verdict
    _emit_rows(rows, spec.fmt if spec.fmt in ("csv", "md") else "csv", out)
    return EXIT_OVERFLOW if verdict == "undecided" else EXIT_OK


def _table1_row(args: tuple) -> tuple[int, list[str]]:
    index, s, t, spec_dict = args
    spec = JobSpec(**spec_dict)
    spec.key = f"universal:3,6:{s[0]},{s[1]}:{t[0]},{t[1]}"
    try:
        report = classify_instance(spec, build_instance(spec))
        return index, _row(report)
    except OverflowResult as exc:
        return index, [spec.key, f"s=({s[0]},{s[1]}) t=({t[0]},{t[1]})",
                       "", "", "overflow", "", str(exc)]


def cmd_table1(spec: JobSpec, out) -> int:
    tasks = []
    for i, (s, t) in enumerate(TABLE1_ROWS):
        if (s, t) == ((3, 0), (2, 2)) and not spec.extended:
            continue
        tasks.append((i, s, t, {
            "key": "", "max_cosets": spec.max_cosets,
            "max_elements": spec.max_elements,
            "time_budget": spec.time_budget,
            "max_vertices": spec.max_vertices, "fmt": "csv"}))
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            results = list(pool.map(_table1_row, tasks))
    else:
        results = [_table1_row(t) for t in tasks]
    results.sort(key=lambda pair: pair[0])
    _emit_rows([r for _, r in results],
               spec.fmt if spec.fmt in ("csv", "md") else "csv", out)
    return EXIT_OK


def cmd_gray_verify(spec: JobSpec, out) -> int:
    spec.key = "eisenstein:m=3:A="
    report = classify_instance(spec, build_instance(spec))
    graph, handle = report.graph, report.handle
    oracle = gray_oracle()
    ok, witness = is_isomorphic(graph, oracle)
    checks = {
        "rotation_group_order_324": handle.group_order == 324,
        "medial_graph_N_54": graph.n == 54,
        "isomorphic_to_cubelets_columns": ok,
        "aut_order_1296": report.classification.aut_order == 1296,
        "aut_to_polytope_index_4":
            report.classification.aut_order == 4 * handle.group_order,
        "semisymmetric": report.classification.verdict == "semisymmetric",
    }
    for name, passed in checks.items():
        out.write(f"{name}: {'ok' if passed else 'FAIL'}\n")
    if ok:
        digest = sum(i * v for i, v in enumerate(witness)) % 10**9
        out.write("witness: " + " ".join(str(v) for v in witness[:14])
                  + f" ... (digest {digest})\n")
    out.write(f"index_report: {report.classification.aut_order} /"
              f" {handle.group_order} ="
              f" {report.classification.aut_order // handle.group_order}\n")
    return EXIT_OK if all(checks.values()) else EXIT_VALIDATION


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-cosets", type=int, default=10**7)
    common.add_argument("--max-elements", type=int, default=2 * 10**6)
    common.add_argument("--time-budget", type=float, default=None,
                        help="per-enumeration budget in seconds")
    common.add_argument("--max-vertices", type=int,
                        default=graphsym.DEFAULT_VERTEX_CAP,
                        help="automorphism search cap")
    common.add_argument("--format", dest="fmt", default="csv",
                        choices=["csv", "md", "dot", "adj", "graph6"])
    common.add_argument("--extended", action="store_true",
                        help="attempt the long-running table row")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--output", default=None, help="write to file")
    common.add_argument("--config", default=None,
                        help="key=value file supplying defaults for any flag")
    parser = argparse.ArgumentParser(
        prog="medial",
        description="Medial layer graphs of {3,q,3} polytopes: build and"
                    " classify")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common]).add_argument("key")
    sub.add_parser("classify", parents=[common]).add_argument(
        "key", help="instance key or graph file")
    sub.add_parser("table1", parents=[common])
    sub.add_parser("gray-verify", parents=[common])
    return parser


_CONFIG_KEYS = {
    "max_cosets": int, "max_elements": int, "time_budget": float,
    "max_vertices": int, "fmt": str, "extended": lambda v: v == "true",
    "jobs": int, "output": str,
}


_CONFIG_DEFAULTS = {
    "max_cosets": 10**7, "max_elements": 2 * 10**6, "time_budget": None,
    "max_vertices": graphsym.DEFAULT_VERTEX_CAP, "fmt": "csv",
    "extended": False, "jobs": 1, "output": None,
}


def _apply_config(args: argparse.Namespace) -> None:
    """Config-file values fill in any option left at its default; explicit
    flags win."""
    defaults = _CONFIG_DEFAULTS
    with open(args.config) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key == "format":
                key = "fmt"
            if not sep or key not in _CONFIG_KEYS:
                raise BadInput(f"{args.config}:{lineno}: bad config line"
                               f" {line!r}")
            if getattr(args, key) == defaults[key]:
                try:
                    setattr(args, key, _CONFIG_KEYS[key](value.strip()))
                except ValueError as exc:
                    raise BadInput(f"{args.config}:{lineno}: {exc}")


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.config:
            _apply_config(args)
        spec = JobSpec(key=getattr(args, "key", ""),
                       max_cosets=args.max_cosets,
                       max_elements=args.max_elements,
                       time_budget=args.time_budget,
                       max_vertices=args.max_vertices,
                       fmt=args.fmt, extended=args.extended, jobs=args.jobs)
    except (BadInput, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    out = sys.stdout
    close = False
    if args.output:
        out = open(args.output, "w")
        close = True
    try:
        if args.command == "build":
            return cmd_build(spec, out)
        if args.command == "classify":
            return cmd_classify(spec, out)
        if args.command == "table1":
            return cmd_table1(spec, out)
        if args.command == "gray-verify":
            return cmd_gray_verify(spec, out)
        raise BadInput(f"unknown command {args.command!r}")
    except BadInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OverflowResult as exc:
        print(f"overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (PolytopeValidationError, ConfigurationError, GraphError,
            InconsistencyError) as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    finally:
        if close:
            out.close()


if __name__ == "__main__":
    sys.exit(main())

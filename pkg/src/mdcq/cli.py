"""Command-line entry point."""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Iterable, Sequence

from loguru import logger

from .codes.graph_code import code_from_graph, code_type, is_self_dual
from .config import RunConfig
from .diagnostics import (
    EXIT_BUDGET_EXHAUSTED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    BudgetExceeded,
    Diagnostic,
    MdcqError,
    SpecError,
)
from .distance.enumerator import (
    DistanceReport,
    distance_bounds,
    low_weight_census,
    min_distance_exact,
    weight_distribution_full,
)
from .graph import iso
from .graph.core import DimVector, MdcGraph
from .graph.summary import graph_summary
from .search.classify import ClassificationRow, classify
from .search.manifest import verify_manifest
from .search.random_search import search_dimensions
from .search.tables import table_dims
from .serialization import JsonSerializer


ENUMERATION_ORDER = (
    "ascending popcount; blocks by ascending highest index; revolving door within a block"
)
SHIPPED_MANIFESTS = ("props", "examples")


def configure_logging(verbosity: int) -> None:
    """-1 quiet (WARNING), 0 default (INFO), 1 verbose (DEBUG)."""

    level = {-1: "WARNING", 0: "INFO"}.get(verbosity, "DEBUG")
    logger.remove()
    logger.add(sys.stderr, level=level, format="{time:HH:mm:ss} | {level: <7} | {message}")


class OutputWriter:
    """Routes rendered command output to stdout or the ``--output`` path."""

    def __init__(self, serializer: JsonSerializer, config: RunConfig) -> None:
        self._serializer = serializer
        self._config = config

    def write(self, text: str) -> bool:
        if self._config.output is None:
            print(text)
            return True
        try:
            self._serializer.dump_to_path(text + "\n", self._config.output)
        except OSError as exc:
            logger.error("cannot write {}: {}", self._config.output, exc)
            return False
        return True

    def emit(
        self,
        body: Any,
        diagnostics: Iterable[Diagnostic] = (),
        *,
        rows: Sequence[Sequence[Any]] | None = None,
        columns: Sequence[str] = (),
        text: Sequence[str] | None = None,
    ) -> bool:
        header = self._config.header()
        fmt = self._config.output_format
        if fmt == "csv" and rows is not None:
            return self.write(self._serializer.dumps_csv(rows, columns, header).rstrip("\n"))
        if fmt == "text" and text is not None:
            return self.write("\n".join(text))
        return self.write(self._serializer.dumps(body, header, list(diagnostics)))


def _dim_arg(text: str) -> tuple[int, ...]:
    try:
        return DimVector.parse(text).moduli
    except MdcqError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", default=None, help="Work budget in combinations (e.g. 2**34)")
    parser.add_argument("--threads", type=int, default=1, help="Worker threads")
    parser.add_argument(
        "--format", choices=("json", "csv", "text"), default="json", help="Output format"
    )
    parser.add_argument("--output", type=Path, default=None, help="Write output to this file")
    parser.add_argument(
        "--schema-version", default="1.0.0", help="Schema version for output JSON"
    )
    noise = parser.add_mutually_exclusive_group()
    noise.add_argument("--quiet", action="store_true", help="Only log warnings")
    noise.add_argument("--verbose", action="store_true", help="Log debug detail")


def _add_spec(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", required=True, help="Graph spec JSON file")
    parser.add_argument(
        "--strict", action="store_true", help="Reject connection sets missing negatives"
    )


def build_argument_parser() -> argparse.ArgumentParser:
    """Return the CLI argument parser used by `main`."""

    parser = argparse.ArgumentParser(
        prog="mdcq", description="MDC graph codes: build, distance, classify, search"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="Summarize a graph and its code")
    _add_spec(build)
    build.add_argument(
        "--adjacency", action="store_true", help="Include the 0/1 adjacency rows"
    )
    _add_common(build)

    distance = sub.add_parser("distance", help="Minimum distance or low-weight census")
    _add_spec(distance)
    distance.add_argument("--mode", choices=("exact", "bounds", "census"), default="exact")
    distance.add_argument("--radius", type=int, default=None, help="Levels to enumerate")
    distance.add_argument("--samples", type=int, default=256, help="Upper-bound samples")
    distance.add_argument("--seed", type=int, default=0)
    distance.add_argument("--witness", action="store_true", help="Report a minimum combination")
    distance.add_argument(
        "--certificate", action="store_true", help="Attach the enumeration certificate"
    )
    _add_common(distance)

    wd = sub.add_parser("wd", help="Full weight distribution")
    _add_spec(wd)
    wd.add_argument("--wd-cap", type=int, default=None, help="Largest n accepted")
    _add_common(wd)

    cls = sub.add_parser("classify", help="Best distance over every connection set")
    cls.add_argument("--N", dest="dims", type=_dim_arg, action="append", default=[])
    cls.add_argument(
        "--table-max-n", type=int, default=None, help="Classify every reference row up to n"
    )
    cls.add_argument("--include-empty", action="store_true", help="Also test S = {}")
    cls.add_argument("--no-dedup", action="store_true", help="Skip unit-multiplier dedup")
    _add_common(cls)

    search = sub.add_parser("search", help="Seeded randomized search")
    search.add_argument("--N", dest="dims", type=_dim_arg, action="append", required=True)
    search.add_argument("--seed", type=int, default=0)
    search.add_argument("--iters", type=int, default=100)
    search.add_argument(
        "--target",
        type=int,
        default=None,
        help="Minimum distance to reach (default: the reference maximum for N)",
    )
    search.add_argument("--radius", type=int, default=None)
    search.add_argument("--odd-valency", action="store_true", help="Only Type II candidates")
    _add_common(search)

    isom = sub.add_parser("iso", help="Apply an isomorphism or list dimension classes")
    isom.add_argument("--spec", default=None, help="Graph spec JSON file")
    isom.add_argument(
        "--map",
        choices=("collapse", "unit", "four-to-two", "metacirculant", "canonical"),
        default=None,
    )
    isom.add_argument("--alphas", default=None, help="Unit multipliers, e.g. 1,5")
    isom.add_argument("--classes", type=int, default=None, help="Dimension classes of n")
    _add_common(isom)

    verify = sub.add_parser("verify", help="Check a manifest of published constructions")
    verify.add_argument(
        "inputs", nargs="+", help=f"Manifest files or shipped names {SHIPPED_MANIFESTS}"
    )
    verify.add_argument(
        "--structural", action="store_true", help="Skip the distance checks"
    )
    _add_common(verify)
    return parser


def _graph(config: RunConfig) -> MdcGraph:
    if not config.inputs:
        raise SpecError("a --spec file is required", field="spec")
    return JsonSerializer().load_graph_spec(config.inputs[0], strict=config.strict)


def cmd_build(config: RunConfig, writer: OutputWriter, dump_adjacency: bool) -> int:
    graph = _graph(config)
    summary = graph_summary(graph)
    code = code_from_graph(graph)
    body: dict[str, Any] = summary.to_dict()
    body.update(
        {
            "N": list(graph.dim.moduli),
            "type": code_type(graph).value,
            "selfDual": is_self_dual(code),
            "codeDigest": code.digest(),
        }
    )
    rows = graph.adjacency.dump_rows()
    if dump_adjacency:
        body["adjacency"] = rows
    text = [f"{key}: {value}" for key, value in body.items() if key != "adjacency"]
    if dump_adjacency:
        text.extend(rows)
    return EXIT_OK if writer.emit(body, text=text) else EXIT_INPUT_ERROR


def _certificate(graph: MdcGraph, report: DistanceReport) -> dict[str, Any]:
    return {
        "codeDigest": code_from_graph(graph).digest(),
        "order": ENUMERATION_ORDER,
        "levelsCompleted": report.radius,
        "budgetUsed": report.budget_used,
        "weightBound": "wt(codeword(c)) >= popcount(c)",
    }


def cmd_distance(config: RunConfig, writer: OutputWriter, mode: str, samples: int) -> int:
    graph = _graph(config)
    code = code_from_graph(graph)
    diagnostics: list[Diagnostic] = []
    status = EXIT_OK
    if mode == "census":
        wmax = config.radius if config.radius is not None else min(code.n, 4)
        try:
            census = low_weight_census(code, wmax, config.budget, threads=config.threads)
        except BudgetExceeded as exc:
            census = exc.partial
            diagnostics.append(Diagnostic("warning", str(exc)))
            status = EXIT_BUDGET_EXHAUSTED
        body = census.to_dict()
        ok = writer.emit(
            body, diagnostics, rows=census.csv_rows(), columns=("weight", "count"),
            text=[f"{w} {c}" for w, c in census.csv_rows()],
        )
        return status if ok else EXIT_INPUT_ERROR

    if mode == "exact":
        try:
            report = min_distance_exact(
                code, config.budget, threads=config.threads, witness=config.witness
            )
        except BudgetExceeded as exc:
            report = exc.partial
            diagnostics.append(Diagnostic("warning", str(exc)))
            status = EXIT_BUDGET_EXHAUSTED
    else:
        radius = config.radius if config.radius is not None else min(code.n, 4)
        report = distance_bounds(
            code,
            radius,
            samples,
            work_budget=config.budget,
            seed=config.seed,
            threads=config.threads,
            witness=config.witness,
        )
        if report.radius < min(radius, code.n) and not report.exact:
            diagnostics.append(
                Diagnostic("warning", f"budget stopped enumeration at radius {report.radius}")
            )
            status = EXIT_BUDGET_EXHAUSTED

    body = report.to_dict()
    if config.certificate:
        body["certificate"] = _certificate(graph, report)
    text = [f"{key}: {value}" for key, value in body.items()]
    ok = writer.emit(
        body,
        diagnostics,
        rows=[(report.lower, report.upper, report.exact, report.radius)],
        columns=("lower", "upper", "exact", "radius"),
        text=text,
    )
    return status if ok else EXIT_INPUT_ERROR


def cmd_wd(config: RunConfig, writer: OutputWriter) -> int:
    graph = _graph(config)
    code = code_from_graph(graph)
    dist = weight_distribution_full(code, config.wd_cap, threads=config.threads)
    dist.check(type_ii=graph.valency % 2 == 1)
    rows = dist.csv_rows()
    ok = writer.emit(
        dist.to_dict(), rows=rows, columns=("weight", "count"),
        text=[f"{w} {c}" for w, c in rows],
    )
    return EXIT_OK if ok else EXIT_INPUT_ERROR


def cmd_classify(config: RunConfig, writer: OutputWriter, dedup: bool) -> int:
    dims = [DimVector(d) for d in config.dims]
    if not dims:
        raise SpecError("give --N or --table-max-n", field="N")
    results: list[ClassificationRow] = [
        classify(
            dim,
            config.budget,
            threads=config.threads,
            dedup=dedup,
            include_empty=config.include_empty,
        )
        for dim in dims
    ]
    diagnostics = [d for row in results for d in row.diagnostics]
    ok = writer.emit(
        [row.to_dict() for row in results],
        diagnostics,
        rows=[row.csv_row() for row in results],
        columns=("n", "N", "d_max", "count", "elapsed"),
        text=[" ".join(str(v) for v in row.csv_row()) for row in results],
    )
    if not ok:
        return EXIT_INPUT_ERROR
    return EXIT_BUDGET_EXHAUSTED if any(row.partial for row in results) else EXIT_OK


def cmd_search(
    config: RunConfig, writer: OutputWriter, target: int | None, odd_valency: bool
) -> int:
    dims = [DimVector(d) for d in config.dims]
    records = search_dimensions(
        dims,
        config.seed,
        config.iterations,
        target,
        odd_valency=odd_valency,
        radius=config.radius,
        budget=config.budget,
        threads=config.threads,
    )
    rows = [
        (
            "x".join(str(m) for m in r.dim.moduli),
            r.valency,
            r.code_type.value,
            r.distance.lower,
            r.distance.upper,
        )
        for r in records
    ]
    ok = writer.emit(
        [r.to_dict() for r in records],
        rows=rows,
        columns=("N", "valency", "type", "lower", "upper"),
        text=[" ".join(str(v) for v in row) for row in rows],
    )
    return EXIT_OK if ok else EXIT_INPUT_ERROR


def _alphas(text: str | None, dim: DimVector) -> tuple[int, ...]:
    if text is None:
        raise SpecError("--alphas is required for the unit map", field="alphas")
    try:
        alphas = tuple(int(a) for a in text.split(","))
    except ValueError as exc:
        raise SpecError(f"cannot parse --alphas {text!r}", field="alphas") from exc
    if len(alphas) != dim.k:
        raise SpecError(f"need {dim.k} multipliers, got {len(alphas)}", field="alphas")
    return alphas


def cmd_iso(
    config: RunConfig,
    writer: OutputWriter,
    mapping: str | None,
    alphas_text: str | None,
    classes: int | None,
) -> int:
    if classes is not None:
        found = iso.enumerate_dimension_vectors(classes)
        body: Any = [c.to_dict() for c in found]
        text = [
            " ".join(str(d) for d in c.representatives) for c in found
        ]
        return EXIT_OK if writer.emit(body, text=text) else EXIT_INPUT_ERROR
    if mapping is None:
        raise SpecError("give --map or --classes", field="map")

    graph = _graph(config)
    source = JsonSerializer().graph_spec(graph, full=True)
    output: dict[str, Any]
    if mapping == "collapse":
        output = iso.coprime_collapse(graph.dim, graph.conn).to_dict()
        verified = iso.verify_collapse(graph)
    elif mapping == "unit":
        alphas = _alphas(alphas_text, graph.dim)
        image = iso.unit_map(graph.dim, graph.conn, alphas)
        output = JsonSerializer().graph_spec(MdcGraph(graph.dim, image), full=True)
        verified = iso.verify_unit_map(graph, alphas)
    elif mapping == "four-to-two":
        target, image = iso.four_to_two(graph.dim, graph.conn)
        output = JsonSerializer().graph_spec(MdcGraph(target, image), full=True)
        verified = iso.verify_four_to_two(graph)
    elif mapping == "metacirculant":
        output = iso.to_metacirculant(graph.dim, graph.conn).to_dict()
        verified = iso.verify_metacirculant(graph)
    else:
        image = iso.canonical_form(graph.dim, graph.conn)
        output = JsonSerializer().graph_spec(MdcGraph(graph.dim, image), full=True)
        verified = True
    body = {"map": mapping, "input": source, "output": output, "verified": verified}
    ok = writer.emit(body, text=[f"{mapping}: verified={verified}"])
    return EXIT_OK if ok else EXIT_INPUT_ERROR


def _manifest_path(name: str) -> Path:
    if name in SHIPPED_MANIFESTS:
        resource = resources.files("mdcq") / "data" / f"{name}.jsonl"
        return Path(str(resource))
    return Path(name)


def cmd_verify(config: RunConfig, writer: OutputWriter, structural: bool) -> int:
    reports = [
        verify_manifest(
            path, config.budget, threads=config.threads, structural_only=structural
        )
        for path in config.inputs
    ]
    diagnostics = [
        d for report in reports for entry in report.entries for d in entry.diagnostics
    ]
    rows = [
        (entry.name, entry.status, entry.note or "")
        for report in reports
        for entry in report.entries
    ]
    ok = writer.emit(
        [report.to_dict() for report in reports],
        diagnostics,
        rows=rows,
        columns=("name", "status", "note"),
        text=[
            f"{name}: {status}" + (f" ({note})" if note else "")
            for name, status, note in rows
        ],
    )
    if not ok:
        return EXIT_INPUT_ERROR
    return max((report.exit_code for report in reports), default=EXIT_OK)


def _dispatch(args: argparse.Namespace, config: RunConfig, writer: OutputWriter) -> int:
    handlers: dict[str, Callable[[], int]] = {
        "build": lambda: cmd_build(config, writer, args.adjacency),
        "distance": lambda: cmd_distance(config, writer, args.mode, args.samples),
        "wd": lambda: cmd_wd(config, writer),
        "classify": lambda: cmd_classify(config, writer, not args.no_dedup),
        "search": lambda: cmd_search(config, writer, args.target, args.odd_valency),
        "iso": lambda: cmd_iso(config, writer, args.map, args.alphas, args.classes),
        "verify": lambda: cmd_verify(config, writer, args.structural),
    }
    return handlers[args.command]()


def main(argv: Sequence[str] | None = None) -> int:
    """CLI entry point. Returns an exit code for the host process."""

    parser = build_argument_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    configure_logging(-1 if args.quiet else 1 if args.verbose else 0)

    serializer = JsonSerializer(args.schema_version)
    try:
        if args.command == "classify" and args.table_max_n is not None:
            args.dims = [*args.dims, *table_dims(args.table_max_n)]
        if args.command == "verify":
            args.inputs = [_manifest_path(name) for name in args.inputs]
        config = RunConfig.from_args(args)
    except MdcqError as exc:
        logger.error("{}", exc)
        return exc.exit_code

    writer = OutputWriter(serializer, config)
    try:
        return _dispatch(args, config, writer)
    except SpecError as exc:
        logger.error("{}", exc)
        writer.emit(None, [exc.to_diagnostic()])
        return exc.exit_code
    except BudgetExceeded as exc:
        logger.error("{}", exc)
        partial = exc.partial.to_dict() if hasattr(exc.partial, "to_dict") else None
        writer.emit(partial, [Diagnostic("error", str(exc))])
        return exc.exit_code
    except MdcqError as exc:
        logger.error("{}", exc)
        writer.emit(None, [Diagnostic("error", str(exc))])
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover - manual invocation helper
    raise SystemExit(main())

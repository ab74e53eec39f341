import argparse
import json
import logging
import sys
from typing import Any, Optional, Sequence

from . import __version__
from .configuration import HomologyConfiguration
from .exactla import vector_to_json
from .exceptions import (
    AlgebraMismatch,
    DimensionMismatch,
    HomologyError,
    InputError,
    InvalidAlgebra,
    ResourceBudgetExceeded,
)
from .homology.homology import (
    GradedHomology,
    adjoint_homology,
    coefficient_invariant_homology,
    hr_homology,
    leibniz_homology,
    lie_homology,
    rel_homology,
)
from .homology.structure import verify_hr_formula, verify_structure_theorem
from .lie.algebra import invariants, wedge_rep
from .lie.catalog import CatalogEntry, catalog_names, create_catalog_entry
from .logger import ComputationFileLogger, ComputationTrace

logger = logging.getLogger("leibhom.cli")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INTERNAL = 4

THEORIES = ("lie", "lie-adjoint", "leibniz", "hr", "rel", "coeff-invariant")


def load_entry(args: argparse.Namespace, *, check: bool = True) -> CatalogEntry:
    """
    Return the catalog entry or the contents of the input file named on the
    command line.
    """
    if args.catalog is not None:
        return create_catalog_entry(args.catalog)
    try:
        with open(args.input, "r") as fp:
            data = json.load(fp)
    except OSError as exc:
        raise InputError("Cannot read %s: %s" % (args.input, exc.strerror))
    except json.JSONDecodeError as exc:
        raise InputError(
            "Invalid JSON: %s" % exc.msg,
            position="line %d column %d" % (exc.lineno, exc.colno),
        )
    return CatalogEntry.from_json(data, check=check)


def require_valid(entry: CatalogEntry) -> None:
    report = entry.validate()
    if not report.ok:
        raise InvalidAlgebra(report)


def emit(args: argparse.Namespace, data: Any, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_check(
    args: argparse.Namespace,
    configuration: HomologyConfiguration,
    trace: Optional[ComputationTrace],
) -> int:
    entry = load_entry(args, check=False)
    report = entry.validate()
    emit(args, report.to_json(), report.render_text())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_homology(
    args: argparse.Namespace,
    configuration: HomologyConfiguration,
    trace: Optional[ComputationTrace],
) -> int:
    entry = load_entry(args)
    require_valid(entry)
    N = configuration.max_degree
    kwargs: dict[str, Any] = {
        "representatives": args.format == "json",
        "configuration": configuration,
        "trace": trace,
    }

    result: GradedHomology
    if args.theory == "lie":
        result = lie_homology(entry.algebra, N, **kwargs)
    elif args.theory == "lie-adjoint":
        result = adjoint_homology(entry.algebra, N, **kwargs)
    elif args.theory == "leibniz":
        result = leibniz_homology(entry.algebra, N, **kwargs)
    elif args.theory == "hr":
        result = hr_homology(entry.algebra, N, **kwargs)
    elif args.theory == "rel":
        result = rel_homology(entry.algebra, N, **kwargs)
    else:
        if entry.extension is None:
            raise InputError("Theory coeff-invariant requires an extension")
        result = coefficient_invariant_homology(entry.extension, N, **kwargs)

    result.name = "%s %s" % (args.theory, entry.name)
    emit(args, result.to_json(), result.render_text())
    return EXIT_OK


def cmd_verify(
    args: argparse.Namespace,
    configuration: HomologyConfiguration,
    trace: Optional[ComputationTrace],
) -> int:
    entry = load_entry(args)
    require_valid(entry)
    if entry.extension is None:
        raise InputError("verify requires an extension")
    structure = verify_structure_theorem(
        entry.extension,
        configuration.max_degree,
        configuration=configuration,
        trace=trace,
    )
    hr = verify_hr_formula(
        entry.extension, 0, configuration=configuration, trace=trace
    )
    emit(
        args,
        {"hr": hr.to_json(), "ok": structure.ok and hr.ok, "structure": structure.to_json()},
        structure.render_text() + "\n" + hr.render_text(),
    )
    return EXIT_OK if structure.ok and hr.ok else EXIT_MISMATCH


def cmd_invariants(
    args: argparse.Namespace,
    configuration: HomologyConfiguration,
    trace: Optional[ComputationTrace],
) -> int:
    entry = load_entry(args)
    require_valid(entry)
    rep = entry.representation
    if rep is None:
        raise InputError("invariants requires a representation")
    top = rep.dim if args.max_degree is None else min(args.max_degree, rep.dim)

    rows = []
    for k in range(top + 1):
        space = invariants(wedge_rep(rep, k))
        rows.append(
            {
                "basis": [vector_to_json(v) for v in space.basis],
                "degree": k,
                "dim": space.dim,
            }
        )
    dims = [row["dim"] for row in rows]
    emit(
        args,
        {"dims": dims, "name": entry.name, "rows": rows},
        "invariants of %s: %s" % (entry.name, ", ".join(str(d) for d in dims)),
    )
    return EXIT_OK


def cmd_export(
    args: argparse.Namespace,
    configuration: HomologyConfiguration,
    trace: Optional[ComputationTrace],
) -> int:
    entry = load_entry(args, check=False)
    print(json.dumps(entry.to_json(), indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leibhom",
        description="Exact Lie and Leibniz homology of Lie algebras and their "
        "Abelian extensions",
    )
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--catalog",
        type=str,
        help="name of a catalog entry (%s)" % ", ".join(catalog_names()),
    )
    source.add_argument(
        "--input", type=str, help="read the algebra or extension from a JSON file"
    )
    common.add_argument(
        "-N",
        "--max-degree",
        type=int,
        help="the highest degree to compute (default: 3)",
    )
    common.add_argument(
        "--format",
        choices=["json", "text"],
        default="text",
        help="output format (default: text)",
    )
    common.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="number of worker processes (default: 1)",
    )
    common.add_argument(
        "--budget-mb",
        type=int,
        help="memory budget in megabytes (default: $LEIBHOM_BUDGET_MB or 2048)",
    )
    common.add_argument(
        "--trace-dir",
        type=str,
        help="write computation traces to the specified directory",
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="increase logging verbosity"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser(
        "check", parents=[common], help="validate an algebra and its representation"
    ).set_defaults(handler=cmd_check)
    homology_parser = subparsers.add_parser(
        "homology", parents=[common], help="compute Betti numbers"
    )
    homology_parser.add_argument(
        "--theory", choices=THEORIES, default="lie", help="homology theory (default: lie)"
    )
    homology_parser.set_defaults(handler=cmd_homology)
    subparsers.add_parser(
        "verify", parents=[common], help="check the structure theorem for an extension"
    ).set_defaults(handler=cmd_verify)
    subparsers.add_parser(
        "invariants",
        parents=[common],
        help="compute the invariants of the exterior powers of the representation",
    ).set_defaults(handler=cmd_invariants)
    subparsers.add_parser(
        "export", parents=[common], help="write an entry as JSON"
    ).set_defaults(handler=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        level=logging.DEBUG if args.verbose else logging.INFO,
    )

    try:
        configuration = HomologyConfiguration(
            jobs=args.jobs, output_format=args.format
        )
        if args.max_degree is not None:
            configuration.max_degree = args.max_degree
        if args.budget_mb is not None:
            configuration.budget_mb = args.budget_mb
        configuration.validate()
        if args.trace_dir:
            configuration.trace_logger = ComputationFileLogger(args.trace_dir)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT

    trace = None
    if configuration.trace_logger is not None:
        trace = configuration.trace_logger.start_trace(
            "%s-%s" % (args.command, args.catalog or "input")
        )

    logger.debug("Running %s with %s", args.command, configuration)
    try:
        return args.handler(args, configuration, trace)
    except InvalidAlgebra as exc:
        print(exc.report.render_text(), file=sys.stderr)
        return EXIT_MISMATCH
    except ResourceBudgetExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, DimensionMismatch, AlgebraMismatch) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except HomologyError as exc:
        logger.debug("Internal failure", exc_info=True)
        print("internal error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INTERNAL
    finally:
        if trace is not None:
            configuration.trace_logger.end_trace(trace)


if __name__ == "__main__":
    sys.exit(main())

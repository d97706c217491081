"""Entry point."""
import argparse
import logging
import os
import sys

from .logger import get_logger, set_level
from .analyzer import analyze_file
from .casplus import is_source_file, parse_file, resolve
from .corpus import corpus_files, corpus_model
from .errors import CasCostError, ExitCode, SpannedError, UsageError
from .model import default_model, load_model, save_model
from .report import comparison_chart, render_model, render_role_table, render_svg, render_table
from .report import render_json, result_chart, write_csv
from .store import ComparisonSet, StoredResult, compare, load_results, save_result
from .utils import digest_bytes, timestamp_for
from .version import __version__

logger = get_logger("main")

STORE_ENV = "CASCOST_STORE"


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors become UsageError instead of exiting with status 2."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_args(argv=None):
    common = ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Print debug logs")

    parser = ArgumentParser(
        prog="cascost",
        description="Computation and communication cost analyzer for CAS+ protocols",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    check = commands.add_parser("check", parents=[common], help="Parse and resolve a protocol")
    check.add_argument("file", help="A .cas or .cas+ source file")
    _add_model(check)

    analyze = commands.add_parser("analyze", parents=[common], help="Analyze one protocol")
    analyze.add_argument("file", help="A .cas or .cas+ source file")
    _add_model(analyze)
    _add_store(analyze)
    analyze.add_argument("--format", choices=["table", "csv", "json"], default="table")
    analyze.add_argument(
        "--roles", action="store_true", help="Also print the counts charged to each role (table only)"
    )

    cmp = commands.add_parser("compare", parents=[common], help="Compare stored results")
    cmp.add_argument("names", nargs="+", help="Protocol names of stored results")
    _add_store(cmp)
    cmp.add_argument("--format", choices=["table", "csv"], default="table")
    cmp.add_argument("--chart", help="Also write a grouped SVG chart to this path")

    chart = commands.add_parser("chart", parents=[common], help="Chart one protocol's costs")
    chart.add_argument("target", help="A .cas/.cas+ file or the name of a stored result")
    chart.add_argument("--out", required=True, help="SVG file to write")
    chart.add_argument("--mode", choices=["counts", "costs"], default="counts")
    _add_model(chart)
    _add_store(chart)

    model = commands.add_parser("model", parents=[common], help="Show or export a cost model")
    _add_model(model)
    model.add_argument("--out", help="Write the model to this JSON file")

    corpus = commands.add_parser(
        "corpus", parents=[common], help="Analyze and compare the bundled protocols"
    )
    _add_store(corpus)
    corpus.add_argument("--model", help="Cost model file (default: the bundled corpus model)")
    corpus.add_argument("--format", choices=["table", "csv"], default="table")
    corpus.add_argument("--chart", help="Also write a grouped SVG chart to this path")

    return parser.parse_args(argv)


def _add_model(parser):
    parser.add_argument("--model", help="Cost model file (default: built-in unit costs)")


def _add_store(parser):
    parser.add_argument(
        "--store",
        default=os.getenv(STORE_ENV),
        help=f"Result store directory (default: ${STORE_ENV})",
    )


def get_model(args):
    if args.model:
        model = load_model(args.model)
        logger.debug(f"Loaded model {model.name} from {args.model}")
        return model
    return default_model()


def require_store(args):
    if not args.store:
        raise UsageError(f"a result store is required: pass --store or set {STORE_ENV}")
    return args.store


def stamp(result, path, source_path=None):
    with open(path, "rb") as f:
        digest = digest_bytes(f.read())
    return StoredResult(result, timestamp_for(path), str(source_path or path), digest)


def cmd_check(args):
    spec, warnings = resolve(parse_file(args.file), get_model(args))
    for warning in warnings:
        print(warning.render(args.file), file=sys.stderr)
    logger.debug(f"{args.file}: {spec.name} has {len(spec.messages)} messages")
    return ExitCode.SUCCESS


def cmd_analyze(args):
    model = get_model(args)
    stored = stamp(analyze_file(args.file, model), args.file)
    if args.store:
        save_result(stored, args.store)

    if args.format == "json":
        sys.stdout.write(render_json(stored))
    elif args.format == "csv":
        write_csv(stored, sys.stdout)
    else:
        sys.stdout.write(render_table(stored, model))
        if args.roles:
            sys.stdout.write("\n" + render_role_table(stored.result, model))
    return ExitCode.SUCCESS


def emit_comparison(comparison, args):
    table = compare(comparison)
    if args.format == "csv":
        for warning in table.warnings:
            logger.warning(warning)
        write_csv(table, sys.stdout)
    else:
        sys.stdout.write(render_table(table))
    if args.chart:
        render_svg(comparison_chart(table), args.chart)
        logger.info(f"Wrote comparison chart to {args.chart}")
    return ExitCode.SUCCESS


def cmd_compare(args):
    comparison = load_results(require_store(args), args.names)
    return emit_comparison(comparison, args)


def cmd_chart(args):
    model = get_model(args)
    if is_source_file(args.target):
        result = analyze_file(args.target, model)
    else:
        stored = load_results(require_store(args), [args.target]).entries[0]
        result = stored.result
        if args.mode == "costs" and result.model_digest != model.digest():
            logger.warning(
                f"{result.protocol_name} was analyzed with model {result.model_name}; "
                f"charting its counts priced by model {model.name}"
            )
    render_svg(result_chart(result, model, args.mode), args.out)
    logger.info(f"Wrote {args.mode} chart of {result.protocol_name} to {args.out}")
    return ExitCode.SUCCESS


def cmd_model(args):
    model = get_model(args)
    sys.stdout.write(render_model(model))
    if args.out:
        save_model(model, args.out)
        logger.info(f"Wrote model {model.name} to {args.out}")
    return ExitCode.SUCCESS


def cmd_corpus(args):
    model = load_model(args.model) if args.model else corpus_model()
    comparison = ComparisonSet("corpus")
    paths = corpus_files()
    for idx, path in enumerate(paths):
        logger.info(f"[{idx + 1}/{len(paths)}] Analyzing {os.path.basename(path)}")
        # Bare file names keep the output independent of the install location.
        stored = stamp(analyze_file(path, model), path, os.path.basename(path))
        if args.store:
            save_result(stored, args.store)
        comparison.add(stored)
    return emit_comparison(comparison, args)


COMMANDS = {
    "check": cmd_check,
    "analyze": cmd_analyze,
    "compare": cmd_compare,
    "chart": cmd_chart,
    "model": cmd_model,
    "corpus": cmd_corpus,
}


def main(argv=None):
    try:
        args = parse_args(argv)
    except UsageError as err:
        print(err.render(), file=sys.stderr)
        return err.exit_code
    except SystemExit as err:
        # --help and --version
        return err.code or ExitCode.SUCCESS

    set_level(logging.DEBUG if args.verbose else logging.INFO)
    try:
        return COMMANDS[args.command](args)
    except CasCostError as err:
        path = None
        if isinstance(err, SpannedError):
            path = getattr(args, "file", None) or getattr(args, "target", None)
        print(err.render(path), file=sys.stderr)
        return err.exit_code
    except UnicodeDecodeError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitCode.IO
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitCode.IO


if __name__ == "__main__":
    sys.exit(main())

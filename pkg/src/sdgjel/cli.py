"""Command-line entry point: validate, match, compare-weightings, reduce, export-linkage, tag and trend.

Data goes to stdout; logs and diagnostics go to stderr.  Exit status is 0 on
success, 1 when a check fails and 2 on usage or input errors.
"""
import argparse
import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import List, Optional, Sequence

from dotenv import find_dotenv, load_dotenv

from sdgjel.config import RunConfig, build_run_config
from sdgjel.corpus.record_loader import load_corpus
from sdgjel.corpus.sdg_tagger import SdgTagger
from sdgjel.corpus.trend_counter import trend_count
from sdgjel.errors import SdgJelError, UsageError
from sdgjel.matcher.keyword_matcher import Method, direct_match
from sdgjel.matcher.keyword_reducer import selected_three_survives, trace_reduction
from sdgjel.matcher.linkage import build_linkage, compare_weightings, direct_match_deviations
from sdgjel.matcher.weighting import WeightingScheme
from sdgjel.state.state_manager import StateManager
from sdgjel.taxonomy.sdg_catalog import GOAL_COUNT, SdgGoal
from sdgjel.taxonomy.taxonomy_stats import compare_with_reference, validate_taxonomy
from sdgjel.tools.report_tool import ReportTool

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)


def setup_logging(level: str = "INFO", log_dir: Optional[Path] = None) -> logging.Logger:
    """Setup logging to stderr and, with a log directory, to a timestamped file"""
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        raise UsageError(f"Unknown log level {level!r}")

    handlers: List[logging.Handler] = []
    if log_dir:
        logs_dir = Path(log_dir)
        logs_dir.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        handlers.append(logging.FileHandler(logs_dir / f"sdgjel_{timestamp}.log"))
    handlers.append(logging.StreamHandler(sys.stderr))

    logging.basicConfig(
        level=numeric,
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )
    return logger


def _add_data_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--taxonomy", type=Path, help="JEL snapshot (default: bundled)")
    parser.add_argument("--catalog", type=Path, help="SDG catalog (default: bundled)")
    parser.add_argument("--stoplist", type=Path, help="General-word stoplist (default: bundled)")
    parser.add_argument("--config", type=Path, help="Settings YAML (default: config/settings.yaml)")
    parser.add_argument("--format", dest="output_format", choices=["tsv", "json"], help="Report format")
    parser.add_argument("--log-level", dest="log_level", help="Logging level (default: INFO)")
    parser.add_argument("--log-dir", dest="log_dir", type=Path, help="Also write logs to a timestamped file here")


def _add_ranking_flags(parser: argparse.ArgumentParser, top_help: str):
    parser.add_argument("--method", help="direct, lafleur or selected3")
    parser.add_argument("--weighting", help="uniform, harmonic or top5")
    parser.add_argument("--top", dest="top_k", type=int, help=top_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdgjel", description="Link SDGs to JEL codes by keyword overlap")
    common = argparse.ArgumentParser(add_help=False)
    _add_data_flags(common)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="Check the JEL snapshot against the reference counts")

    match = sub.add_parser("match", parents=[common], help="Report matching JEL codes per SDG")
    _add_ranking_flags(match, "Codes per SDG, boundary ties kept (default: 3)")
    match.add_argument("--goal", type=int, help="Only this SDG")

    compare = sub.add_parser("compare-weightings", parents=[common], help="Top-k overlap between weighting schemes")
    compare.add_argument("--method", help="lafleur or selected3")
    compare.add_argument("--top", dest="top_k", type=int, help="Codes per SDG, boundary ties kept (default: 3)")
    compare.add_argument("--goal", type=int, help="Only this SDG")

    reduce = sub.add_parser("reduce", parents=[common], help="Trace keyword reduction for one SDG")
    reduce.add_argument("--goal", type=int, required=True, help="SDG id, 1-17")

    export = sub.add_parser("export-linkage", parents=[common], help="Write the linkage table as JSON")
    _add_ranking_flags(export, "Keep only the top K codes per SDG (default: all)")
    export.add_argument("--output", type=Path, help="Write to this file instead of stdout")

    tag = sub.add_parser("tag", parents=[common], help="Tag corpus records with SDG scores")
    tag.add_argument("--records", type=Path, required=True, help="JSON-lines corpus")
    tag.add_argument("--linkage", type=Path, required=True, help="Exported linkage table")

    trend = sub.add_parser("trend", parents=[common], help="Count records per year matching phrase groups")
    trend.add_argument("--records", type=Path, required=True, help="JSON-lines corpus")
    trend.add_argument(
        "--group", dest="groups", action="append", default=[], metavar="NAME=PHRASE[;PHRASE...]",
        help="Query group, repeatable (default: SDG and MDG groups)",
    )
    trend.add_argument("--from", dest="year_from", type=int, help="First year")
    trend.add_argument("--to", dest="year_to", type=int, help="Last year")
    return parser


def _goals(state: StateManager, goal_id: Optional[int]) -> Sequence[SdgGoal]:
    if goal_id is None:
        return state.load_goals()
    goal = state.get_goal(goal_id) if 1 <= goal_id <= GOAL_COUNT else None
    if goal is None:
        raise UsageError(f"Goal must be between 1 and {GOAL_COUNT}, got {goal_id}")
    return (goal,)


def cmd_validate(cfg: RunConfig, state: StateManager, report: ReportTool) -> int:
    stats = validate_taxonomy(state.load_taxonomy())
    diff = compare_with_reference(stats)
    sys.stdout.write(report.render_taxonomy_stats(stats, diff))
    if diff:
        for line in diff:
            logger.error(f"Snapshot differs: {line}")
        return EXIT_CHECK_FAILED
    logger.info(f"Snapshot matches reference: {stats.level2_count} level-2, {stats.level3_count} level-3 codes")
    return EXIT_OK


def cmd_match(cfg: RunConfig, state: StateManager, report: ReportTool, goal_id: Optional[int] = None) -> int:
    taxonomy = state.load_taxonomy()
    goals = _goals(state, goal_id)
    function_words = state.load_stoplist().function_words

    if cfg.method is Method.DIRECT:
        if cfg.weighting is not WeightingScheme.UNIFORM:
            logger.info(f"Direct method ignores weighting {cfg.weighting.value}; codes are counted")
        hits = {goal.id: direct_match(goal, taxonomy, function_words) for goal in goals}
        sys.stdout.write(report.render_direct(goals, hits, taxonomy))
        for d in direct_match_deviations(goals, taxonomy, function_words=function_words):
            logger.warning(f"SDG {d.sdg_id} {d.keyword}: {d.found} codes, published count {d.expected}")
        return EXIT_OK

    table = build_linkage(goals, taxonomy, cfg.method, cfg.weighting, k=cfg.top_k, function_words=function_words)
    sys.stdout.write(report.render_ranking(goals, table, taxonomy, cfg.top_k))
    return EXIT_OK


def cmd_compare_weightings(cfg: RunConfig, state: StateManager, report: ReportTool, goal_id: Optional[int] = None) -> int:
    agreements = compare_weightings(
        _goals(state, goal_id),
        state.load_taxonomy(),
        cfg.method,
        cfg.top_k,
        state.load_stoplist().function_words,
    )
    sys.stdout.write(report.render_scheme_agreement(agreements, cfg.method.value, cfg.top_k))
    return EXIT_OK


def cmd_reduce(cfg: RunConfig, state: StateManager, report: ReportTool, goal_id: int) -> int:
    (goal,) = _goals(state, goal_id)
    trace = trace_reduction(goal.lafleur_keywords, state.load_stoplist())
    survives = selected_three_survives(goal, trace.survivors)
    sys.stdout.write(report.render_reduction(goal, trace, survives))
    if not survives:
        logger.error(f"SDG {goal.id}: selected keywords did not all survive reduction")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_export_linkage(
    cfg: RunConfig,
    state: StateManager,
    report: ReportTool,
    top_k: Optional[int] = None,
    output: Optional[Path] = None,
) -> int:
    table = build_linkage(
        state.load_goals(),
        state.load_taxonomy(),
        cfg.method,
        cfg.weighting,
        k=top_k,
        function_words=state.load_stoplist().function_words,
    )
    if output:
        state.save_linkage(table, output)
    else:
        sys.stdout.write(report.render_linkage(table))
    return EXIT_OK


def cmd_tag(cfg: RunConfig, state: StateManager, report: ReportTool, records_path: Path, linkage_path: Path) -> int:
    tagger = SdgTagger(state.load_linkage(linkage_path))
    corpus = load_corpus(records_path, state.load_taxonomy())
    sys.stdout.write(report.render_taggings(tagger.tag_all(corpus.records)))
    if corpus.diagnostics:
        logger.warning(f"Skipped {len(corpus.diagnostics)} malformed corpus lines")
    return EXIT_OK


def cmd_trend(cfg: RunConfig, state: StateManager, report: ReportTool, records_path: Path) -> int:
    corpus = load_corpus(records_path)
    series = trend_count(corpus.records, cfg.trend_groups, cfg.years)
    sys.stdout.write(report.render_trend(series, cfg.years))
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    overrides = {
        "taxonomy": args.taxonomy,
        "catalog": args.catalog,
        "stoplist": args.stoplist,
        "output_format": args.output_format,
        "log_level": args.log_level,
        "log_dir": args.log_dir,
        "method": getattr(args, "method", None),
        "weighting": getattr(args, "weighting", None),
        "year_from": getattr(args, "year_from", None),
        "year_to": getattr(args, "year_to", None),
    }
    if args.command in ("match", "compare-weightings"):
        overrides["top_k"] = args.top_k
    cfg = build_run_config(overrides, args.config, getattr(args, "groups", ()))
    setup_logging(cfg.log_level, cfg.log_dir)

    state = StateManager(
        taxonomy_path=cfg.taxonomy_path,
        catalog_path=cfg.catalog_path,
        stoplist_path=cfg.stoplist_path,
    )
    report = ReportTool(cfg.output_format)
    logger.debug(f"Running {args.command} with {cfg}")

    if args.command == "validate":
        return cmd_validate(cfg, state, report)
    if args.command == "match":
        return cmd_match(cfg, state, report, args.goal)
    if args.command == "compare-weightings":
        return cmd_compare_weightings(cfg, state, report, args.goal)
    if args.command == "reduce":
        return cmd_reduce(cfg, state, report, args.goal)
    if args.command == "export-linkage":
        if args.top_k is not None and args.top_k < 1:
            raise UsageError(f"--top must be >= 1, got {args.top_k}")
        return cmd_export_linkage(cfg, state, report, args.top_k, args.output)
    if args.command == "tag":
        return cmd_tag(cfg, state, report, args.records, args.linkage)
    return cmd_trend(cfg, state, report, args.records)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    load_dotenv(find_dotenv(usecwd=True))
    try:
        setup_logging(args.log_level or "INFO")
        return _run(args)
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except SdgJelError as e:
        logger.error(f"Error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

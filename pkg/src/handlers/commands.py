"""
Обработчики команд командной строки: align, eval, bench, sweep.
Каждая команда - тонкая обёртка над библиотечными вызовами.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, List, Optional

import numpy as np

from src import __version__
from src.bench.harness import (
    DEFAULT_NOISE_LEVELS,
    DEFAULT_SOURCE_NOISE,
    DEFAULT_TRIALS,
    BenchConfig,
    run_benchmark,
    run_param_sweep
)
from src.config import config
from src.core.assignment import MATCHERS
from src.core.graph import load_edge_list
from src.core.pipeline import GraspParams, grasp_align
from src.database.repository import open_cache
from src.errors import GraspError, OutputError
from src.logger import logger
from src.utils.charts import create_noise_chart, create_sweep_chart
from src.utils.helpers import (
    on_off,
    pairs_accuracy,
    parse_float_list,
    parse_int_list,
    parse_on_off,
    parse_variants,
    read_pairs_csv,
    write_alignment_csv
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _list_type(parse: Callable, what: str) -> Callable:
    def convert(text: str):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(f"invalid {what} '{text}': {e}")
    return convert


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _on_off(text: str) -> bool:
    try:
        return parse_on_off(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    """Флаги гиперпараметров, общие для всех команд с выравниванием."""
    group = parser.add_argument_group("algorithm parameters")
    group.add_argument("--k", type=int, default=config.GRASP_K, help="number of eigenpairs")
    group.add_argument("--q", type=int, default=config.GRASP_Q, help="number of diffusion times")
    group.add_argument("--t-min", type=float, default=config.GRASP_T_MIN, help="smallest diffusion time")
    group.add_argument("--t-max", type=float, default=config.GRASP_T_MAX, help="largest diffusion time")
    group.add_argument("--time-scale", choices=("linear", "log"), default=config.GRASP_TIME_SCALE,
                       help="spacing of the diffusion times")
    group.add_argument("--mu", type=float, default=config.GRASP_MU, help="coupling weight of base alignment")


def build_parser() -> argparse.ArgumentParser:
    """
    Создает парсер аргументов со всеми подкомандами.

    Returns:
        argparse.ArgumentParser: Парсер
    """
    parser = argparse.ArgumentParser(
        prog="grasp",
        description="Align the nodes of two graphs with spectral functional maps."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    align = commands.add_parser("align", help="align two edge-list graphs")
    align.add_argument("--source", required=True, help="edge list of the first graph")
    align.add_argument("--target", required=True, help="edge list of the second graph")
    align.add_argument("--out", help="alignment CSV (stdout when omitted)")
    align.add_argument("--matcher", choices=MATCHERS, default=config.GRASP_MATCHER)
    align.add_argument("--base-align", type=_on_off, default=config.GRASP_BASE_ALIGN, metavar="{on,off}")
    align.add_argument("--cache", action=argparse.BooleanOptionalAction, default=config.ENABLE_CACHE,
                       help="reuse cached spectra and rotations")
    _add_param_flags(align)
    align.set_defaults(handler=cmd_align)

    evaluate = commands.add_parser("eval", help="accuracy of an alignment against ground truth")
    evaluate.add_argument("--alignment", required=True, help="alignment CSV")
    evaluate.add_argument("--truth", required=True, help="ground-truth CSV")
    evaluate.set_defaults(handler=cmd_eval)

    for name, handler, help_text in (
        ("bench", cmd_bench, "noise-injection benchmark"),
        ("sweep", cmd_sweep, "benchmark over a range of k or q"),
    ):
        bench = commands.add_parser(name, help=help_text)
        bench.add_argument("--graph", required=True, help="edge list of the base graph")
        bench.add_argument("--noise", type=_list_type(parse_float_list, "noise list"),
                           default=list(DEFAULT_NOISE_LEVELS), help="comma-separated deletion probabilities")
        bench.add_argument("--source-noise", type=float, default=DEFAULT_SOURCE_NOISE)
        bench.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
        bench.add_argument("--seed", type=int, default=0)
        bench.add_argument("--out", required=True, help="results CSV")
        bench.add_argument("--variants", type=_list_type(parse_variants, "variant list"),
                           default=[(config.GRASP_MATCHER, config.GRASP_BASE_ALIGN)],
                           help="comma-separated matcher:on|off pairs, e.g. jv:on,nn:on,jv:off")
        bench.add_argument("--jobs", type=_positive_int, default=config.bench_jobs(),
                           help="parallel worker processes")
        bench.add_argument("--truth-dir", help="write ground-truth CSVs into this directory")
        bench.add_argument("--chart", help="render mean accuracy curves to this PNG")
        _add_param_flags(bench)
        if name == "sweep":
            target = bench.add_mutually_exclusive_group(required=True)
            target.add_argument("--sweep-k", type=_list_type(parse_int_list, "k list"))
            target.add_argument("--sweep-q", type=_list_type(parse_int_list, "q list"))
        bench.set_defaults(handler=handler)

    return parser


def _params_from_args(
    args: argparse.Namespace,
    parser: argparse.ArgumentParser,
    **overrides
) -> GraspParams:
    values = {
        "k": args.k,
        "q": args.q,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "mu": args.mu,
        "time_scale": args.time_scale,
    }
    values.update(overrides)
    try:
        return GraspParams(**values)
    except GraspError as e:
        parser.error(str(e))


def _bench_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> BenchConfig:
    params = _params_from_args(args, parser)
    try:
        return BenchConfig(
            graph_path=args.graph,
            noise_levels=args.noise,
            source_noise=args.source_noise,
            trials=args.trials,
            seed=args.seed,
            params=params,
            variants=args.variants,
            jobs=args.jobs,
            truth_dir=args.truth_dir
        )
    except GraspError as e:
        parser.error(str(e))


def cmd_align(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """
    Обработчик команды align.
    Выравнивает два графа и пишет CSV с парами исходных меток.
    """
    params = _params_from_args(args, parser, matcher=args.matcher, base_align=args.base_align)

    g1 = load_edge_list(args.source)
    g2 = load_edge_list(args.target)
    cache = open_cache() if args.cache else None
    alignment = grasp_align(g1, g2, params, cache=cache)

    if args.out:
        write_alignment_csv(args.out, g1, g2, alignment)
    else:
        print("g1_node,g2_node")
        for i, u in enumerate(alignment.mapping):
            print(f"{g1.label(i)},{g2.label(int(u))}")

    info = alignment.provenance
    print(f"n: {g1.n}", file=sys.stderr)
    print(f"k: {info['k']}", file=sys.stderr)
    print(
        f"base alignment ({on_off(params.base_align)}): objective {info['objective_initial']:.6g} -> "
        f"{info['objective_final']:.6g} in {info['rotation_iterations']} iterations, "
        f"converged={info['rotation_converged']}",
        file=sys.stderr
    )
    print(f"total cost ({alignment.method}): {alignment.total_cost:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """
    Обработчик команды eval.
    Печатает долю верно сопоставленных вершин с четырьмя знаками.
    """
    try:
        alignment = read_pairs_csv(args.alignment)
        truth = read_pairs_csv(args.truth)
        value = pairs_accuracy(alignment, truth)
    except (OSError, ValueError) as e:
        print(f"❌ [eval] {e}", file=sys.stderr)
        logger.error(f"Evaluation failed: {e}")
        return EXIT_FAILURE

    print(f"{value:.4f}")
    return EXIT_OK


def _write_chart(path: str, png) -> None:
    try:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_bytes(png.getvalue())
    except OSError as e:
        raise OutputError(f"Cannot write {path}: {e}") from e


def cmd_bench(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """
    Обработчик команды bench.
    Пишет CSV результатов и печатает среднюю точность по уровням шума.
    """
    cfg = _bench_config(args, parser)
    result = run_benchmark(cfg)
    result.write_csv(args.out)

    if args.chart:
        _write_chart(args.chart, create_noise_chart(result.to_frame(), Path(args.graph).stem))

    print(result.format_summary())
    logger.info(f"Benchmark results written to {args.out} ({len(result)} rows)")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    """
    Обработчик команды sweep.
    Повторяет бенчмарк для каждого значения k или q.
    """
    cfg = _bench_config(args, parser)
    parameter, values = ("k", args.sweep_k) if args.sweep_k is not None else ("q", args.sweep_q)
    for value in values:
        if value < 1:
            parser.error(f"argument --sweep-{parameter}: values must be at least 1, got {value}")

    result = run_param_sweep(cfg, {parameter: values})
    result.write_csv(args.out)

    if args.chart:
        _write_chart(args.chart, create_sweep_chart(result.to_frame(), parameter, Path(args.graph).stem))

    print(result.format_summary(by=(parameter, "noise", "matcher", "base_align")))
    logger.info(f"Sweep results written to {args.out} ({len(result)} rows)")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """
    Разбирает аргументы и запускает команду.

    Returns:
        int: Код выхода (0 - успех, 1 - ошибка выполнения, 2 - неверные флаги)
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args, parser)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (None, 0) else EXIT_OK
    except GraspError as e:
        print(f"❌ [{e.module}] {e}", file=sys.stderr)
        logger.error(f"{args.command} failed in {e.module}: {e}")
        return EXIT_FAILURE
    except (OSError, np.linalg.LinAlgError) as e:
        module = "output" if isinstance(e, OSError) else "linalg"
        print(f"❌ [{module}] {args.command}: {e}", file=sys.stderr)
        logger.error(f"{args.command} failed in {module}: {e}")
        return EXIT_FAILURE

"""
Command-line entry point.

Subcommands: cutpoints, plan, sweep, analyze, simulate and gen-fixture.
Diagnostics go to stderr, data to stdout or the declared output file.

Exit status: 0 on success, 1 on invalid input (bad documents, missing
files, analysis failures), 2 on usage errors.
"""

import argparse
import json
import logging
import sys
import traceback
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

from .. import __version__
from ..adaptive import RepartitionPolicy, load_scenario_file, plan_with, simulate, write_trace
from ..analysis import (
    AXES,
    FORMATS,
    RULES,
    LatencyTable,
    gain_table,
    group_by_model,
    optimal_cuts,
    parse_where,
    render_gains,
    render_rows,
    render_sensitivity,
    render_topk,
    sensitivity,
    slice_optima,
    topk_distribution,
    write_histograms,
)
from ..config import (
    PRESETS,
    SplitPlanConfig,
    create_preset_config,
    setup_logging,
)
from ..costmodel import (
    LatencyModel,
    OperationalCondition,
    StressResponse,
    load_calibration_file,
)
from ..cutpoints import blocks, enumerate_cutpoints
from ..exceptions import AnalysisError, SplitPlanConfigurationError, SplitPlanError
from ..fixtures import SHAPES, TABLE1_SHAPES, gen_fixture
from ..graph import load_graph_file
from ..sweep import (
    ConditionGrid,
    load_grid_file,
    restrict,
    run_sweep,
    sweep_platforms,
    write_records,
    write_records_file,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2


class RunConfig(BaseModel):
    """One fully resolved command-line invocation."""

    command: str
    inputs: List[Path] = Field(default_factory=list, description="Files the command reads")
    output: Optional[Path] = Field(default=None, description="Output file; stdout when unset")
    histogram_dir: Optional[Path] = Field(default=None, description="Directory for histogram files")
    seed: int = Field(default=0, ge=0)
    noise: float = Field(default=0.0, ge=0.0, le=1.0)
    jobs: int = Field(default=1, ge=1, le=64)
    platform: Optional[str] = Field(default=None, description="Platform label of swept records")
    verbosity: int = Field(default=0, ge=0)
    allow_all_cloud: bool = False
    edge_profile: str = "edge"
    cloud_profile: str = "cloud"
    base_rtt_s: float = Field(default=0.0, ge=0.0)
    calibration_file: Optional[Path] = None
    grid: ConditionGrid = Field(default_factory=ConditionGrid)
    policy: RepartitionPolicy = Field(default_factory=RepartitionPolicy)

    @model_validator(mode="after")
    def _check_files(self) -> "RunConfig":
        for path in [*self.inputs, *([self.calibration_file] if self.calibration_file else [])]:
            if not path.exists():
                raise FileNotFoundError(f"Input file not found: {path}")
        return self


# ---------------------------------------------------------------- parsing


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--edge-profile", help="Device profile of the edge")
    parser.add_argument("--cloud-profile", help="Device profile of the cloud")
    parser.add_argument("--rtt", type=float, help="Fixed seconds added per transfer")
    parser.add_argument("--calibration", help="Stress calibration document (JSON/YAML)")
    parser.add_argument(
        "--allow-all-cloud",
        action="store_true",
        help="Also consider the cut in front of the first layer",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitplan",
        description="Plan, sweep, analyse and simulate edge/cloud DNN partitions.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--config", help="Configuration file (YAML or JSON)")
    parser.add_argument("--preset", choices=PRESETS, help="Ready-made configuration")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cutpoints", help="List the valid partition points of a model")
    p.add_argument("model", help="Model document")
    p.add_argument("--blocks", action="store_true", help="List blocks instead of cut points")
    p.add_argument(
        "--allow-all-cloud",
        action="store_true",
        help="Also list the cut in front of the first layer",
    )

    p = sub.add_parser("plan", help="Find the best cut under one condition")
    p.add_argument("model", help="Model document")
    p.add_argument("--cpu", type=float, default=0.0, help="Edge CPU stress in [0, 1]")
    p.add_argument("--mem", type=float, default=0.0, help="Edge memory stress in [0, 1]")
    p.add_argument("--net", type=float, required=True, help="Transfer rate in Mb/s")
    p.add_argument("--jobs", type=int, help="Worker threads")
    p.add_argument("--format", choices=FORMATS, default="table")
    _add_model_options(p)

    p = sub.add_parser("sweep", help="Evaluate every cut under every grid condition")
    p.add_argument("model", help="Model document")
    p.add_argument("--grid", help="Condition grid document")
    p.add_argument("--repetitions", type=int, help="Runs per cut and condition")
    p.add_argument("--noise", type=float, help="Relative latency jitter")
    p.add_argument("--seed", type=int, help="Random seed")
    p.add_argument("--out", help="Output CSV; stdout when omitted")
    p.add_argument("--jobs", type=int, help="Worker threads")
    p.add_argument(
        "--platform",
        action="append",
        default=[],
        metavar="NAME=EDGE:CLOUD",
        help="Platform to sweep; repeat for several",
    )
    _add_model_options(p)

    p = sub.add_parser("analyze", help="Report on measurement CSVs")
    p.add_argument("data", help="Measurement CSV")
    p.add_argument("--report", choices=("topk", "sensitivity", "gains"), required=True)
    p.add_argument("--k", type=int, default=5, help="Cuts to list in topk reports")
    p.add_argument("--axis", choices=AXES, help="Condition axis; all axes when omitted")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--where", action="append", default=[], metavar="AXIS=VALUE",
                   help="Keep conditions with cpu=, mem= or net= (topk)")
    p.add_argument("--statistic", choices=("mean", "median"), default="mean")
    p.add_argument("--rule", choices=RULES, default="cut-change", help="Sensitivity rule")
    p.add_argument("--gain-threshold", type=float, default=5.0,
                   help="Gain in percent for the gain-threshold rule")
    p.add_argument("--baseline-level", type=float, help="Axis level whose optimum stays static")
    p.add_argument("--histogram-dir", help="Write per-model cut histograms here (topk)")
    p.add_argument("--out", help="Output file; stdout when omitted")

    p = sub.add_parser("simulate", help="Replay a scenario with and without repartitioning")
    p.add_argument("model", help="Model document")
    p.add_argument("scenario", help="Scenario document")
    p.add_argument("--trace", help="Write the adaptive trace CSV here")
    p.add_argument("--noise", type=float, help="Relative jitter on served latencies")
    p.add_argument("--seed", type=int, help="Random seed")
    p.add_argument("--format", choices=FORMATS, default="table")
    _add_model_options(p)

    p = sub.add_parser("gen-fixture", help="Emit a synthetic model document")
    p.add_argument("shape", choices=SHAPES)
    p.add_argument("--n", type=int, help="Layer count (chain, random)")
    p.add_argument(
        "--model",
        dest="fixture_model",
        choices=sorted(TABLE1_SHAPES),
        help="Model shape (table1-like)",
    )
    p.add_argument("--seed", type=int, default=0, help="Random seed")
    p.add_argument("--out", help="Output file; stdout when omitted")

    return parser


def load_base_config(args: argparse.Namespace) -> SplitPlanConfig:
    if args.config:
        return SplitPlanConfig.from_file(args.config)
    if args.preset:
        return create_preset_config(args.preset)
    return SplitPlanConfig()


def _pick(value, default):
    return default if value is None else value


def build_run_config(args: argparse.Namespace, config: SplitPlanConfig) -> RunConfig:
    """Merge command-line arguments over the loaded configuration."""
    command = args.command
    inputs = [
        Path(getattr(args, name))
        for name in ("model", "data", "scenario", "grid")
        if getattr(args, name, None)
    ]
    output = getattr(args, "out", None) or getattr(args, "trace", None)
    calibration = getattr(args, "calibration", None) or config.costmodel.calibration_file

    grid = config.sweep.grid
    if getattr(args, "grid", None):
        grid = load_grid_file(args.grid)
    if getattr(args, "repetitions", None) is not None:
        grid = restrict(grid, repetitions=args.repetitions)

    default_noise = config.sweep.noise if command == "sweep" else 0.0
    return RunConfig(
        command=command,
        inputs=inputs,
        output=config.output.resolve(output) if output else None,
        histogram_dir=(
            config.output.resolve(args.histogram_dir) if getattr(args, "histogram_dir", None) else None
        ),
        seed=_pick(getattr(args, "seed", None), config.sweep.seed),
        noise=_pick(getattr(args, "noise", None), default_noise),
        jobs=_pick(getattr(args, "jobs", None), config.sweep.jobs),
        platform=config.sweep.platform,
        verbosity=args.verbose,
        allow_all_cloud=getattr(args, "allow_all_cloud", False),
        edge_profile=_pick(getattr(args, "edge_profile", None), config.costmodel.edge_profile),
        cloud_profile=_pick(getattr(args, "cloud_profile", None), config.costmodel.cloud_profile),
        base_rtt_s=_pick(getattr(args, "rtt", None), config.costmodel.base_rtt_s),
        calibration_file=Path(calibration) if calibration else None,
        grid=grid,
        policy=config.adaptive.to_policy(),
    )


def parse_platforms(specs: Sequence[str]) -> Dict[str, Tuple[str, str]]:
    """
    Parse ``NAME=EDGE:CLOUD`` platform options.

    Raises:
        SplitPlanConfigurationError: On a malformed option or a repeated name
    """
    platforms: Dict[str, Tuple[str, str]] = {}
    for spec in specs:
        name, sep, profiles = spec.partition("=")
        edge, colon, cloud = profiles.partition(":")
        if not (sep and colon and name and edge and cloud):
            raise SplitPlanConfigurationError(
                f"Bad platform '{spec}'; expected NAME=EDGE_PROFILE:CLOUD_PROFILE"
            )
        if name in platforms:
            raise SplitPlanConfigurationError(f"Platform '{name}' given twice")
        platforms[name] = (edge, cloud)
    return platforms


# ---------------------------------------------------------------- commands


def _calibrated(run: RunConfig, args: argparse.Namespace, edge_profile: str) -> Tuple[StressResponse, float]:
    response = StressResponse.default()
    base_rtt = run.base_rtt_s
    if run.calibration_file:
        calibration = load_calibration_file(run.calibration_file, profile=edge_profile)
        response = calibration.response
        if getattr(args, "rtt", None) is None:
            base_rtt = calibration.base_rtt_s or base_rtt
    return response, base_rtt


def _latency_model(run: RunConfig, args: argparse.Namespace) -> LatencyModel:
    response, base_rtt = _calibrated(run, args, run.edge_profile)
    return LatencyModel(
        response=response,
        base_rtt_s=base_rtt,
        edge_profile=run.edge_profile,
        cloud_profile=run.cloud_profile,
    )


def _emit(text: str, run: RunConfig, out: TextIO) -> None:
    if run.output is None:
        out.write(text)
        return
    run.output.parent.mkdir(parents=True, exist_ok=True)
    run.output.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {run.output}")


def _cmd_cutpoints(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    graph = load_graph_file(run.inputs[0])
    cuts = enumerate_cutpoints(graph, allow_all_cloud=run.allow_all_cloud)
    lines = []
    if args.blocks:
        for block in blocks(graph, cuts):
            labels = [i + 1 for i in block.members]
            kind = "parallel" if block.is_parallel else "layer"
            lines.append(f"{labels[0]}-{labels[-1]}\t{kind}\t{len(block)}")
    else:
        for cut in cuts:
            name = "<all-cloud>" if cut.is_all_cloud else graph.layer(cut.after_layer).name
            lines.append(f"{cut.label}\t{name}\t{cut.crossing_bytes}")
    out.write("".join(line + "\n" for line in lines))


def _cmd_plan(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    graph = load_graph_file(run.inputs[0])
    cond = OperationalCondition(cpu_stress=args.cpu, mem_stress=args.mem, net_rate=args.net)
    model = _latency_model(run, args)
    cuts = enumerate_cutpoints(graph, allow_all_cloud=run.allow_all_cloud)
    cut, estimate = plan_with(graph, cond, model, cuts, jobs=run.jobs)
    row = {
        "model": graph.name,
        "cut": cut.label,
        "edge_s": estimate.edge_s,
        "transfer_s": estimate.transfer_s,
        "cloud_s": estimate.cloud_s,
        "total_s": estimate.total_s,
    }
    out.write(render_rows([row], list(row), args.format))


def _cmd_sweep(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    graph = load_graph_file(run.inputs[0])
    if args.platform:
        platforms = parse_platforms(args.platform)
        calibrated = {edge: _calibrated(run, args, edge) for edge, _ in platforms.values()}
        records = sweep_platforms(
            graph,
            run.grid,
            {edge: response for edge, (response, _) in calibrated.items()},
            platforms,
            {edge: base_rtt for edge, (_, base_rtt) in calibrated.items()},
            run.noise,
            run.seed,
            jobs=run.jobs,
            allow_all_cloud=run.allow_all_cloud,
        )
    else:
        model = _latency_model(run, args)
        records = run_sweep(
            graph,
            run.grid,
            model.response,
            model.base_rtt_s,
            run.edge_profile,
            run.cloud_profile,
            run.noise,
            run.seed,
            platform=run.platform,
            jobs=run.jobs,
            allow_all_cloud=run.allow_all_cloud,
        )
    if run.output is None:
        write_records(records, out)
    else:
        write_records_file(records, run.output)


def _cmd_analyze(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    table = LatencyTable.from_csv(run.inputs[0], statistic=args.statistic)
    axes = [args.axis] if args.axis else list(AXES)

    if args.report == "topk":
        optima = slice_optima(optimal_cuts(table), **parse_where(args.where))
        if not optima:
            raise AnalysisError(f"No conditions match {args.where}")
        grouped = group_by_model(optima)
        text = render_topk({pair: topk_distribution(o, args.k) for pair, o in grouped.items()}, args.format)
        if run.histogram_dir is not None:
            full = {pair: topk_distribution(o, None) for pair, o in grouped.items()}
            write_histograms(full, run.histogram_dir)
    elif args.report == "sensitivity":
        results = [
            r
            for axis in axes
            for r in sensitivity(table, axis, args.rule, args.gain_threshold)
        ]
        text = render_sensitivity(results, args.format)
    else:
        rows = [row for axis in axes for row in gain_table(table, axis, args.baseline_level)]
        text = render_gains(rows, args.format)
    _emit(text, run, out)


def _cmd_simulate(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    graph = load_graph_file(run.inputs[0])
    scenario = load_scenario_file(run.inputs[1])
    model = _latency_model(run, args)
    policy = scenario.policy or run.policy
    common = dict(allow_all_cloud=run.allow_all_cloud, noise=run.noise, seed=run.seed)
    adaptive = simulate(graph, scenario, model, policy, adaptive=True, **common)
    static = simulate(graph, scenario, model, policy, adaptive=False, **common)
    if run.output is not None:
        write_trace(adaptive, run.output)

    rows = [
        {
            "mode": "adaptive" if trace.adaptive else "static",
            "requests": len(trace.requests),
            "switches": trace.switches,
            "overhead_s": trace.overhead_s,
            "cumulative_latency_s": trace.cumulative_latency_s,
            "makespan_s": trace.makespan_s,
        }
        for trace in (adaptive, static)
    ]
    out.write(render_rows(rows, list(rows[0]), args.format))


def _cmd_gen_fixture(run: RunConfig, args: argparse.Namespace, out: TextIO) -> None:
    document = gen_fixture(args.shape, n=args.n, model=args.fixture_model, seed=run.seed)
    _emit(json.dumps(document, indent=2) + "\n", run, out)


COMMANDS = {
    "cutpoints": _cmd_cutpoints,
    "plan": _cmd_plan,
    "sweep": _cmd_sweep,
    "analyze": _cmd_analyze,
    "simulate": _cmd_simulate,
    "gen-fixture": _cmd_gen_fixture,
}


def _one_line(error: BaseException) -> str:
    return " ".join(str(error).split())


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """
    Run the command line.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` when omitted
        stdout: Stream for data output; ``sys.stdout`` when omitted

    Returns:
        int: Exit status
    """
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = load_base_config(args)
        setup_logging(config.logging, args.verbose)
        run = build_run_config(args, config)
        logger.debug(f"Running {run.command} with {run.model_dump(exclude={'grid', 'policy'})}")
        COMMANDS[run.command](run, args, out)
    except (SplitPlanError, FileNotFoundError, ValidationError) as e:
        logger.debug(f"Error details: {traceback.format_exc()}")
        print(f"splitplan: error: {_one_line(e)}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK

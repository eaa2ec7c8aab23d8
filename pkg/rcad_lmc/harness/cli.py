"""Command-line interface: sweep, counterexample and validate."""

import argparse
import asyncio
import logging
import sys
from typing import List, Optional, Sequence

from rcad_lmc import __version__
from rcad_lmc.config.settings import settings
from rcad_lmc.core.exceptions import ConfigError, DivergenceError
from rcad_lmc.core.models import CounterexampleReport, SweepResult, SweepSpec
from rcad_lmc.core.types import GradientMode, SamplerKind
from rcad_lmc.core.validation import condition_summary, validate_params
from rcad_lmc.diagnostics.counterexample import counterexample_check
from rcad_lmc.harness.config_parser import load_config
from rcad_lmc.harness.sweep import run_sweep
from rcad_lmc.samplers.ensemble import derive_seed
from rcad_lmc.storage.csv_storage import CSVResultStorage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGENCE = 2
EXIT_IO = 3

DEFAULT_SWEEP_OUT = "sweep.csv"
DEFAULT_COUNTEREXAMPLE_OUT = "counterexample.csv"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, help="Master seed (overrides the config)")
    parser.add_argument("--out", help="Output CSV path")
    parser.add_argument(
        "--threads", type=int, help="Concurrent chain blocks, 0 = one per CPU"
    )
    parser.add_argument(
        "--exact-gradients",
        action="store_true",
        help="Use exact partials instead of finite differences",
    )
    parser.add_argument(
        "--no-timing", action="store_true", help="Write wall_ms as 0 for reproducible bytes"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcad-lmc", description="Langevin Monte Carlo sweeps with coordinate-wise gradients"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Run a sampler x stepsize sweep")
    sweep.add_argument("config", help="Sweep configuration file")
    _add_common(sweep)

    counter = sub.add_parser(
        "counterexample", help="Stationary E|w|^2 excess of RCD-U-LMC on N(0, I_d)"
    )
    counter.add_argument("--d", type=int, nargs="+", required=True, help="Dimensions")
    counter.add_argument("--h", type=float, required=True, help="Time step")
    counter.add_argument("--n", type=int, default=0, help="Ensemble size, 0 for oracle only")
    counter.add_argument("--m", type=int, help="Steps, default ceil(50/h)")
    counter.add_argument(
        "--kind",
        choices=[SamplerKind.RCD_U_LMC.value, SamplerKind.U_LMC.value],
        default=SamplerKind.RCD_U_LMC.value,
        help="Sampler under test",
    )
    counter.add_argument("--control", action="store_true", help="Add a U_LMC row per d")
    _add_common(counter)

    validate = sub.add_parser("validate", help="Print admissibility reports for a config")
    validate.add_argument("config", help="Sweep configuration file")
    _add_common(validate)
    return parser


def _apply_overrides(spec: SweepSpec, args: argparse.Namespace) -> SweepSpec:
    update = {}
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError(f"--seed must be >= 0, got {args.seed}")
        update["seed"] = args.seed
    if args.exact_gradients:
        update["gradient_mode"] = GradientMode.EXACT
    return spec.model_copy(update=update) if update else spec


def _record_wall_time(args: argparse.Namespace) -> bool:
    return settings.record_wall_time and not args.no_timing


async def cmd_sweep(args: argparse.Namespace) -> SweepResult:
    """Run a configured sweep and write its CSV."""
    spec = _apply_overrides(load_config(args.config), args)
    for warning in spec.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    result = await run_sweep(spec, threads=args.threads)
    out = args.out or spec.output or DEFAULT_SWEEP_OUT
    await CSVResultStorage(out, record_wall_time=_record_wall_time(args)).write_sweep(result)
    print(out)
    if result.failed_rows:
        cells = ", ".join(f"{r.sampler.value} h={r.h!r}" for r in result.failed_rows)
        raise DivergenceError(f"divergence threshold exceeded in: {cells}")
    return result


async def cmd_counterexample(args: argparse.Namespace) -> List[CounterexampleReport]:
    """One counterexample row per d, plus a U_LMC control row per d with --control."""
    kinds = [SamplerKind(args.kind)]
    if args.control and SamplerKind.U_LMC not in kinds:
        kinds.append(SamplerKind.U_LMC)
    master = 0 if args.seed is None else args.seed
    if master < 0:
        raise ConfigError(f"--seed must be >= 0, got {master}")
    if args.h <= 0:
        raise ConfigError(f"--h must be positive, got {args.h!r}")
    if args.n < 0 or args.n == 1:
        raise ConfigError(f"--n must be 0 or >= 2, got {args.n}")

    reports: List[CounterexampleReport] = []
    row = 0
    for d in args.d:
        if d < 1:
            raise ConfigError(f"--d values must be >= 1, got {d}")
        for kind in kinds:
            reports.append(
                await counterexample_check(
                    d,
                    args.h,
                    steps=args.m,
                    chains=args.n,
                    seed=derive_seed(master, row),
                    kind=kind,
                    threads=args.threads,
                )
            )
            row += 1

    comments = [
        f"rcad_lmc {__version__}",
        f"config: d = {', '.join(str(d) for d in args.d)}",
        f"config: h = {args.h!r}",
        f"config: n = {args.n}",
        f"config: m = {'auto' if args.m is None else args.m}",
        f"config: seed = {master}",
        "config: gamma = 1, exact gradients, x0 ~ N(1/8, I), v0 ~ N(0, I)",
    ]
    out = args.out or DEFAULT_COUNTEREXAMPLE_OUT
    await CSVResultStorage(out).write_counterexample(reports, comments)
    print(out)
    threshold = settings.failure_threshold
    diverged = [
        r
        for r in reports
        if r.divergence_fraction is not None and r.divergence_fraction > threshold
    ]
    if diverged:
        raise DivergenceError(f"ensemble diverged for d = {[r.d for r in diverged]}")
    return reports


def cmd_validate(args: argparse.Namespace) -> List[str]:
    """Print one admissibility line per (sampler, h) cell."""
    spec = _apply_overrides(load_config(args.config), args)
    target = spec.target.build(spec.d)
    lines = [condition_summary(target) or f"d={spec.d}, mu=0: theory inapplicable"]
    for kind in spec.samplers:
        for h in spec.h:
            params = spec.kernel_params(kind, h, target)
            report = validate_params(target, params, kind.dynamics)
            lines.append(f"{kind.value} h={h!r} eta={params.eta!r}: {report.summary()}")
    for line in lines:
        print(line)
    return lines


async def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        Exit code: 0 success, 1 config error, 2 divergence threshold exceeded, 3 I/O error
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "sweep":
            await cmd_sweep(args)
        elif args.command == "counterexample":
            await cmd_counterexample(args)
        else:
            cmd_validate(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as e:
        print(f"divergence: {e}", file=sys.stderr)
        return EXIT_DIVERGENCE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def run() -> None:
    """Console-script entrypoint."""
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    run()

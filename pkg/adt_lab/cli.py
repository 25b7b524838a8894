"""
Batch command line for the lab.

Commands:
    region      capacity region, corners and gain class of a configuration
    sweep       gain-class records over an (alpha, alpha~) grid
    simulate    run and verify a catalog scheme or a plan file
    decompose   elementary parts of an (m, n) channel
    plan        pairings and predicted rates for a target corner
    verify-all  verify every scheme of the acceptance suite

Rationals print exactly, in lowest terms, with integers bare (2, 4/3).
"""
import argparse
import csv
import io
import logging
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence

import numpy as np

from adt_lab.capacity import (
    capacity_pairs,
    corner_points,
    corollary1_holds,
    interaction_gain,
    two_way_region,
)
from adt_lab.channel import ChannelConfig, classify_regime, format_ratio
from adt_lab.decomposition import Target, decompose, plan, serialize_plan
from adt_lab.exceptions import AdtLabError, DegenerateChannelError, ParameterError
from adt_lab.schemes import CATALOG, load_scheme
from adt_lab.schemes.compiler import Scheme, compile_program
from adt_lab.schemes.compose import compose
from adt_lab.settings import settings
from adt_lab.simulator import (
    VerificationReport,
    dump_transcript,
    random_sources,
    run,
    verify,
    with_finite_rates,
)

logger = logging.getLogger(__name__)

# Schemes exercised by verify-all, cheapest first.
SUITE = (
    "nf:0,1",
    "nf:1,2",
    "nf:2,3",
    "nf~:1,0",
    "nf~:2,1",
    "pf:1,2",
    "pf:1,0",
    "ex1:L=2",
    "ex2:L=2,M=4",
    "l4i:L=2",
    "l4i:L=2,backward-heavy",
    "l4:i:i=1,j=1",
    "l4:iii:i=1,j=1",
    "l4:iv:i=1,j=1",
    "l4:v:i=1,j=1",
    "l4:v:i=1,j=3,L=2",
    "l4:iii:i=2,j=3,L=2",
    "l4:ii:i=1,j=1",
)
# Plans composed and verified by verify-all.
SUITE_PLANS = (("2,4/3,1", Target.PERFECT_BOTH),)

_EXIT_FAILED = 1
_EXIT_ERROR = 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"expected a rational p/q, got {text!r}") from exc


def _flag(value: bool) -> str:
    return "true" if value else "false"


def cmd_region(args: argparse.Namespace) -> int:
    cfg = ChannelConfig.parse(args.config)
    region = two_way_region(cfg)
    baseline, perfect = capacity_pairs(cfg)
    print(f"config {cfg}")
    print("inequalities")
    print(region)
    print("corners")
    for corner in corner_points(region):
        print(corner)
    print(f"no-feedback {baseline}")
    print(f"perfect-feedback {perfect}")
    try:
        print(f"regime {classify_regime(cfg)}")
    except DegenerateChannelError:
        print("regime -")
    try:
        print(f"gain {interaction_gain(cfg).value}")
    except DegenerateChannelError:
        print("gain -")
    print(f"corollary1 {_flag(corollary1_holds(cfg))}")
    return 0


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of a sweep; ``config`` is None when it was skipped."""

    alpha: Fraction
    alpha_t: Fraction
    gamma: Fraction
    config: Optional[ChannelConfig]
    gain_class: str
    corollary1: Optional[bool]


def realize(alpha: Fraction, alpha_t: Fraction, gamma: Fraction, n_scale: int) -> ChannelConfig:
    """
    Smallest integer configuration with the given ratios, times n_scale.

    :param alpha: m / n.
    :param alpha_t: mt / nt.
    :param gamma: nt / n.
    :param n_scale: multiplier on the smallest realization.
    :raises ParameterError: if the ratios have no realization.
    :return: configuration.
    """
    if min(alpha, alpha_t, gamma) < 0:
        raise ParameterError("ratios must be non-negative")
    if gamma == 0:
        raise ParameterError("gamma = 0 leaves the backward direction without levels")
    n = n_scale * math.lcm(alpha.denominator, gamma.denominator, (alpha_t * gamma).denominator)
    nt = gamma * n
    return ChannelConfig(int(alpha * n), n, int(alpha_t * nt), int(nt))


def sweep(
    gamma: Fraction,
    step: Fraction,
    n_scale: int = 1,
    upper: Fraction = Fraction(3),
) -> Iterator[SweepRecord]:
    """
    Classify every point of the grid 0, step, ..., upper in both ratios.

    Records come in row-major order of (alpha, alpha~).

    :param gamma: nt / n, shared by all points.
    :param step: grid spacing.
    :param n_scale: multiplier on each realization.
    :param upper: last grid value.
    :raises ParameterError: on a non-positive step or n-scale.
    :yield: one record per grid point.
    """
    if step <= 0:
        raise ParameterError(f"step must be positive, got {step}")
    if n_scale < 1:
        raise ParameterError(f"n-scale must be >= 1, got {n_scale}")
    count = int(upper / step)
    grid = [step * index for index in range(count + 1)]
    for alpha in grid:
        for alpha_t in grid:
            try:
                cfg = realize(alpha, alpha_t, gamma, n_scale)
            except ParameterError as exc:
                logger.debug("Skipping (%s, %s): %s", alpha, alpha_t, exc)
                yield SweepRecord(alpha, alpha_t, gamma, None, "skipped", None)
                continue
            yield SweepRecord(
                alpha,
                alpha_t,
                gamma,
                cfg,
                interaction_gain(cfg).value,
                corollary1_holds(cfg),
            )


def _sweep_text(records: Sequence[SweepRecord]) -> str:
    lines = []
    for record in records:
        ratios = (record.alpha, record.alpha_t, record.gamma)
        head = " ".join(format_ratio(value) for value in ratios)
        if record.config is None:
            lines.append(f"{head} - skipped -")
            continue
        lines.append(
            f"{head} {record.config} {record.gain_class} {_flag(bool(record.corollary1))}",
        )
    return "\n".join(lines) + "\n"


def _sweep_csv(records: Sequence[SweepRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["alpha", "alpha_t", "gamma", "config", "gain_class", "corollary1"])
    for record in records:
        writer.writerow(
            [
                format_ratio(record.alpha),
                format_ratio(record.alpha_t),
                format_ratio(record.gamma),
                "" if record.config is None else str(record.config),
                record.gain_class,
                "" if record.corollary1 is None else _flag(record.corollary1),
            ],
        )
    return buffer.getvalue()


def cmd_sweep(args: argparse.Namespace) -> int:
    records = list(
        sweep(
            _rational(args.gamma),
            _rational(args.step),
            args.n_scale,
            _rational(args.upper),
        ),
    )
    render = _sweep_csv if args.format == "csv" else _sweep_text
    sys.stdout.write(render(records))
    return 0


def _report_lines(report: VerificationReport) -> List[str]:
    return [
        f"scheme {report.scheme}",
        f"seed {report.seed}",
        f"length {report.length} K {report.forward_functions} K~ {report.backward_functions}",
        f"vacant {report.vacant_forward} {report.vacant_backward}",
        f"basis-failures {len(report.basis_failures)}",
        f"linearity-failures {report.linearity_failures}",
        f"causality-failures {report.causality_failures}",
        f"undecoded {' '.join(report.undecoded) or '-'}",
        f"region-member {_flag(report.region_member)}",
        f"achieved {report.achieved} {'PASS' if report.passed else 'FAIL'}",
    ]


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.plan is None and args.scheme is None:
        raise ParameterError("give a scheme identifier or --plan <file>")
    identifier = args.scheme if args.plan is None else f"compose:{args.plan}"
    scheme = load_scheme(identifier)
    seed = settings.seed if args.seed is None else args.seed
    report = verify(scheme, seed=seed)
    if args.dump_transcript is not None:
        rng = np.random.default_rng(seed)
        transcript = run(scheme, random_sources(rng, scheme.program.table.width))
        Path(args.dump_transcript).write_text(dump_transcript(transcript), encoding="utf-8")
        logger.info("Transcript of %s written to %s", identifier, args.dump_transcript)
    for line in _report_lines(report):
        print(line)
    return 0 if report.passed else _EXIT_FAILED


def cmd_decompose(args: argparse.Namespace) -> int:
    if args.m < 0 or args.n < 0:
        raise ParameterError("level counts must be non-negative")
    decomposition = decompose(args.m, args.n)
    print(decomposition)
    if decomposition.undecomposed:
        print("undecomposed")
    return 0


def _composed_scheme(cfg: ChannelConfig, target: Target) -> Scheme:
    program = compose(plan(cfg, target))
    return compile_program(program)


def cmd_plan(args: argparse.Namespace) -> int:
    cfg = ChannelConfig.parse(args.config)
    schedule = plan(cfg, Target(args.target))
    if args.finite:
        schedule = with_finite_rates(schedule)
    sys.stdout.write(serialize_plan(schedule))
    return 0


def _suite() -> Iterator[Scheme]:
    for identifier in SUITE:
        yield load_scheme(identifier)
    for text, target in SUITE_PLANS:
        yield _composed_scheme(ChannelConfig.parse(text), target)


def cmd_verify_all(args: argparse.Namespace) -> int:
    seed = settings.seed if args.seed is None else args.seed
    failed = 0
    for scheme in _suite():
        report = verify(scheme, seed=seed)
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{report.scheme} achieved {report.achieved} {verdict}")
        if not report.passed:
            failed += 1
    total = len(SUITE) + len(SUITE_PLANS)
    print(f"{total - failed}/{total} passed")
    return _EXIT_FAILED if failed else 0


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adt-lab",
        description="Two-way function computation on the deterministic four-node network",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="Catalog:\n  " + "\n  ".join(CATALOG),
    )
    parser.add_argument(
        "--log-level",
        default=None,
        help="Override the configured log level for this run",
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    cmd_region_parser = subparsers.add_parser("region", help="Capacity region of a configuration")
    cmd_region_parser.add_argument("config", help="Configuration as m,n/mt,nt")

    cmd_sweep_parser = subparsers.add_parser("sweep", help="Gain classes over a ratio grid")
    cmd_sweep_parser.add_argument("--gamma", default="1", help="nt/n as p/q (default: 1)")
    cmd_sweep_parser.add_argument("--step", default="1/6", help="Grid step as p/q (default: 1/6)")
    cmd_sweep_parser.add_argument(
        "--upper",
        default="3",
        help="Last grid value of both ratios (default: 3)",
    )
    cmd_sweep_parser.add_argument(
        "--n-scale",
        type=int,
        default=1,
        help="Multiplier on the smallest integer realization (default: 1)",
    )
    cmd_sweep_parser.add_argument(
        "--format",
        choices=["text", "csv"],
        default="text",
        help="Record format (default: text)",
    )

    cmd_simulate_parser = subparsers.add_parser("simulate", help="Run and verify a scheme")
    cmd_simulate_parser.add_argument("scheme", nargs="?", help="Catalog identifier, e.g. ex1:L=2")
    cmd_simulate_parser.add_argument("--plan", default=None, help="Plan file written by 'plan'")
    cmd_simulate_parser.add_argument("--seed", type=int, default=None, help="Verification seed")
    cmd_simulate_parser.add_argument(
        "--dump-transcript",
        default=None,
        help="Write the transcript of one random run to this path",
    )

    cmd_decompose_parser = subparsers.add_parser("decompose", help="Elementary parts of (m, n)")
    cmd_decompose_parser.add_argument("m", type=int, help="Cross levels")
    cmd_decompose_parser.add_argument("n", type=int, help="Direct levels")

    cmd_plan_parser = subparsers.add_parser("plan", help="Pairings for a target corner")
    cmd_plan_parser.add_argument("config", help="Configuration as m,n/mt,nt")
    cmd_plan_parser.add_argument(
        "target",
        choices=[target.value for target in Target],
        help="Corner to aim at",
    )
    cmd_plan_parser.add_argument(
        "--finite",
        action="store_true",
        help="Also compose the plan and record its finite-length rates",
    )

    cmd_verify_all_parser = subparsers.add_parser("verify-all", help="Verify the scheme suite")
    cmd_verify_all_parser.add_argument("--seed", type=int, default=None, help="Verification seed")

    return parser


_COMMANDS: Dict[str, Callable[[argparse.Namespace], int]] = {
    "region": cmd_region,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
    "decompose": cmd_decompose,
    "plan": cmd_plan,
    "verify-all": cmd_verify_all,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``adt-lab`` script.

    :param argv: arguments, sys.argv[1:] if None.
    :return: exit status, 0 on success, 1 on failed verification, 2 on errors.
    """
    parser = create_parser()
    args = parser.parse_args(argv)
    level = (args.log_level or settings.log_level.value).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    if args.command is None:
        parser.print_help()
        return _EXIT_ERROR
    try:
        return _COMMANDS[args.command](args)
    except AdtLabError as exc:
        print(f"adt-lab: {exc}", file=sys.stderr)
        return _EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

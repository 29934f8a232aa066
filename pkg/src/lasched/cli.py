"""Command-line surface: simulate, oracle, verify, adversary, generate, sweep.

Exit codes: 0 success, 1 usage or input error, 2 a verification run found
instances violating the target bound (so scripts can distinguish a scientific
finding from a crash).  Output is byte-identical across identical
invocations; nothing here prints timestamps.
"""

from __future__ import annotations

import argparse
import random
import sys

from .adversaries import (
    THM4_CASE_IDS,
    FamilyId,
    GameTranscript,
    format_family_id,
    named_instance,
    parse_family_id,
    play_theorem1,
    play_theorem4,
)
from .algorithms import DecisionTrace, SchedulerId, policy_for, run_policy
from .core import (
    Instance,
    Rational,
    SchedulingError,
    format_instance_text,
    format_rational,
    make_instance,
    parse_instance_text,
    parse_rational,
)
from .harness import (
    VerificationReport,
    emit_csv,
    inline_label,
    run_family_sweep,
    run_one,
    verify_bound,
)
from .oracle import opt_lower_bound, optimal_makespan

USAGE_ERROR = 1
VIOLATIONS_FOUND = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # "bound violated", so route usage errors to exit code 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _ratio_str(value: Rational) -> str:
    return f"{format_rational(value)} ({float(value):.6f})"


def _parse_values(text: str) -> tuple[Rational, ...]:
    try:
        values = tuple(parse_rational(part) for part in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"--values: {exc}") from None
    if not values:
        raise _UsageError("--values: empty list")
    return values


def _parse_bound(text: str) -> Rational:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise _UsageError(f"--bound: {exc}") from None


def _load_instance(args) -> tuple[Instance, str]:
    if args.family is not None:
        family = parse_family_id(args.family)
        return named_instance(family), format_family_id(family)
    if args.instance is not None:
        with open(args.instance, encoding="utf-8") as handle:
            instance = parse_instance_text(handle.read())
        return instance, args.instance
    raise _UsageError("one of --instance or --family is required")


def _default_k(args) -> int:
    if args.k is not None:
        return args.k
    return 0 if args.alg is SchedulerId.LS else 1


def _print_trace(trace: DecisionTrace) -> None:
    for record in trace.records:
        future = ",".join(format_rational(p) for p in record.window.future)
        loads = ",".join(format_rational(l) for l in record.loads)
        print(
            f"  job {record.job_index}: p={format_rational(record.window.current)}"
            f" future=[{future}] -> M{record.machine} loads=({loads})"
        )


def _write_csv(path: str | None, payload) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(emit_csv(payload))


def _cmd_simulate(args) -> int:
    instance, label = _load_instance(args)
    k = _default_k(args)
    row = run_one(args.alg, instance, args.m, k, label=label)
    print(f"scheduler: {row.scheduler.value}")
    print(f"instance: {row.instance_label} = {inline_label(instance.processing_times)}")
    print(f"m: {row.m}")
    print(f"k: {row.k}")
    print(f"alg_makespan: {format_rational(row.alg_makespan)}")
    print(f"opt_makespan: {format_rational(row.opt_makespan)}")
    print(f"ratio: {_ratio_str(row.ratio)}")
    if args.trace:
        _, trace = run_policy(instance, policy_for(args.alg), args.m, k)
        _print_trace(trace)
    _write_csv(args.csv, [row])
    return 0


def _cmd_oracle(args) -> int:
    instance, label = _load_instance(args)
    result = optimal_makespan(instance, args.m)
    witness = ",".join(str(result.witness_assignment[i]) for i in range(1, len(instance) + 1))
    print(f"instance: {label} = {inline_label(instance.processing_times)}")
    print(f"m: {args.m}")
    print(f"opt_makespan: {format_rational(result.makespan)}")
    print(f"lower_bound: {format_rational(opt_lower_bound(instance, args.m))}")
    print(f"witness_machines: {witness}")
    return 0


def _print_report(report: VerificationReport) -> None:
    print(f"scheduler: {report.scheduler.value}")
    print(f"m: {report.m}")
    print(f"k: {report.k}")
    print(f"space: n=1..{report.n_max} values={inline_label(report.values)}")
    print(f"instances_checked: {report.instances_checked}")
    print(f"target_bound: {_ratio_str(report.target_bound)}")
    print(f"max_ratio: {_ratio_str(report.max_ratio)}")
    print(f"argmax_instance: {inline_label(report.argmax_instance.processing_times)}")
    print(f"violations: {len(report.violations)}")
    for instance, ratio in report.violations:
        print(
            f"  violation: {inline_label(instance.processing_times)}"
            f" ratio {_ratio_str(ratio)}"
        )


def _cmd_verify(args) -> int:
    if args.nmax is None:
        raise _UsageError("--nmax is required")
    report = verify_bound(
        args.alg,
        args.m,
        _default_k(args),
        args.nmax,
        _parse_values(args.values),
        _parse_bound(args.bound),
        jobs=args.jobs,
    )
    _print_report(report)
    _write_csv(args.csv, report)
    return VIOLATIONS_FOUND if report.violations else 0


def _print_transcript(game: str, transcript: GameTranscript, trace: bool) -> None:
    print(f"game: {game}")
    print(f"case: {transcript.case}")
    print(f"degenerate: {str(transcript.degenerate).lower()}")
    print(f"instance: {inline_label(transcript.final_instance.processing_times)}")
    print(f"decisions: {','.join(str(d) for d in transcript.decisions)}")
    print(f"alg_makespan: {format_rational(transcript.alg_makespan)}")
    print(f"opt_makespan: {format_rational(transcript.opt_makespan)}")
    print(f"ratio: {_ratio_str(transcript.ratio)}")
    if trace:
        for step, (window, decision) in enumerate(
            zip(transcript.revealed, transcript.decisions), 1
        ):
            future = ",".join(format_rational(p) for p in window.future)
            print(
                f"  step {step}: p={format_rational(window.current)}"
                f" future=[{future}] -> M{decision}"
            )


def _cmd_adversary(args) -> int:
    if args.game == "thm1":
        try:
            x = parse_rational(args.x)
        except ValueError as exc:
            raise _UsageError(f"--x: {exc}") from None
        transcript = play_theorem1(args.alg, args.n, _default_k(args), x)
    else:
        transcript = play_theorem4(args.alg)
    _print_transcript(args.game, transcript, args.trace)
    return 0


def _cmd_generate(args) -> int:
    if args.family is not None:
        instance = named_instance(parse_family_id(args.family))
    elif args.random is not None:
        values = _parse_values(args.values)
        rng = random.Random(args.seed)
        instance = make_instance(
            [values[rng.randrange(len(values))] for _ in range(args.random)]
        )
    else:
        raise _UsageError("one of --family or --random is required")
    text = format_instance_text(instance)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return 0


def _parse_family_range(text: str) -> list[FamilyId]:
    kind, sep, rest = text.partition(":")
    if kind == "thm4" and not sep:
        return [FamilyId("thm4", case) for case in THM4_CASE_IDS]
    if sep and "=" in rest:
        key, raw = rest.split("=", 1)
        if ".." in raw and kind != "thm4":
            low, high = raw.split("..", 1)
            try:
                low_i, high_i = int(low), int(high)
            except ValueError:
                raise _UsageError(f"bad range {raw!r} in --family") from None
            return [parse_family_id(f"{kind}:{key}={value}") for value in range(low_i, high_i + 1)]
    return [parse_family_id(text)]


def _cmd_sweep(args) -> int:
    families = _parse_family_range(args.family)
    rows = run_family_sweep(args.alg, families, args.m, _default_k(args))
    for row in rows:
        print(
            f"{row.instance_label}: alg={format_rational(row.alg_makespan)}"
            f" opt={format_rational(row.opt_makespan)} ratio={_ratio_str(row.ratio)}"
        )
    _write_csv(args.csv, rows)
    return 0


def _add_common(parser: _Parser, *, alg: bool = True, machines: bool = True) -> None:
    if alg:
        parser.add_argument(
            "--alg",
            type=SchedulerId,
            choices=list(SchedulerId),
            metavar="{ls,2la1,3la1}",
            required=True,
        )
    if machines:
        parser.add_argument("--m", type=int, required=True, help="machine count")
    parser.add_argument("--k", type=int, default=None, help="lookahead size (default: 1, or 0 for ls)")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="lasched",
        description=(
            "Exact semi-online makespan scheduling with lookahead: run the "
            "policies, query the optimal offline oracle, play the "
            "lower-bound adversaries, and exhaustively verify ratio bounds."
        ),
    )
    parser.add_argument("--version", action="version", version="lasched 0.1.0")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="run one scheduler on one instance")
    _add_common(simulate)
    simulate.add_argument("--instance", help="path to an instance file")
    simulate.add_argument("--family", help="named family, e.g. theorem2:n=6")
    simulate.add_argument("--trace", action="store_true", help="print every decision")
    simulate.add_argument("--csv", help="also write the row to a CSV file")
    simulate.set_defaults(func=_cmd_simulate)

    oracle = commands.add_parser("oracle", help="exact optimal offline makespan")
    _add_common(oracle, alg=False)
    oracle.add_argument("--instance", help="path to an instance file")
    oracle.add_argument("--family", help="named family, e.g. thm4:case=1")
    oracle.set_defaults(func=_cmd_oracle)

    verify = commands.add_parser("verify", help="exhaustively check a ratio bound")
    _add_common(verify)
    verify.add_argument("--nmax", type=int, help="maximum instance length")
    verify.add_argument("--values", required=True, help="comma list of rationals, e.g. 1,2,3")
    verify.add_argument("--bound", required=True, help="target ratio bound, e.g. 4/3")
    verify.add_argument("--jobs", type=int, default=1, help="parallel workers")
    verify.add_argument("--csv", help="write argmax and violations to a CSV file")
    verify.set_defaults(func=_cmd_verify)

    adversary = commands.add_parser("adversary", help="play a lower-bound game")
    adversary.add_argument("--game", choices=("thm1", "thm4"), required=True)
    _add_common(adversary, machines=False)
    adversary.add_argument("--n", type=int, default=100, help="thm1: total number of jobs")
    adversary.add_argument("--x", default="1", help="thm1: prefix job length (rational)")
    adversary.add_argument("--trace", action="store_true", help="print every revealed window")
    adversary.set_defaults(func=_cmd_adversary)

    generate = commands.add_parser("generate", help="write an instance file")
    generate.add_argument("--family", help="named family to materialise")
    generate.add_argument("--random", type=int, help="generate this many random jobs")
    generate.add_argument("--values", default="1,2,3", help="value set for --random")
    generate.add_argument("--seed", type=int, default=0, help="RNG seed for --random")
    generate.add_argument("--output", help="output path (default: stdout)")
    generate.set_defaults(func=_cmd_generate)

    sweep = commands.add_parser("sweep", help="run a scheduler across a family range")
    _add_common(sweep)
    sweep.add_argument(
        "--family",
        required=True,
        help="family or range, e.g. theorem2:n=4..8, thm4, corollary21:x=1..3",
    )
    sweep.add_argument("--csv", help="write the rows to a CSV file")
    sweep.set_defaults(func=_cmd_sweep)
    return parser


def dispatch(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SchedulingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:  # --help / --version
        code = exc.code
        return code if isinstance(code, int) else 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

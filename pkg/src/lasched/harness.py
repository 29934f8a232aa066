"""Experiment execution: single runs, family sweeps, exhaustive verification.

verify_bound enumerates every instance over a bounded space, scores each one
against the exact oracle, and reports the maximum ratio plus every instance
exceeding the target bound.  Violations are findings, not failures: the run
always completes and the report carries the evidence.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Iterable, Sequence

from .adversaries import FamilyId, format_family_id, named_instance
from .algorithms import SchedulerId, policy_for, run_policy
from .core import Instance, InvalidParam, Rational, SchedulingError, make_instance
from .oracle import CapacityExceeded, competitive_ratio, optimal_makespan_value

CSV_HEADER = ("scheduler", "instance", "m", "k", "alg_makespan", "opt_makespan", "ratio", "ratio_decimal")


class SchedulerMachineMismatch(SchedulingError):
    """Scheduler run on a machine count it does not support."""


@dataclass(frozen=True)
class ExperimentRow:
    scheduler: SchedulerId
    instance_label: str
    m: int
    k: int
    alg_makespan: Rational
    opt_makespan: Rational
    ratio: Rational


@dataclass(frozen=True)
class VerificationReport:
    scheduler: SchedulerId
    m: int
    k: int
    n_max: int
    values: tuple[Rational, ...]
    instances_checked: int
    max_ratio: Rational
    argmax_instance: Instance
    violations: tuple[tuple[Instance, Rational], ...]
    target_bound: Rational


def _check_compat(scheduler: SchedulerId, m: int, k: int) -> None:
    policy = policy_for(scheduler)
    if m < 2:
        raise InvalidParam(f"machine count must be >= 2, got {m}")
    if policy.machine_count is not None and policy.machine_count != m:
        raise SchedulerMachineMismatch(
            f"{scheduler.value} requires m={policy.machine_count}, got m={m}"
        )
    if k < policy.min_lookahead:
        raise InvalidParam(
            f"{scheduler.value} needs lookahead >= {policy.min_lookahead}, got k={k}"
        )


def inline_label(values: Sequence[Rational]) -> str:
    return ",".join(str(v) for v in values)


def run_one(
    scheduler: SchedulerId, instance: Instance, m: int, k: int, label: str | None = None
) -> ExperimentRow:
    """Run one scheduler on one instance and score it against the oracle."""
    _check_compat(scheduler, m, k)
    schedule, _ = run_policy(instance, policy_for(scheduler), m, k)
    opt = optimal_makespan_value(instance, m)
    return ExperimentRow(
        scheduler=scheduler,
        instance_label=label if label is not None else inline_label(instance.processing_times),
        m=m,
        k=k,
        alg_makespan=schedule.makespan,
        opt_makespan=opt,
        ratio=competitive_ratio(schedule.makespan, opt),
    )


def _decode(index: int, n: int, values: tuple[Rational, ...]) -> tuple[Rational, ...]:
    base = len(values)
    digits = []
    rest = index
    for _ in range(n):
        rest, digit = divmod(rest, base)
        digits.append(digit)
    return tuple(values[d] for d in reversed(digits))


def _scan_chunk(
    scheduler_value: str,
    m: int,
    k: int,
    n: int,
    values: tuple[Rational, ...],
    start: int,
    stop: int,
    bound: Rational,
):
    """Score one contiguous index range of the length-n enumeration.

    Returns (checked, best_ratio, best_values, violations); picklable
    arguments only, so verification can fan out across processes.
    """
    scheduler = SchedulerId(scheduler_value)
    policy = policy_for(scheduler)
    best_ratio: Rational | None = None
    best_values: tuple[Rational, ...] | None = None
    violations: list[tuple[tuple[Rational, ...], Rational]] = []
    for index in range(start, stop):
        times = _decode(index, n, values)
        instance = make_instance(times)
        try:
            schedule, _ = run_policy(instance, policy, m, k)
            opt = optimal_makespan_value(instance, m)
        except CapacityExceeded as exc:
            raise CapacityExceeded(f"{exc} (instance {inline_label(times)})") from exc
        ratio = competitive_ratio(schedule.makespan, opt)
        if best_ratio is None or ratio > best_ratio or (ratio == best_ratio and times < best_values):
            best_ratio, best_values = ratio, times
        if ratio > bound:
            violations.append((times, ratio))
    return stop - start, best_ratio, best_values, violations


def verify_bound(
    scheduler: SchedulerId,
    m: int,
    k: int,
    n_max: int,
    values: Sequence[Rational],
    target_bound: Rational,
    jobs: int = 1,
) -> VerificationReport:
    """Exhaustively check a ratio bound over all instances of length 1..n_max
    with processing times drawn from the value set.

    Never aborts on a violation; every instance exceeding the bound is
    collected into the report.  The result is identical for any worker
    count: chunks reduce associatively and argmax ties break towards the
    lexicographically smallest instance.
    """
    _check_compat(scheduler, m, k)
    if n_max < 1:
        raise InvalidParam(f"n_max must be >= 1, got {n_max}")
    values = tuple(values)
    if not values:
        raise InvalidParam("value set must be non-empty")
    if any(v <= 0 for v in values):
        raise InvalidParam("all values must be positive")
    if jobs < 1:
        raise InvalidParam(f"worker count must be >= 1, got {jobs}")

    tasks = []
    for n in range(1, n_max + 1):
        total = len(values) ** n
        chunk = -(-total // jobs)  # ceil division
        for start in range(0, total, chunk):
            tasks.append((scheduler.value, m, k, n, values, start, min(start + chunk, total), target_bound))

    if jobs == 1:
        results = [_scan_chunk(*task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_chunk, *zip(*tasks)))

    checked = 0
    best_ratio: Rational | None = None
    best_values: tuple[Rational, ...] | None = None
    violations: list[tuple[tuple[Rational, ...], Rational]] = []
    for count, ratio, arg_values, chunk_violations in results:
        checked += count
        if ratio is None:
            continue
        if best_ratio is None or ratio > best_ratio or (ratio == best_ratio and arg_values < best_values):
            best_ratio, best_values = ratio, arg_values
        violations.extend(chunk_violations)
    assert best_ratio is not None and best_values is not None
    return VerificationReport(
        scheduler=scheduler,
        m=m,
        k=k,
        n_max=n_max,
        values=values,
        instances_checked=checked,
        max_ratio=best_ratio,
        argmax_instance=make_instance(best_values),
        violations=tuple((make_instance(v), r) for v, r in violations),
        target_bound=Fraction(target_bound),
    )


def run_family_sweep(
    scheduler: SchedulerId, families: Iterable[FamilyId], m: int, k: int
) -> list[ExperimentRow]:
    """One experiment row per family, in the given parameter order."""
    return [
        run_one(scheduler, named_instance(family), m, k, label=format_family_id(family))
        for family in families
    ]


def report_rows(report: VerificationReport) -> list[ExperimentRow]:
    """Flatten a report into rows: the argmax instance, then each violation."""
    rows = [
        run_one(report.scheduler, report.argmax_instance, report.m, report.k)
    ]
    for instance, _ in report.violations:
        rows.append(run_one(report.scheduler, instance, report.m, report.k))
    return rows


def emit_csv(rows_or_report: Iterable[ExperimentRow] | VerificationReport) -> str:
    """Serialise rows (or a report's rows) as RFC-4180 CSV.

    Rationals are written exactly as "a/b"; the trailing ratio_decimal
    column is a rounded display-only convenience.
    """
    if isinstance(rows_or_report, VerificationReport):
        rows: Iterable[ExperimentRow] = report_rows(rows_or_report)
    else:
        rows = rows_or_report
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(
            (
                row.scheduler.value,
                row.instance_label,
                row.m,
                row.k,
                str(row.alg_makespan),
                str(row.opt_makespan),
                str(row.ratio),
                f"{float(row.ratio):.6f}",
            )
        )
    return buffer.getvalue()

"""Hard-instance families and adaptive lower-bound games.

The named families are fixed sequences; the two game strategies build their
sequence while playing against an online policy, committing each processing
time no later than the lookahead model reveals it.  A game that peeked at
decisions made after a value was revealed would prove nothing, so both games
commit first and replay afterwards, checking that the replayed prefix
decisions match the live ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Iterator, Sequence

from .algorithms import OnlinePolicy, SchedulerId, policy_for, run_policy
from .core import (
    Instance,
    InvalidParam,
    LookaheadWindow,
    Rational,
    make_instance,
    _window,
)
from .oracle import competitive_ratio, optimal_makespan_value

THM4_CASE_IDS = ("1", "2.1", "2.2", "2.3", "3a.1", "3a.2", "3a.3", "3b.1", "3b.2")

# (p4, p5) tails of the five-job ambush family, per case id
_THM4_TAILS: dict[str, tuple[int, int]] = {
    "1": (7, 11),
    "2.1": (7, 11),
    "2.2": (11, 7),
    "2.3": (4, 11),
    "3a.1": (7, 11),
    "3a.2": (4, 11),
    "3a.3": (11, 7),
    "3b.1": (7, 8),
    "3b.2": (8, 7),
}

_PARAM_KEY = {"theorem2": "n", "corollary21": "x", "lemma6": "x", "thm4": "case"}
_BARE_KINDS = ("fig1", "lemma4", "lemma5a", "lemma5b")


@dataclass(frozen=True)
class FamilyId:
    """A named instance family, optionally parametrised (n, x, or case id)."""

    kind: str
    param: int | str | None = None


def parse_family_id(text: str) -> FamilyId:
    """Parse CLI identifiers like "fig1", "theorem2:n=6", "thm4:case=3b.1"."""
    kind, sep, rest = text.partition(":")
    if kind in _BARE_KINDS:
        if sep:
            raise InvalidParam(f"family {kind!r} takes no parameter")
        return FamilyId(kind)
    key = _PARAM_KEY.get(kind)
    if key is None:
        raise InvalidParam(f"unknown family {text!r}")
    prefix = f"{key}="
    if not rest.startswith(prefix):
        raise InvalidParam(f"family {kind!r} needs a {prefix}<value> parameter")
    raw = rest[len(prefix):]
    if kind == "thm4":
        return FamilyId(kind, raw)
    try:
        return FamilyId(kind, int(raw))
    except ValueError:
        raise InvalidParam(f"family {kind!r} needs an integer {key}, got {raw!r}") from None


def format_family_id(family: FamilyId) -> str:
    if family.param is None:
        return family.kind
    return f"{family.kind}:{_PARAM_KEY[family.kind]}={family.param}"


def named_instance(family: FamilyId) -> Instance:
    """Materialise a named family into its exact job sequence."""
    kind, param = family.kind, family.param
    if kind == "fig1":
        return make_instance([1, 1, 2])
    if kind == "theorem2":
        if not isinstance(param, int) or param < 4:
            raise InvalidParam(f"theorem2 needs n >= 4, got {param!r}")
        n = param
        return make_instance([1] * (n - 3) + [n, 2 * n + 3, 2 * n])
    if kind == "corollary21":
        if not isinstance(param, int) or param < 1:
            raise InvalidParam(f"corollary21 needs x >= 1, got {param!r}")
        return make_instance([1] * (6 * param))
    if kind == "lemma4":
        return make_instance([16, 16, 1])
    if kind == "lemma5a":
        return make_instance([17, 14, 1, 1])
    if kind == "lemma5b":
        return make_instance([1, 1, 14, 17])
    if kind == "lemma6":
        if not isinstance(param, int) or param < 1:
            raise InvalidParam(f"lemma6 needs x >= 1, got {param!r}")
        return make_instance([1] * (33 * param))
    if kind == "thm4":
        tail = _THM4_TAILS.get(param)  # type: ignore[arg-type]
        if tail is None:
            raise InvalidParam(
                f"thm4 case must be one of {', '.join(THM4_CASE_IDS)}, got {param!r}"
            )
        return make_instance([7, 4, 4, *tail])
    raise InvalidParam(f"unknown family kind {kind!r}")


@dataclass(frozen=True)
class GameTranscript:
    """One adversary-vs-policy play: what was revealed, chosen, and scored."""

    revealed: tuple[LookaheadWindow, ...]
    decisions: tuple[int, ...]
    final_instance: Instance
    alg_makespan: Rational
    opt_makespan: Rational
    ratio: Rational
    case: str
    degenerate: bool = False


def _as_policy(scheduler: SchedulerId | OnlinePolicy) -> OnlinePolicy:
    if isinstance(scheduler, SchedulerId):
        return policy_for(scheduler)
    return scheduler


def _play_prefix(
    times: Sequence[Rational], policy: OnlinePolicy, machine_count: int, k: int, upto: int
) -> tuple[tuple[Rational, ...], tuple[int, ...]]:
    """Run the policy on jobs 1..upto of a partially committed sequence.

    Every window shown within the prefix must already be fully committed,
    i.e. upto + k <= len(times).
    """
    assert upto + k <= len(times)
    committed = make_instance(times)
    loads = [Fraction(0)] * machine_count
    decisions = []
    for i in range(1, upto + 1):
        window = _window(committed, i, k)
        machine = policy.choose(tuple(loads), window)
        loads[machine - 1] += committed.jobs[i - 1].processing_time
        decisions.append(machine)
    return tuple(loads), tuple(decisions)


def _finish_game(
    policy: OnlinePolicy,
    machine_count: int,
    k: int,
    times: list[Rational],
    prefix_decisions: tuple[int, ...],
    case: str,
    degenerate: bool = False,
) -> GameTranscript:
    instance = make_instance(times)
    schedule, trace = run_policy(instance, policy, machine_count, k)
    if trace.decisions[: len(prefix_decisions)] != prefix_decisions:
        raise RuntimeError("policy is not deterministic: replayed prefix diverged")
    opt = optimal_makespan_value(instance, machine_count)
    return GameTranscript(
        revealed=tuple(record.window for record in trace.records),
        decisions=trace.decisions,
        final_instance=instance,
        alg_makespan=schedule.makespan,
        opt_makespan=opt,
        ratio=competitive_ratio(schedule.makespan, opt),
        case=case,
        degenerate=degenerate,
    )


def play_theorem1(
    scheduler: SchedulerId | OnlinePolicy, n: int, k: int, x: Rational
) -> GameTranscript:
    """Two-machine lower-bound game against any policy with k-lookahead.

    The sequence is n-k-1 jobs of length x, then k unit jobs, then a final
    job fixed at the moment it first enters a lookahead window (when job
    n-k arrives): with loads relabelled so a >= b, the final job is k when
    a >= 2b, else 2a - b.  A non-positive final value (impossible once
    n >= k + 2, but guarded anyway) is clamped to 1 and the transcript is
    flagged degenerate.
    """
    policy = _as_policy(scheduler)
    if policy.machine_count not in (None, 2):
        raise InvalidParam("this game is played on two machines")
    if k < max(1, policy.min_lookahead):
        raise InvalidParam(f"lookahead must be >= 1, got {k}")
    if n < k + 2:
        raise InvalidParam(f"need n >= k + 2, got n={n}, k={k}")
    x = Fraction(x)
    if x <= 0:
        raise InvalidParam(f"x must be positive, got {x}")

    prefix = [x] * (n - k - 1) + [Fraction(1)] * k
    loads, decisions = _play_prefix(prefix, policy, 2, k, n - k - 1)
    a, b = max(loads), min(loads)  # relabel so the case split is well defined
    degenerate = False
    if a >= 2 * b:
        y: Rational = Fraction(k)
        case = "1"
    else:
        y = 2 * a - b
        case = "2"
        if y <= 0:
            y = Fraction(1)
            degenerate = True
    return _finish_game(policy, 2, k, prefix + [y], decisions, case, degenerate)


def play_theorem4(scheduler: SchedulerId | OnlinePolicy) -> GameTranscript:
    """Three-machine lower-bound game under 1-lookahead.

    The prefix 7, 4, 4 is fixed.  The fourth value is 7 in every branch of
    the case table, so it can be committed when job 3 arrives without
    knowing where job 3 will go.  The fifth value is committed when job 4
    arrives, from the placements of jobs 1..3 alone: 8 if jobs 1 and 2 sit
    on different machines and job 3 joined job 2, else 11.  The transcript's
    case label records which branch applied.
    """
    policy = _as_policy(scheduler)
    if policy.machine_count not in (None, 3):
        raise InvalidParam("this game is played on three machines")
    k = 1

    committed = [Fraction(7), Fraction(4), Fraction(4), Fraction(7)]
    _, decisions = _play_prefix(committed, policy, 3, k, 3)
    m1, m2, m3 = decisions
    if m1 == m2:
        case = "1" if m3 == m1 else "2.1"
        p5 = Fraction(11)
    elif m3 == m2:
        case = "3b.1"
        p5 = Fraction(8)
    elif m3 == m1:
        case = "3a.1"
        p5 = Fraction(11)
    else:
        case = "1"
        p5 = Fraction(11)
    return _finish_game(policy, 3, k, committed + [p5], decisions, case)


def enumerate_instances(
    n: int, values: Sequence[Rational], start: int = 0, stop: int | None = None
) -> Iterator[Instance]:
    """All len(values)^n instances of length n, in lexicographic order of
    value indices; [start, stop) restricts to an index range so enumeration
    can be chunked and restarted."""
    if n < 1:
        raise InvalidParam(f"instance length must be >= 1, got {n}")
    values = tuple(values)
    if not values:
        raise InvalidParam("value set must be non-empty")
    if any(v <= 0 for v in values):
        raise InvalidParam("all values must be positive")
    base = len(values)
    total = base**n
    if stop is None:
        stop = total
    start = max(0, start)
    stop = min(stop, total)
    for index in range(start, stop):
        digits = []
        rest = index
        for _ in range(n):
            rest, digit = divmod(rest, base)
            digits.append(digit)
        yield make_instance([values[d] for d in reversed(digits)])

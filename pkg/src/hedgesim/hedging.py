"""Iterated propensity adjustment after a hedged assertion, and its payoff.

Once a hedge reveals that the two sides judge the vague matter differently,
each side repeatedly renormalizes its propensity to take the matching
action against the other's latest value. The recurrence starts from a
committed speaker (propensity 1) and a hesitating listener (1/2):

    f(0) = 1,  f(1) = 1/2,  f(n) = f(n-2) / (f(n-1) + f(n-2))

Even indices track the speaker, odd indices the listener. The sequence
oscillates (roughly 0.6 vs 0.4) rather than converging, but consecutive
pair sums approach 1 and the step-indexed expected utility never drops
below its step-0 value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .game import GameConfig, expected_utility


def _check_hesitation(hesitation: float) -> None:
    if not 0.0 < hesitation < 1.0:
        raise ValueError(f"hesitation must be strictly between 0 and 1, got {hesitation!r}")


@lru_cache(maxsize=None)
def _sequence(last: int, hesitation: float) -> tuple[float, ...]:
    values = [1.0, hesitation]
    for n in range(2, last + 1):
        values.append(values[n - 2] / (values[n - 1] + values[n - 2]))
    return tuple(values[: last + 1])


def propensity(n: int, hesitation: float = 0.5) -> float:
    """Value of the normalization recurrence at step ``n`` (iterative)."""
    if n < 0:
        raise ValueError(f"step index must be non-negative, got {n!r}")
    _check_hesitation(hesitation)
    return _sequence(max(n, 1), hesitation)[n]


def propensity_sequence(last: int, hesitation: float = 0.5) -> list[float]:
    """Recurrence values for steps 0..last."""
    if last < 0:
        raise ValueError(f"last step must be non-negative, got {last!r}")
    _check_hesitation(hesitation)
    return list(_sequence(max(last, 1), hesitation)[: last + 1])


def propensities_at_step(n: int, hesitation: float = 0.5) -> tuple[float, float]:
    """(speaker, listener) propensities for the matching action at step ``n``.

    The speaker reads the recurrence at the largest even index so far, the
    listener at the largest odd index; before any adjustment (n = 0) the
    listener's propensity is 0, not a recurrence value.
    """
    if n < 0:
        raise ValueError(f"step index must be non-negative, got {n!r}")
    _check_hesitation(hesitation)
    if n == 0:
        return (1.0, 0.0)
    sequence = _sequence(n, hesitation)
    even = n if n % 2 == 0 else n - 1
    odd = n if n % 2 == 1 else n - 1
    return (sequence[even], sequence[odd])


def stepwise_eu(
    config: GameConfig,
    n: int,
    action: str,
    player: str = "S",
    hesitation: float = 0.5,
) -> float:
    """Expected utility of an action after ``n`` adjustment steps.

    The base expected utility gains a correction for the contested world:
    its prior mass gamma times the chance both sides nevertheless take the
    action, times the matching payoff. Action-b propensities are the
    complements of the action-a propensities at every step, so at n = 0 the
    correction vanishes for both actions.
    """
    speaker_a, listener_a = propensities_at_step(n, hesitation)
    if action == "a":
        speaker, listener = speaker_a, listener_a
    elif action == "b":
        speaker, listener = 1.0 - speaker_a, 1.0 - listener_a
    else:
        raise ValueError(f"action must be 'a' or 'b', got {action!r}")
    base = expected_utility(config, player, action)
    return base + config.gamma * speaker * listener * config.payoffs.u(player, action, action)


@dataclass(frozen=True)
class HedgingStep:
    n: int
    p_speaker_a: float
    p_listener_a: float
    eu_a: float
    eu_b: float


@dataclass(frozen=True)
class HedgingSummary:
    """Tail diagnostics of a hedging run.

    ``even_tail`` / ``odd_tail`` are the last recurrence values on each
    index parity. ``pair_sum_gap`` is |f(m-1) + f(m) - 1| at the end of the
    run, and ``pair_sums_converged`` whether that gap is within tolerance.
    ``pair_sums_descending`` reports whether consecutive pair sums stay
    at or above 1 and non-increasing from step 2 on. ``eu_never_below_step0``
    is the monotonicity claim eu^0(x) <= eu^n(x) over the recorded steps.
    """

    even_tail: float
    odd_tail: float
    pair_sum_gap: float
    pair_sums_converged: bool
    pair_sums_descending: bool
    eu_never_below_step0: bool


@dataclass(frozen=True)
class HedgingTrace:
    config: GameConfig
    max_steps: int
    tolerance: float
    hesitation: float
    steps: tuple[HedgingStep, ...]
    summary: HedgingSummary


def run_hedging(
    config: GameConfig,
    max_steps: int = 50,
    tolerance: float = 1e-6,
    hesitation: float = 0.5,
) -> HedgingTrace:
    """Full propensity and expected-utility trace for steps 0..max_steps."""
    if max_steps < 4:
        raise ValueError(f"max_steps must be at least 4, got {max_steps!r}")
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance!r}")
    sequence = _sequence(max_steps, hesitation)
    steps = []
    for n in range(max_steps + 1):
        speaker_a, listener_a = propensities_at_step(n, hesitation)
        steps.append(
            HedgingStep(
                n=n,
                p_speaker_a=speaker_a,
                p_listener_a=listener_a,
                eu_a=stepwise_eu(config, n, "a", hesitation=hesitation),
                eu_b=stepwise_eu(config, n, "b", hesitation=hesitation),
            )
        )
    pair_sums = [sequence[k] + sequence[k + 1] for k in range(max_steps)]
    gap = abs(pair_sums[-1] - 1.0)
    descending = all(s >= 1.0 - 1e-12 for s in pair_sums[2:]) and all(
        later <= earlier + 1e-12
        for earlier, later in zip(pair_sums[2:], pair_sums[3:])
    )
    even_tail = sequence[max_steps if max_steps % 2 == 0 else max_steps - 1]
    odd_tail = sequence[max_steps if max_steps % 2 == 1 else max_steps - 1]
    first = steps[0]
    summary = HedgingSummary(
        even_tail=even_tail,
        odd_tail=odd_tail,
        pair_sum_gap=gap,
        pair_sums_converged=gap <= tolerance,
        pair_sums_descending=descending,
        eu_never_below_step0=all(
            step.eu_a >= first.eu_a and step.eu_b >= first.eu_b for step in steps
        ),
    )
    return HedgingTrace(
        config=config,
        max_steps=max_steps,
        tolerance=tolerance,
        hesitation=hesitation,
        steps=tuple(steps),
        summary=summary,
    )

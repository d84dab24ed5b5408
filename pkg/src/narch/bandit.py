"""Two-armed delayed-gratification environment with exact generic rewards.

The red arm always pays one unit. The blue arm pays a jackpot on press
counts that are powers of two (the 1st, 2nd, 4th, 8th, ... press) and
nothing otherwise. The reward codomain is pluggable: the exact scheme pays
the jackpot as the infinite Laurent value ``1 eps^-1``, the static scheme
approximates it with a fixed rational M, and the dynamic scheme pays
``M * 2^j`` for the j-th jackpot.

Every statistic is exact. Sample means are never divided during decision
making; they are compared by cross-multiplication (:func:`mean_compare`),
which is defined for both rational and Laurent sums. Under the exact
scheme the blue mean keeps an infinite component and never falls below the
red mean; under a static approximation it provably does, at a press count
computed by :func:`crossover_step`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, NamedTuple, Optional, Sequence, Union

from .laurent import (
    LaurentSeries,
    Ordering,
    RationalLike,
    ZERO,
    as_rational,
    compare,
    compare_scaled,
    format_series,
    monomial,
    scalar_mul,
)
from .rng import Xorshift64Star

RewardValue = Union[Fraction, LaurentSeries]

_LAURENT_UNIT = monomial(1, 0)
_LAURENT_JACKPOT = monomial(1, -1)
_RATIONAL_ZERO = Fraction(0)
_RATIONAL_UNIT = Fraction(1)


class Arm(Enum):
    RED = "red"
    BLUE = "blue"


KIND_LAURENT = "laurent"
KIND_STATIC = "static"
KIND_DYNAMIC = "dynamic"
_KINDS = (KIND_LAURENT, KIND_STATIC, KIND_DYNAMIC)


@dataclass(frozen=True)
class RewardScheme:
    """Which codomain the environment pays in.

    ``laurent`` pays exact Laurent values; ``static`` and ``dynamic`` pay
    rationals with approximation constant ``approx`` (M > 0).
    """

    kind: str
    approx: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind == KIND_LAURENT:
            if self.approx is not None:
                raise ValueError("the exact scheme takes no approximation constant")
        else:
            approx = as_rational(self.approx)
            if approx <= 0:
                raise ValueError("approximation constant must be positive")
            object.__setattr__(self, "approx", approx)

    @classmethod
    def exact_laurent(cls) -> "RewardScheme":
        return cls(KIND_LAURENT)

    @classmethod
    def static_approx(cls, m: RationalLike) -> "RewardScheme":
        return cls(KIND_STATIC, as_rational(m))

    @classmethod
    def dynamic_approx(cls, m: RationalLike) -> "RewardScheme":
        return cls(KIND_DYNAMIC, as_rational(m))

    @classmethod
    def parse(cls, text: str) -> "RewardScheme":
        """Parse ``laurent``, ``approx:<M>`` or ``dynamic:<M>``."""
        if text == "laurent":
            return cls.exact_laurent()
        for prefix, kind in (("approx:", KIND_STATIC), ("dynamic:", KIND_DYNAMIC)):
            if text.startswith(prefix):
                return cls(kind, as_rational(text[len(prefix):]))
        raise ValueError(f"unknown scheme {text!r} (expected laurent, approx:<M> or dynamic:<M>)")

    def text(self) -> str:
        if self.kind == KIND_LAURENT:
            return "laurent"
        prefix = "approx" if self.kind == KIND_STATIC else "dynamic"
        return f"{prefix}:{self.approx}"

    def zero(self) -> RewardValue:
        return ZERO if self.kind == KIND_LAURENT else _RATIONAL_ZERO

    def unit(self) -> RewardValue:
        return _LAURENT_UNIT if self.kind == KIND_LAURENT else _RATIONAL_UNIT

    def jackpot(self, j: int) -> RewardValue:
        """Reward for the j-th jackpot (the press count 2^j)."""
        if self.kind == KIND_LAURENT:
            return _LAURENT_JACKPOT
        if self.kind == KIND_STATIC:
            return self.approx
        return self.approx * (1 << j)


@dataclass(frozen=True)
class EnvState:
    """Press counters; ``blue_presses`` never exceeds ``step_count``."""

    blue_presses: int = 0
    step_count: int = 0

    def __post_init__(self) -> None:
        if self.blue_presses < 0 or self.blue_presses > self.step_count:
            raise ValueError("blue press count must lie in [0, step_count]")


def is_power_of_two(i: int) -> bool:
    if i < 1:
        raise ValueError("press count must be positive")
    return i & (i - 1) == 0


def env_step(
    state: EnvState, action: Arm, scheme: RewardScheme
) -> tuple[EnvState, RewardValue]:
    """One environment transition: red pays the unit, blue pays on powers of two."""
    if action is Arm.RED:
        return EnvState(state.blue_presses, state.step_count + 1), scheme.unit()
    presses = state.blue_presses + 1
    new_state = EnvState(presses, state.step_count + 1)
    if is_power_of_two(presses):
        return new_state, scheme.jackpot(presses.bit_length() - 1)
    return new_state, scheme.zero()


def _value_compare(a: RewardValue, b: RewardValue) -> Ordering:
    if isinstance(a, LaurentSeries) and isinstance(b, LaurentSeries):
        return compare(a, b)
    if isinstance(a, LaurentSeries) or isinstance(b, LaurentSeries):
        raise TypeError("cannot compare a Laurent value against a bare rational")
    if a < b:
        return Ordering.LESS
    if a == b:
        return Ordering.EQUAL
    return Ordering.GREATER


def mean_compare(
    sum_a: RewardValue, n_a: int, sum_b: RewardValue, n_b: int
) -> Ordering:
    """Compare sum_a/n_a against sum_b/n_b exactly by cross-multiplication.

    The result equals comparing n_b * sum_a against n_a * sum_b; no
    division ever happens, so the answer is exact for rational and Laurent
    sums alike.
    """
    if n_a < 1 or n_b < 1:
        raise ValueError("sample counts must be positive")
    if isinstance(sum_a, LaurentSeries) and isinstance(sum_b, LaurentSeries):
        return compare_scaled(sum_a, n_b, sum_b, n_a)
    if isinstance(sum_a, LaurentSeries) or isinstance(sum_b, LaurentSeries):
        raise TypeError("cannot compare a Laurent sum against a bare rational")
    fa = as_rational(sum_a)
    fb = as_rational(sum_b)
    lhs = n_b * fa.numerator * fb.denominator
    rhs = n_a * fb.numerator * fa.denominator
    if lhs < rhs:
        return Ordering.LESS
    if lhs == rhs:
        return Ordering.EQUAL
    return Ordering.GREATER


def exact_mean(total: RewardValue, count: int) -> RewardValue:
    """The exact sample mean (coefficient-wise for Laurent sums)."""
    if count < 1:
        raise ValueError("sample count must be positive")
    if isinstance(total, LaurentSeries):
        return scalar_mul(Fraction(1, count), total)
    return as_rational(total) / count


class ScriptedRound(NamedTuple):
    step: int
    blue_reward: RewardValue
    red_sum: RewardValue
    blue_sum: RewardValue
    blue_vs_red: Ordering


def scripted_eval(n: int, scheme: RewardScheme) -> Iterator[ScriptedRound]:
    """Paired deterministic run: one red and one blue press per round.

    The two arms run on independent environment copies, so after round k
    each has been pressed exactly k times. Each row carries the blue reward
    of the round, both exact sums, and the comparison of the blue sample
    mean against the red one. Yields lazily; large round counts stay cheap.
    """
    if n < 1:
        raise ValueError("round count must be positive")

    def rounds() -> Iterator[ScriptedRound]:
        red_state = EnvState()
        blue_state = EnvState()
        red_sum = scheme.zero()
        blue_sum = scheme.zero()
        for step in range(1, n + 1):
            red_state, red_reward = env_step(red_state, Arm.RED, scheme)
            blue_state, blue_reward = env_step(blue_state, Arm.BLUE, scheme)
            red_sum = red_sum + red_reward
            if blue_reward:
                blue_sum = blue_sum + blue_reward
            yield ScriptedRound(
                step, blue_reward, red_sum, blue_sum,
                mean_compare(blue_sum, step, red_sum, step),
            )

    return rounds()


def crossover_step(m: RationalLike, *, bound: int = 2**32) -> Optional[int]:
    """Smallest press count n with m * (floor(log2 n) + 1) < n, or None.

    This is where a static approximation M makes the blue sample mean drop
    below the red one: after n presses the blue arm has paid exactly
    floor(log2 n) + 1 jackpots of M against n red units. Within one
    power-of-two band the jackpot count is constant and the inequality is
    monotone in n, so each band is resolved directly instead of stepping;
    the scan gives up past ``bound``.
    """
    approx = as_rational(m)
    if approx <= 0:
        raise ValueError("approximation constant must be positive")
    bits = 1
    while True:
        band_lo = 1 << (bits - 1)
        if band_lo > bound:
            return None
        band_hi = min((1 << bits) - 1, bound)
        first_above = math.floor(approx * bits) + 1
        if first_above <= band_hi:
            return max(first_above, band_lo)
        bits += 1


MODE_SCRIPTED = "scripted"
MODE_EGREEDY = "egreedy"
_MODES = (MODE_SCRIPTED, MODE_EGREEDY)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs; equal configs (seed included) replay identically."""

    scheme: RewardScheme
    mode: str
    steps: int
    epsilon: Fraction = Fraction(0)
    seed: int = 0
    discount: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.steps < 1:
            raise ValueError("steps must be positive")
        epsilon = as_rational(self.epsilon)
        if not Fraction(0) <= epsilon <= Fraction(1):
            raise ValueError("epsilon must lie in [0, 1]")
        object.__setattr__(self, "epsilon", epsilon)
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise TypeError("seed must be an integer")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        if self.discount is not None:
            discount = as_rational(self.discount)
            if not Fraction(0) < discount < Fraction(1):
                raise ValueError("discount must lie strictly between 0 and 1")
            object.__setattr__(self, "discount", discount)


class PullRow(NamedTuple):
    step: int
    arm: Arm
    reward: RewardValue
    red_mean: Optional[RewardValue]
    blue_mean: Optional[RewardValue]
    preferred: Arm


@dataclass(frozen=True)
class EpsilonGreedyResult:
    config: RunConfig
    red_pulls: int
    blue_pulls: int
    red_sum: RewardValue
    blue_sum: RewardValue
    final_greedy: Arm
    trace: tuple[PullRow, ...]


def epsilon_greedy_run(config: RunConfig) -> EpsilonGreedyResult:
    """Deterministic epsilon-greedy run over the two arms.

    Pulls red then blue once, and from then on explores uniformly with
    probability epsilon, otherwise pulls the arm whose exact sample mean
    wins :func:`mean_compare`; ties (and an unsampled blue arm) defer to
    red, the lower-indexed arm. All randomness comes from the seeded
    xorshift64* stream, so equal configs give bit-identical traces.
    """
    if config.mode != MODE_EGREEDY:
        raise ValueError("config.mode must be 'egreedy'")
    scheme = config.scheme
    rng = Xorshift64Star(config.seed)
    state = EnvState()
    sums: dict[Arm, RewardValue] = {Arm.RED: scheme.zero(), Arm.BLUE: scheme.zero()}
    counts = {Arm.RED: 0, Arm.BLUE: 0}

    def greedy_arm() -> Arm:
        if counts[Arm.RED] == 0 or counts[Arm.BLUE] == 0:
            return Arm.RED
        ordering = mean_compare(
            sums[Arm.BLUE], counts[Arm.BLUE], sums[Arm.RED], counts[Arm.RED]
        )
        return Arm.BLUE if ordering is Ordering.GREATER else Arm.RED

    rows = []
    for step in range(1, config.steps + 1):
        if step == 1:
            arm = Arm.RED
        elif step == 2:
            arm = Arm.BLUE
        elif rng.bernoulli(config.epsilon):
            arm = Arm.RED if rng.next_bit() == 0 else Arm.BLUE
        else:
            arm = greedy_arm()
        state, reward = env_step(state, arm, scheme)
        counts[arm] += 1
        sums[arm] = sums[arm] + reward
        rows.append(
            PullRow(
                step,
                arm,
                reward,
                exact_mean(sums[Arm.RED], counts[Arm.RED]) if counts[Arm.RED] else None,
                exact_mean(sums[Arm.BLUE], counts[Arm.BLUE]) if counts[Arm.BLUE] else None,
                greedy_arm(),
            )
        )
    return EpsilonGreedyResult(
        config=config,
        red_pulls=counts[Arm.RED],
        blue_pulls=counts[Arm.BLUE],
        red_sum=sums[Arm.RED],
        blue_sum=sums[Arm.BLUE],
        final_greedy=greedy_arm(),
        trace=tuple(rows),
    )


def discounted_return(
    rewards: Sequence[RewardValue], gamma: RationalLike, *, zero: RewardValue = ZERO
) -> RewardValue:
    """Sum of gamma^t * rewards[t], computed exactly.

    ``zero`` is only returned for an empty list, where the codomain cannot
    be inferred; pass Fraction(0) when accumulating rational rewards.
    """
    discount = as_rational(gamma)
    if not Fraction(0) < discount < Fraction(1):
        raise ValueError("discount must lie strictly between 0 and 1")
    total: Optional[RewardValue] = None
    weight = Fraction(1)
    for reward in rewards:
        term = weight * reward
        total = term if total is None else total + term
        weight = weight * discount
    return zero if total is None else total


def reward_text(value: RewardValue) -> str:
    """Exact text for a reward value: series text or plain rational."""
    if isinstance(value, LaurentSeries):
        return format_series(value)
    return str(value)

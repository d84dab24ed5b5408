from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from narch.bandit import (
    Arm,
    EnvState,
    RewardScheme,
    RunConfig,
    crossover_step,
    discounted_return,
    env_step,
    epsilon_greedy_run,
    exact_mean,
    is_power_of_two,
    mean_compare,
    reward_text,
    scripted_eval,
)
from narch.laurent import ONE, Ordering, ZERO, compare, monomial, parse, scalar_mul
from narch.rng import Xorshift64Star

from .strategies import series


LAURENT = RewardScheme.exact_laurent()


def blue_presses(state: EnvState, scheme: RewardScheme, n: int):
    rewards = []
    for _ in range(n):
        state, reward = env_step(state, Arm.BLUE, scheme)
        rewards.append(reward)
    return state, rewards


class TestRewardScheme:
    def test_parse_round_trip(self):
        for text in ("laurent", "approx:1000", "dynamic:1000000", "approx:1/2"):
            assert RewardScheme.parse(text).text() == text

    def test_parse_rejects_junk(self):
        with pytest.raises(ValueError):
            RewardScheme.parse("exact")
        with pytest.raises(ValueError):
            RewardScheme.parse("approx:0")
        with pytest.raises(ValueError):
            RewardScheme.parse("approx:-3")

    def test_laurent_takes_no_constant(self):
        with pytest.raises(ValueError):
            RewardScheme("laurent", Fraction(5))


class TestEnvStep:
    def test_first_blue_press_pays_jackpot(self):
        state, reward = env_step(EnvState(), Arm.BLUE, LAURENT)
        assert reward == monomial(1, -1)
        assert state == EnvState(blue_presses=1, step_count=1)

    def test_third_blue_press_pays_nothing(self):
        state, rewards = blue_presses(EnvState(), LAURENT, 3)
        assert rewards[2] == ZERO
        assert state.blue_presses == 3

    def test_red_pays_unit(self):
        _, reward = env_step(EnvState(), Arm.RED, RewardScheme.static_approx(1000))
        assert reward == Fraction(1)

    def test_dynamic_jackpot_grows(self):
        scheme = RewardScheme.dynamic_approx(1000)
        _, rewards = blue_presses(EnvState(), scheme, 8)
        assert rewards[0] == 1000      # press 1 = 2^0
        assert rewards[1] == 2000      # press 2 = 2^1
        assert rewards[3] == 4000      # press 4 = 2^2
        assert rewards[7] == 8000      # press 8 = 2^3
        assert rewards[2] == rewards[4] == 0

    def test_state_invariant(self):
        with pytest.raises(ValueError):
            EnvState(blue_presses=2, step_count=1)


class TestPowersOfTwo:
    def test_examples(self):
        assert is_power_of_two(1)
        assert not is_power_of_two(6)
        assert is_power_of_two(1024)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            is_power_of_two(0)

    def test_schedule_invariant(self):
        # nonzero blue rewards after n presses == floor(log2 n) + 1
        scheme = RewardScheme.static_approx(7)
        state = EnvState()
        paid = 0
        for n in range(1, 4100):
            state, reward = env_step(state, Arm.BLUE, scheme)
            if reward != 0:
                paid += 1
            assert paid == n.bit_length()


class TestMeanCompare:
    def test_rational_examples(self):
        assert mean_compare(Fraction(3), 2, Fraction(1), 1) is Ordering.GREATER
        assert mean_compare(Fraction(2), 4, Fraction(1), 2) is Ordering.EQUAL

    def test_infinite_mean_beats_unit(self):
        assert mean_compare(monomial(1, -1), 1000, ONE, 1) is Ordering.GREATER

    def test_rejects_zero_counts(self):
        with pytest.raises(ValueError):
            mean_compare(ONE, 0, ONE, 1)

    def test_rejects_mixed_codomains(self):
        with pytest.raises(TypeError):
            mean_compare(ONE, 1, Fraction(1), 1)

    @given(series(), st.integers(1, 60), series(), st.integers(1, 60))
    def test_matches_literal_cross_multiplication(self, sum_a, n_a, sum_b, n_b):
        literal = compare(scalar_mul(n_b, sum_a), scalar_mul(n_a, sum_b))
        assert mean_compare(sum_a, n_a, sum_b, n_b) is literal

    @given(
        st.fractions(max_denominator=20),
        st.integers(1, 60),
        st.fractions(max_denominator=20),
        st.integers(1, 60),
    )
    def test_agrees_with_rational_division(self, sum_a, n_a, sum_b, n_b):
        by_division = (sum_a / n_a) - (sum_b / n_b)
        expected = (
            Ordering.LESS if by_division < 0
            else Ordering.EQUAL if by_division == 0
            else Ordering.GREATER
        )
        assert mean_compare(sum_a, n_a, sum_b, n_b) is expected


class TestScripted:
    def test_static_1000_first_rounds(self):
        rows = list(scripted_eval(4, RewardScheme.static_approx(1000)))
        assert rows[-1].blue_sum == 3000  # jackpots at presses 1, 2, 4
        assert rows[-1].red_sum == 4
        assert rows[-1].blue_vs_red is Ordering.GREATER

    def test_static_1000_flips_at_14001(self):
        flip = None
        for row in scripted_eval(14_100, RewardScheme.static_approx(1000)):
            if row.blue_vs_red is Ordering.LESS:
                flip = row.step
                break
        assert flip == 14_001

    def test_laurent_never_flips(self):
        rows = scripted_eval(5000, LAURENT)
        assert all(row.blue_vs_red is Ordering.GREATER for row in rows)

    def test_blue_sum_formula(self):
        scheme = RewardScheme.static_approx(Fraction(7, 2))
        for row in scripted_eval(600, scheme):
            assert row.blue_sum == Fraction(7, 2) * row.step.bit_length()

    def test_rejects_nonpositive_rounds(self):
        with pytest.raises(ValueError):
            scripted_eval(0, LAURENT)


class TestCrossover:
    def test_small_values(self):
        assert crossover_step(1) == 3
        assert crossover_step(1000) == 14_001

    def test_paper_scale_value(self):
        assert crossover_step(1_000_000) == 25_000_001

    def test_none_when_bounded_out(self):
        assert crossover_step(10, bound=20) is None

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            crossover_step(0)

    @given(st.fractions(min_value=Fraction(1, 3), max_value=60, max_denominator=6))
    def test_matches_linear_scan(self, m):
        expected = None
        for n in range(1, 3000):
            if m * n.bit_length() < n:
                expected = n
                break
        assert crossover_step(m, bound=2999) == expected


class TestEpsilonGreedy:
    def test_laurent_locks_onto_blue(self):
        config = RunConfig(scheme=LAURENT, mode="egreedy", steps=100, epsilon=Fraction(0), seed=5)
        result = epsilon_greedy_run(config)
        assert result.final_greedy is Arm.BLUE
        assert result.blue_pulls == 99

    def test_static_locks_onto_red_after_crossover(self):
        steps = crossover_step(1000) + 2
        config = RunConfig(
            scheme=RewardScheme.static_approx(1000),
            mode="egreedy",
            steps=steps,
            epsilon=Fraction(0),
            seed=5,
        )
        assert epsilon_greedy_run(config).final_greedy is Arm.RED

    def test_two_steps_pull_each_arm_once(self):
        config = RunConfig(scheme=LAURENT, mode="egreedy", steps=2, epsilon=Fraction(1), seed=99)
        result = epsilon_greedy_run(config)
        assert (result.red_pulls, result.blue_pulls) == (1, 1)
        assert [row.arm for row in result.trace] == [Arm.RED, Arm.BLUE]

    def test_identical_configs_replay_identically(self):
        config = RunConfig(
            scheme=RewardScheme.static_approx(50),
            mode="egreedy",
            steps=400,
            epsilon=Fraction(1, 5),
            seed=20260809,
        )
        assert epsilon_greedy_run(config) == epsilon_greedy_run(config)

    def test_scripted_config_rejected(self):
        config = RunConfig(scheme=LAURENT, mode="scripted", steps=5)
        with pytest.raises(ValueError):
            epsilon_greedy_run(config)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RunConfig(scheme=LAURENT, mode="egreedy", steps=0)
        with pytest.raises(ValueError):
            RunConfig(scheme=LAURENT, mode="egreedy", steps=1, epsilon=Fraction(3, 2))
        with pytest.raises(ValueError):
            RunConfig(scheme=LAURENT, mode="egreedy", steps=1, seed=-1)
        with pytest.raises(ValueError):
            RunConfig(scheme=LAURENT, mode="egreedy", steps=1, discount=Fraction(1))


class TestDiscountedReturn:
    def test_empty_list_gives_zero(self):
        assert discounted_return([], Fraction(1, 2)) == ZERO
        assert discounted_return([], Fraction(1, 2), zero=Fraction(0)) == 0

    def test_geometric_units(self):
        assert discounted_return([ONE, ONE, ONE], Fraction(1, 2)) == parse("7/4 eps^0")

    def test_mixed_orders(self):
        rewards = [monomial(1, -1), ONE]
        assert discounted_return(rewards, Fraction(1, 2)) == parse("1 eps^-1 + 1/2 eps^0")

    def test_rejects_bad_discount(self):
        with pytest.raises(ValueError):
            discounted_return([ONE], Fraction(1))

    @settings(deadline=None)
    @given(
        st.lists(series(), max_size=5),
        st.lists(series(), max_size=5),
        st.fractions(min_value=Fraction(1, 10), max_value=Fraction(9, 10), max_denominator=10),
    )
    def test_additive_over_concatenation(self, first, second, gamma):
        whole = discounted_return(list(first) + list(second), gamma)
        split = discounted_return(first, gamma) + scalar_mul(
            gamma ** len(first), discounted_return(second, gamma)
        )
        assert whole == split


class TestRuntimeText:
    def test_reward_text(self):
        assert reward_text(Fraction(3, 2)) == "3/2"
        assert reward_text(monomial(1, -1)) == "1 eps^-1"

    def test_exact_mean(self):
        assert exact_mean(Fraction(3), 2) == Fraction(3, 2)
        assert exact_mean(monomial(3, -1), 2) == monomial(Fraction(3, 2), -1)


class TestXorshift:
    def test_matches_reference_recipe(self):
        def reference_stream(seed, count):
            mask = (1 << 64) - 1
            s = seed
            out = []
            for _ in range(count):
                s ^= s >> 12
                s = (s ^ (s << 25)) & mask
                s ^= s >> 27
                out.append((s * 0x2545F4914F6CDD1D) & mask)
            return out

        rng = Xorshift64Star(1)
        assert [rng.next_u64() for _ in range(3)] == reference_stream(1, 3)

    def test_zero_seed_is_remapped(self):
        assert Xorshift64Star(0).next_u64() == Xorshift64Star(0x9E3779B97F4A7C15).next_u64()

    def test_bernoulli_extremes(self):
        rng = Xorshift64Star(7)
        assert not any(rng.bernoulli(0) for _ in range(50))
        assert all(rng.bernoulli(1) for _ in range(50))

    def test_seed_bounds(self):
        with pytest.raises(ValueError):
            Xorshift64Star(-1)
        with pytest.raises(ValueError):
            Xorshift64Star(1 << 64)

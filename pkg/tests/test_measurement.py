from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from narch.measurement import (
    FiniteSigStructure,
    MeasurementAssignment,
    SigThreshold,
    assignment_from_json,
    chain_prefix_structure,
    diminishing_returns_index,
    is_accurate_measurement,
    min_feasible_top,
    structure_from_json,
    structure_to_json,
    assignment_to_json,
)


def two_element_structure():
    return FiniteSigStructure(elements=("a", "b"), relation=frozenset({("a", "b")}))


class TestStructure:
    def test_rejects_undeclared_labels(self):
        with pytest.raises(ValueError):
            FiniteSigStructure(elements=("a",), relation=frozenset({("a", "b")}))

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValueError):
            FiniteSigStructure(elements=("a", "a"), relation=frozenset())

    def test_json_round_trip(self):
        structure = chain_prefix_structure(3)
        assert structure_from_json(structure_to_json(structure)) == structure


class TestAccuracy:
    def test_boundary_is_accurate(self):
        assignment = MeasurementAssignment(values={"a": 0, "b": 1}, threshold=SigThreshold(1))
        assert is_accurate_measurement(two_element_structure(), assignment)

    def test_insufficient_gap_is_inaccurate(self):
        assignment = MeasurementAssignment(
            values={"a": 0, "b": Fraction(1, 2)}, threshold=SigThreshold(1)
        )
        assert not is_accurate_measurement(two_element_structure(), assignment)

    def test_witness_prefix_with_linear_values(self):
        structure = chain_prefix_structure(3)
        assignment = MeasurementAssignment(
            values={"x0": 0, "x1": 1, "x2": 2, "y": 3}, threshold=SigThreshold(1)
        )
        assert is_accurate_measurement(structure, assignment)

    def test_self_pair_in_relation_is_never_accurate(self):
        structure = FiniteSigStructure(elements=("a",), relation=frozenset({("a", "a")}))
        assignment = MeasurementAssignment(values={"a": 0}, threshold=SigThreshold(1))
        assert not is_accurate_measurement(structure, assignment)

    def test_missing_value_raises(self):
        assignment = MeasurementAssignment(values={"a": 0}, threshold=SigThreshold(1))
        with pytest.raises(ValueError):
            is_accurate_measurement(two_element_structure(), assignment)

    def test_assignment_json_round_trip(self):
        assignment = MeasurementAssignment(
            values={"a": Fraction(1, 3), "b": 2}, threshold=SigThreshold(Fraction(1, 2))
        )
        recovered = assignment_from_json(assignment_to_json(assignment))
        assert recovered == assignment


class TestMinFeasibleTop:
    def test_single_constraint(self):
        assert min_feasible_top(0, 1) == 1

    def test_propagated_example(self):
        assert min_feasible_top(4, Fraction(1, 2)) == Fraction(5, 2)

    def test_linear_growth(self):
        assert min_feasible_top(9999, 1) == 10000

    def test_rejects_negative_length(self):
        with pytest.raises(ValueError):
            min_feasible_top(-1, 1)

    @given(st.integers(0, 300), st.fractions(min_value=Fraction(1, 7), max_value=3, max_denominator=7))
    def test_closed_form(self, n, r):
        assert min_feasible_top(n, r) == (n + 1) * r

    @given(
        st.integers(0, 12),
        st.fractions(min_value=Fraction(1, 4), max_value=2, max_denominator=4),
        st.data(),
    )
    def test_jittered_accurate_assignments_respect_bound(self, n, r, data):
        slacks = [
            r + data.draw(st.fractions(min_value=0, max_value=2, max_denominator=6))
            for _ in range(n + 2)
        ]
        base = data.draw(st.fractions(min_value=-5, max_value=5, max_denominator=6))
        values = {}
        level = base
        for i in range(n + 1):
            values[f"x{i}"] = level
            level += slacks[i]
        values["y"] = values[f"x{n}"] + slacks[n + 1]
        assignment = MeasurementAssignment(values=values, threshold=SigThreshold(r))
        assert is_accurate_measurement(chain_prefix_structure(n + 1), assignment)
        assert values["y"] - values["x0"] >= min_feasible_top(n, r)


class TestDiminishingReturns:
    def test_geometric_sequence(self):
        seq = [1 - Fraction(1, 2**i) for i in range(21)]
        assert diminishing_returns_index(seq, Fraction(1, 100)) == 6

    def test_linear_sequence_never_plateaus(self):
        assert diminishing_returns_index(list(range(11)), Fraction(1, 2)) is None

    def test_constant_sequence(self):
        assert diminishing_returns_index([3, 3, 3], Fraction(1, 7)) == 0

    def test_short_sequences(self):
        assert diminishing_returns_index([], 1) is None
        assert diminishing_returns_index([5], 1) is None

    def test_rejects_decreasing(self):
        with pytest.raises(ValueError):
            diminishing_returns_index([0, 1, Fraction(1, 2)], 1)
        with pytest.raises(ValueError):
            diminishing_returns_index([2, 2, 1], 1)

    def test_rejects_nonpositive_tolerance(self):
        with pytest.raises(ValueError):
            diminishing_returns_index([1, 2], 0)

    @given(
        st.lists(
            st.fractions(min_value=0, max_value=4, max_denominator=8),
            min_size=20,
            max_size=24,
        ),
        st.fractions(min_value=Fraction(1, 4), max_value=1, max_denominator=4),
    )
    def test_pigeonhole_on_bounded_sequences(self, values, tol):
        seq = sorted(values)
        # range <= 4 and tol >= 1/4, so any 17 consecutive gaps cannot all reach tol
        assert diminishing_returns_index(seq, tol) is not None

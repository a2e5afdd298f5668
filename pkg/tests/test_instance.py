import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multibid import (
    BidAssignment,
    ContractViolation,
    Instance,
    NotAStaircase,
    Staircase,
    canonicalize_staircase,
    capture,
    is_feasible,
    is_staircase,
    staircase_bids,
    staircase_bids_geometric,
)

from conftest import random_multiplicative, random_staircase


def test_capture_boundary_is_inclusive():
    inst = Instance(np.array([[2.0, 3.0]]), np.array([[1.0, 5.0]]), 10.0)
    cs = capture(inst, BidAssignment([2.0], [1.0, 1.0]))
    assert cs.cells == frozenset({(0, 0)})
    assert cs.spend == 2.0 and cs.value == 1.0


def test_feasibility_rejects_overspend():
    inst = Instance(np.ones((2, 2)), np.ones((2, 2)), 3.0)
    assert is_feasible(inst, BidAssignment([1, 1], [1, 0]))
    assert not is_feasible(inst, BidAssignment([1, 1], [1, 1]))


@pytest.mark.parametrize("prices, values, budget", [
    (np.array([[0.0]]), np.array([[1.0]]), 1.0),
    (np.array([[1.0]]), np.array([[-1.0]]), 1.0),
    (np.array([[1.0]]), np.array([[1.0]]), 0.0),
    (np.ones((2, 2)), np.ones((2, 3)), 1.0),
])
def test_instance_contract(prices, values, budget):
    with pytest.raises(ContractViolation):
        Instance(prices, values, budget)


def test_factorization_must_match():
    with pytest.raises(ContractViolation):
        Instance(np.ones((2, 2)), np.ones((2, 2)), 1.0, (np.ones(2), np.array([1.0, 2.0])))


def test_instance_is_read_only():
    inst = Instance(np.ones((2, 2)), np.ones((2, 2)), 1.0)
    with pytest.raises(ValueError):
        inst.prices[0, 0] = 5.0


def test_json_round_trip(rng):
    inst = random_multiplicative(rng, 3, 4)
    back = Instance.from_json(inst.to_json())
    assert np.array_equal(back.prices, inst.prices)
    assert np.array_equal(back.values, inst.values)
    assert back.budget == inst.budget
    assert np.array_equal(back.factorization[0], inst.factorization[0])
    assert list(json.loads(inst.to_json())) == sorted(json.loads(inst.to_json()))


def test_staircase_examples():
    assert is_staircase({(0, 0), (1, 0), (0, 1)}, 2, 2)
    assert not is_staircase({(0, 0), (1, 1)}, 2, 2)
    assert is_staircase(set(), 3, 3)


def test_canonicalize_three_rows():
    cells = {(0, 0), (1, 0), (2, 0), (1, 1), (2, 1), (2, 2)}
    sc = canonicalize_staircase(cells, 3, 3)
    assert sc.row_order == (2, 1, 0)
    assert sc.heights == (3, 2, 1)
    assert sc.cells() == frozenset(cells)
    with pytest.raises(NotAStaircase):
        canonicalize_staircase({(0, 0), (1, 1)}, 2, 2)


def test_column_order_ties_by_index():
    assert Staircase((0, 1), (1, 2, 1, 0)).column_order == (1, 0, 2, 3)


def test_geometric_scheme_four_by_four():
    sc = Staircase((3, 2, 1, 0), (4, 3, 2, 1))
    bids = staircase_bids_geometric(sc, delta=1e-3)
    inst = Instance(np.ones((4, 4)), np.ones((4, 4)), 100.0)
    assert capture(inst, bids).cells == sc.cells()
    eff = bids.effective()
    inside = np.zeros((4, 4), dtype=bool)
    for i, j in sc.cells():
        inside[i, j] = True
    assert eff[inside].min() >= 1e3 * (1 - 1e-12)
    assert eff[~inside].max() <= 1e-3 * (1 + 1e-12)


def test_geometric_scheme_rejects_bad_delta():
    with pytest.raises(ValueError):
        staircase_bids_geometric(Staircase((0,), (1,)), delta=1.0)


@given(st.integers(0, 2**32 - 1), st.integers(1, 7), st.integers(1, 7))
def test_staircase_round_trip(seed, m, n):
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, m, n)
    sc = random_staircase(rng, m, n)
    assert capture(inst, staircase_bids(inst, sc)).cells == sc.cells()


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6),
       st.floats(0.01, 100.0))
def test_capture_grows_with_scaling(seed, m, n, lam):
    # Multiplying every bid by lambda >= 1 can only add cells.
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, m, n)
    bids = BidAssignment(rng.uniform(0, 2, m), rng.uniform(0, 2, n))
    lo, hi = sorted([1.0, lam])
    a = capture(inst, BidAssignment(bids.rows * lo, bids.cols)).cells
    b = capture(inst, BidAssignment(bids.rows * hi, bids.cols)).cells
    assert a <= b


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 6))
def test_multiplicative_capture_is_staircase(seed, m, n):
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, m, n)
    bids = BidAssignment(rng.exponential(1, m), rng.exponential(1, n))
    assert is_staircase(capture(inst, bids).cells, m, n)


@given(st.integers(0, 2**32 - 1))
def test_pair_property(seed):
    # Capturing (i, j) and (i', j') under multiplicative prices forces one of the cross cells.
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, 4, 4)
    bids = BidAssignment(rng.exponential(1, 4), rng.exponential(1, 4))
    cells = capture(inst, bids).cells
    for i, j in cells:
        for k, l in cells:
            assert (i, l) in cells or (k, j) in cells

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multibid import (
    Instance,
    InstanceTooLarge,
    brute_force_multiplicative_optimum,
    capture,
    gen_diagonal_hard,
    individual_optimum,
    is_capturable,
    is_staircase,
)
from multibid.oracles import fractional_bound

from conftest import random_multiplicative


def _threshold_optimum(inst: Instance) -> float:
    """Best value over all (row rank, column threshold) shapes; independent of the LP oracle."""
    m, n = inst.shape
    best = 0.0
    for ranks in itertools.product(range(m), repeat=m):
        for thr in itertools.product(range(m + 1), repeat=n):
            mask = np.array(ranks)[:, None] < np.array(thr)[None, :]
            if inst.prices[mask].sum() <= inst.budget:
                best = max(best, float(inst.values[mask].sum()))
    return best


def test_diagonal_four_exhaustive():
    inst = gen_diagonal_hard(4)
    assert individual_optimum(inst).value == 4
    assert _threshold_optimum(inst) == 2
    res, bids = brute_force_multiplicative_optimum(inst)
    assert res.value == 2
    assert is_staircase(res.cells, 4, 4)
    assert capture(inst, bids).cells == res.cells


def test_smallest_staircase_with_k_diagonal_cells():
    # k diagonal cells force k + k(k-1)/2 cells in total
    n = 4
    smallest = {}
    for ranks in itertools.product(range(n), repeat=n):
        for thr in itertools.product(range(n + 1), repeat=n):
            mask = np.array(ranks)[:, None] < np.array(thr)[None, :]
            k = int(np.trace(mask))
            smallest[k] = min(smallest.get(k, n * n + 1), int(mask.sum()))
    for k in range(n + 1):
        assert smallest[k] == k + k * (k - 1) // 2


def test_two_by_two_cross():
    inst = Instance(np.array([[1.0, 4.0], [4.0, 1.0]]), np.array([[1.0, 0.0], [0.0, 1.0]]), 2.0)
    assert individual_optimum(inst).value == 2
    # The diagonal pair is capturable with bids (2, 0.5) x (0.5, 2); prices are not multiplicative.
    bids = is_capturable(inst, {(0, 0), (1, 1)})
    assert bids is not None
    assert capture(inst, bids).cells == frozenset({(0, 0), (1, 1)})


def test_capturable_iff_staircase_three_by_three():
    rng = np.random.default_rng(7)
    inst = random_multiplicative(rng, 3, 3)
    all_cells = [(i, j) for i in range(3) for j in range(3)]
    for bits in range(512):
        cells = {c for k, c in enumerate(all_cells) if bits >> k & 1}
        bids = is_capturable(inst, cells)
        assert (bids is not None) == is_staircase(cells, 3, 3)
        if bids is not None:
            assert capture(inst, bids).cells == frozenset(cells)


def test_greedy_prefix_stop():
    inst = Instance(np.array([[1.0, 3.0, 1.0]]), np.array([[5.0, 9.0, 1.0]]), 3.0)
    res = individual_optimum(inst)
    # ratios 5, 3, 1: take cell 0, cell 1 would overflow so the scan stops there.
    assert res.cells.cells == frozenset({(0, 0)})
    assert res.exhausted
    assert res.ratio_cutoff == pytest.approx(5.0)


def test_greedy_skips_zero_values():
    inst = Instance(np.ones((1, 2)), np.array([[0.0, 1.0]]), 5.0)
    assert individual_optimum(inst).cells.cells == frozenset({(0, 1)})


def test_greedy_nothing_fits():
    inst = Instance(np.full((1, 1), 2.0), np.ones((1, 1)), 1.0)
    res = individual_optimum(inst)
    assert res.value == 0 and res.ratio_cutoff is None


def test_brute_force_cap():
    with pytest.raises(InstanceTooLarge):
        brute_force_multiplicative_optimum(Instance(np.ones((5, 4)), np.ones((5, 4)), 1.0))


@given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3))
def test_brute_force_below_greedy_and_lp(seed, m, n):
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, m, n)
    bf, _ = brute_force_multiplicative_optimum(inst)
    assert bf.spend <= inst.budget
    assert bf.value <= fractional_bound(inst) + 1e-9
    assert is_staircase(bf.cells, m, n)


@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 8))
def test_greedy_within_budget(seed, m, n):
    rng = np.random.default_rng(seed)
    inst = random_multiplicative(rng, m, n)
    res = individual_optimum(inst)
    assert res.spend <= inst.budget
    assert res.value <= fractional_bound(inst) + 1e-9


@given(st.integers(0, 2**32 - 1), st.floats(0.0, 0.049))
def test_quarter_budget_keeps_a_fifth_under_small_costs(seed, eps):
    rng = np.random.default_rng(seed)
    prices = rng.uniform(0.5, 2.0, (20, 20))
    values = rng.uniform(0.0, 1.0, (20, 20))
    budget = max(prices.max() / max(eps, 1e-3), prices.max() / 0.049)
    inst = Instance(prices, values, budget)
    assert inst.max_cost_fraction() < 0.05
    assert individual_optimum(inst, budget / 4).value >= 0.2 * individual_optimum(inst).value

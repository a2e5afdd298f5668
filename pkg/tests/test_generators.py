import numpy as np
import pytest

from multibid import (
    brute_force_multiplicative_optimum,
    capture,
    gen_antidiagonal_hard,
    gen_diagonal_hard,
    gen_independent_set_instance,
    gen_multiplicative,
    individual_optimum,
)
from multibid.validate import monotone_row_order


def test_diagonal_shape():
    inst = gen_diagonal_hard(5)
    assert inst.budget == 5 and np.array_equal(inst.values, np.eye(5))
    assert individual_optimum(inst).value == 5


def test_antidiagonal_prices():
    inst = gen_antidiagonal_hard(8)
    assert inst.prices[0, 0] == pytest.approx(0.5)
    assert inst.prices[7, 7] == pytest.approx(2.0)
    assert inst.prices[0, 7] == 1.0
    assert inst.values[0, 0] == 0 and inst.values[7, 7] == 1


@pytest.mark.parametrize("c", [2, 3, 5])
def test_antidiagonal_price_identity(c):
    n = 27
    inst = gen_antidiagonal_hard(n, c)
    above, below = inst.prices[0, 0], inst.prices[-1, -1]
    # n^(c-1) cheap cells buy the same as one pricey one
    assert above ** (c - 1) * below == pytest.approx(1.0)
    assert below ** (2 * c - 1) == pytest.approx(n ** (c - 1))


def test_antidiagonal_opt_is_the_antidiagonal():
    inst = gen_antidiagonal_hard(4)
    res = individual_optimum(inst)
    assert res.value == 4
    assert res.cells.cells == frozenset((i, 3 - i) for i in range(4))


def test_independent_set_empty_graph():
    inst = gen_independent_set_instance([[], [], []])
    res, bids = brute_force_multiplicative_optimum(inst)
    assert res.value == 3
    assert capture(inst, bids).spend <= inst.budget


def test_independent_set_triangle():
    inst = gen_independent_set_instance({0: [1, 2], 1: [2]}, budget=2)
    res, _ = brute_force_multiplicative_optimum(inst)
    assert res.value == 1


def test_independent_set_path():
    inst = gen_independent_set_instance({0: [1], 1: [2]}, independent_set=[0, 2])
    res, _ = brute_force_multiplicative_optimum(inst)
    assert res.value == 2


def test_independent_set_single_vertex():
    res, _ = brute_force_multiplicative_optimum(gen_independent_set_instance([[]]))
    assert res.value == 1


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        gen_independent_set_instance({0: [0]})


@pytest.mark.parametrize("mode", ["monotone", "ratio-monotone", "random"])
def test_multiplicative_is_deterministic(mode):
    a = gen_multiplicative(10, 7, seed=9, value_mode=mode)
    b = gen_multiplicative(10, 7, seed=9, value_mode=mode)
    assert a.to_json() == b.to_json()
    assert a.factorization is not None
    assert a.budget == pytest.approx(0.25 * a.prices.sum())


def test_multiplicative_modes():
    mono = gen_multiplicative(20, 8, seed=1)
    assert monotone_row_order(mono.values) is not None
    ratio = gen_multiplicative(20, 8, seed=1, value_mode="ratio-monotone")
    rho = ratio.values / ratio.prices
    assert np.allclose(rho, rho[:, :1])
    noisy = gen_multiplicative(20, 8, seed=1, price_noise=0.2)
    assert noisy.factorization is None

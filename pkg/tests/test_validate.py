import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multibid import DegenerateFit, Instance, gen_multiplicative
from multibid.validate import fit_multiplicative, is_monotone_2d, monotone_row_order, monotonicity_score


def test_exact_fit():
    inst = gen_multiplicative(12, 9, seed=1)
    fit = fit_multiplicative(inst.prices)
    assert fit.r_squared >= 0.999
    assert np.allclose(fit.predict(), inst.prices, rtol=1e-9)
    assert fit.sweeps == 0


def test_one_row_fits_perfectly():
    fit = fit_multiplicative(np.array([[1.0, 5.0, 2.0]]))
    assert fit.r_squared == pytest.approx(1.0)


def test_noise_lowers_r_squared():
    inst = gen_multiplicative(40, 20, seed=2, price_noise=0.1)
    r2 = fit_multiplicative(inst.prices).r_squared
    assert 0.95 < r2 < 1.0


def test_masked_als_recovers_factors():
    inst = gen_multiplicative(15, 10, seed=3)
    rng = np.random.default_rng(0)
    mask = rng.uniform(size=inst.shape) > 0.3
    mask[np.arange(10), np.arange(10)] = True
    mask[10:, 0] = True
    fit = fit_multiplicative(inst.prices, mask)
    assert fit.sweeps >= 1
    assert fit.r_squared >= 0.999
    assert np.allclose(fit.predict(), inst.prices, rtol=1e-6)


def test_empty_row_is_degenerate():
    mask = np.ones((3, 3), dtype=bool)
    mask[1] = False
    with pytest.raises(DegenerateFit):
        fit_multiplicative(np.ones((3, 3)), mask)


@given(st.integers(0, 2**32 - 1), st.floats(0.1, 10.0))
def test_fit_ignores_gauge(seed, lam):
    rng = np.random.default_rng(seed)
    a, b = np.exp(rng.normal(size=5)), np.exp(rng.normal(size=4))
    f1 = fit_multiplicative(np.outer(a, b))
    f2 = fit_multiplicative(np.outer(a * lam, b / lam))
    assert np.allclose(f1.rows, f2.rows) and np.allclose(f1.cols, f2.cols)
    assert np.log(f1.rows).sum() == pytest.approx(0.0, abs=1e-9)


def test_monotonicity_scores():
    values = np.tile(np.arange(6.0)[:, None], (1, 4))
    inst = Instance(np.ones((6, 4)), values, 1.0)
    assert monotonicity_score(inst) == 1.0
    flipped = values.copy()
    flipped[:, 2:] = flipped[::-1, 2:]
    assert monotonicity_score(Instance(np.ones((6, 4)), flipped, 1.0)) == pytest.approx(0.5)


def test_monotone_row_order():
    values = np.array([[3.0, 4.0], [1.0, 1.0], [2.0, 2.0]])
    assert monotone_row_order(values) == [1, 2, 0]
    assert monotone_row_order(np.array([[1.0, 2.0], [2.0, 1.0]])) is None


def test_monotone_2d():
    inst = gen_multiplicative(8, 6, seed=4)
    a = np.add.outer(np.arange(4.0), np.arange(3.0))
    assert is_monotone_2d(a[::-1], a[::-1] * 2)
    assert not is_monotone_2d(a, a[::-1])
    assert monotone_row_order(inst.values) is not None

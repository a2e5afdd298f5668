import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from multibid import kernels

BACKENDS = [kernels.python_backend]
if kernels.compiled_backend is not None:
    BACKENDS.append(kernels.compiled_backend)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("mod", BACKENDS)
def test_bellman_ford_negative_cycle(mod):
    ok, _ = mod.bellman_ford(2, np.array([0, 1]), np.array([1, 0]), np.array([1.0, -2.0]))
    assert not ok


@pytest.mark.parametrize("mod", BACKENDS)
def test_bellman_ford_chain(mod):
    ok, dist = mod.bellman_ford(3, np.array([0, 1]), np.array([1, 2]), np.array([-1.0, -2.0]))
    assert ok
    assert np.allclose(dist, [0.0, -1.0, -3.0])


@given(st.integers(0, 2**32 - 1), st.integers(2, 12), st.integers(1, 40))
def test_bellman_ford_backends_agree(seed, n_nodes, n_edges):
    rng = np.random.default_rng(seed)
    src = rng.integers(0, n_nodes, n_edges)
    dst = rng.integers(0, n_nodes, n_edges)
    w = rng.normal(0.5, 1.0, n_edges)
    res = [mod.bellman_ford(n_nodes, src, dst, w) for mod in BACKENDS]
    assert all(r[0] == res[0][0] for r in res)
    if res[0][0]:
        for r in res[1:]:
            assert np.allclose(r[1], res[0][1])
        d = res[0][1]
        assert np.all(d[dst] <= d[src] + w + 1e-9)


@given(st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 5), st.integers(0, 30))
def test_mck_backends_agree(seed, groups, k, cap):
    rng = np.random.default_rng(seed)
    costs = rng.integers(-1, 10, (groups, k)).astype(np.int64)
    values = rng.uniform(0, 5, (groups, k))
    out = [mod.mck_dp(costs, values, cap) for mod in BACKENDS]
    for best, choice in out[1:]:
        assert np.allclose(best, out[0][0], equal_nan=False) or np.array_equal(best, out[0][0])
        assert np.array_equal(choice, out[0][1])
    # brute force: exactly one option per group
    best = -np.inf
    for combo in np.ndindex(*([k] * groups)):
        if any(costs[g, o] < 0 for g, o in enumerate(combo)):
            continue
        c = sum(costs[g, o] for g, o in enumerate(combo))
        if c <= cap:
            best = max(best, sum(values[g, o] for g, o in enumerate(combo)))
    assert out[0][0][cap] == pytest.approx(best)

import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fastdeblur import trig
from fastdeblur.errors import DimensionError, EmptyInputError
from fastdeblur.oracle import dense_trig
from fastdeblur.trig import Direction, TrigKind, cosine_apply, fourier_apply, get_plan, sine_apply

RNG = np.random.default_rng(20240611)
# 1030 and 1031 exceed the native limit and are not 11-smooth, so they take
# the chirp-z route; 1034 = 2*11*47 exercises the half-length packing
SIZES = [1, 2, 3, 7, 16, 33, 64, 255, 1030, 1031, 1034]
ROUND_TRIP_SIZES = [1, 2, 7, 64, 255, 4096, 1031, 65534]


def rel(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def test_fourier_first_column_is_constant():
    e1 = np.array([1.0, 0, 0, 0])
    np.testing.assert_allclose(fourier_apply(e1), np.full(4, 0.5), atol=1e-15)


@pytest.mark.parametrize("m", SIZES)
def test_ones_map_to_scaled_first_vector(m):
    expected = np.zeros(m)
    expected[0] = np.sqrt(m)
    np.testing.assert_allclose(fourier_apply(np.ones(m)), expected, atol=1e-12 * np.sqrt(m))
    np.testing.assert_allclose(cosine_apply(np.ones(m)), expected, atol=1e-12 * np.sqrt(m))


def test_order_one_transforms_are_identity():
    v = np.array([-2.5])
    assert cosine_apply(v)[0] == pytest.approx(-2.5, abs=1e-15)
    assert sine_apply(v)[0] == pytest.approx(-2.5, abs=1e-15)
    assert fourier_apply(v)[0] == pytest.approx(-2.5, abs=1e-15)


@pytest.mark.parametrize("m", SIZES)
@pytest.mark.parametrize("kind,direction", [
    ("fourier", "forward"), ("fourier", "inverse"),
    ("cosine", "forward"), ("cosine", "inverse"), ("sine", "forward"),
])
def test_matches_entrywise_matrix(m, kind, direction):
    v = RNG.standard_normal(m)
    if kind == "fourier":
        v = v + 1j * RNG.standard_normal(m)
    dense = dense_trig(kind, m, direction) @ v
    fast = get_plan(kind, m, direction)(v)
    assert rel(fast, dense) <= 1e-13


@pytest.mark.parametrize("m", ROUND_TRIP_SIZES)
def test_forward_inverse_round_trip(m):
    v = RNG.standard_normal(m)
    assert rel(fourier_apply(fourier_apply(v), "inverse"), v) <= 1e-12
    assert rel(cosine_apply(cosine_apply(v), "inverse"), v) <= 1e-12
    assert rel(sine_apply(sine_apply(v)), v) <= 1e-12


def test_cosine_matrix_is_orthogonal():
    c = cosine_apply(np.eye(16), axis=0)
    np.testing.assert_allclose(c @ c.T, np.eye(16), atol=1e-12)


def test_sine_involution_m31():
    v = RNG.standard_normal(31)
    np.testing.assert_allclose(sine_apply(sine_apply(v)), v, atol=1e-12)


def test_sine_of_its_first_column_is_e1():
    m = 9
    column = np.sqrt(2.0 / (m + 1)) * np.sin(np.arange(1, m + 1) * np.pi / (m + 1))
    expected = np.zeros(m)
    expected[0] = 1.0
    np.testing.assert_allclose(sine_apply(column), expected, atol=1e-14)


@pytest.mark.parametrize("m", [5, 1031])
def test_axis_argument_transforms_each_column(m):
    block = RNG.standard_normal((m, 3))
    for func in (fourier_apply, cosine_apply):
        out = func(block, axis=0)
        for j in range(3):
            np.testing.assert_allclose(out[:, j], func(block[:, j]), atol=1e-12)
    out = sine_apply(block, axis=0)
    np.testing.assert_allclose(out[:, 1], sine_apply(block[:, 1]), atol=1e-12)


def test_complex_input_to_real_transforms():
    v = RNG.standard_normal(12) + 1j * RNG.standard_normal(12)
    np.testing.assert_allclose(cosine_apply(v), dense_trig("cosine", 12) @ v, atol=1e-13)
    np.testing.assert_allclose(sine_apply(v), dense_trig("sine", 12) @ v, atol=1e-13)


def test_real_input_gives_real_output():
    assert cosine_apply(np.ones(1031)).dtype == np.float64
    assert sine_apply(np.ones(1030)).dtype == np.float64


@pytest.mark.parametrize("func", [fourier_apply, cosine_apply, sine_apply])
def test_empty_input_rejected(func):
    with pytest.raises(EmptyInputError):
        func(np.array([]))


def test_scalar_and_mismatched_lengths_rejected():
    with pytest.raises(DimensionError):
        cosine_apply(np.float64(3.0))
    with pytest.raises(DimensionError):
        get_plan("cosine", 8)(np.ones(9))
    with pytest.raises(EmptyInputError):
        trig.TrigPlan(TrigKind.SINE, 0)


def test_plans_are_cached_and_reusable():
    plan = get_plan(TrigKind.COSINE, 1030, Direction.INVERSE)
    assert plan is get_plan("cosine", 1030, "inverse")
    a, b = RNG.standard_normal((2, 1030))
    np.testing.assert_allclose(plan(a) + plan(b), plan(a + b), atol=1e-12)


def test_thread_setting_does_not_change_results(monkeypatch):
    v = RNG.standard_normal(2000)
    before = cosine_apply(v)
    monkeypatch.setenv("FASTDEBLUR_THREADS", "2")
    np.testing.assert_array_equal(cosine_apply(v), before)
    monkeypatch.setenv("FASTDEBLUR_THREADS", "not-a-number")
    np.testing.assert_array_equal(cosine_apply(v), before)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.integers(1, 80), elements=st.floats(-1e3, 1e3)))
def test_property_transforms_preserve_norm(v):
    norm = np.linalg.norm(v)
    for out in (fourier_apply(v), cosine_apply(v), cosine_apply(v, "inverse"), sine_apply(v)):
        assert np.linalg.norm(out) == pytest.approx(norm, rel=1e-12, abs=1e-9)


def _best_time(func, reps):
    best = np.inf
    for _ in range(reps):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def test_doubling_ratio_of_trig_transforms():
    sizes = [2 ** 16, 2 ** 17, 2 ** 18, 2 ** 19]
    for func in (lambda v: cosine_apply(v), lambda v: sine_apply(v), lambda v: fourier_apply(v)):
        times = []
        for m in sizes:
            v = RNG.standard_normal(m)
            func(v)
            times.append(_best_time(lambda: func(v), 7))
        ratios = [b / a for a, b in zip(times, times[1:])]
        assert np.median(ratios) <= 2.6, ratios

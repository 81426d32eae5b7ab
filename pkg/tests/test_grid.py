import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chargedbec.grid import (inner_product, make_grid, spectral_derivative,
                             spectral_second_derivative)


def test_make_grid_small():
    g = make_grid(8, 8.0)
    assert g.dx == 1.0
    assert g.wavenumbers[0] == 0.0
    j = np.array([0, 1, 2, 3, 4, -3, -2, -1])
    np.testing.assert_allclose(g.wavenumbers, 2 * np.pi / 8.0 * j, rtol=0, atol=1e-15)
    assert g.weights.sum() == pytest.approx(8.0)


def test_make_grid_spacing():
    assert make_grid(1024, 400.0).dx == 0.390625


@pytest.mark.parametrize("n, length", [(7, 8.0), (12, 8.0), (4, 8.0), (8, 0.0), (8, -1.0)])
def test_make_grid_rejects(n, length):
    with pytest.raises(ValueError):
        make_grid(n, length)


def test_nyquist_is_positive():
    g = make_grid(16, 10.0)
    assert g.wavenumbers[8] == pytest.approx(np.pi * 16 / 10.0)


def test_grid_is_immutable():
    g = make_grid(16, 10.0)
    with pytest.raises(ValueError):
        g.wavenumbers[1] = 3.0


def test_derivative_of_constant(grid):
    np.testing.assert_allclose(spectral_derivative(grid, np.full(grid.n_points, 3.0 + 1j)),
                               0.0, atol=1e-13)


def test_derivative_plane_wave(grid):
    k1 = 2 * np.pi / grid.box_length
    f = np.exp(1j * k1 * grid.x)
    assert np.max(np.abs(spectral_derivative(grid, f) - 1j * k1 * f)) < 1e-12


def test_derivative_sine_against_cosine(grid):
    k1 = 2 * np.pi / grid.box_length
    df = spectral_derivative(grid, np.sin(k1 * grid.x))
    assert np.isrealobj(df)
    assert np.max(np.abs(df - k1 * np.cos(k1 * grid.x))) < 1e-10


def test_derivative_length_mismatch(grid):
    with pytest.raises(ValueError):
        spectral_derivative(grid, np.zeros(grid.n_points - 1))
    with pytest.raises(ValueError):
        inner_product(grid, np.zeros(grid.n_points), np.zeros(3))


def test_inner_product_constant(grid):
    f = np.full(grid.n_points, 1 / np.sqrt(grid.box_length))
    assert inner_product(grid, f, f) == pytest.approx(1.0, abs=1e-14)


def test_inner_product_orthogonal_waves(grid):
    k = 2 * np.pi / grid.box_length
    f, g = np.exp(1j * k * grid.x), np.exp(3j * k * grid.x)
    assert abs(inner_product(grid, f, g)) < 1e-12


def test_inner_product_gaussian(grid):
    sigma = 1.5
    f = (2 * np.pi * sigma ** 2) ** -0.25 * np.exp(-grid.x ** 2 / (4 * sigma ** 2))
    # integral of the normalized density is exactly 1
    assert inner_product(grid, f, f).real == pytest.approx(1.0, abs=1e-10)


def _smooth_periodic(grid, coeffs):
    k = 2 * np.pi / grid.box_length
    return sum(c * np.exp(1j * (j - 3) * k * grid.x) for j, c in enumerate(coeffs))


coeff = st.complex_numbers(max_magnitude=5.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=7, max_size=7))
def test_parseval(coeffs):
    g = make_grid(64, 13.0)
    f = _smooth_periodic(g, coeffs)
    lhs = abs(inner_product(g, f, f))
    rhs = g.box_length / g.n_points ** 2 * np.sum(np.abs(np.fft.fft(f)) ** 2)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(st.lists(coeff, min_size=7, max_size=7))
def test_twice_first_equals_second(coeffs):
    g = make_grid(64, 13.0)
    f = _smooth_periodic(g, coeffs)
    twice = spectral_derivative(g, spectral_derivative(g, f))
    second = spectral_second_derivative(g, f)
    scale = max(np.max(np.abs(second)), 1e-300)
    assert np.max(np.abs(twice - second)) / scale < 1e-10 or np.max(np.abs(second)) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.1, 2.0))
def test_derivative_of_even_is_odd(width, amp):
    g = make_grid(128, 40.0)
    # grid is symmetric about 0 up to the first point; compare x_j with x_{-j}
    f = amp * np.exp(-g.x ** 2 / (2 * width ** 2))
    df = spectral_derivative(g, f)
    mirrored = np.roll(df[::-1], 1)
    assert np.max(np.abs(df + mirrored)) < 1e-10

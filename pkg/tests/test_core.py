import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hybridbf.core import (ArrayLayout, FrequencyGrid, UserSpec, build_channel_tensor,
                           spatial_frequency, steering_vector, tile_channel)

from oracles import channel_loop

angles = st.floats(-89.0, 89.0)
F_C = 140e9


# values frozen from a 30-digit mpmath evaluation of (f/f_c)*pi*sin(theta)
@pytest.mark.parametrize("theta, f, expected", [
    (0.0, 1.3e11, 0.0),
    (15.0, F_C, 0.813104010703204581562),
    (55.0, 1.1 * F_C, 2.830786248962493307469),
])
def test_spatial_frequency_values(theta, f, expected):
    assert spatial_frequency(theta, f, F_C) == pytest.approx(expected, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("theta, f, f_c", [(90.0, F_C, F_C), (-95.0, F_C, F_C), (10.0, 0.0, F_C),
                                           (10.0, F_C, -1.0)])
def test_spatial_frequency_domain(theta, f, f_c):
    with pytest.raises(ValueError):
        spatial_frequency(theta, f, f_c)


@given(angles, st.floats(0.05, 1.95))
def test_spatial_frequency_linear_in_f(theta, ratio):
    assert spatial_frequency(theta, ratio * F_C, F_C) == pytest.approx(
        ratio * spatial_frequency(theta, F_C, F_C), rel=1e-12, abs=1e-15)


def test_steering_vector_examples():
    np.testing.assert_allclose(steering_vector(4, 0.0), np.ones(4))
    np.testing.assert_allclose(steering_vector(2, math.pi), [1, -1], atol=1e-15)
    np.testing.assert_allclose(steering_vector(3, math.pi / 2), [1, 1j, -1], atol=1e-15)


def test_steering_vector_rejects_empty():
    with pytest.raises(ValueError):
        steering_vector(0, 0.1)


@given(st.integers(1, 300), st.floats(-10, 10))
def test_steering_norm(n, omega):
    a = steering_vector(n, omega)
    np.testing.assert_allclose(np.abs(a), 1.0, rtol=1e-12)
    assert np.vdot(a, a).real == pytest.approx(n, rel=1e-12)


def test_layout_and_grid_invariants():
    layout = ArrayLayout(32, 8)
    assert layout.n_total == 256
    assert ArrayLayout.from_total(256, 16) == ArrayLayout(16, 16)
    with pytest.raises(ValueError):
        ArrayLayout(0, 8)
    with pytest.raises(ValueError):
        ArrayLayout.from_total(256, 3)
    g = FrequencyGrid(100.0, 20.0, 4)
    np.testing.assert_allclose(g.frequencies, [92.5, 97.5, 102.5, 107.5])
    assert g.beta == pytest.approx(0.2)
    assert np.all(np.diff(FrequencyGrid(F_C, 28e9).frequencies) > 0)
    with pytest.raises(ValueError):
        FrequencyGrid(1.0, 2.0, 4)


def test_user_gains():
    assert UserSpec(10).tile_gains(3).tolist() == [1, 1, 1]
    assert UserSpec(10, 2j).tile_gains(2).tolist() == [2j, 2j]
    with pytest.raises(ValueError):
        UserSpec(10, [1, 2]).tile_gains(3)
    with pytest.raises(ValueError):
        UserSpec(90)


def test_tile_channel_examples():
    layout = ArrayLayout(4, 2)
    np.testing.assert_allclose(tile_channel(layout, UserSpec(0.0), 1, F_C, F_C), np.ones(4))
    assert np.all(tile_channel(layout, UserSpec(20.0, 0.0), 2, F_C, F_C) == 0)
    # Omega = pi/2 at f_c needs sin(theta) = 1/2
    h = tile_channel(ArrayLayout(2, 2), UserSpec(30.0), 2, F_C, F_C)
    np.testing.assert_allclose(h, [-1, -1j], atol=1e-14)
    with pytest.raises(IndexError):
        tile_channel(layout, UserSpec(0.0), 3, F_C, F_C)


@given(angles, st.floats(-0.1, 0.1), st.complex_numbers(max_magnitude=5, allow_nan=False,
                                                         allow_infinity=False))
def test_tile_recursion_and_modulus(theta, df, alpha):
    layout = ArrayLayout(8, 4)
    f = F_C * (1 + df)
    user = UserSpec(theta, alpha)
    omega = spatial_frequency(theta, f, F_C)
    for m in range(1, layout.n_tiles):
        h_m = tile_channel(layout, user, m, f, F_C)
        h_next = tile_channel(layout, user, m + 1, f, F_C)
        np.testing.assert_allclose(h_next, np.exp(1j * 8 * omega) * h_m, atol=1e-9)
        np.testing.assert_allclose(np.abs(h_m), abs(alpha), atol=1e-12)


@given(angles, st.floats(-0.1, 0.1))
def test_tiles_concatenate_to_full_array(theta, df):
    layout = ArrayLayout(16, 4)
    f = F_C * (1 + df)
    tiles = [tile_channel(layout, UserSpec(theta), m, f, F_C) for m in range(1, 5)]
    full = steering_vector(64, spatial_frequency(theta, f, F_C))
    np.testing.assert_allclose(np.concatenate(tiles), full, atol=1e-9)


def test_channel_tensor_shape_and_values():
    layout = ArrayLayout(8, 4)
    grid = FrequencyGrid(F_C, 28e9, 16)
    users = [UserSpec(15.0), UserSpec(-40.0, [1, 1j, -1, 0.5])]
    t = build_channel_tensor(layout, users, grid)
    assert t.data.shape == (16, 4, 2, 8)
    for fi, f in enumerate(grid.frequencies):
        for m in range(4):
            for k, u in enumerate(users):
                np.testing.assert_allclose(t.data[fi, m, k], tile_channel(layout, u, m + 1, f, F_C),
                                           atol=1e-10)
    # element-loop oracle at one subcarrier
    f = grid.frequencies[3]
    ref = channel_loop(8, 4, 15.0, f, F_C)
    np.testing.assert_allclose(t.data[3, :, 0, :], np.array(ref), atol=1e-10)


def test_channel_tensor_broadside_all_ones():
    t = build_channel_tensor(ArrayLayout(4, 2), [UserSpec(0.0)], FrequencyGrid(F_C, 28e9, 8))
    np.testing.assert_array_equal(t.data, np.ones_like(t.data))


def test_single_subcarrier_tensor():
    layout = ArrayLayout(32, 8)
    grid = FrequencyGrid(F_C, 0.0, 1)
    t = build_channel_tensor(layout, [UserSpec(15.0)], grid)
    for m in range(8):
        np.testing.assert_allclose(t.data[0, m, 0], tile_channel(layout, UserSpec(15.0), m + 1, F_C, F_C),
                                   atol=1e-10)


def test_channel_tensor_needs_users():
    with pytest.raises(ValueError):
        build_channel_tensor(ArrayLayout(4, 2), [], FrequencyGrid(F_C, 1e9, 2))

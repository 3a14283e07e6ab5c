"""Bicubic resampling, the D4 wavelet step, and canonicalization."""

import numpy as np
import pytest

from comograd.errors import GridTooSmall, OddDimension
from comograd.rescale import (
    CANONICAL_SIZE,
    MIN_GRID_SIZE,
    WaveletBands,
    bicubic_resize,
    canonicalize,
    dwt2,
    idwt2,
    nearest_pow2_resize,
)

from reference import naive_bicubic, naive_dwt2, naive_idwt2


# --- bicubic -------------------------------------------------------------

def test_bicubic_identity_is_exact(rng):
    img = rng.random((9, 9))
    np.testing.assert_array_equal(bicubic_resize(img, 9), img)


def test_bicubic_preserves_constants():
    img = np.full((10, 10), 7.25)
    for size in (4, 7, 16, 23):
        np.testing.assert_allclose(bicubic_resize(img, size), 7.25, rtol=1e-12)


def test_bicubic_matches_naive_loops(rng):
    for n_in, n_out in ((6, 11), (10, 4), (8, 8), (5, 16), (12, 7)):
        img = rng.random((n_in, n_in)) * 30.0
        np.testing.assert_allclose(
            bicubic_resize(img, n_out), naive_bicubic(img, n_out), rtol=0, atol=1e-9
        )


def test_bicubic_rejects_non_square():
    with pytest.raises(ValueError):
        bicubic_resize(np.zeros((3, 4)), 8)


# --- nearest power-of-2 --------------------------------------------------

@pytest.mark.parametrize(
    "n,expected",
    [
        (80, 64),    # log-scale midpoint of (64, 128) is ~90.5
        (100, 128),
        (16, 16),
        (64, 64),
        (90, 64),
        (91, 128),   # first size whose log2 rounds up
        (300, 256),
        (17, 16),
        (23, 32),
    ],
)
def test_nearest_pow2_sizes(rng, n, expected):
    out = nearest_pow2_resize(rng.random((n, n)))
    assert out.shape == (expected, expected)


def test_grids_below_minimum_rejected(rng):
    assert MIN_GRID_SIZE == 16
    with pytest.raises(GridTooSmall):
        nearest_pow2_resize(rng.random((15, 15)))
    with pytest.raises(GridTooSmall):
        canonicalize(rng.random((15, 15)))


# --- wavelet -------------------------------------------------------------

def test_dwt2_band_shapes(rng):
    bands = dwt2(rng.random((12, 12)))
    assert all(band.shape == (6, 6) for band in bands)


def test_dwt2_matches_naive_convolution(rng):
    img = rng.random((8, 8)) * 10.0
    bands = dwt2(img)
    for got, want in zip(bands, naive_dwt2(img)):
        np.testing.assert_allclose(got, want, rtol=0, atol=1e-10)


def test_idwt2_matches_naive_convolution(rng):
    bands = WaveletBands(*(rng.random((5, 5)) for _ in range(4)))
    np.testing.assert_allclose(
        idwt2(bands), naive_idwt2(*bands), rtol=0, atol=1e-10
    )


def test_round_trip_and_energy(rng):
    for n in (2, 4, 6, 16, 50, 128):
        img = rng.random((n, n)) * 40.0
        bands = dwt2(img)
        back = idwt2(bands)
        assert np.max(np.abs(back - img)) < 1e-10
        energy_in = np.sum(img * img)
        energy_out = sum(np.sum(b * b) for b in bands)
        assert abs(energy_out - energy_in) / energy_in < 1e-8


def test_constant_image_concentrates_in_approx():
    bands = dwt2(np.full((16, 16), 3.0))
    np.testing.assert_allclose(bands.approx, 6.0, rtol=1e-12)
    for band in bands[1:]:
        np.testing.assert_allclose(band, 0.0, atol=1e-12)


def test_odd_or_tiny_dimension_rejected(rng):
    with pytest.raises(OddDimension):
        dwt2(rng.random((7, 7)))
    with pytest.raises(OddDimension):
        dwt2(np.ones((1, 1)))


def test_idwt2_requires_matching_band_shapes(rng):
    bands = WaveletBands(
        rng.random((4, 4)), rng.random((4, 4)), rng.random((4, 4)), rng.random((2, 2))
    )
    with pytest.raises(ValueError):
        idwt2(bands)


# --- canonicalize ---------------------------------------------------------

def test_canonical_size_for_many_inputs(rng):
    for n in (16, 20, 40, 64, 80, 100, 128, 129, 200, 256, 300):
        out = canonicalize(rng.random((n, n)))
        assert out.shape == (CANONICAL_SIZE, CANONICAL_SIZE)


def test_canonicalize_at_target_is_identity(rng):
    img = rng.random((128, 128))
    np.testing.assert_array_equal(canonicalize(img), img)


def test_canonicalize_halves_through_approx_band(rng):
    img = rng.random((256, 256))
    np.testing.assert_array_equal(canonicalize(img), dwt2(img).approx)


def test_canonicalize_doubling_inverts_scaled_bands(rng):
    img = rng.random((64, 64))
    bands = dwt2(img)
    doubled = WaveletBands(*(bicubic_resize(b, 64) for b in bands))
    np.testing.assert_array_equal(canonicalize(img), idwt2(doubled))


def test_canonicalize_target_must_be_power_of_two(rng):
    with pytest.raises(ValueError):
        canonicalize(rng.random((32, 32)), size=100)

"""Rescaling of distance-matrix images to the canonical 128x128 grid.

The raw matrix is first resampled to the nearest power-of-2 size with
separable cubic-convolution (bicubic, a = -0.5) interpolation. From there,
single-level orthonormal Daubechies-2 (D4) wavelet steps with periodic
boundary extension move between power-of-2 sizes: halving keeps the
approximation band, doubling bicubic-scales all four bands to twice their
size and inverts the transform.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import GridTooSmall, OddDimension

CANONICAL_SIZE = 128
# below 16, one down-step to 8 plus four up-steps is all interpolation artifact
MIN_GRID_SIZE = 16

_S3 = math.sqrt(3.0)
# orthonormal D4 analysis pair; lowpass taps sum to sqrt(2)
DB2_LO = np.array([1.0 + _S3, 3.0 + _S3, 3.0 - _S3, 1.0 - _S3]) / (4.0 * math.sqrt(2.0))
DB2_HI = np.array([DB2_LO[3], -DB2_LO[2], DB2_LO[1], -DB2_LO[0]])


class WaveletBands(NamedTuple):
    """The four half-size subbands of one 2D wavelet level."""

    approx: np.ndarray
    horizontal: np.ndarray
    vertical: np.ndarray
    diagonal: np.ndarray


def _as_square(image) -> np.ndarray:
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {img.shape}")
    return img


def _cubic_kernel(x: np.ndarray, a: float = -0.5) -> np.ndarray:
    """Cubic convolution kernel (Keys), zero outside |x| < 2."""
    x = np.abs(x)
    x2 = x * x
    x3 = x2 * x
    near = (a + 2.0) * x3 - (a + 3.0) * x2 + 1.0
    far = a * x3 - 5.0 * a * x2 + 8.0 * a * x - 4.0 * a
    return np.where(x <= 1.0, near, np.where(x < 2.0, far, 0.0))


def _resample_weights(n_in: int, n_out: int) -> np.ndarray:
    """(n_out, n_in) weight matrix for 1D cubic-convolution resampling.

    Output pixel centers map to input coordinates (i + 0.5) * n_in/n_out - 0.5;
    the four surrounding taps are clamped into range (edge replication).
    """
    if n_in == n_out:
        return np.eye(n_in)
    centers = (np.arange(n_out) + 0.5) * (n_in / n_out) - 0.5
    base = np.floor(centers).astype(int)
    frac = centers - base
    weights = np.zeros((n_out, n_in))
    rows = np.arange(n_out)
    for tap in (-1, 0, 1, 2):
        cols = np.clip(base + tap, 0, n_in - 1)
        np.add.at(weights, (rows, cols), _cubic_kernel(frac - tap))
    return weights


def bicubic_resize(image, size: int) -> np.ndarray:
    """Resample a square image to size x size by separable cubic convolution."""
    img = _as_square(image)
    w = _resample_weights(img.shape[0], size)
    return w @ img @ w.T


def nearest_pow2_resize(grid) -> np.ndarray:
    """Bicubic-resize to the power of 2 nearest in log scale (ties round up)."""
    g = _as_square(grid)
    n = g.shape[0]
    if n < MIN_GRID_SIZE:
        raise GridTooSmall(f"grid size {n} is below the minimum of {MIN_GRID_SIZE}")
    power = math.floor(math.log2(n) + 0.5)
    return bicubic_resize(g, 2 ** power)


def _analyze_axis(x: np.ndarray, axis: int) -> tuple[np.ndarray, np.ndarray]:
    # a[i] = sum_k f[k] * x[(2i + k) mod n], via circular shifts + dyadic pick
    lo = sum(DB2_LO[k] * np.roll(x, -k, axis=axis) for k in range(4))
    hi = sum(DB2_HI[k] * np.roll(x, -k, axis=axis) for k in range(4))
    keep = [slice(None)] * x.ndim
    keep[axis] = slice(0, None, 2)
    return lo[tuple(keep)], hi[tuple(keep)]


def _synthesize_axis(lo_c: np.ndarray, hi_c: np.ndarray, axis: int) -> np.ndarray:
    # adjoint of _analyze_axis: upsample by 2, circular-convolve with each filter
    shape = list(lo_c.shape)
    shape[axis] = shape[axis] * 2
    up_lo = np.zeros(shape)
    up_hi = np.zeros(shape)
    spread = [slice(None)] * lo_c.ndim
    spread[axis] = slice(0, None, 2)
    up_lo[tuple(spread)] = lo_c
    up_hi[tuple(spread)] = hi_c
    out = sum(DB2_LO[k] * np.roll(up_lo, k, axis=axis) for k in range(4))
    out += sum(DB2_HI[k] * np.roll(up_hi, k, axis=axis) for k in range(4))
    return out


def dwt2(image) -> WaveletBands:
    """Single-level separable 2D D4 transform with periodic extension.

    Returns four bands of half the input dimension; energy is preserved and
    idwt2 reconstructs the input exactly (up to float rounding).
    """
    img = _as_square(image)
    n = img.shape[0]
    if n < 2 or n % 2:
        raise OddDimension(f"wavelet analysis needs an even dimension >= 2, got {n}")
    lo_x, hi_x = _analyze_axis(img, axis=1)
    approx, horizontal = _analyze_axis(lo_x, axis=0)
    vertical, diagonal = _analyze_axis(hi_x, axis=0)
    return WaveletBands(approx, horizontal, vertical, diagonal)


def idwt2(bands: WaveletBands) -> np.ndarray:
    """Invert dwt2; output dimension is twice the band dimension."""
    arrs = [_as_square(b) for b in bands]
    if len({a.shape for a in arrs}) != 1:
        raise ValueError("all four bands must share one shape")
    approx, horizontal, vertical, diagonal = arrs
    lo_x = _synthesize_axis(approx, horizontal, axis=0)
    hi_x = _synthesize_axis(vertical, diagonal, axis=0)
    return _synthesize_axis(lo_x, hi_x, axis=1)


def canonicalize(grid, size: int = CANONICAL_SIZE) -> np.ndarray:
    """Bring a distance grid to exactly size x size (default 128).

    First resize to the nearest power of 2; then repeatedly halve by keeping
    the approximation band, or double by bicubic-scaling all four bands to
    twice their size and inverting, until the target is reached.
    """
    if size < 2 or size & (size - 1):
        raise ValueError(f"target size must be a power of 2, got {size}")
    g = nearest_pow2_resize(grid)
    while g.shape[0] > size:
        g = dwt2(g).approx
    while g.shape[0] < size:
        bands = dwt2(g)
        doubled = WaveletBands(*(bicubic_resize(b, 2 * b.shape[0]) for b in bands))
        g = idwt2(doubled)
    return g

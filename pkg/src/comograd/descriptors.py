"""Oriented-gradient descriptors of canonical distance-matrix images.

Two fixed-length feature vectors are extracted from the gradient field of a
128x128 distance image:

* the co-occurrence matrix of quantized gradient orientations over adjacent
  pixel pairs (16 bins of 22.5 degrees -> 16x16 matrix -> 256 values,
  normalized by the pair count), and
* a pyramid of magnitude-weighted orientation histograms (9 bins of
  40 degrees) over a depth-3 quad tree of the image (85 nodes -> 765
  values, sum-normalized).

Their concatenation (co-occurrence first) is the 1021-long combined vector.
Pixels whose gradient magnitude is ~0 carry no orientation and are excluded
from both statistics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import KindMismatch, ParamsMismatch

# pixels at or below this magnitude have no defined orientation
ACTIVE_EPS = 1e-12

# displacement sets for the co-occurrence count, keyed by wire code;
# entries are (row, col) offsets
DISPLACEMENT_SETS: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((0, 1), (1, 0)),  # right, down
}


class DescriptorKind(enum.Enum):
    COMOGRAD = 1
    PHOG = 2
    COMBINED = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "DescriptorKind":
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown descriptor kind {label!r}") from None


@dataclass(frozen=True)
class DescriptorParams:
    """Extraction parameters; stored in the feature db header and compared
    at query time so descriptors from different configurations never mix."""

    depth: int = 3          # quad-tree depth (level count minus one)
    cooc_bins: int = 16     # orientation bins for the co-occurrence matrix
    hist_bins: int = 9      # orientation bins for the pyramid histograms
    displacements: int = 1  # code into DISPLACEMENT_SETS

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.cooc_bins < 1 or self.hist_bins < 1:
            raise ValueError("bin counts must be >= 1")
        if self.displacements not in DISPLACEMENT_SETS:
            raise ValueError(f"unknown displacement-set code {self.displacements}")

    @property
    def node_count(self) -> int:
        # 1 + 4 + ... + 4^depth
        return (4 ** (self.depth + 1) - 1) // 3

    def vector_length(self, kind: DescriptorKind) -> int:
        cooc = self.cooc_bins * self.cooc_bins
        pyramid = self.node_count * self.hist_bins
        if kind is DescriptorKind.COMOGRAD:
            return cooc
        if kind is DescriptorKind.PHOG:
            return pyramid
        return cooc + pyramid


DEFAULT_PARAMS = DescriptorParams()


@dataclass(frozen=True)
class Descriptor:
    """A fixed-length feature vector tagged with its kind and parameters."""

    kind: DescriptorKind
    values: np.ndarray
    params: DescriptorParams = DEFAULT_PARAMS

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        expected = self.params.vector_length(self.kind)
        if vals.ndim != 1 or vals.shape[0] != expected:
            raise ValueError(
                f"{self.kind.label} descriptor must have length {expected}, got shape {vals.shape}"
            )
        if not np.isfinite(vals).all():
            raise ValueError("descriptor values must be finite")
        if (vals < 0).any():
            raise ValueError("descriptor values must be non-negative")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class GradientField:
    """Per-pixel gradient statistics of a square image.

    angle is the full signed orientation in [0, 360) degrees (0 where
    inactive); cooc_bin and hist_bin are its floor-quantized bin indices;
    active marks pixels whose magnitude exceeds ACTIVE_EPS.
    """

    gx: np.ndarray
    gy: np.ndarray
    magnitude: np.ndarray
    angle: np.ndarray
    cooc_bin: np.ndarray
    hist_bin: np.ndarray
    active: np.ndarray
    params: DescriptorParams = DEFAULT_PARAMS

    @property
    def size(self) -> int:
        return self.magnitude.shape[0]


def gradient_field(image, params: DescriptorParams = DEFAULT_PARAMS) -> GradientField:
    """Central-difference gradient field with edge replication.

    Boundary pixels reuse their own value for the missing neighbour, so the
    one-sided difference there is halved. x runs along columns, y along
    rows; the orientation angle is atan2(gy, gx) mapped into [0, 360).
    """
    img = np.asarray(image, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"expected a square image, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ValueError("image must be finite")
    padded = np.pad(img, 1, mode="edge")
    gx = (padded[1:-1, 2:] - padded[1:-1, :-2]) / 2.0
    gy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / 2.0
    magnitude = np.sqrt(gx * gx + gy * gy)
    active = magnitude > ACTIVE_EPS
    angle = np.where(active, np.degrees(np.arctan2(gy, gx)) % 360.0, 0.0)
    # mod bins guards the fp case where angle % 360 rounds up to 360.0 exactly
    cooc_bin = np.floor(angle / (360.0 / params.cooc_bins)).astype(np.int64) % params.cooc_bins
    hist_bin = np.floor(angle / (360.0 / params.hist_bins)).astype(np.int64) % params.hist_bins
    return GradientField(gx, gy, magnitude, angle, cooc_bin, hist_bin, active, params)


def comograd(field: GradientField) -> Descriptor:
    """Co-occurrence matrix of quantized orientations, flattened row-major.

    For every active pixel and every displacement in the configured set, the
    (bin(p), bin(p+d)) cell is incremented when the displaced pixel is in
    bounds and active; the matrix is divided by the total pair count, so the
    result is a probability distribution (all-zero if nothing is active).
    """
    nb = field.params.cooc_bins
    counts = np.zeros(nb * nb, dtype=np.int64)
    n = field.size
    for dr, dc in DISPLACEMENT_SETS[field.params.displacements]:
        both = field.active[: n - dr, : n - dc] & field.active[dr:, dc:]
        src = field.cooc_bin[: n - dr, : n - dc][both]
        dst = field.cooc_bin[dr:, dc:][both]
        counts += np.bincount(src * nb + dst, minlength=nb * nb)
    total = counts.sum()
    values = counts / total if total > 0 else np.zeros(nb * nb)
    return Descriptor(DescriptorKind.COMOGRAD, values, field.params)


def _quad_levels(depth: int) -> list[list[tuple[int, int]]]:
    """Block coordinates per level, breadth-first; children of every node in
    top-left, top-right, bottom-left, bottom-right order."""
    levels = [[(0, 0)]]
    for _ in range(depth):
        nxt = []
        for r, c in levels[-1]:
            nxt += [(2 * r, 2 * c), (2 * r, 2 * c + 1), (2 * r + 1, 2 * c), (2 * r + 1, 2 * c + 1)]
        levels.append(nxt)
    return levels


def phog_histograms(field: GradientField) -> np.ndarray:
    """Unnormalized per-node orientation histograms, (node_count, hist_bins).

    Each active pixel adds its gradient magnitude to its orientation bin in
    every quad-tree node whose region contains it; nodes appear in
    breadth-first order.
    """
    n = field.size
    depth = field.params.depth
    if n % (1 << depth):
        raise ValueError(f"image size {n} is not divisible by 2^{depth}")
    rows = []
    for level, nodes in enumerate(_quad_levels(depth)):
        block = n >> level
        for r, c in nodes:
            region = (slice(r * block, (r + 1) * block), slice(c * block, (c + 1) * block))
            act = field.active[region]
            rows.append(
                np.bincount(
                    field.hist_bin[region][act],
                    weights=field.magnitude[region][act],
                    minlength=field.params.hist_bins,
                )
            )
    return np.array(rows)


def phog(field: GradientField) -> Descriptor:
    """Concatenated quad-tree histograms, divided by their sum when positive."""
    flat = phog_histograms(field).ravel()
    total = flat.sum()
    if total > 0:
        flat = flat / total
    return Descriptor(DescriptorKind.PHOG, flat, field.params)


def combined(cooc: Descriptor, pyramid: Descriptor) -> Descriptor:
    """Concatenation of a co-occurrence and a pyramid descriptor, in that order."""
    if cooc.kind is not DescriptorKind.COMOGRAD or pyramid.kind is not DescriptorKind.PHOG:
        raise KindMismatch(
            f"expected (comograd, phog), got ({cooc.kind.label}, {pyramid.kind.label})"
        )
    if cooc.params != pyramid.params:
        raise ParamsMismatch("descriptors were extracted with different params")
    return Descriptor(
        DescriptorKind.COMBINED, np.concatenate([cooc.values, pyramid.values]), cooc.params
    )


def extract_descriptor(
    image, kind: DescriptorKind, params: DescriptorParams = DEFAULT_PARAMS
) -> Descriptor:
    """Descriptor of the requested kind from one canonical image."""
    fld = gradient_field(image, params)
    if kind is DescriptorKind.COMOGRAD:
        return comograd(fld)
    if kind is DescriptorKind.PHOG:
        return phog(fld)
    return combined(comograd(fld), phog(fld))

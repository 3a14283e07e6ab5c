"""CA-CA distance matrices: the 2D image form of a chain's tertiary structure."""

from __future__ import annotations

import numpy as np

from .structure import CaTrace


def compute_distance_matrix(trace: CaTrace) -> np.ndarray:
    """Pairwise Euclidean distances between all alpha-carbons, as (n, n) float64.

    Exactly symmetric with a zero diagonal, and invariant under rigid motion
    and reflection of the coordinates (a mirror image is indistinguishable).
    Raw angstrom distances are used directly as pixel intensities; nothing
    is clamped or quantized.
    """
    coords = trace.residues
    diff = coords[:, None, :] - coords[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))

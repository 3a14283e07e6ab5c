"""Shared helpers: coordinate-file writers and synthetic chain generators.

Synthetic chains are random walks with the 3.8 angstrom Cα-Cα step of real
polypeptides; "families" are a base walk plus small per-member jitter, so
intra-family distance matrices stay close while unrelated folds differ.
"""

from __future__ import annotations

import numpy as np
import pytest


def atom_line(
    serial: int,
    x: float,
    y: float,
    z: float,
    chain: str = "A",
    resseq: int | None = None,
    name: str = " CA ",
    altloc: str = " ",
    resname: str = "GLY",
    record: str = "ATOM  ",
) -> str:
    """One fixed-column coordinate record (atom name cols 13-16, altLoc 17,
    chain 22, x/y/z 31-54)."""
    resseq = serial if resseq is None else resseq
    return (
        f"{record:<6.6s}{serial:5d} {name:<4.4s}{altloc:1.1s}{resname:>3.3s} "
        f"{chain:1.1s}{resseq:4d}    {x:8.3f}{y:8.3f}{z:8.3f}  1.00  0.00"
    )


def pdb_text(coords, chain: str = "A", start: int = 1) -> str:
    lines = [
        atom_line(start + i, float(x), float(y), float(z), chain=chain)
        for i, (x, y, z) in enumerate(np.asarray(coords))
    ]
    lines += ["TER", "END"]
    return "\n".join(lines) + "\n"


def random_walk(rng: np.random.Generator, n: int, step: float = 3.8) -> np.ndarray:
    """n-residue chain trace: unit-step directions scaled to step length."""
    directions = rng.normal(size=(n, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return np.cumsum(step * directions, axis=0)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform-ish proper rotation via QR of a Gaussian matrix."""
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240814)


def write_corpus(directory, traces) -> list:
    """Write one coordinate file per (id, coords) pair; returns the paths."""
    paths = []
    for trace_id, coords in traces:
        path = directory / f"{trace_id}.ent"
        path.write_text(pdb_text(coords))
        paths.append(path)
    return paths


def family_corpus(rng: np.random.Generator):
    """~50 synthetic domains in 5 families of 10, with SCOP-style labels.

    Related families derive from a shared base fold with increasing
    perturbation, so similarity roughly follows the label hierarchy;
    members add small jitter on top of their family base.
    """
    base_a = random_walk(rng, 64)
    bases = {
        "a.1.1.1": base_a,
        "a.1.1.2": base_a + rng.normal(scale=1.0, size=base_a.shape),
        "a.1.2.1": base_a + rng.normal(scale=2.5, size=base_a.shape),
        "a.2.1.1": random_walk(rng, 48),
        "b.1.1.1": random_walk(rng, 80),
    }
    traces = []
    labels = {}
    for fam_index, (sccs, base) in enumerate(bases.items()):
        for member in range(10):
            trace_id = f"d{fam_index}{member:02d}"
            coords = base + rng.normal(scale=0.3, size=base.shape)
            traces.append((trace_id, coords))
            labels[trace_id] = sccs
    return traces, labels

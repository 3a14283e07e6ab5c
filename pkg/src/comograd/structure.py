"""Alpha-carbon trace extraction from legacy fixed-column coordinate files.

Only ATOM records are read (HETATM never carries a backbone CA). In
multi-model files the first model wins, and alternate locations other than
blank/'A' are dropped, so every chain yields exactly one conformer.
Column layout (1-indexed): atom name 13-16, altLoc 17, chain id 22,
x/y/z 31-38 / 39-46 / 47-54.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedRecord, NoCaAtoms


@dataclass(frozen=True)
class CaTrace:
    """Ordered alpha-carbon coordinates of one chain, in angstroms."""

    id: str
    residues: np.ndarray  # (length, 3) float64, file order

    def __post_init__(self):
        coords = np.asarray(self.residues, dtype=np.float64)
        if coords.ndim != 2 or coords.shape[1] != 3 or coords.shape[0] < 1:
            raise ValueError(f"expected (n, 3) coordinates, got shape {coords.shape}")
        if not np.isfinite(coords).all():
            raise ValueError("non-finite coordinates")
        object.__setattr__(self, "residues", coords)

    @property
    def length(self) -> int:
        return self.residues.shape[0]


def parse_structure(
    data: bytes | str,
    chain: str | None = None,
    base_id: str = "",
) -> list[CaTrace]:
    """Extract one CaTrace per chain from a fixed-column coordinate file.

    `chain` restricts extraction to a single chain id; with `chain=None`
    every chain that has CA atoms yields a trace, in file order. `base_id`
    prefixes trace ids ("<base_id>_<chain>"); without it the chain id alone
    is used.

    Raises MalformedRecord for unparseable ATOM records and NoCaAtoms when
    the selector matches nothing.
    """
    text = data.decode("utf-8", errors="replace") if isinstance(data, bytes) else data
    per_chain: dict[str, list[tuple[float, float, float]]] = {}
    models_seen = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        rec = line[:6].strip()
        if rec == "MODEL":
            models_seen += 1
            if models_seen > 1:
                break
        elif rec == "ENDMDL":
            break
        elif rec == "ATOM":
            if line[12:16].strip() != "CA":
                continue
            if len(line) < 54:
                raise MalformedRecord(f"line {lineno}: ATOM record ends before coordinate columns")
            if line[16] not in (" ", "A"):
                continue
            cid = line[21].strip()
            if chain is not None and cid != chain.strip():
                continue
            try:
                xyz = (float(line[30:38]), float(line[38:46]), float(line[46:54]))
            except ValueError as exc:
                raise MalformedRecord(f"line {lineno}: unparseable coordinates") from exc
            per_chain.setdefault(cid, []).append(xyz)
    if not per_chain:
        wanted = "any chain" if chain is None else f"chain {chain!r}"
        raise NoCaAtoms(f"no CA atoms found for {wanted}")
    return [
        CaTrace(id=_trace_id(base_id, cid), residues=np.array(coords, dtype=np.float64))
        for cid, coords in per_chain.items()
    ]


def _trace_id(base_id: str, chain_id: str) -> str:
    if base_id and chain_id:
        return f"{base_id}_{chain_id}"
    return base_id or chain_id or "chain"

"""Binary feature database (".cmgf" files).

Layout, integers little-endian:

    magic    4 bytes   b"CMGF"
    version  u32       1
    kind     u8        1 = comograd, 2 = phog, 3 = combined
    params   4 x u8    quad-tree depth, co-occurrence bins, histogram bins,
                       displacement-set code
    length   u32       vector length
    count    u64       entry count
    entries            id length (u16), id bytes (UTF-8), length x float32

Values are stored as binary32: the descriptors are normalized statistics,
so seven significant digits comfortably exceed the numeric noise of the
extraction pipeline, and the file is half the binary64 size.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property
from typing import BinaryIO, Iterable

import numpy as np

from .descriptors import Descriptor, DescriptorKind, DescriptorParams
from .errors import BadMagic, CorruptRecord, KindMismatch, ParamsMismatch, UnsupportedVersion

MAGIC = b"CMGF"
VERSION = 1
_HEADER = struct.Struct("<4sIB4BIQ")
_ID_LEN = struct.Struct("<H")

SUFFIX = ".cmgf"


@dataclass(frozen=True)
class FeatureDb:
    """An ordered, immutable collection of equally-long feature vectors.

    values has one float32 row per id; rows keep insertion order, which the
    file format preserves. Safe to share across threads once constructed.
    """

    kind: DescriptorKind
    params: DescriptorParams
    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float32)
        width = self.params.vector_length(self.kind)
        if vals.ndim != 2 or vals.shape != (len(self.ids), width):
            raise ValueError(
                f"values must have shape ({len(self.ids)}, {width}), got {vals.shape}"
            )
        if not np.isfinite(vals).all():
            raise ValueError("feature values must be finite")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("ids must be unique")
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def vector_length(self) -> int:
        return self.values.shape[1]

    @cached_property
    def matrix(self) -> np.ndarray:
        """float64 copy of the vectors; distances are computed in double
        precision so sort order is stable across accumulation orders."""
        return self.values.astype(np.float64)

    @classmethod
    def from_descriptors(
        cls,
        kind: DescriptorKind,
        entries: Iterable[tuple[str, Descriptor]],
        params: DescriptorParams | None = None,
    ) -> "FeatureDb":
        ids: list[str] = []
        rows: list[np.ndarray] = []
        for entry_id, desc in entries:
            if desc.kind is not kind:
                raise KindMismatch(f"{entry_id}: expected {kind.label}, got {desc.kind.label}")
            if params is None:
                params = desc.params
            elif desc.params != params:
                raise ParamsMismatch(f"{entry_id}: descriptor params differ from the batch")
            ids.append(entry_id)
            rows.append(desc.values.astype(np.float32))
        if params is None:
            params = DescriptorParams()
        width = params.vector_length(kind)
        values = np.array(rows, dtype=np.float32) if rows else np.empty((0, width), np.float32)
        return cls(kind, params, tuple(ids), values)


def write_db(db: FeatureDb, sink: BinaryIO) -> None:
    """Serialize db to a binary stream. I/O errors propagate as OSError."""
    p = db.params
    for field in (p.depth, p.cooc_bins, p.hist_bins, p.displacements):
        if not 0 <= field <= 255:
            raise ValueError(f"params field {field} does not fit the u8 header")
    sink.write(
        _HEADER.pack(
            MAGIC,
            VERSION,
            db.kind.value,
            p.depth,
            p.cooc_bins,
            p.hist_bins,
            p.displacements,
            db.vector_length,
            len(db),
        )
    )
    for entry_id, row in zip(db.ids, db.values):
        raw = entry_id.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise ValueError(f"id {entry_id!r} exceeds the 65535-byte limit")
        sink.write(_ID_LEN.pack(len(raw)))
        sink.write(raw)
        sink.write(np.ascontiguousarray(row, dtype="<f4").tobytes())


def _read_exact(source: BinaryIO, n: int, what: str) -> bytes:
    data = source.read(n)
    if len(data) != n:
        raise CorruptRecord(f"truncated stream while reading {what}")
    return data


def read_db(source: BinaryIO) -> FeatureDb:
    """Deserialize a database written by write_db, validating the header and
    every invariant (vector lengths, unique ids, finite values)."""
    magic = source.read(len(MAGIC))
    if magic != MAGIC:
        raise BadMagic(f"expected {MAGIC!r}, got {magic!r}")
    rest = _read_exact(source, _HEADER.size - len(MAGIC), "header")
    version, kind_code, depth, cooc_bins, hist_bins, disp, length, count = _HEADER.unpack(
        magic + rest
    )[1:]
    if version != VERSION:
        raise UnsupportedVersion(f"format version {version}, expected {VERSION}")
    try:
        kind = DescriptorKind(kind_code)
        params = DescriptorParams(depth, cooc_bins, hist_bins, disp)
    except ValueError as exc:
        raise CorruptRecord(f"invalid header field: {exc}") from None
    if length != params.vector_length(kind):
        raise CorruptRecord(
            f"header vector length {length} does not match params "
            f"({params.vector_length(kind)} for {kind.label})"
        )
    ids: list[str] = []
    rows = np.empty((count, length), dtype=np.float32)
    seen: set[str] = set()
    for i in range(count):
        (id_len,) = _ID_LEN.unpack(_read_exact(source, _ID_LEN.size, f"entry {i} id length"))
        try:
            entry_id = _read_exact(source, id_len, f"entry {i} id").decode("utf-8")
        except UnicodeDecodeError:
            raise CorruptRecord(f"entry {i} id is not valid UTF-8") from None
        if entry_id in seen:
            raise CorruptRecord(f"duplicate id {entry_id!r}")
        seen.add(entry_id)
        raw = _read_exact(source, 4 * length, f"entry {entry_id!r} values")
        row = np.frombuffer(raw, dtype="<f4")
        if not np.isfinite(row).all():
            raise CorruptRecord(f"entry {entry_id!r} contains non-finite values")
        ids.append(entry_id)
        rows[i] = row
    if source.read(1):
        raise CorruptRecord("trailing bytes after the last entry")
    return FeatureDb(kind, params, tuple(ids), rows)


def save_db(db: FeatureDb, path) -> None:
    with open(path, "wb") as fh:
        write_db(db, fh)


def load_db(path) -> FeatureDb:
    with open(path, "rb") as fh:
        return read_db(fh)

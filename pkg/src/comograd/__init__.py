"""Content-based protein tertiary-structure retrieval.

A protein chain's Cα–Cα distance matrix is treated as a gray-scale image:
it is brought to a canonical 128x128 size (bicubic resize to the nearest
power of two, then Daubechies-2 wavelet scaling), and two texture
descriptors of its gradient field are extracted: a 16x16 co-occurrence
matrix of quantized orientations (256 values) and a depth-3 pyramid of
magnitude-weighted orientation histograms (765 values). Their
concatenation (1021 values) supports fast Euclidean nearest-neighbour
search over a binary feature database, evaluated against SCOP labels.
"""

from .descriptors import (
    Descriptor,
    DescriptorKind,
    DescriptorParams,
    comograd,
    combined,
    extract_descriptor,
    gradient_field,
    phog,
)
from .distmap import compute_distance_matrix
from .errors import (
    BadMagic,
    ComogradError,
    CorruptRecord,
    EmptyDatabase,
    GridTooSmall,
    InsufficientResults,
    KindMismatch,
    MalformedLine,
    MalformedRecord,
    MissingLabel,
    NoCaAtoms,
    OddDimension,
    ParamsMismatch,
    UnknownId,
    UnsupportedVersion,
)
from .evalkit import MatchCurve, ScopLabel, match_curves, parse_scop_classification, percent_match
from .pipeline import (
    canonical_grid,
    descriptor_from_trace,
    extract_file,
    index_directory,
    query_file,
)
from .rescale import canonicalize, bicubic_resize, dwt2, idwt2, nearest_pow2_resize
from .retrieval import RankedHit, euclidean_distance, query
from .store import FeatureDb, load_db, read_db, save_db, write_db
from .structure import CaTrace, parse_structure

__version__ = "0.1.0"

__all__ = [
    "CaTrace",
    "Descriptor",
    "DescriptorKind",
    "DescriptorParams",
    "FeatureDb",
    "MatchCurve",
    "RankedHit",
    "ScopLabel",
    "bicubic_resize",
    "canonical_grid",
    "canonicalize",
    "combined",
    "comograd",
    "compute_distance_matrix",
    "descriptor_from_trace",
    "dwt2",
    "euclidean_distance",
    "extract_descriptor",
    "extract_file",
    "gradient_field",
    "idwt2",
    "index_directory",
    "load_db",
    "match_curves",
    "nearest_pow2_resize",
    "parse_scop_classification",
    "parse_structure",
    "percent_match",
    "phog",
    "query",
    "query_file",
    "read_db",
    "save_db",
    "write_db",
    "ComogradError",
    "BadMagic",
    "CorruptRecord",
    "EmptyDatabase",
    "GridTooSmall",
    "InsufficientResults",
    "KindMismatch",
    "MalformedLine",
    "MalformedRecord",
    "MissingLabel",
    "NoCaAtoms",
    "OddDimension",
    "ParamsMismatch",
    "UnknownId",
    "UnsupportedVersion",
]

"""Retrieval-quality scoring against SCOP labels.

SCOP assigns every domain an sccs code "c.f.sf.fa" (class.fold.superfamily.
family). Two domains match at a level when their codes agree on that prefix,
so family match implies superfamily, fold, and class match. Scores are the
percentage of top-k results matching the query's label, averaged over
queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import InsufficientResults, MalformedLine, MissingLabel

LEVELS = ("class", "fold", "superfamily", "family")


@dataclass(frozen=True)
class ScopLabel:
    """Hierarchical classification of one domain; each level identifier
    carries its full prefix ("b", "b.1", "b.1.1", "b.1.1.1")."""

    domain_id: str
    sccs: str

    def __post_init__(self):
        parts = self.sccs.split(".")
        if len(parts) != 4 or not all(parts):
            raise MalformedLine(
                f"{self.domain_id}: sccs code must have four dot-separated parts, got {self.sccs!r}"
            )

    def level_id(self, level: str) -> str:
        depth = LEVELS.index(level) + 1
        return ".".join(self.sccs.split(".")[:depth])

    def matches(self, other: "ScopLabel", level: str) -> bool:
        return self.level_id(level) == other.level_id(level)


@dataclass(frozen=True)
class MatchCurve:
    level: str
    points: tuple[tuple[int, float], ...]  # (k, percentage in [0, 100]), k increasing

    def __post_init__(self):
        ks = [k for k, _ in self.points]
        if sorted(set(ks)) != ks:
            raise ValueError("k values must be strictly increasing")
        if any(not 0.0 <= pct <= 100.0 for _, pct in self.points):
            raise ValueError("percentages must lie in [0, 100]")


def parse_scop_classification(data: bytes | str) -> dict[str, ScopLabel]:
    """Parse a tab-separated classification file (dir.cla layout: domain id
    in field 1, sccs in field 4). Lines starting with '#' are comments."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    labels: dict[str, ScopLabel] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) < 4:
            raise MalformedLine(f"line {lineno}: expected >= 4 tab-separated fields")
        try:
            label = ScopLabel(fields[0].strip(), fields[3].strip())
        except MalformedLine as exc:
            raise MalformedLine(f"line {lineno}: {exc}") from None
        labels[label.domain_id] = label
    return labels


def _require_label(labels: Mapping[str, ScopLabel], entry_id: str) -> ScopLabel:
    try:
        return labels[entry_id]
    except KeyError:
        raise MissingLabel(f"no classification for id {entry_id!r}") from None


def drop_self(query_id: str, ranked_ids: Sequence[str]) -> list[str]:
    """Result list without the query's own id (the trivially perfect hit)."""
    return [rid for rid in ranked_ids if rid != query_id]


def percent_match(
    results: Mapping[str, Sequence[str]],
    labels: Mapping[str, ScopLabel],
    level: str,
    k: int,
) -> float:
    """Average count of top-k results matching each query at the given
    level, times 100/k. Callers must remove self-hits beforehand."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    if k < 1:
        raise ValueError("k must be >= 1")
    if not results:
        raise ValueError("results must contain at least one query")
    total = 0
    for query_id, ranked in results.items():
        if len(ranked) < k:
            raise InsufficientResults(
                f"query {query_id!r} has {len(ranked)} results, needs {k}"
            )
        want = _require_label(labels, query_id)
        total += sum(
            1 for rid in ranked[:k] if _require_label(labels, rid).matches(want, level)
        )
    return total / len(results) * 100.0 / k


def match_curves(
    results: Mapping[str, Sequence[str]],
    labels: Mapping[str, ScopLabel],
    k_values: Iterable[int] = range(5, 55, 5),
) -> dict[str, MatchCurve]:
    """One curve per hierarchy level, evaluated at each k."""
    ks = sorted(set(int(k) for k in k_values))
    return {
        level: MatchCurve(
            level, tuple((k, percent_match(results, labels, level, k)) for k in ks)
        )
        for level in LEVELS
    }


def format_curves(curves: Mapping[str, MatchCurve]) -> str:
    """Tab-separated rows (level, k, percentage), ready for any plotting
    tool; the toolkit emits data, not figures."""
    lines = ["level\tk\tpercent"]
    for level in LEVELS:
        for k, pct in curves[level].points:
            lines.append(f"{level}\t{k}\t{pct:.4f}")
    return "\n".join(lines)

"""Finite directed graphs: representation, text format, vertex classification.

Vertices are the dense integers ``0 .. n-1``.  Loops are allowed, parallel
edges are not, and the null digraph (``n == 0``) is a valid value.

The text format is line based:

* lines starting with ``#`` are comments, blank lines are skipped;
* the first remaining line is the vertex count ``n >= 0``;
* every further line is one edge ``u v`` (two space-separated integers).

Duplicate edge lines collapse silently; anything else malformed raises
:class:`~dgpoly.errors.DigraphParseError` naming the line.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Mapping

from .errors import DigraphParseError


@dataclass(frozen=True)
class Digraph:
    """An immutable digraph on vertices ``0 .. n-1``."""

    n: int
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"vertex count must be a nonnegative integer, got {self.n!r}")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range for {self.n} vertices")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def out_sets(self) -> tuple[frozenset[int], ...]:
        outs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            outs[u].add(v)
        return tuple(frozenset(s) for s in outs)

    @cached_property
    def in_sets(self) -> tuple[frozenset[int], ...]:
        ins: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            ins[v].add(u)
        return tuple(frozenset(s) for s in ins)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Out-neighborhoods as bitmasks, bit ``v`` set when ``(u, v)`` is an edge."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[v] |= 1 << u
        return tuple(masks)

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for {self.n} vertices")

    def out_neighbors(self, v: int) -> frozenset[int]:
        """All ``w`` with an edge ``(v, w)``."""
        self._check_vertex(v)
        return self.out_sets[v]

    def in_neighbors(self, v: int) -> frozenset[int]:
        """All ``u`` with an edge ``(u, v)``."""
        self._check_vertex(v)
        return self.in_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={sorted(self.edges)})"


class VertexKind(enum.Enum):
    SOURCE = "source"
    SINK = "sink"
    ISOLATED = "isolated"
    SMOOTH = "smooth"


@dataclass(frozen=True)
class VertexClassification:
    """Per-vertex kinds plus the two removal sets.

    ``sources`` is every vertex with no incoming edge and ``sinks`` every
    vertex with no outgoing edge; isolated vertices belong to both sets.
    """

    kinds: tuple[VertexKind, ...]
    sources: frozenset[int]
    sinks: frozenset[int]


def classify_vertices(g: Digraph) -> VertexClassification:
    """Split vertices into sources, sinks, isolated and smooth ones."""
    kinds = []
    sources = set()
    sinks = set()
    for v in range(g.n):
        has_in = bool(g.in_sets[v])
        has_out = bool(g.out_sets[v])
        if has_in and has_out:
            kinds.append(VertexKind.SMOOTH)
        elif has_out:
            kinds.append(VertexKind.SOURCE)
            sources.add(v)
        elif has_in:
            kinds.append(VertexKind.SINK)
            sinks.add(v)
        else:
            kinds.append(VertexKind.ISOLATED)
            sources.add(v)
            sinks.add(v)
    return VertexClassification(tuple(kinds), frozenset(sources), frozenset(sinks))


def parse_digraph(text: str) -> Digraph:
    """Parse the digraph text format; see the module docstring for the grammar."""
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise DigraphParseError(line_no, f"expected vertex count, got {raw!r}") from None
            if n < 0:
                raise DigraphParseError(line_no, "vertex count must be nonnegative")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DigraphParseError(line_no, f"expected an edge 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise DigraphParseError(line_no, f"edge endpoints must be integers, got {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphParseError(line_no, f"edge ({u},{v}) out of range for {n} vertices")
        edges.add((u, v))
    if n is None:
        raise DigraphParseError(max(line_no, 1), "missing vertex count line")
    return Digraph(n, frozenset(edges))


def serialize_digraph(g: Digraph) -> str:
    """Canonical text for ``g``: the vertex count, then the sorted edge list."""
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def digraph_to_dict(g: Digraph) -> dict[str, Any]:
    return {"n": g.n, "edges": [[u, v] for u, v in g.sorted_edges]}


def digraph_from_dict(data: Mapping[str, Any]) -> Digraph:
    try:
        n = data["n"]
        raw_edges: Iterable[Iterable[int]] = data["edges"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"digraph object needs 'n' and 'edges' fields: {exc}") from None
    return Digraph(n, frozenset((u, v) for u, v in raw_edges))

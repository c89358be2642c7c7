"""Rectangularity, shared-neighbor classes, factor digraphs, and the class bijection.

A digraph is rectangular when edges ``(x, y)``, ``(x2, y)``, ``(x2, y2)``
force the edge ``(x, y2)``.  Equivalently: any two vertices whose
out-neighborhoods intersect have identical out-neighborhoods.  On a
rectangular digraph, sharing an out-neighbor is therefore an equivalence on
the non-sink vertices, and sharing an in-neighbor one on the non-source
vertices; this module builds those partitions, the quotient digraphs, and
the bijection between the two families of classes given by
``X -> common out-neighborhood of X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .digraph import Digraph, serialize_digraph
from .errors import InternalInvariantError, NotRectangularError

Side = Literal["plus", "minus"]
PLUS: Side = "plus"
MINUS: Side = "minus"


def rectangularity_witness(g: Digraph) -> tuple[int, int, int, int] | None:
    """Return a violating quadruple ``(x, y, x2, y2)``, or ``None`` if rectangular.

    The returned quadruple is the lexicographically least one.
    """
    outs = g.out_masks
    violated = False
    for u in range(g.n):
        mu = outs[u]
        if not mu:
            continue
        for w in range(u + 1, g.n):
            mw = outs[w]
            if mu & mw and mu != mw:
                violated = True
                break
        if violated:
            break
    if not violated:
        return None
    edges = g.edges
    for x in range(g.n):
        for y in sorted(g.out_sets[x]):
            for x2 in sorted(g.in_sets[y]):
                for y2 in sorted(g.out_sets[x2]):
                    if (x, y2) not in edges:
                        return (x, y, x2, y2)
    raise InternalInvariantError("mask scan saw a rectangularity violation the edge scan cannot find")


def is_rectangular(g: Digraph) -> bool:
    return rectangularity_witness(g) is None


@dataclass(frozen=True)
class Partition:
    """Blocks of the shared-neighbor equivalence on one side of a digraph.

    ``block_of`` is defined exactly on the vertices that carry the relevant
    neighbors: non-sinks for side ``plus``, non-sources for side ``minus``.
    Blocks are indexed by their smallest vertex, ascending.
    """

    side: Side
    blocks: tuple[tuple[int, ...], ...]
    block_of: Mapping[int, int]


def _check_side(side: str) -> None:
    if side not in (PLUS, MINUS):
        raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")


def _classes_unchecked(g: Digraph, side: Side) -> Partition:
    key_sets = g.out_sets if side == PLUS else g.in_sets
    groups: dict[frozenset[int], list[int]] = {}
    for v in range(g.n):
        ks = key_sets[v]
        if ks:
            groups.setdefault(ks, []).append(v)
    blocks = tuple(sorted((tuple(sorted(vs)) for vs in groups.values()), key=lambda b: b[0]))
    block_of = {v: i for i, b in enumerate(blocks) for v in b}
    return Partition(side, blocks, block_of)


def r_classes(g: Digraph, side: Side) -> Partition:
    """Partition one side of a rectangular digraph into shared-neighbor classes.

    Two non-sink vertices land in the same ``plus`` block exactly when they
    share an out-neighbor, which on a rectangular digraph means their
    out-neighborhoods coincide (dually for ``minus`` and in-neighborhoods).
    Raises :class:`NotRectangularError` otherwise.
    """
    _check_side(side)
    witness = rectangularity_witness(g)
    if witness is not None:
        raise NotRectangularError(witness)
    return _classes_unchecked(g, side)


@dataclass(frozen=True)
class FactorGraph:
    """A quotient digraph together with the partition that produced it."""

    partition: Partition
    quotient: Digraph

    @property
    def projection(self) -> Mapping[int, int]:
        return self.partition.block_of


def factor(g: Digraph, side: Side) -> FactorGraph:
    """Quotient ``g`` by its shared-neighbor classes on the given side.

    Block ``I`` has an edge to block ``J`` when some member of ``I`` has an
    edge to some member of ``J``.  Edges whose endpoint carries no block
    (sinks for ``plus``, sources for ``minus``) contribute nothing.
    """
    part = r_classes(g, side)
    block_of = part.block_of
    qedges = set()
    for u, v in g.edges:
        bu = block_of.get(u)
        bv = block_of.get(v)
        if bu is not None and bv is not None:
            qedges.add((bu, bv))
    return FactorGraph(part, Digraph(len(part.blocks), frozenset(qedges)))


@dataclass(frozen=True)
class ClassBijection:
    """Pairing of out-side blocks with in-side blocks via common neighborhoods.

    ``forward[i]`` is the in-side block equal to the common out-neighborhood
    of out-side block ``i``; ``backward`` is its inverse.
    """

    forward: tuple[int, ...]
    backward: tuple[int, ...]


def phi(g: Digraph) -> ClassBijection:
    """Match each out-side block with the in-side block it points at.

    Requires ``g`` rectangular.  For every out-side block ``X`` the common
    out-neighborhood of its members is itself exactly one in-side block;
    anything else indicates a bug.
    """
    witness = rectangularity_witness(g)
    if witness is not None:
        raise NotRectangularError(witness)
    plus = _classes_unchecked(g, PLUS)
    minus = _classes_unchecked(g, MINUS)
    minus_index = {frozenset(b): i for i, b in enumerate(minus.blocks)}
    forward = []
    for block in plus.blocks:
        image = g.out_sets[block[0]]
        j = minus_index.get(image)
        if j is None:
            raise InternalInvariantError(
                f"common out-neighborhood {sorted(image)} of block {block} is not an in-side block"
            )
        forward.append(j)
    if len(set(forward)) != len(forward):
        raise InternalInvariantError("out-side blocks map onto a repeated in-side block")
    backward = [0] * len(forward)
    for i, j in enumerate(forward):
        backward[j] = i
    return ClassBijection(tuple(forward), tuple(backward))


def phi_isomorphism_violation(g: Digraph) -> tuple[int, int] | None:
    """A block pair on which the class bijection fails to preserve edges, or ``None``."""
    quot_plus = factor(g, PLUS).quotient
    quot_minus = factor(g, MINUS).quotient
    bij = phi(g)
    k = len(bij.forward)
    for i in range(k):
        for j in range(k):
            if ((i, j) in quot_plus.edges) != ((bij.forward[i], bij.forward[j]) in quot_minus.edges):
                return (i, j)
    return None


def verify_phi_isomorphism(g: Digraph) -> bool:
    """Check that the class bijection is an isomorphism of the two quotients."""
    return phi_isomorphism_violation(g) is None


def serialize_factor(fg: FactorGraph) -> str:
    """Quotient in the digraph text format plus one ``class i: ...`` line per block."""
    lines = [serialize_digraph(fg.quotient).rstrip("\n")]
    for i, block in enumerate(fg.partition.blocks):
        lines.append(f"class {i}: " + " ".join(str(v) for v in block))
    return "\n".join(lines) + "\n"

"""Ternary operations on digraph vertices: verification and synthesis.

Two identity families matter here.  A Maltsev operation satisfies
``m(x, y, y) = x`` and ``m(x, x, y) = y``; a majority operation returns the
repeated argument whenever two arguments coincide.  An operation is a
polymorphism of a digraph when applying it to three edges coordinatewise
yields an edge.

Synthesis walks the certificate chain of the decision procedure: build an
operation for the base case, then repeatedly lift it one quotient level up.
The lift fixes the identity-forced entries first and fills each remaining
entry from the candidate vertices whose out-class and in-class agree with
the quotient operations' values, breaking ties toward the smallest vertex,
which makes the output deterministic down to the exact table.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .decide import decide_maltsev, is_disjoint_union_of_cycles
from .digraph import Digraph
from .errors import InternalInvariantError, NotMaltsevError
from .structure import MINUS, PLUS, ClassBijection, factor, phi, r_classes

MALTSEV = "maltsev"
MAJORITY = "majority"


@dataclass(frozen=True)
class TernaryOp:
    """A ternary operation on ``0 .. n-1`` stored as a flat table.

    Entry ``f(x, y, z)`` lives at index ``x*n*n + y*n + z``.
    """

    n: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise ValueError(f"operation size must be a nonnegative integer, got {self.n!r}")
        table = tuple(self.table)
        if len(table) != self.n ** 3:
            raise ValueError(f"table has {len(table)} entries, expected {self.n ** 3}")
        for value in table:
            if not (0 <= value < self.n):
                raise ValueError(f"table value {value!r} out of range for {self.n} elements")
        object.__setattr__(self, "table", table)

    def __call__(self, x: int, y: int, z: int) -> int:
        return self.table[(x * self.n + y) * self.n + z]

    def to_json_dict(self) -> dict[str, Any]:
        return {"n": self.n, "arity": 3, "table": list(self.table)}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "TernaryOp":
        try:
            n = data["n"]
            arity = data["arity"]
            table = data["table"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"operation object needs 'n', 'arity' and 'table' fields: {exc}") from None
        if arity != 3:
            raise ValueError(f"expected arity 3, got {arity!r}")
        return cls(n, tuple(table))


def _check_kind(kind: str) -> None:
    if kind not in (MALTSEV, MAJORITY):
        raise ValueError(f"kind must be 'maltsev' or 'majority', got {kind!r}")


def find_identity_violation(f: TernaryOp, kind: str) -> tuple[int, int] | None:
    """First pair ``(x, y)`` breaking the identity family, or ``None``."""
    _check_kind(kind)
    n = f.n
    if kind == MALTSEV:
        for x in range(n):
            for y in range(n):
                if f(x, y, y) != x or f(x, x, y) != y:
                    return (x, y)
    else:
        for x in range(n):
            for y in range(n):
                if f(x, y, y) != y or f(y, x, y) != y or f(y, y, x) != y:
                    return (x, y)
    return None


def verify_identities(f: TernaryOp, kind: str) -> bool:
    return find_identity_violation(f, kind) is None


def find_polymorphism_violation(
    g: Digraph, f: TernaryOp
) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]] | None:
    """First edge triple mapped off the edge set, or ``None``.

    Scans all ordered edge triples in sorted order.
    """
    if f.n != g.n:
        raise ValueError(f"operation on {f.n} elements does not fit a digraph on {g.n} vertices")
    edges = g.sorted_edges
    edge_set = g.edges
    table = f.table
    n = g.n
    for u1, v1 in edges:
        for u2, v2 in edges:
            base_u = (u1 * n + u2) * n
            base_v = (v1 * n + v2) * n
            for u3, v3 in edges:
                if (table[base_u + u3], table[base_v + v3]) not in edge_set:
                    return ((u1, v1), (u2, v2), (u3, v3))
    return None


def verify_polymorphism(g: Digraph, f: TernaryOp) -> bool:
    return find_polymorphism_violation(g, f) is None


def _require_base(g: Digraph, what: str) -> None:
    if g.n == 0 or not g.edges or is_disjoint_union_of_cycles(g):
        return
    raise ValueError(f"{what} needs a disjoint union of directed cycles or an edgeless digraph")


def majority_base(g: Digraph) -> TernaryOp:
    """Majority operation for a base-case digraph: ``y`` when ``y == z``, else ``x``.

    Compatible with any disjoint union of directed cycles and vacuously with
    any edgeless digraph.
    """
    _require_base(g, "majority_base")
    n = g.n
    table = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                table.append(y if y == z else x)
    return TernaryOp(n, tuple(table))


def _cycle_layout(g: Digraph) -> tuple[list[int], list[int], list[list[int]]]:
    """Cycle id and position per vertex, plus each cycle's vertices by position.

    Cycles are numbered in order of their smallest vertex, which is also
    position zero.
    """
    succ = [min(g.out_sets[v]) for v in range(g.n)]
    cycle_of = [-1] * g.n
    position = [-1] * g.n
    members: list[list[int]] = []
    for start in range(g.n):
        if cycle_of[start] >= 0:
            continue
        cid = len(members)
        cycle = []
        v = start
        while cycle_of[v] < 0:
            cycle_of[v] = cid
            position[v] = len(cycle)
            cycle.append(v)
            v = succ[v]
        members.append(cycle)
    return cycle_of, position, members


def maltsev_base(g: Digraph) -> TernaryOp:
    """Maltsev operation for a base-case digraph.

    On a disjoint union of cycles: when ``y`` and ``z`` share a cycle,
    advance ``x`` along its own cycle by the cyclic distance from ``y`` to
    ``z``; when instead ``x`` and ``y`` share a cycle, advance ``z`` by the
    distance from ``y`` to ``x``; otherwise return ``x``.  Distances are
    measured inside the shared cycle, then taken modulo the moved vertex's
    cycle length, which keeps the operation compatible with stepping every
    argument one edge forward.  On a single n-cycle this specializes to
    ``x - y + z`` modulo n.

    On an edgeless digraph: ``x`` when ``y == z``, else ``z`` when
    ``x == y``, else ``x``.
    """
    _require_base(g, "maltsev_base")
    n = g.n
    if not g.edges:
        table = []
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    table.append(x if y == z else (z if x == y else x))
        return TernaryOp(n, tuple(table))
    cycle_of, position, members = _cycle_layout(g)
    lengths = [len(c) for c in members]

    def advance(v: int, steps: int) -> int:
        cyc = cycle_of[v]
        return members[cyc][(position[v] + steps) % lengths[cyc]]

    table = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if cycle_of[y] == cycle_of[z]:
                    dist = (position[z] - position[y]) % lengths[cycle_of[y]]
                    table.append(advance(x, dist))
                elif cycle_of[x] == cycle_of[y]:
                    dist = (position[x] - position[y]) % lengths[cycle_of[x]]
                    table.append(advance(z, dist))
                else:
                    table.append(x)
    return TernaryOp(n, tuple(table))


def conjugate_via_phi(g: Digraph, f_plus: TernaryOp) -> TernaryOp:
    """Transport an operation on out-side blocks to in-side blocks along the class bijection."""
    bij = phi(g)
    k = len(bij.forward)
    if f_plus.n != k:
        raise ValueError(f"operation on {f_plus.n} elements does not fit {k} out-side blocks")
    fwd = bij.forward
    bwd = bij.backward
    table = []
    for a in range(k):
        for b in range(k):
            for c in range(k):
                table.append(fwd[f_plus(bwd[a], bwd[b], bwd[c])])
    return TernaryOp(k, tuple(table))


def _block_masks(blocks: tuple[tuple[int, ...], ...]) -> list[int]:
    masks = []
    for block in blocks:
        m = 0
        for v in block:
            m |= 1 << v
        masks.append(m)
    return masks


def _lift(g: Digraph, f_plus: TernaryOp, kind: str) -> TernaryOp:
    """Lift a verified polymorphism of the out-class quotient to ``g`` itself.

    Identity-forced entries are written first and never overwritten.  Every
    other entry must sit in the out-side block chosen by ``f_plus`` whenever
    all three arguments are non-sinks, and in the in-side block chosen by
    the conjugated operation whenever all three are non-sources; the
    smallest vertex satisfying the applicable constraints wins.  An empty
    candidate set contradicts the construction and aborts loudly.
    """
    _check_kind(kind)
    plus_factor = factor(g, PLUS)
    quotient = plus_factor.quotient
    if f_plus.n != quotient.n:
        raise ValueError(
            f"operation on {f_plus.n} elements does not fit a quotient on {quotient.n} blocks"
        )
    if find_identity_violation(f_plus, kind) is not None:
        raise ValueError(f"input operation does not satisfy the {kind} identities")
    if find_polymorphism_violation(quotient, f_plus) is not None:
        raise ValueError("input operation is not a polymorphism of the out-class quotient")
    minus_part = r_classes(g, MINUS)
    f_minus = conjugate_via_phi(g, f_plus)
    n = g.n
    plus_of = plus_factor.partition.block_of
    minus_of = minus_part.block_of
    plus_masks = _block_masks(plus_factor.partition.blocks)
    minus_masks = _block_masks(minus_part.blocks)
    full = (1 << n) - 1
    table = []
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if kind == MAJORITY and (x == y or x == z or y == z):
                    table.append(x if (x == y or x == z) else y)
                    continue
                if kind == MALTSEV and y == z:
                    table.append(x)
                    continue
                if kind == MALTSEV and x == y:
                    table.append(z)
                    continue
                candidates = full
                bx = plus_of.get(x)
                by = plus_of.get(y)
                bz = plus_of.get(z)
                if bx is not None and by is not None and bz is not None:
                    candidates &= plus_masks[f_plus(bx, by, bz)]
                cx = minus_of.get(x)
                cy = minus_of.get(y)
                cz = minus_of.get(z)
                if cx is not None and cy is not None and cz is not None:
                    candidates &= minus_masks[f_minus(cx, cy, cz)]
                if candidates == 0:
                    raise InternalInvariantError(
                        f"empty candidate set at triple ({x},{y},{z}) while lifting a {kind} operation"
                    )
                table.append((candidates & -candidates).bit_length() - 1)
    return TernaryOp(n, tuple(table))


def lift_majority(g: Digraph, m_plus: TernaryOp) -> TernaryOp:
    return _lift(g, m_plus, MAJORITY)


def lift_maltsev(g: Digraph, m_plus: TernaryOp) -> TernaryOp:
    return _lift(g, m_plus, MALTSEV)


def _synth(g: Digraph, kind: str) -> TernaryOp:
    certificate = decide_maltsev(g)
    if not certificate.accepted:
        raise NotMaltsevError(certificate)
    base = certificate.chain[-1]
    f = majority_base(base) if kind == MAJORITY else maltsev_base(base)
    for level in reversed(certificate.chain[:-1]):
        f = _lift(level, f, kind)
    violation = find_identity_violation(f, kind)
    if violation is not None:
        raise InternalInvariantError(f"synthesized {kind} table breaks its identities at {violation}")
    bad_triple = find_polymorphism_violation(g, f)
    if bad_triple is not None:
        raise InternalInvariantError(f"synthesized {kind} table is not a polymorphism at {bad_triple}")
    return f


def synth_majority(g: Digraph) -> TernaryOp:
    """Build a verified majority polymorphism of ``g``.

    Raises :class:`NotMaltsevError` with the refusal certificate when the
    decision procedure refuses ``g``.
    """
    return _synth(g, MAJORITY)


def synth_maltsev(g: Digraph) -> TernaryOp:
    """Build a verified Maltsev polymorphism of ``g``; see :func:`synth_majority`."""
    return _synth(g, MALTSEV)

"""Extendability of partial maps into a fixed target digraph.

An instance is a pattern digraph ``h`` on variables plus pins (variables
with a forced target vertex); the question is whether the pins extend to a
full homomorphism into the target ``g``.  The solver establishes pairwise
consistency: domains per variable, a relation per variable pair seeded from
the pattern's edges, then composition through every intermediate variable
until nothing changes.  An emptied domain or relation is a sound "no" for
any target.  The "yes" direction is only complete when the target admits a
majority polymorphism; without that certificate the answer weakens to
"maybe".
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from random import Random
from typing import Any, Iterator, Mapping

from .decide import decide_maltsev
from .digraph import Digraph, digraph_from_dict, digraph_to_dict
from .synth import MAJORITY, TernaryOp, find_identity_violation, find_polymorphism_violation

YES = "yes"
NO = "no"
MAYBE = "maybe"


@dataclass(frozen=True)
class CspInstance:
    """A pattern digraph on variables together with pinned variables."""

    h: Digraph
    pins: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        pins = {int(v): int(t) for v, t in self.pins.items()}
        for var, target in pins.items():
            if not (0 <= var < self.h.n):
                raise ValueError(f"pinned variable {var} out of range for {self.h.n} variables")
            if target < 0:
                raise ValueError(f"pin target {target} must be nonnegative")
        object.__setattr__(self, "pins", pins)

    def to_json_dict(self) -> dict[str, Any]:
        return {
            "h": digraph_to_dict(self.h),
            "pins": {str(v): t for v, t in sorted(self.pins.items())},
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "CspInstance":
        try:
            h = digraph_from_dict(data["h"])
            pins = {int(v): int(t) for v, t in data.get("pins", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed instance object: {exc}") from None
        return cls(h, pins)


@dataclass(frozen=True)
class PairSystem:
    """Domains and pairwise relations after propagation.

    ``pair_relations`` holds both orientations of every variable pair;
    ``(j, i)`` is always the transpose of ``(i, j)``, and every relation is
    contained in the product of its endpoint domains.
    """

    domains: tuple[frozenset[int], ...]
    pair_relations: Mapping[tuple[int, int], frozenset[tuple[int, int]]]

    def is_empty(self) -> bool:
        return any(not d for d in self.domains)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        mask ^= low
        yield low.bit_length() - 1


def _check_pins_against(instance: CspInstance, g: Digraph) -> None:
    for var, target in instance.pins.items():
        if target >= g.n:
            raise ValueError(f"pin {var} -> {target} out of range for {g.n} target vertices")


def _initial_state(instance: CspInstance, g: Digraph) -> tuple[list[int], dict[tuple[int, int], list[int]]]:
    nv = instance.h.n
    ng = g.n
    full = (1 << ng) - 1
    domains = [full] * nv
    for var, target in instance.pins.items():
        domains[var] &= 1 << target
    loop_mask = 0
    for v in range(ng):
        if (v, v) in g.edges:
            loop_mask |= 1 << v
    pattern = instance.h.edges
    for u, v in pattern:
        if u == v:
            domains[u] &= loop_mask
    out_masks = g.out_masks
    in_masks = g.in_masks
    relations: dict[tuple[int, int], list[int]] = {}
    for i in range(nv):
        for j in range(i + 1, nv):
            forward = (i, j) in pattern
            backward = (j, i) in pattern
            rows = []
            for a in range(ng):
                if not (domains[i] >> a) & 1:
                    rows.append(0)
                    continue
                row = domains[j]
                if forward:
                    row &= out_masks[a]
                if backward:
                    row &= in_masks[a]
                rows.append(row)
            relations[(i, j)] = rows
    return domains, relations


def _oriented_rows(
    relations: dict[tuple[int, int], list[int]], i: int, j: int, ng: int
) -> list[int]:
    if i < j:
        return relations[(i, j)]
    rows = relations[(j, i)]
    transposed = [0] * ng
    for a in range(ng):
        row = rows[a]
        for b in _bits(row):
            transposed[b] |= 1 << a
    return transposed


def _sync_pass(
    domains: list[int], relations: dict[tuple[int, int], list[int]], ng: int
) -> bool:
    """Project relations onto domains and trim relations by domains."""
    changed = False
    for (i, j), rows in relations.items():
        proj_i = 0
        proj_j = 0
        for a in range(ng):
            if not (domains[i] >> a) & 1:
                if rows[a]:
                    rows[a] = 0
                    changed = True
                continue
            row = rows[a] & domains[j]
            if row != rows[a]:
                rows[a] = row
                changed = True
            if row:
                proj_i |= 1 << a
                proj_j |= row
        if proj_i != domains[i]:
            domains[i] = proj_i
            changed = True
        if proj_j != domains[j]:
            domains[j] = proj_j
            changed = True
    return changed


def _compose_pass(
    domains: list[int], relations: dict[tuple[int, int], list[int]], nv: int, ng: int
) -> bool:
    """Tighten every pair relation through every intermediate variable."""
    changed = False
    for i in range(nv):
        for j in range(i + 1, nv):
            rows_ij = relations[(i, j)]
            for k in range(nv):
                if k == i or k == j:
                    continue
                rows_ik = _oriented_rows(relations, i, k, ng)
                rows_kj = _oriented_rows(relations, k, j, ng)
                for a in _bits(domains[i]):
                    reachable = 0
                    for b in _bits(rows_ik[a]):
                        reachable |= rows_kj[b]
                    tightened = rows_ij[a] & reachable
                    if tightened != rows_ij[a]:
                        rows_ij[a] = tightened
                        changed = True
    return changed


def _propagate(instance: CspInstance, g: Digraph) -> tuple[list[int], dict[tuple[int, int], list[int]]]:
    domains, relations = _initial_state(instance, g)
    nv = instance.h.n
    ng = g.n
    while True:
        changed = _sync_pass(domains, relations, ng)
        changed |= _compose_pass(domains, relations, nv, ng)
        if not changed:
            return domains, relations


def propagate_pair_consistency(instance: CspInstance, g: Digraph) -> PairSystem:
    """Run pairwise consistency to a fixpoint and snapshot the result."""
    _check_pins_against(instance, g)
    domains, relations = _propagate(instance, g)
    ng = g.n
    dom_sets = tuple(frozenset(_bits(m)) for m in domains)
    pairs: dict[tuple[int, int], frozenset[tuple[int, int]]] = {}
    for (i, j), rows in relations.items():
        forward = frozenset((a, b) for a in range(ng) for b in _bits(rows[a]))
        pairs[(i, j)] = forward
        pairs[(j, i)] = frozenset((b, a) for a, b in forward)
    return PairSystem(dom_sets, pairs)


def _certified_majority(g: Digraph, majority: TernaryOp | None) -> bool:
    if majority is not None:
        if majority.n != g.n:
            raise ValueError(
                f"operation on {majority.n} elements does not fit a target on {g.n} vertices"
            )
        if find_identity_violation(majority, MAJORITY) is not None:
            raise ValueError("supplied operation does not satisfy the majority identities")
        if find_polymorphism_violation(g, majority) is not None:
            raise ValueError("supplied operation is not a polymorphism of the target")
        return True
    return decide_maltsev(g).accepted


def solve_csp_consistency(
    instance: CspInstance, g: Digraph, majority: TernaryOp | None = None
) -> str:
    """Decide extendability by pairwise consistency: ``yes``, ``no`` or ``maybe``.

    "no" means some domain or pair relation emptied and is sound for any
    target.  "yes" is claimed only when the target is certified to admit a
    majority polymorphism, either by the decision procedure or by a supplied
    table (which is verified and rejected with ``ValueError`` if bogus);
    otherwise the positive answer degrades to "maybe" with a warning.
    """
    _check_pins_against(instance, g)
    certified = _certified_majority(g, majority)
    domains, _ = _propagate(instance, g)
    if any(m == 0 for m in domains):
        return NO
    if certified:
        return YES
    warnings.warn(
        "target digraph is not certified to admit a majority polymorphism; "
        "consistency did not empty, reporting 'maybe' instead of 'yes'",
        stacklevel=2,
    )
    return MAYBE


def random_instance(
    g: Digraph, vars: int, edge_prob: float, pin_count: int, seed: int
) -> CspInstance:
    """Deterministically sample an instance for the given target.

    Every ordered variable pair (loops included) becomes a pattern edge with
    probability ``edge_prob``; ``pin_count`` distinct variables get pinned to
    uniformly chosen target vertices.  The same seed always yields the same
    instance.
    """
    if vars < 0:
        raise ValueError(f"variable count must be nonnegative, got {vars}")
    if not (0.0 <= edge_prob <= 1.0):
        raise ValueError(f"edge probability must lie in [0, 1], got {edge_prob}")
    if not (0 <= pin_count <= vars):
        raise ValueError(f"pin count must lie in [0, {vars}], got {pin_count}")
    if pin_count > 0 and g.n == 0:
        raise ValueError("cannot pin variables against an empty target")
    rng = Random(seed)
    edges = set()
    for u in range(vars):
        for v in range(vars):
            if rng.random() < edge_prob:
                edges.add((u, v))
    pinned = sorted(rng.sample(range(vars), pin_count))
    pins = {v: rng.randrange(g.n) for v in pinned}
    return CspInstance(Digraph(vars, frozenset(edges)), pins)

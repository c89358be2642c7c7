"""Decision procedure for the existence of a Maltsev polymorphism.

A digraph admits a Maltsev polymorphism exactly when it is rectangular and
its out-class quotient does too, hereditarily, until the quotient chain
bottoms out in a disjoint union of directed cycles or an edgeless digraph.
Each quotient is strictly smaller than its parent, so the chain terminates.
The procedure returns a certificate either way: the full chain with the base
kind on acceptance, or the level and rectangularity witness on refusal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .digraph import Digraph, digraph_to_dict
from .errors import InternalInvariantError
from .structure import PLUS, factor, rectangularity_witness

BASE_NULL = "null"
BASE_EDGELESS = "edgeless"
BASE_CYCLES = "disjoint-cycles"


@dataclass(frozen=True)
class MaltsevCertificate:
    """Replayable evidence for a Maltsev decision.

    On acceptance, ``chain`` runs from the input digraph down to the base
    case, each member the out-class quotient of the previous one, and
    ``base_kind`` names the base.  On refusal, ``chain`` stops at the first
    non-rectangular member, whose index is ``level`` and whose violating
    quadruple is ``witness``.
    """

    accepted: bool
    chain: tuple[Digraph, ...]
    base_kind: str | None = None
    level: int | None = None
    witness: tuple[int, int, int, int] | None = None

    def to_json_dict(self) -> dict[str, Any]:
        if self.accepted:
            return {
                "verdict": True,
                "chain": [digraph_to_dict(g) for g in self.chain],
                "base": self.base_kind,
            }
        return {"verdict": False, "level": self.level, "witness": list(self.witness)}


def is_disjoint_union_of_cycles(g: Digraph) -> bool:
    """True when every vertex has in-degree and out-degree exactly one.

    The null digraph qualifies (an empty union); isolated vertices do not.
    """
    return all(len(g.out_sets[v]) == 1 and len(g.in_sets[v]) == 1 for v in range(g.n))


def _base_kind(g: Digraph) -> str | None:
    if g.n == 0:
        return BASE_NULL
    if not g.edges:
        return BASE_EDGELESS
    if is_disjoint_union_of_cycles(g):
        return BASE_CYCLES
    return None


def decide_maltsev(g: Digraph) -> MaltsevCertificate:
    """Decide whether ``g`` admits a Maltsev polymorphism, with a certificate.

    Each round checks rectangularity, accepts the base cases outright, and
    otherwise replaces the digraph by its out-class quotient.  A digraph
    mixing isolated vertices with cycles is not a base case; the isolated
    vertices fall away in the quotient.
    """
    chain = [g]
    current = g
    while True:
        witness = rectangularity_witness(current)
        if witness is not None:
            return MaltsevCertificate(False, tuple(chain), level=len(chain) - 1, witness=witness)
        kind = _base_kind(current)
        if kind is not None:
            return MaltsevCertificate(True, tuple(chain), base_kind=kind)
        nxt = factor(current, PLUS).quotient
        if nxt.n >= current.n:
            raise InternalInvariantError(
                "factoring failed to shrink a rectangular digraph that is not a base case"
            )
        chain.append(nxt)
        current = nxt


def is_maltsev(g: Digraph) -> bool:
    return decide_maltsev(g).accepted

"""Shared sampling helpers for the test suite."""

from random import Random

from dgpoly import Digraph


def seeded_digraph(n: int, seed: int, p: float = 0.5) -> Digraph:
    """Sample a digraph by flipping one coin per ordered vertex pair.

    The pair order is fixed (row-major over (u, v)), so a given seed
    always produces the same graph.
    """
    rng = Random(seed)
    edges = {(u, v) for u in range(n) for v in range(n) if rng.random() < p}
    return Digraph(n, frozenset(edges))


def accepted_seeds(n: int, count: int, p: float = 0.5) -> list[int]:
    """First `count` seeds whose sampled graph passes the Maltsev decider."""
    from dgpoly import is_maltsev

    found = []
    seed = 0
    while len(found) < count:
        if is_maltsev(seeded_digraph(n, seed, p)):
            found.append(seed)
        seed += 1
    return found

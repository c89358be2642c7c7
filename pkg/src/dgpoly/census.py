"""Exhaustive counts of rectangular / Maltsev / majority-admitting digraphs.

Labeled enumeration walks every adjacency bitmask on ``n`` vertices (bit
``u*n + v`` encodes the edge ``(u, v)``); up-to-isomorphism enumeration
keeps exactly the masks that are lexicographically least within their
relabeling orbit.  Counting shards the mask space into contiguous ranges,
classifies each shard independently (optionally in worker processes), and
merges by addition, so worker count never changes a row.

The majority column counts digraphs admitting a majority polymorphism:
established by brute-force search for ``n <= 3``, and through Maltsev
acceptance plus verified synthesis for ``n >= 4`` (a lower bound in
principle, since a digraph could admit a majority operation without a
Maltsev one; at these sizes the brute-force column is the reference).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .decide import MaltsevCertificate, decide_maltsev
from .digraph import Digraph
from .errors import InternalInvariantError
from .oracle import find_polymorphism_bruteforce
from .structure import is_rectangular
from .synth import MAJORITY, synth_majority

MAX_N = 5
LABELED = "labeled"
UP_TO_ISO = "up_to_iso"

CSV_HEADER = "n,mode,total,rectangular,maltsev,majority"


def _check_args(n: int, mode: str) -> None:
    if not (0 <= n <= MAX_N):
        raise ValueError(f"census size must lie in [0, {MAX_N}], got {n}")
    if mode not in (LABELED, UP_TO_ISO):
        raise ValueError(f"mode must be '{LABELED}' or '{UP_TO_ISO}', got {mode!r}")


def _code_to_digraph(n: int, code: int) -> Digraph:
    edges = set()
    bit = 0
    for u in range(n):
        for v in range(n):
            if (code >> bit) & 1:
                edges.add((u, v))
            bit += 1
    return Digraph(n, frozenset(edges))


def _perm_bit_maps(n: int) -> list[tuple[int, ...]]:
    """For each vertex relabeling, where every adjacency bit position lands."""
    maps = []
    for perm in permutations(range(n)):
        maps.append(tuple(perm[u] * n + perm[v] for u in range(n) for v in range(n)))
    return maps


def _is_canonical(code: int, maps: Sequence[tuple[int, ...]]) -> bool:
    for bit_map in maps:
        permuted = 0
        remaining = code
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            permuted |= 1 << bit_map[low.bit_length() - 1]
        if permuted < code:
            return False
    return True


def enumerate_digraphs(n: int, mode: str = LABELED) -> Iterator[Digraph]:
    """Yield every digraph on ``n`` vertices once, labeled or up to isomorphism."""
    _check_args(n, mode)
    total = 1 << (n * n)
    if mode == LABELED:
        for code in range(total):
            yield _code_to_digraph(n, code)
        return
    maps = _perm_bit_maps(n)
    for code in range(total):
        if _is_canonical(code, maps):
            yield _code_to_digraph(n, code)


@dataclass(frozen=True)
class CensusRow:
    n: int
    mode: str
    total: int
    rectangular: int
    maltsev: int
    majority: int

    def to_csv_line(self) -> str:
        return f"{self.n},{self.mode},{self.total},{self.rectangular},{self.maltsev},{self.majority}"

    def to_json_dict(self) -> dict[str, object]:
        return {
            "n": self.n,
            "mode": self.mode,
            "total": self.total,
            "rectangular": self.rectangular,
            "maltsev": self.maltsev,
            "majority": self.majority,
        }


def rows_to_csv(rows: Sequence[CensusRow]) -> str:
    lines = [CSV_HEADER]
    lines.extend(row.to_csv_line() for row in rows)
    return "\n".join(lines) + "\n"


def _count_shard(args: tuple[int, str, int, int]) -> tuple[int, int, int, int]:
    n, mode, lo, hi = args
    maps = _perm_bit_maps(n) if mode == UP_TO_ISO else None
    by_oracle = n <= 3
    total = rectangular = maltsev = majority = 0
    for code in range(lo, hi):
        if maps is not None and not _is_canonical(code, maps):
            continue
        g = _code_to_digraph(n, code)
        total += 1
        rect = is_rectangular(g)
        if rect:
            rectangular += 1
        if by_oracle:
            if rect and decide_maltsev(g).accepted:
                maltsev += 1
            if find_polymorphism_bruteforce(g, MAJORITY) is not None:
                majority += 1
        elif rect and decide_maltsev(g).accepted:
            maltsev += 1
            synth_majority(g)
            majority += 1
    return total, rectangular, maltsev, majority


def count_maltsev(n: int, mode: str = LABELED, workers: int = 1) -> CensusRow:
    """Classify every digraph of one size and return the census row.

    ``workers`` splits the adjacency-mask space into that many contiguous
    ranges; counts merge by addition, so the result does not depend on it.
    """
    _check_args(n, mode)
    if workers < 1:
        raise ValueError(f"worker count must be positive, got {workers}")
    span = 1 << (n * n)
    workers = min(workers, span)
    bounds = [span * w // workers for w in range(workers + 1)]
    shards = [(n, mode, bounds[w], bounds[w + 1]) for w in range(workers)]
    if workers == 1:
        parts = [_count_shard(shards[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_shard, shards))
    total = sum(p[0] for p in parts)
    rectangular = sum(p[1] for p in parts)
    maltsev = sum(p[2] for p in parts)
    majority = sum(p[3] for p in parts)
    return CensusRow(n, mode, total, rectangular, maltsev, majority)


def smallest_rectangular_non_maltsev() -> tuple[Digraph, MaltsevCertificate]:
    """First digraph, by size then adjacency mask, that is rectangular yet refused.

    Its refusal certificate necessarily points at a factoring level past the
    input itself: the violation only appears after quotienting.
    """
    for n in range(MAX_N + 1):
        for code in range(1 << (n * n)):
            g = _code_to_digraph(n, code)
            if not is_rectangular(g):
                continue
            certificate = decide_maltsev(g)
            if not certificate.accepted:
                return g, certificate
    raise InternalInvariantError("no rectangular refusal found within the enumeration ceiling")

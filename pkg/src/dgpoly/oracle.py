"""Brute-force search oracles, independent of the structural machinery.

These searches know nothing about rectangularity or quotients; they decide
existence questions by exhaustion and exist to cross-check the clever paths.
Practical up to four or five vertices.
"""

from __future__ import annotations

from typing import Mapping

from .digraph import Digraph
from .synth import MAJORITY, MALTSEV, TernaryOp, _check_kind


def find_polymorphism_bruteforce(g: Digraph, kind: str) -> TernaryOp | None:
    """Search for a Maltsev or majority polymorphism of ``g`` by backtracking.

    Identity-forced table entries are fixed up front.  The remaining entries
    are assigned in ascending flat-index order with ascending values, with
    forward checking: each assignment immediately prunes, through every edge
    triple it participates in, the value sets of the entries it constrains.
    Returns the first table found (the lexicographically least completion)
    or ``None`` after exhausting the space.
    """
    _check_kind(kind)
    n = g.n
    if n == 0:
        return TernaryOp(0, ())
    size = n * n * n
    value = [-1] * size

    def idx(x: int, y: int, z: int) -> int:
        return (x * n + y) * n + z

    if kind == MALTSEV:
        for x in range(n):
            for y in range(n):
                value[idx(x, y, y)] = x
        for x in range(n):
            for y in range(n):
                value[idx(x, x, y)] = y
    else:
        for x in range(n):
            for y in range(n):
                value[idx(x, x, y)] = x
                value[idx(x, y, x)] = x
                value[idx(y, x, x)] = x

    edge_set = g.edges
    out_masks = g.out_masks
    in_masks = g.in_masks
    loop_mask = 0
    for v in range(n):
        if (v, v) in edge_set:
            loop_mask |= 1 << v

    full = (1 << n) - 1
    domain = [full] * size
    live: dict[int, list[tuple[int, bool]]] = {}
    edges = g.sorted_edges
    for u1, v1 in edges:
        for u2, v2 in edges:
            base_u = (u1 * n + u2) * n
            base_v = (v1 * n + v2) * n
            for u3, v3 in edges:
                tu = base_u + u3
                tv = base_v + v3
                a = value[tu]
                b = value[tv]
                if a >= 0 and b >= 0:
                    if (a, b) not in edge_set:
                        return None
                elif a >= 0:
                    domain[tv] &= out_masks[a]
                elif b >= 0:
                    domain[tu] &= in_masks[b]
                elif tu == tv:
                    domain[tu] &= loop_mask
                else:
                    live.setdefault(tu, []).append((tv, True))
                    live.setdefault(tv, []).append((tu, False))

    branch = []
    for t in range(size):
        if value[t] < 0:
            if domain[t] == 0:
                return None
            if t in live:
                branch.append(t)

    def search(i: int) -> bool:
        if i == len(branch):
            return True
        t = branch[i]
        remaining = domain[t]
        constraints = live[t]
        while remaining:
            low = remaining & -remaining
            remaining ^= low
            v = low.bit_length() - 1
            undo = []
            feasible = True
            for other, t_is_tail in constraints:
                w = value[other]
                if w >= 0:
                    if ((v, w) if t_is_tail else (w, v)) not in edge_set:
                        feasible = False
                        break
                else:
                    old = domain[other]
                    new = old & (out_masks[v] if t_is_tail else in_masks[v])
                    if new != old:
                        domain[other] = new
                        undo.append((other, old))
                        if new == 0:
                            feasible = False
                            break
            if feasible:
                value[t] = v
                if search(i + 1):
                    return True
                value[t] = -1
            for other, old in undo:
                domain[other] = old
        return False

    if not search(0):
        return None
    table = []
    for t in range(size):
        v = value[t]
        if v < 0:
            d = domain[t]
            v = (d & -d).bit_length() - 1
        table.append(v)
    return TernaryOp(n, tuple(table))


def find_homomorphism_bruteforce(
    h: Digraph, g: Digraph, pins: Mapping[int, int] | None = None
) -> dict[int, int] | None:
    """Search for an edge-preserving map ``h -> g`` extending ``pins``.

    Variables are assigned in ascending order with ascending values, checking
    every edge of ``h`` between already-assigned endpoints.  Returns the
    first homomorphism found or ``None``.
    """
    pins = dict(pins or {})
    for var, target in pins.items():
        if not (isinstance(var, int) and 0 <= var < h.n):
            raise ValueError(f"pinned variable {var!r} out of range for {h.n} variables")
        if not (isinstance(target, int) and 0 <= target < g.n):
            raise ValueError(f"pin target {target!r} out of range for {g.n} vertices")

    nh = h.n
    edge_set = g.edges
    needs_loop = [(v, v) in h.edges for v in range(nh)]
    back_out = [[u for u in range(v) if (u, v) in h.edges] for v in range(nh)]
    back_in = [[u for u in range(v) if (v, u) in h.edges] for v in range(nh)]
    assignment = [-1] * nh

    def search(v: int) -> bool:
        if v == nh:
            return True
        candidates = (pins[v],) if v in pins else range(g.n)
        for a in candidates:
            if needs_loop[v] and (a, a) not in edge_set:
                continue
            if any((assignment[u], a) not in edge_set for u in back_out[v]):
                continue
            if any((a, assignment[u]) not in edge_set for u in back_in[v]):
                continue
            assignment[v] = a
            if search(v + 1):
                return True
            assignment[v] = -1
        return False

    if not search(0):
        return None
    return {v: assignment[v] for v in range(nh)}

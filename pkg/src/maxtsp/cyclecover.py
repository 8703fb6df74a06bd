"""Maximum-weight cycle cover (2-factor) of a complete metric graph.

The cover is found by reduction to maximum-weight perfect matching on a
gadget graph rather than by a direct 2-factor algorithm.  For each vertex
u the gadget holds two copies of u, and for each unordered pair {u, v}
two stub nodes joined by a zero-weight internal edge; each stub also
connects to both copies of its own endpoint with weight dist(u, v) per
external edge (the doubled representation of two half-weight edges, so no
halving ever touches the numbers).  Perfect matchings of the gadget
correspond one-to-one with 2-factors of the complete graph: pair {u, v}
is used exactly when its internal edge is left unmatched, which forces
both stubs onto vertex copies.  Matching weight is twice the 2-factor
weight, so the maximum matching decodes to a maximum cover.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Dict, FrozenSet, List, Sequence, Tuple

import numpy as np

from .matching import Matching, WeightedGraph, max_weight_perfect_matching
from .metricspace import Instance

BRUTE_FORCE_COVER_CAP = 9

Cycle = Tuple[int, ...]


def canonical_cycle(cycle: Sequence[int]) -> Cycle:
    """Rotate to the minimum vertex and fix direction (smaller successor first)."""
    cyc = list(cycle)
    if len(cyc) < 3:
        raise ValueError(f"cycle length must be >= 3, got {len(cyc)}")
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return tuple(cyc)


def cycle_edges(cycle: Sequence[int]) -> List[Tuple[int, int]]:
    """Edges of a cycle as sorted pairs, including the wrap-around edge."""
    m = len(cycle)
    return [
        (min(cycle[i], cycle[(i + 1) % m]), max(cycle[i], cycle[(i + 1) % m]))
        for i in range(m)
    ]


def cycle_weight(inst: Instance, cycle: Sequence[int]) -> float:
    d = inst.dist
    m = len(cycle)
    return float(sum(d[cycle[i], cycle[(i + 1) % m]] for i in range(m)))


@dataclass(frozen=True)
class CycleCover:
    """A partition of {0..n-1} into simple cycles of length >= 3.

    cycles are canonicalized (each rotated/oriented, then sorted by first
    vertex); weight is the total over all cycles including wrap-around
    edges.
    """

    cycles: Tuple[Cycle, ...]
    weight: float

    @staticmethod
    def from_cycles(inst: Instance, cycles: Sequence[Sequence[int]]) -> "CycleCover":
        canon = tuple(sorted(canonical_cycle(c) for c in cycles))
        seen: set = set()
        for c in canon:
            for v in c:
                if v in seen:
                    raise ValueError(f"vertex {v} appears in more than one cycle")
                seen.add(v)
        if seen != set(range(inst.n)):
            missing = sorted(set(range(inst.n)) - seen)
            raise ValueError(f"cycles do not cover all vertices, missing {missing[:5]}")
        total = float(sum(cycle_weight(inst, c) for c in canon))
        return CycleCover(cycles=canon, weight=total)

    @property
    def k(self) -> int:
        return len(self.cycles)

    def edge_set(self) -> FrozenSet[Tuple[int, int]]:
        out = set()
        for c in self.cycles:
            out.update(cycle_edges(c))
        return frozenset(out)


def pair_rank(u: int, v: int, n: int) -> int:
    """Rank of the unordered pair {u < v} in lexicographic order."""
    if not 0 <= u < v < n:
        raise ValueError(f"need 0 <= u < v < n, got ({u}, {v})")
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def gadget_nodes(n: int) -> int:
    return 2 * n + n * (n - 1)


def build_gadget(inst: Instance) -> WeightedGraph:
    """Gadget graph whose perfect matchings encode 2-factors of the instance.

    Node layout: copies of vertex u are 2u and 2u+1; the stubs of pair
    {u < v} with rank p are 2n+2p (u side) and 2n+2p+1 (v side).  External
    edges carry dist(u, v) each, standing for two half-weight edges with
    the factor of two kept explicit, so matching weight is exactly twice
    the encoded 2-factor weight.
    """
    n = inst.n
    d = inst.dist
    edges: List[Tuple[int, int, float]] = []
    for u, v in combinations(range(n), 2):
        p = pair_rank(u, v, n)
        su, sv = 2 * n + 2 * p, 2 * n + 2 * p + 1
        w = float(d[u, v])
        edges.append((su, sv, 0.0))
        edges.append((2 * u, su, w))
        edges.append((2 * u + 1, su, w))
        edges.append((2 * v, sv, w))
        edges.append((2 * v + 1, sv, w))
    return WeightedGraph(gadget_nodes(n), edges)


def encode_cover(inst: Instance, cover: CycleCover) -> List[Tuple[int, int]]:
    """Perfect-matching pairs encoding the given cover (test oracle helper)."""
    n = inst.n
    used = cover.edge_set()
    copies_free = {u: [2 * u, 2 * u + 1] for u in range(n)}
    pairs: List[Tuple[int, int]] = []
    for u, v in combinations(range(n), 2):
        p = pair_rank(u, v, n)
        su, sv = 2 * n + 2 * p, 2 * n + 2 * p + 1
        if (u, v) in used:
            pairs.append((copies_free[u].pop(), su))
            pairs.append((copies_free[v].pop(), sv))
        else:
            pairs.append((su, sv))
    return pairs


def decode_matching(inst: Instance, matching: Matching) -> CycleCover:
    """2-factor selected by a perfect matching of the gadget.

    Pair {u, v} is in the cover iff its internal stub edge is unmatched.
    The cover weight is recomputed from the instance distances rather than
    from the (doubled) matching weight.
    """
    n = inst.n
    matched = set(matching.pairs)
    adj: Dict[int, List[int]] = {u: [] for u in range(n)}
    for u, v in combinations(range(n), 2):
        p = pair_rank(u, v, n)
        su, sv = 2 * n + 2 * p, 2 * n + 2 * p + 1
        if (su, sv) not in matched:
            adj[u].append(v)
            adj[v].append(u)
    cycles = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        if len(adj[start]) != 2:
            raise ValueError(
                f"matching does not decode to a 2-factor: vertex {start} "
                f"has degree {len(adj[start])}"
            )
        cyc = [start]
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, b if a == prev else a
        cycles.append(cyc)
    return CycleCover.from_cycles(inst, cycles)


def _best_hamiltonian_small(inst: Instance) -> CycleCover:
    d = inst.dist
    n = inst.n
    best_w = -np.inf
    best = None
    for perm in permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        cyc = (0,) + perm
        w = cycle_weight(inst, cyc)
        if w > best_w:
            best_w, best = w, cyc
    return CycleCover.from_cycles(inst, [best])


def max_weight_cycle_cover(inst: Instance) -> CycleCover:
    """Maximum-weight cycle cover, Step 1 of the gluing pipeline.

    The result's weight is an upper bound on the weight of every tour,
    since a tour is itself a one-cycle cover.  For n <= 4 the only
    feasible covers are single Hamiltonian cycles (no split into parts of
    size >= 3 exists), so those sizes bypass the gadget.
    """
    if inst.n <= 4:
        return _best_hamiltonian_small(inst)
    gadget = build_gadget(inst)
    matching = max_weight_perfect_matching(gadget)
    return decode_matching(inst, matching)


def _partitions_into_cycles(vertices: Tuple[int, ...]):
    """All partitions of the vertex tuple into blocks of size >= 3."""
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for extra in range(2, len(vertices)):
        if len(rest) - extra in (1, 2):
            continue
        for others in combinations(rest, extra):
            block = (first,) + others
            remaining = tuple(v for v in rest if v not in others)
            for tail in _partitions_into_cycles(remaining):
                yield [block] + tail


def _best_cycle_on(inst: Instance, block: Tuple[int, ...]) -> Tuple[float, Cycle]:
    base, rest = block[0], block[1:]
    best_w, best = -np.inf, None
    for perm in permutations(rest):
        if perm[0] > perm[-1]:
            continue
        cyc = (base,) + perm
        w = cycle_weight(inst, cyc)
        if w > best_w:
            best_w, best = w, cyc
    return best_w, best


def cycle_cover_brute_force(inst: Instance) -> CycleCover:
    """Maximum cover by enumerating all cycle partitions (n <= 9 only)."""
    n = inst.n
    if n > BRUTE_FORCE_COVER_CAP:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_COVER_CAP} vertices, got {n}")
    best_cycle_cache: Dict[Tuple[int, ...], Tuple[float, Cycle]] = {}
    best_w, best = -np.inf, None
    for blocks in _partitions_into_cycles(tuple(range(n))):
        total = 0.0
        cycles = []
        for block in blocks:
            if block not in best_cycle_cache:
                best_cycle_cache[block] = _best_cycle_on(inst, block)
            w, cyc = best_cycle_cache[block]
            total += w
            cycles.append(cyc)
        if total > best_w:
            best_w, best = total, cycles
    return CycleCover.from_cycles(inst, best)

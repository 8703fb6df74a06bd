"""Exact solvers: subset dynamic programming and brute-force enumeration.

held_karp_max is the workhorse oracle, exact up to a hard cap of 20
vertices (about 10^8 state transitions, all done in vectorized batches
per visited-set).  brute_force_tour enumerates (n-1)!/2 tours and exists
to cross-check the DP.  minmax_transform flips the problem into its
minimization complement for differential testing against minimizing
solvers; the transformed matrix is generally not a metric and is exempt
from metric validation.
"""

from __future__ import annotations

from itertools import permutations
from typing import List

import numpy as np

from .corealgo import Tour
from .cyclecover import cycle_weight
from .metricspace import Instance

HELD_KARP_CAP = 20
BRUTE_FORCE_TOUR_CAP = 10


def held_karp_max(inst: Instance) -> Tour:
    """Maximum-weight tour by dynamic programming over (visited, last) states.

    States are (visited set containing vertex 0, last vertex); each state
    stores the heaviest path from 0 through exactly the visited set ending
    at last.  Runs in O(2^n * n^2) time and O(2^n * n) memory, so n is
    capped at 20; callers needing larger n must accept an approximation.
    """
    n = inst.n
    if n > HELD_KARP_CAP:
        raise ValueError(f"exact DP capped at {HELD_KARP_CAP} vertices, got {n}")
    d = inst.dist
    size = 1 << n
    all_vertices = np.arange(n)
    dp = np.full((size, n), -np.inf)
    parent = np.full((size, n), -1, dtype=np.int8)
    dp[1, 0] = 0.0
    for mask in range(1, size, 2):
        row = dp[mask]
        members = np.flatnonzero(row > -np.inf)
        if members.size == 0:
            continue
        inside = (mask >> all_vertices) & 1
        outside = np.flatnonzero(inside == 0)
        if outside.size == 0:
            continue
        # candidate weights for extending each member path to each vertex
        # outside the mask; each (mask | bit, j) target has this mask as
        # its unique predecessor, so a plain scatter assignment is exact
        cand = row[members][:, None] + d[np.ix_(members, outside)]
        best = cand.argmax(axis=0)
        targets = mask | (1 << outside)
        dp[targets, outside] = cand[best, np.arange(outside.size)]
        parent[targets, outside] = members[best]
    full = size - 1
    closing = dp[full] + d[:, 0]
    closing[0] = -np.inf
    last = int(np.argmax(closing))
    order: List[int] = []
    mask, j = full, last
    while j != -1:
        order.append(j)
        mask, j = mask ^ (1 << j), int(parent[mask, j])
    order.reverse()
    if len(order) != n:
        raise AssertionError("DP reconstruction did not visit every vertex")
    return Tour.from_order(inst, order)


def brute_force_tour(inst: Instance) -> Tour:
    """Maximum-weight tour by enumerating all (n-1)!/2 distinct tours."""
    n = inst.n
    if n > BRUTE_FORCE_TOUR_CAP:
        raise ValueError(f"brute force capped at {BRUTE_FORCE_TOUR_CAP} vertices, got {n}")
    d = inst.dist.tolist()
    best_w = -np.inf
    best = None
    for perm in permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        w = d[0][perm[0]] + d[perm[-1]][0]
        prev = perm[0]
        for v in perm[1:]:
            w += d[prev][v]
            prev = v
        if w > best_w:
            best_w, best = w, (0,) + perm
    return Tour.from_order(inst, best)


def minmax_transform(inst: Instance) -> Instance:
    """Complement instance: every weight w(e) becomes w_max - w(e).

    A tour is maximum-weight in the original exactly when it is
    minimum-weight here, and for every tour the two weights add up to
    n * w_max.  The result usually violates the triangle inequality and
    is meant for reduction experiments only, so no metric validation is
    applied to it.
    """
    d = inst.dist
    w_max = float(d.max())
    out = w_max - d
    np.fill_diagonal(out, 0.0)
    return Instance(out)


def tour_weight_on(inst: Instance, order) -> float:
    """Weight of an arbitrary vertex order read as a closed tour."""
    return cycle_weight(inst, list(order))

"""Brute-force reference implementations used as ground truth in tests.

Everything here works directly from the definitions by exhaustive search
(with prefix pruning, which only skips provably-dead branches).  No code is
shared with the fast recognizers beyond the core data model.  Hard input
caps raise errors instead of silently running forever.
"""

from __future__ import annotations

import heapq
import itertools
import math
from functools import lru_cache
from typing import Iterator, Literal, Optional, Sequence

from .core import (Axis, Profile, build_rank_index, restrict_alternatives,
                   restrict_voters)
from .recognition import AltTree

MAX_BRUTE_M = 8
MAX_BRUTE_TREE_M = 7
MAX_BRUTE_KEMENY_M = 7
MAX_BRUTE_DISTINCT = 8
MAX_BRUTE_SUBSETS = 10 ** 5
MAX_BRUTE_COMMITTEES = 10 ** 5


# --------------------------------------------------------------------------
# single-peakedness

def _has_valley(rank_row: Sequence[int], axis: Sequence[int]) -> bool:
    for t in range(1, len(axis) - 1):
        if rank_row[axis[t]] > rank_row[axis[t - 1]] \
                and rank_row[axis[t]] > rank_row[axis[t + 1]]:
            return True
    return False


def brute_sp_axes(p: Profile) -> Iterator[Axis]:
    """All witnessing axes, by exhaustive left-to-right construction.
    Prefixes containing a valley are pruned (a valley never disappears)."""
    if p.m > MAX_BRUTE_M:
        raise ValueError(f"m > {MAX_BRUTE_M} exceeds the brute-force cap")
    r = build_rank_index(p).rank
    m = p.m

    def extend(prefix: list[int], used: set[int]) -> Iterator[Axis]:
        if len(prefix) == m:
            yield Axis(tuple(prefix))
            return
        for c in range(m):
            if c in used:
                continue
            if len(prefix) >= 2:
                mid, left = prefix[-1], prefix[-2]
                if any(ri[mid] > ri[left] and ri[mid] > ri[c] for ri in r):
                    continue
            prefix.append(c)
            used.add(c)
            yield from extend(prefix, used)
            prefix.pop()
            used.remove(c)

    return extend([], set())


def brute_sp(p: Profile) -> tuple[Axis, ...]:
    return tuple(brute_sp_axes(p))


def brute_is_sp(p: Profile) -> bool:
    return next(iter(brute_sp_axes(p)), None) is not None


def brute_is_sp_on_axis(p: Profile, axis: Axis) -> bool:
    r = build_rank_index(p).rank
    return not any(_has_valley(ri, axis.order) for ri in r)


# --------------------------------------------------------------------------
# single-crossing

def _crossings_ok(rank_rows: Sequence[Sequence[int]], m: int) -> bool:
    """Each alternative pair changes relative order at most once down the
    sequence of rank rows."""
    for a in range(m):
        for b in range(a + 1, m):
            changes = 0
            prev = rank_rows[0][a] < rank_rows[0][b]
            for row in rank_rows[1:]:
                cur = row[a] < row[b]
                if cur != prev:
                    changes += 1
                    prev = cur
                    if changes > 1:
                        return False
    return True


def brute_is_sc_in_order(p: Profile) -> bool:
    r = build_rank_index(p).rank
    return _crossings_ok(r, p.m)


def brute_sc(p: Profile) -> tuple[tuple[int, ...], ...]:
    """All orderings of the distinct votes under which the profile is
    single-crossing (indices into the first-occurrence list of distinct
    votes).  Exhaustive with prefix pruning."""
    distinct: list[tuple[int, ...]] = []
    for v in p.votes:
        if v not in distinct:
            distinct.append(v)
    d = len(distinct)
    if d > MAX_BRUTE_DISTINCT:
        raise ValueError(f"more than {MAX_BRUTE_DISTINCT} distinct votes")
    ranks = []
    for v in distinct:
        row = [0] * p.m
        for pos, a in enumerate(v):
            row[a] = pos + 1
        ranks.append(row)
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], used: set[int]) -> None:
        if len(prefix) == d:
            out.append(tuple(prefix))
            return
        for t in range(d):
            if t in used:
                continue
            prefix.append(t)
            if _crossings_ok([ranks[i] for i in prefix], p.m):
                used.add(t)
                extend(prefix, used)
                used.remove(t)
            prefix.pop()

    extend([], set())
    return tuple(out)


def brute_is_sc(p: Profile) -> bool:
    distinct: list[tuple[int, ...]] = []
    for v in p.votes:
        if v not in distinct:
            distinct.append(v)
    d = len(distinct)
    if d > MAX_BRUTE_DISTINCT:
        raise ValueError(f"more than {MAX_BRUTE_DISTINCT} distinct votes")
    ranks = []
    for v in distinct:
        row = [0] * p.m
        for pos, a in enumerate(v):
            row[a] = pos + 1
        ranks.append(row)

    def extend(prefix: list[int], used: set[int]) -> bool:
        if len(prefix) == d:
            return True
        for t in range(d):
            if t in used:
                continue
            prefix.append(t)
            if _crossings_ok([ranks[i] for i in prefix], p.m):
                used.add(t)
                if extend(prefix, used):
                    return True
                used.remove(t)
            prefix.pop()
        return False

    return extend([], set())


# --------------------------------------------------------------------------
# single-peaked on trees

@lru_cache(maxsize=16)
def _all_trees(m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Edge lists of all labeled trees on m vertices (standard sequence
    decoding of all (m-2)-tuples over the vertex set)."""
    if m == 1:
        return ((),)
    if m == 2:
        return (((0, 1),),)
    trees = []
    for seq in itertools.product(range(m), repeat=m - 2):
        degree = [1] * m
        for x in seq:
            degree[x] += 1
        edges = []
        avail = [i for i in range(m) if degree[i] == 1]
        heapq.heapify(avail)
        for x in seq:
            leaf = heapq.heappop(avail)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(avail, x)
        u, v = sorted(avail)
        edges.append((u, v))
        trees.append(tuple(sorted(edges)))
    return tuple(trees)


def brute_sp_on_tree(p: Profile) -> Optional[AltTree]:
    """First witnessing tree in enumeration order, or None."""
    m = p.m
    if m > MAX_BRUTE_TREE_M:
        raise ValueError(f"m > {MAX_BRUTE_TREE_M} exceeds the tree cap")
    if m == 1:
        return AltTree(1, ())
    if m == 2:
        return AltTree(2, ((0, 1),))
    r = build_rank_index(p).rank
    better = [[0] * m for _ in range(p.n)]
    for i in range(p.n):
        for a in range(m):
            mask = 0
            for b in range(m):
                if r[i][b] < r[i][a]:
                    mask |= 1 << b
            better[i][a] = mask
    tops = [p.votes[i][0] for i in range(p.n)]
    for edges in _all_trees(m):
        adj = [0] * m
        for u, v in edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        ok = True
        for i in range(p.n):
            bi = better[i]
            ti = tops[i]
            for a in range(m):
                if a != ti and not adj[a] & bi[a]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return AltTree(m, edges)
    return None


# --------------------------------------------------------------------------
# Kemeny

def brute_kemeny(p: Profile) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(minimum summed Kendall-tau distance, all optimal rankings in
    lexicographic order)."""
    if p.m > MAX_BRUTE_KEMENY_M:
        raise ValueError(f"m > {MAX_BRUTE_KEMENY_M} exceeds the cap")
    wins = [[0] * p.m for _ in range(p.m)]
    for v in p.votes:
        for i, a in enumerate(v):
            for b in v[i + 1:]:
                wins[a][b] += 1
    best = None
    argmin: list[tuple[int, ...]] = []
    for perm in itertools.permutations(range(p.m)):
        score = 0
        for i, a in enumerate(perm):
            for b in perm[i + 1:]:
                score += wins[b][a]
        if best is None or score < best:
            best, argmin = score, [perm]
        elif score == best:
            argmin.append(perm)
    return best, tuple(argmin)


# --------------------------------------------------------------------------
# Chamberlin-Courant

def brute_cc(p: Profile, k: int, weights: Sequence[int],
             mode: Literal["utilitarian", "egalitarian"]
             ) -> tuple[int, tuple[frozenset[int], ...]]:
    """(optimal score, all optimal committees sorted lexicographically)."""
    if math.comb(p.m, k) > MAX_BRUTE_COMMITTEES:
        raise ValueError("too many committees for brute force")
    if len(weights) != p.m:
        raise ValueError("weights length must equal m")
    r = build_rank_index(p).rank
    best = None
    argmax: list[frozenset[int]] = []
    for combo in itertools.combinations(range(p.m), k):
        per_voter = [max(weights[r[i][a] - 1] for a in combo)
                     for i in range(p.n)]
        score = sum(per_voter) if mode == "utilitarian" else min(per_voter)
        if best is None or score > best:
            best, argmax = score, [frozenset(combo)]
        elif score == best:
            argmax.append(frozenset(combo))
    return best, tuple(argmax)


# --------------------------------------------------------------------------
# deletion distances

Domain = Literal["sp", "sp-axis", "sc", "sc-order"]


def brute_deletion(p: Profile, domain: Domain,
                   mode: Literal["voters", "alternatives"],
                   axis: Optional[Axis] = None
                   ) -> tuple[int, frozenset[int]]:
    """Minimum deletions (voters or alternatives) so the rest belongs to the
    domain; returns (count, lexicographically first optimal deletion set)."""
    total = p.n if mode == "voters" else p.m
    if 2 ** total > MAX_BRUTE_SUBSETS:
        raise ValueError("too many subsets for brute force")

    def member(q: Profile, sub_axis: Optional[Axis]) -> bool:
        if domain == "sp":
            return brute_is_sp(q)
        if domain == "sp-axis":
            assert sub_axis is not None
            return brute_is_sp_on_axis(q, sub_axis)
        if domain == "sc":
            return brute_is_sc(q)
        if domain == "sc-order":
            return brute_is_sc_in_order(q)
        raise ValueError(f"unknown domain {domain!r}")

    for size in range(total):
        for deleted in itertools.combinations(range(total), size):
            dset = set(deleted)
            keep = [x for x in range(total) if x not in dset]
            if mode == "voters":
                q = restrict_voters(p, keep)
                sub_axis = axis
            else:
                if not keep:
                    continue
                q, remap = restrict_alternatives(p, keep)
                sub_axis = None
                if axis is not None:
                    sub_axis = Axis(tuple(remap[a] for a in axis.order
                                          if a in remap))
            if member(q, sub_axis):
                return size, frozenset(deleted)
    raise AssertionError("a single voter/alternative is always structured")

"""Distances from a profile to structured domains.

Fixed-axis alternative deletion for single-peakedness (dynamic program),
single-crossing voter deletion (free and given order), swap distance from a
vote to the nearest vote single-peaked on an axis, the crossing graph with
exact vertex-cover (alternative deletion) and coloring (alternative
partition) searches, single-peaked voter deletion (exact branch-and-bound
and a certificate-hitting heuristic), and structured width via interval
contraction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .core import (Axis, Profile, VoterOrdering, build_rank_index,
                   kendall_tau, restrict_alternatives, restrict_voters)
from .recognition import (Certificate, is_single_crossing_given_order,
                          is_single_peaked_on, clone_sets,
                          recognize_single_crossing, recognize_single_peaked)


@dataclass(frozen=True)
class DeletionResult:
    """Ids to delete plus a structural witness for the surviving profile.

    The witness refers to the dense re-numbered ids of the restricted
    profile (as produced by the restriction operators on the kept set).
    """

    deleted: frozenset[int]
    witness: Union[Axis, VoterOrdering, None]


@dataclass(frozen=True)
class CrossingGraph:
    """Vertices are alternatives; {a, b} is an edge iff the relative order
    of a and b changes more than once along the voter sequence."""

    m: int
    edges: frozenset[tuple[int, int]]


# --------------------------------------------------------------------------
# fixed-axis alternative deletion for single-peakedness

def sp_alt_deletion_fixed_axis(p: Profile, axis: Axis) -> DeletionResult:
    """Maximum alternative set whose restriction is single-peaked on the
    induced axis, O(n m^3).

    s(j, l) = size of the largest valid subset of the first l axis positions
    whose two rightmost kept positions are j and l; k < j may precede j iff
    no voter ranks a_j below both a_k and a_l (no valley at a_j).
    """
    m = p.m
    if m <= 2:
        return DeletionResult(frozenset(), axis)
    votes = np.asarray(p.votes, dtype=np.int64)
    n = p.n
    ranks = np.empty((n, m), dtype=np.int64)
    ranks[np.arange(n)[:, None], votes] = np.arange(m, dtype=np.int64)[None, :]
    R = ranks[:, np.asarray(axis.order, dtype=np.int64)]  # axis coordinates

    s = [[2] * m for _ in range(m)]
    back: dict[tuple[int, int], int] = {}
    best_len, best_pair = 1, None
    for l in range(1, m):
        col_l = R[:, l]
        for j in range(l):
            col_j = R[:, j]
            valley_voters = col_l < col_j  # voters ranking a_l above a_j
            if valley_voters.any():
                bad = (R[valley_voters, :j] < col_j[valley_voters, None]).any(axis=0)
                good = np.flatnonzero(~bad)
            else:
                good = np.arange(j)
            for k in good.tolist():
                cand = 1 + s[k][j]
                if cand > s[j][l]:
                    s[j][l] = cand
                    back[j, l] = k
            if s[j][l] > best_len:
                best_len, best_pair = s[j][l], (j, l)
    assert best_pair is not None  # any pair of alternatives qualifies
    j, l = best_pair
    kept_pos = [l, j]
    while (j, l) in back:
        j, l = back[j, l], j
        kept_pos.append(j)
    kept_pos.reverse()
    kept = {axis.order[t] for t in kept_pos}
    deleted = frozenset(range(m)) - kept
    sub, remap = restrict_alternatives(p, kept)
    sub_axis = Axis(tuple(remap[axis.order[t]] for t in sorted(kept_pos)))
    ok, _ = is_single_peaked_on(sub, sub_axis)
    if not ok:  # pragma: no cover - DP soundness check
        raise AssertionError("kept set is not single-peaked on the induced axis")
    return DeletionResult(deleted, sub_axis)


# --------------------------------------------------------------------------
# single-crossing voter deletion

def _pair_masks(p: Profile) -> list[int]:
    """For each voter, a bitmask over alternative pairs (a < b) with bit set
    iff the voter prefers b to a (an orientation fingerprint)."""
    r = build_rank_index(p).rank
    masks = []
    for i in range(p.n):
        ri = r[i]
        mask = 0
        bit = 0
        for a in range(p.m):
            for b in range(a + 1, p.m):
                if ri[b] < ri[a]:
                    mask |= 1 << bit
                bit += 1
        masks.append(mask)
    return masks


def sc_voter_deletion(p: Profile) -> DeletionResult:
    """Minimum voters to delete so the rest can be ordered single-crossing,
    O(m^2 n^3): guess the leftmost surviving voter f; the survivors are then
    exactly a chain under inclusion of disagreement sets with f."""
    masks = _pair_masks(p)
    deltas_cache: dict[int, list[int]] = {}

    best_chain: Optional[list[int]] = None
    for f in range(p.n):
        if masks[f] in deltas_cache:
            continue
        deltas_cache[masks[f]] = []
        deltas = [masks[i] ^ masks[f] for i in range(p.n)]
        order = sorted(range(p.n), key=lambda i: (bin(deltas[i]).count("1"), i))
        length = [0] * p.n
        prev = [-1] * p.n
        for idx_j, j in enumerate(order):
            dj = deltas[j]
            length[j] = 1
            for i in order[:idx_j]:
                di = deltas[i]
                if di & ~dj == 0 and length[i] + 1 > length[j]:
                    length[j] = length[i] + 1
                    prev[j] = i
        tail = max(range(p.n), key=lambda j: (length[j], -j))
        chain = []
        while tail != -1:
            chain.append(tail)
            tail = prev[tail]
        chain.reverse()
        if best_chain is None or len(chain) > len(best_chain):
            best_chain = chain
    chain = best_chain or []
    deleted = frozenset(range(p.n)) - set(chain)
    kept_sorted = sorted(set(chain))
    dense = {v: i for i, v in enumerate(kept_sorted)}
    witness = VoterOrdering(tuple(dense[i] for i in chain))
    sub = restrict_voters(p, set(chain))
    ordered = Profile(m=sub.m, n=sub.n,
                      votes=tuple(sub.votes[i] for i in witness.order))
    ok, _ = is_single_crossing_given_order(ordered)
    if not ok:  # pragma: no cover - chain soundness check
        raise AssertionError("surviving chain is not single-crossing")
    return DeletionResult(deleted, witness)


def sc_voter_deletion_given_order(p: Profile) -> DeletionResult:
    """Minimum voters to delete so the surviving subsequence (original order
    kept) is single-crossing: longest subsequence in which every consecutive
    pair lies Kendall-tau-between the subsequence's first voter and the
    later one."""
    n = p.n
    K = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            K[i][j] = K[j][i] = kendall_tau(p.votes[i], p.votes[j])
    best: list[int] = [0] if n else []
    for f in range(n):
        length = [0] * n
        prev = [-1] * n
        length[f] = 1
        for j in range(f + 1, n):
            length[j] = 2
            prev[j] = f
            for i in range(f + 1, j):
                if length[i] >= 2 and K[f][i] + K[i][j] == K[f][j] \
                        and length[i] + 1 > length[j]:
                    length[j] = length[i] + 1
                    prev[j] = i
        tail = max(range(f, n), key=lambda j: (length[j], -j))
        if length[tail] > len(best):
            chain = []
            t = tail
            while t != -1:
                chain.append(t)
                t = prev[t]
            chain.reverse()
            best = chain
    deleted = frozenset(range(n)) - set(best)
    dense = {v: i for i, v in enumerate(best)}
    witness = VoterOrdering(tuple(range(len(best))))
    sub = restrict_voters(p, set(best))
    ok, _ = is_single_crossing_given_order(sub)
    if not ok:  # pragma: no cover
        raise AssertionError("surviving subsequence is not single-crossing")
    return DeletionResult(deleted, witness)


# --------------------------------------------------------------------------
# swap distance from a vote to the nearest single-peaked vote on an axis

def swap_distance_to_axis(v: Sequence[int], axis: Axis) -> int:
    """min over votes u single-peaked on the axis of the Kendall-tau
    distance K(u, v), via the two-table dynamic program over end segments
    A_{i,j} = {first i axis alternatives} + {axis alternatives j..m}, O(m^2).

    s_L(i, j) (resp. s_R) is the cheapest reordering of v restricted to
    A_{i,j} that is single-peaked on the restricted axis with the i-th
    (resp. j-th) axis alternative on top.
    """
    m = len(axis.order)
    if len(set(v)) != m or set(v) != set(range(m)):
        raise ValueError("vote must be a permutation of the axis alternatives")
    if m <= 2:
        return 0
    rank = {a: t for t, a in enumerate(v)}
    order = axis.order
    # above[q][t] = among the first t axis alternatives, how many does v
    # rank above the q-th axis alternative (prefix counts; suffix analogous)
    above_pre = [[0] * (m + 1) for _ in range(m)]
    above_suf = [[0] * (m + 2) for _ in range(m)]
    for q in range(m):
        rq = rank[order[q]]
        for t in range(1, m + 1):
            above_pre[q][t] = above_pre[q][t - 1] + (rank[order[t - 1]] < rq)
        for t in range(m, 0, -1):
            above_suf[q][t] = above_suf[q][t + 1] + (rank[order[t - 1]] < rq)

    # 1-based axis indices; state (i, j) covers A_{i,j} = {first i} + {j..m};
    # i = 0 or j = m+1 mean an empty left/right part.
    INF = 1 << 60
    sL = [[INF] * (m + 2) for _ in range(m + 1)]
    sR = [[INF] * (m + 2) for _ in range(m + 1)]
    sR[0][m] = 0   # singleton {a_m}
    sL[1][m + 1] = 0  # singleton {a_1}
    for size in range(2, m + 1):
        for i in range(0, size + 1):
            j = m + 1 - (size - i)
            if not (0 <= i < j <= m + 1) or j < 1 or i > m:
                continue
            if i >= 1:
                r_i = 1 + above_pre[i - 1][i - 1] + (
                    above_suf[i - 1][j] if j <= m else 0)
                prev = min(sL[i - 1][j] if i - 1 >= 1 else INF,
                           sR[i - 1][j] if j <= m else INF)
                if prev < INF:
                    sL[i][j] = (r_i - 1) + prev
            if j <= m:
                r_j = 1 + (above_pre[j - 1][i] if i >= 1 else 0) \
                    + above_suf[j - 1][j + 1]
                nxt = min(sL[i][j + 1] if i >= 1 else INF,
                          sR[i][j + 1] if j + 1 <= m else INF)
                if nxt < INF:
                    sR[i][j] = (r_j - 1) + nxt
    best = sR[m - 1][m]
    for i in range(1, m):
        best = min(best, sL[i][i + 1])
    return best


# --------------------------------------------------------------------------
# crossing graph, vertex cover, coloring

def crossing_graph(p: Profile) -> CrossingGraph:
    r = build_rank_index(p).rank
    edges = []
    for a in range(p.m):
        for b in range(a + 1, p.m):
            changes = 0
            prev = r[0][a] < r[0][b]
            for i in range(1, p.n):
                cur = r[i][a] < r[i][b]
                if cur != prev:
                    changes += 1
                    prev = cur
            if changes >= 2:
                edges.append((a, b))
    return CrossingGraph(m=p.m, edges=frozenset(edges))


def _min_vertex_cover(m: int, edges: list[tuple[int, int]], limit: int
                      ) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest minimum vertex cover of size <= limit,
    exact branch and bound."""
    best: Optional[tuple[int, ...]] = None

    def search(edges_left: list[tuple[int, int]], chosen: list[int]) -> None:
        nonlocal best
        if best is not None and len(chosen) > len(best):
            return
        if len(chosen) > limit:
            return
        if not edges_left:
            cand = tuple(sorted(chosen))
            if best is None or len(cand) < len(best) or (
                    len(cand) == len(best) and cand < best):
                best = cand
            return
        u, v = edges_left[0]
        for pick in sorted((u, v)):
            rest = [(a, b) for a, b in edges_left if a != pick and b != pick]
            chosen.append(pick)
            search(rest, chosen)
            chosen.pop()

    search(sorted(edges), [])
    return best


def sc_alt_deletion_exact(p: Profile, k: int) -> Optional[DeletionResult]:
    """Delete a minimum vertex cover (<= k) of the crossing graph so the
    surviving alternatives are single-crossing in the given voter order;
    None when no cover of size <= k exists."""
    g = crossing_graph(p)
    cover = _min_vertex_cover(p.m, sorted(g.edges), k)
    if cover is None:
        return None
    deleted = frozenset(cover)
    if len(deleted) == p.m:
        raise ValueError("cannot delete every alternative")
    sub, _ = restrict_alternatives(p, frozenset(range(p.m)) - deleted)
    ok, _ = is_single_crossing_given_order(sub)
    if not ok:  # pragma: no cover - cover soundness check
        raise AssertionError("survivors of the cover are not single-crossing")
    return DeletionResult(deleted, VoterOrdering(tuple(range(p.n))))


def sc_alt_partition(p: Profile, k: int
                     ) -> Optional[tuple[frozenset[int], ...]]:
    """Partition the alternatives into <= k classes, each single-crossing in
    the given voter order, by exact k-coloring of the crossing graph
    (backtracking in id order, smallest feasible color first)."""
    if k < 1:
        raise ValueError("need k >= 1")
    g = crossing_graph(p)
    adj: list[set[int]] = [set() for _ in range(p.m)]
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    color = [-1] * p.m

    def assign(a: int) -> bool:
        if a == p.m:
            return True
        used = {color[b] for b in adj[a] if color[b] != -1}
        cap = min(k, (max(color[:a], default=-1) + 2))
        for c in range(cap):
            if c not in used:
                color[a] = c
                if assign(a + 1):
                    return True
                color[a] = -1
        return False

    if not assign(0):
        return None
    classes = [frozenset(a for a in range(p.m) if color[a] == c)
               for c in range(max(color) + 1)]
    for cls in classes:
        sub, _ = restrict_alternatives(p, cls)
        ok, _ = is_single_crossing_given_order(sub)
        if not ok:  # pragma: no cover - coloring soundness check
            raise AssertionError("color class is not single-crossing")
    return tuple(classes)


# --------------------------------------------------------------------------
# single-peaked voter deletion

def sp_voter_deletion(p: Profile,
                      mode: Literal["exact", "heuristic"] = "exact"
                      ) -> DeletionResult:
    """Voters to delete so the rest is single-peaked.

    exact: branch and bound over forbidden-subprofile certificates (each
    names at most 3 voters, so the branching factor is <= 3); minimum size,
    lexicographically smallest among minima.  Practical for n up to ~20.

    heuristic: repeatedly delete every voter of some certificate; at most 3
    voters per certificate gives deletion count <= 3 x optimum.
    """
    if mode not in ("exact", "heuristic"):
        raise ValueError("mode must be exact or heuristic")

    def certificate_of(kept: frozenset[int]) -> Optional[tuple[int, ...]]:
        kept_sorted = sorted(kept)
        sub = restrict_voters(p, kept)
        res = recognize_single_peaked(sub)
        if isinstance(res, Axis):
            return None
        return tuple(kept_sorted[i] for i in res.voters)

    all_voters = frozenset(range(p.n))
    if mode == "heuristic":
        kept = all_voters
        while True:
            cert = certificate_of(kept)
            if cert is None:
                break
            kept -= frozenset(cert)
            if not kept:  # certificates never name every remaining voter
                raise AssertionError("deleted all voters")  # pragma: no cover
        deleted = all_voters - kept
    else:
        best: Optional[frozenset[int]] = None

        def search(deleted_now: frozenset[int]) -> None:
            nonlocal best
            if best is not None and len(deleted_now) >= len(best):
                return
            cert = certificate_of(all_voters - deleted_now)
            if cert is None:
                cand = deleted_now
                if best is None or len(cand) < len(best) or (
                        len(cand) == len(best)
                        and sorted(cand) < sorted(best)):
                    best = cand
                return
            for v in sorted(set(cert)):
                search(deleted_now | {v})

        search(frozenset())
        assert best is not None
        deleted = best
    sub = restrict_voters(p, all_voters - deleted)
    res = recognize_single_peaked(sub)
    if isinstance(res, Certificate):  # pragma: no cover
        raise AssertionError("survivors are not single-peaked")
    return DeletionResult(deleted, res)


# --------------------------------------------------------------------------
# structured width

MAX_WIDTH_M = 16


def structured_width(p: Profile, domain: Literal["SP", "SC"]
                     ) -> tuple[int, tuple[frozenset[int], ...]]:
    """Minimum over partitions of the alternatives into profile intervals of
    the maximum block size, such that contracting each block to a single
    alternative yields a single-peaked (resp. single-crossing) profile.

    Exhaustive over segmentations of the first vote (every profile interval
    is contiguous there); m is capped.
    """
    if domain not in ("SP", "SC"):
        raise ValueError("domain must be SP or SC")
    if p.m > MAX_WIDTH_M:
        raise ValueError(f"m > {MAX_WIDTH_M} exceeds the structured-width cap")
    m = p.m
    if m == 1:
        return 1, (frozenset({0}),)
    v0 = p.votes[0]
    intervals = set(clone_sets(p))
    intervals.add(frozenset(range(m)))

    def window_ok(start: int, end: int) -> bool:  # inclusive, in v0 coords
        if start == end:
            return True
        return frozenset(v0[start:end + 1]) in intervals

    r = build_rank_index(p).rank

    def contraction(blocks: list[tuple[int, int]]) -> Profile:
        reps = []
        for start, end in blocks:
            reps.append(frozenset(v0[start:end + 1]))
        votes = []
        for i in range(p.n):
            keyed = sorted(range(len(reps)),
                           key=lambda b: min(r[i][a] for a in reps[b]))
            votes.append(tuple(keyed))
        return Profile(m=len(reps), n=p.n, votes=tuple(votes))

    def contraction_structured(blocks: list[tuple[int, int]]) -> bool:
        q = contraction(blocks)
        if domain == "SP":
            return isinstance(recognize_single_peaked(q), Axis)
        return recognize_single_crossing(q) is not None

    best_width = m + 1
    best_blocks: Optional[list[tuple[int, int]]] = None
    for mask in range(1 << (m - 1)):
        blocks = []
        start = 0
        ok = True
        width = 0
        for t in range(m):
            if t == m - 1 or mask >> t & 1:
                if not window_ok(start, t):
                    ok = False
                    break
                blocks.append((start, t))
                width = max(width, t - start + 1)
                start = t + 1
        if not ok or width >= best_width:
            continue
        if contraction_structured(blocks):
            best_width = width
            best_blocks = blocks
    if best_blocks is None:  # pragma: no cover - singleton partition always works
        raise AssertionError("no valid interval partition found")
    return best_width, tuple(frozenset(v0[s:e + 1]) for s, e in best_blocks)

"""Structure-exploiting election outcomes.

Median-voter and generalized-median rules for single-peaked profiles,
Kemeny rankings when the strict majority relation is acyclic, strong-Young
winners for single-peaked/single-crossing profiles, and Chamberlin-Courant
committee selection (utilitarian and egalitarian) via the single-peaked and
single-crossing dynamic programs.

All scores are exact integers; ties among equal-score results are broken
deterministically (see individual docstrings).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

from .core import (Axis, Profile, VoterOrdering, build_rank_index,
                   condorcet_winners, is_strict_majority_transitive,
                   majority_relation, restrict_voters)
from .recognition import is_single_crossing_given_order, is_single_peaked_on


@dataclass(frozen=True)
class ScoringVector:
    """Non-increasing, non-negative integer weights w_1 >= ... >= w_m."""

    weights: tuple[int, ...]

    def __post_init__(self):
        w = self.weights
        if not w or any(int(x) != x or x < 0 for x in w):
            raise ValueError("weights must be non-negative integers")
        if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
            raise ValueError("weights must be non-increasing")

    @staticmethod
    def borda(m: int) -> "ScoringVector":
        return ScoringVector(tuple(range(m - 1, -1, -1)))


@dataclass(frozen=True)
class Committee:
    """A size-k alternative set with its exact score(s)."""

    members: frozenset[int]
    k: int
    utilitarian: Optional[int] = None
    egalitarian: Optional[int] = None

    def __post_init__(self):
        if len(self.members) != self.k:
            raise ValueError("committee size does not match k")


def cc_utilitarian_score(p: Profile, members, w: ScoringVector) -> int:
    """Sum over voters of the best weight any member achieves."""
    r = build_rank_index(p).rank
    return sum(max(w.weights[r[i][a] - 1] for a in members)
               for i in range(p.n))


def cc_egalitarian_score(p: Profile, members, w: ScoringVector) -> int:
    """Minimum over voters of the best weight any member achieves."""
    r = build_rank_index(p).rank
    return min(max(w.weights[r[i][a] - 1] for a in members)
               for i in range(p.n))


def _require_sp(p: Profile, axis: Axis) -> None:
    ok, witness = is_single_peaked_on(p, axis)
    if not ok:
        raise ValueError(f"profile is not single-peaked on axis: valley {witness}")


def median_voter_winners(p: Profile, axis: Axis) -> frozenset[int]:
    """The axis interval between the peaks of the two median voters; equals
    the set of weak Condorcet winners for profiles single-peaked on the axis.
    """
    _require_sp(p, axis)
    pos = axis.position()
    peak_positions = sorted(pos[v[0]] for v in p.votes)
    lo = peak_positions[(p.n + 1) // 2 - 1]
    hi = peak_positions[-(-(p.n + 1) // 2) - 1]
    return frozenset(axis.order[lo:hi + 1])


def generalized_median(peaks: Sequence[int], phantoms: Sequence[int],
                       axis: Axis) -> int:
    """Median along the axis of n reported peaks plus n-1 phantom peaks."""
    n = len(peaks)
    if len(phantoms) != n - 1:
        raise ValueError("need exactly n-1 phantom peaks")
    pos = axis.position()
    positions = sorted(pos[a] for a in list(peaks) + list(phantoms))
    return axis.order[positions[n - 1]]


@dataclass(frozen=True)
class KemenyResult:
    """All Kemeny-optimal rankings of a profile with an acyclic strict
    majority relation: exactly the linearizations of that relation.

    ``rankings`` lists up to ``limit`` linearizations in lexicographic
    order; ``count`` is always the exact total.  ``score`` is the summed
    Kendall-tau distance to the profile (minimized).
    """

    count: int
    rankings: tuple[tuple[int, ...], ...]
    score: int
    truncated: bool


def kemeny_structured(p: Profile, limit: int = 128) -> Optional[KemenyResult]:
    """Kemeny rankings via the majority relation; None when the strict
    majority relation is cyclic (the shortcut does not apply)."""
    rel = majority_relation(p)
    ok, _ = is_strict_majority_transitive(rel)
    if not ok:
        return None
    m = p.m
    succ = [[b for b in range(m) if rel.strict_beats(a, b)] for a in range(m)]
    preds_left = [sum(rel.strict_beats(b, a) for b in range(m)) for a in range(m)]

    count_memo: dict[int, int] = {}

    def count_exts(mask: int, pl: tuple[int, ...]) -> int:
        if mask == (1 << m) - 1:
            return 1
        if mask in count_memo:
            return count_memo[mask]
        total = 0
        for a in range(m):
            if mask >> a & 1 or pl[a]:
                continue
            npl = list(pl)
            npl[a] = -1
            for b in succ[a]:
                if not mask >> b & 1:
                    npl[b] -= 1
            total += count_exts(mask | 1 << a, tuple(npl))
        count_memo[mask] = total
        return total

    count = count_exts(0, tuple(preds_left))

    rankings: list[tuple[int, ...]] = []

    def enumerate_exts(prefix: list[int], mask: int, pl: list[int]) -> None:
        if len(rankings) >= limit:
            return
        if len(prefix) == m:
            rankings.append(tuple(prefix))
            return
        for a in range(m):
            if mask >> a & 1 or pl[a]:
                continue
            for b in succ[a]:
                if not mask >> b & 1:
                    pl[b] -= 1
            pl[a] = -1
            prefix.append(a)
            enumerate_exts(prefix, mask | 1 << a, pl)
            prefix.pop()
            pl[a] = 0
            for b in succ[a]:
                if not mask >> b & 1:
                    pl[b] += 1

    enumerate_exts([], 0, list(preds_left))
    score = _kemeny_score(p, rankings[0]) if rankings else 0
    return KemenyResult(count=count, rankings=tuple(rankings), score=score,
                        truncated=count > len(rankings))


def _kemeny_score(p: Profile, ranking: Sequence[int]) -> int:
    """Summed Kendall-tau distance from the ranking to all votes."""
    rel = majority_relation(p)
    score = 0
    for i, a in enumerate(ranking):
        for b in ranking[i + 1:]:
            score += rel.wins[b][a]
    return score


def strong_young_winners_structured(
        p: Profile, witness: Union[Axis, VoterOrdering]
) -> tuple[frozenset[int], int]:
    """Alternatives reachable as strong Condorcet winners by deleting at
    most one voter, with the deletion count needed (0 or 1).  For
    single-peaked/single-crossing profiles this minimum is the exact
    strong-Young optimum for the winning alternatives."""
    if isinstance(witness, Axis):
        _require_sp(p, witness)
    elif isinstance(witness, VoterOrdering):
        ordered = Profile(m=p.m, n=p.n,
                          votes=tuple(p.votes[i] for i in witness.order))
        ok, _ = is_single_crossing_given_order(ordered)
        if not ok:
            raise ValueError("profile is not single-crossing in the given order")
    else:
        raise TypeError("witness must be an Axis or a VoterOrdering")
    _, strong = condorcet_winners(p)
    if strong is not None:
        return frozenset({strong}), 0
    if p.n == 1:
        return frozenset({p.votes[0][0]}), 0
    winners = set()
    for i in range(p.n):
        rest = restrict_voters(p, set(range(p.n)) - {i})
        _, s = condorcet_winners(rest)
        if s is not None:
            winners.add(s)
    if not winners:  # pragma: no cover - impossible for SP/SC profiles
        raise AssertionError("no winner within one deletion on a structured profile")
    return frozenset(winners), 1


# --------------------------------------------------------------------------
# Chamberlin-Courant on single-peaked profiles

def _axis_weight_matrix(p: Profile, axis: Axis, w: ScoringVector) -> np.ndarray:
    """W[i, t] = weight voter i assigns to the t-th alternative on the axis."""
    votes = np.asarray(p.votes, dtype=np.int64)
    n, m = votes.shape
    ranks = np.empty((n, m), dtype=np.int64)
    ranks[np.arange(n)[:, None], votes] = np.arange(m, dtype=np.int64)[None, :]
    weights = np.asarray(w.weights, dtype=np.int64)
    return weights[ranks[:, np.asarray(axis.order, dtype=np.int64)]]


def cc_utilitarian_sp(p: Profile, axis: Axis, k: int,
                      w: ScoringVector) -> Committee:
    """Left-to-right dynamic program over the axis, O(m^2 n + m^2 k).

    Adding committee member a_t to the right of previous member a_p gains
    each voter max(0, W[i,t] - W[i,p]); single-peakedness of the weight rows
    along the axis makes these gains telescope to the true best-member value.
    Ties are broken by deterministic backtracking preferring smaller
    alternative ids at each step.
    """
    _require_sp(p, axis)
    if not 1 <= k <= p.m:
        raise ValueError("need 1 <= k <= m")
    if len(w.weights) != p.m:
        raise ValueError("scoring vector length must equal m")
    m = p.m
    W = _axis_weight_matrix(p, axis, w)
    gain = np.empty((m, m), dtype=np.int64)  # gain[t, q]: add a_t after a_q
    for t in range(m):
        gain[t] = np.maximum(W[:, t][:, None] - W, 0).sum(axis=0)
    NEG = np.int64(-1) << 40
    z = np.full((m, k + 1), NEG, dtype=np.int64)
    z[:, 1] = W.sum(axis=0)
    for j in range(2, k + 1):
        for t in range(j - 1, m):
            z[t, j] = (z[:t, j - 1] + gain[t, :t]).max()
    best = int(z[:, k].max())
    order = axis.order

    # reconstruct, preferring smaller alternative ids among optimal choices
    def pick(cands: list[int]) -> int:
        return min(cands, key=lambda t: order[t])

    t = pick([t for t in range(m) if z[t, k] == best])
    members = [order[t]]
    for j in range(k, 1, -1):
        target = int(z[t, j])
        cands = [q for q in range(t)
                 if int(z[q, j - 1] + gain[t, q]) == target]
        t = pick(cands)
        members.append(order[t])
    committee = frozenset(members)
    score = cc_utilitarian_score(p, committee, w)
    if score != best:  # pragma: no cover - DP soundness check
        raise AssertionError("DP score disagrees with direct recomputation")
    return Committee(members=committee, k=k, utilitarian=score)


def cc_egalitarian_sp(p: Profile, axis: Axis, k: int
                      ) -> tuple[Committee, int]:
    """Binary search on the rank bound b: every voter's top-b set is an axis
    interval; k committee members must stab all intervals (greedy
    left-to-right).  Returns the committee and the minimal achievable b.

    The committee's egalitarian score under Borda weights is m - b.
    """
    _require_sp(p, axis)
    if not 1 <= k <= p.m:
        raise ValueError("need 1 <= k <= m")
    m = p.m
    pos = axis.position()

    def intervals(b: int) -> Optional[list[tuple[int, int]]]:
        out = []
        for v in p.votes:
            top = [pos[a] for a in v[:b]]
            lo, hi = min(top), max(top)
            if hi - lo + 1 != b:  # pragma: no cover - guaranteed by SP
                return None
            out.append((lo, hi))
        return out

    def stab(b: int) -> Optional[list[int]]:
        ivs = intervals(b)
        if ivs is None:
            return None
        ivs.sort(key=lambda t: t[1])
        points: list[int] = []
        last = -1
        for lo, hi in ivs:
            if lo > last:
                points.append(hi)
                last = hi
                if len(points) > k:
                    return None
        return points

    lo_b, hi_b = 1, m
    best_points = None
    while lo_b < hi_b:
        mid = (lo_b + hi_b) // 2
        pts = stab(mid)
        if pts is not None:
            hi_b = mid
            best_points = pts
        else:
            lo_b = mid + 1
    if best_points is None:
        best_points = stab(hi_b)
    b = hi_b
    members = {axis.order[t] for t in best_points}
    for a in range(m):  # pad deterministically to size k
        if len(members) == k:
            break
        members.add(a)
    borda = ScoringVector.borda(m)
    committee = Committee(members=frozenset(members), k=k,
                          egalitarian=cc_egalitarian_score(p, members, borda))
    return committee, b


# --------------------------------------------------------------------------
# Chamberlin-Courant on single-crossing profiles

Mode = Literal["utilitarian", "egalitarian"]


def cc_sc(p: Profile, order: VoterOrdering, k: int, w: ScoringVector,
          mode: Mode) -> Committee:
    """District dynamic program over the single-crossing voter ordering,
    O(n^2 m k): an optimal committee's best-response assignment splits the
    ordering into contiguous districts, each represented by one member.

    Ties are broken by deterministic backtracking preferring smaller
    alternative ids; the committee is padded with the smallest unused ids
    when districts share representatives.
    """
    if mode not in ("utilitarian", "egalitarian"):
        raise ValueError("mode must be utilitarian or egalitarian")
    if not 1 <= k <= p.m:
        raise ValueError("need 1 <= k <= m")
    if len(w.weights) != p.m:
        raise ValueError("scoring vector length must equal m")
    votes = tuple(p.votes[i] for i in order.order)
    ordered = Profile(m=p.m, n=p.n, votes=votes)
    ok, _ = is_single_crossing_given_order(ordered)
    if not ok:
        raise ValueError("profile is not single-crossing in the given order")
    n, m = p.n, p.m
    r = build_rank_index(ordered).rank
    weight = [[w.weights[r[i][a] - 1] for a in range(m)] for i in range(n)]

    NEG = -1 << 60
    util = mode == "utilitarian"
    # prefix[i][a] = total weight of a over the first i ordered voters
    if util:
        prefix = [[0] * m]
        for i in range(n):
            prefix.append([prefix[-1][a] + weight[i][a] for a in range(m)])

    # d[i][j]: best value covering the first i voters with j districts
    d = [[NEG] * (k + 1) for _ in range(n + 1)]
    d[0][0] = 0 if util else 1 << 60
    choice: dict[tuple[int, int], tuple[int, int]] = {}  # (i, j) -> (i', a)
    for i in range(1, n + 1):
        if util:
            district = None
        else:
            running_min = [1 << 60] * m
        for i2 in range(i - 1, -1, -1):
            if not util:
                for a in range(m):
                    x = weight[i2][a]
                    if x < running_min[a]:
                        running_min[a] = x
            for j in range(1, k + 1):
                base = d[i2][j - 1]
                if base == NEG:
                    continue
                if util:
                    vals = [prefix[i][a] - prefix[i2][a] for a in range(m)]
                    cand = [(base + vals[a], a) for a in range(m)]
                else:
                    cand = [(min(base, running_min[a]), a) for a in range(m)]
                val, a = max(cand, key=lambda t: (t[0], -t[1]))
                if val > d[i][j] or (val == d[i][j]
                                     and (i, j) in choice and a < choice[i, j][1]):
                    d[i][j] = val
                    choice[i, j] = (i2, a)
    best = d[n][k]
    members: set[int] = set()
    i, j = n, k
    while j > 0:
        i2, a = choice[i, j]
        members.add(a)
        i, j = i2, j - 1
    for a in range(m):  # pad deterministically to size k
        if len(members) == k:
            break
        members.add(a)
    mem = frozenset(members)
    if util:
        score = cc_utilitarian_score(ordered, mem, w)
        if score < best:  # pragma: no cover - DP soundness check
            raise AssertionError("district DP exceeded the true score")
        return Committee(members=mem, k=k, utilitarian=score)
    score = cc_egalitarian_score(ordered, mem, w)
    if score < best:  # pragma: no cover
        raise AssertionError("district DP exceeded the true score")
    return Committee(members=mem, k=k, egalitarian=score)

"""Core data model: profiles, rank indexing, restriction operators,
Kendall-tau distance, majority relation and Condorcet winners.

Alternatives and voters are dense 0-based integer ids throughout; optional
alternative names are metadata only.  All values are immutable after
construction and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence


Vote = tuple[int, ...]


@dataclass(frozen=True)
class Profile:
    """A list of n complete strict rankings over m alternatives.

    Each vote is a permutation of 0..m-1, ordered most-to-least preferred.
    Duplicate votes are allowed and preserved.
    """

    m: int
    n: int
    votes: tuple[Vote, ...]
    names: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("profile needs m >= 1 and n >= 1")
        if len(self.votes) != self.n:
            raise ValueError("vote count does not match n")
        full = frozenset(range(self.m))
        for i, v in enumerate(self.votes):
            if len(v) != self.m or frozenset(v) != full:
                raise ValueError(f"vote {i} is not a permutation of 0..{self.m - 1}")
        if self.names is not None and len(self.names) != self.m:
            raise ValueError("names length does not match m")

    @staticmethod
    def from_votes(votes: Sequence[Sequence[int]],
                   names: Optional[Sequence[str]] = None) -> "Profile":
        vt = tuple(tuple(v) for v in votes)
        if not vt:
            raise ValueError("profile needs at least one vote")
        return Profile(m=len(vt[0]), n=len(vt), votes=vt,
                       names=tuple(names) if names is not None else None)

    def alternative_name(self, a: int) -> str:
        if self.names is not None:
            return self.names[a]
        return str(a)


@dataclass(frozen=True)
class RankIndex:
    """Positions of alternatives in each vote; rank[i][a] = 1 means voter i
    ranks alternative a first."""

    rank: tuple[tuple[int, ...], ...]

    def __getitem__(self, voter: int) -> tuple[int, ...]:
        return self.rank[voter]


@dataclass(frozen=True)
class Axis:
    """A left-to-right ordering of the alternatives."""

    order: tuple[int, ...]

    def __post_init__(self):
        if frozenset(self.order) != frozenset(range(len(self.order))):
            raise ValueError("axis is not a permutation of the alternatives")

    def position(self) -> tuple[int, ...]:
        """pos[a] = index of alternative a on the axis."""
        pos = [0] * len(self.order)
        for idx, a in enumerate(self.order):
            pos[a] = idx
        return tuple(pos)

    def reversed(self) -> "Axis":
        return Axis(tuple(reversed(self.order)))


@dataclass(frozen=True)
class VoterOrdering:
    """A left-to-right ordering of the voters."""

    order: tuple[int, ...]

    def __post_init__(self):
        if frozenset(self.order) != frozenset(range(len(self.order))):
            raise ValueError("ordering is not a permutation of the voters")


@dataclass(frozen=True)
class MajorityRelation:
    """Pairwise win counts: wins[a][b] = number of voters preferring a to b."""

    n: int
    wins: tuple[tuple[int, ...], ...]

    def weak_beats(self, a: int, b: int) -> bool:
        return self.wins[a][b] >= self.wins[b][a]

    def strict_beats(self, a: int, b: int) -> bool:
        return self.wins[a][b] > self.wins[b][a]


def build_rank_index(p: Profile) -> RankIndex:
    rows = []
    for v in p.votes:
        r = [0] * p.m
        for pos, a in enumerate(v):
            r[a] = pos + 1
        rows.append(tuple(r))
    return RankIndex(rank=tuple(rows))


def restrict_alternatives(p: Profile, keep) -> tuple[Profile, dict[int, int]]:
    """Induced subprofile on a subset of alternatives.

    Ids are remapped densely; returns the profile and the old-id -> new-id map.
    """
    keep = frozenset(keep)
    if not keep:
        raise ValueError("cannot restrict to an empty alternative set")
    if not keep <= frozenset(range(p.m)):
        raise ValueError("keep set contains unknown alternatives")
    old_ids = sorted(keep)
    remap = {a: i for i, a in enumerate(old_ids)}
    votes = tuple(tuple(remap[a] for a in v if a in keep) for v in p.votes)
    names = tuple(p.names[a] for a in old_ids) if p.names is not None else None
    return Profile(m=len(old_ids), n=p.n, votes=votes, names=names), remap


def restrict_voters(p: Profile, keep) -> Profile:
    """Subprofile on a subset of voters (relative order preserved)."""
    keep = frozenset(keep)
    if not keep:
        raise ValueError("cannot restrict to an empty voter set")
    if not keep <= frozenset(range(p.n)):
        raise ValueError("keep set contains unknown voters")
    votes = tuple(p.votes[i] for i in sorted(keep))
    return Profile(m=p.m, n=len(votes), votes=votes, names=p.names)


def reverse_profile(p: Profile) -> Profile:
    return Profile(m=p.m, n=p.n,
                   votes=tuple(tuple(reversed(v)) for v in p.votes),
                   names=p.names)


def kendall_tau(u: Sequence[int], v: Sequence[int]) -> int:
    """Number of alternative pairs on which rankings u and v disagree.

    Computed as the inversion count of u relative to v by merge-count,
    O(m log m).
    """
    if len(u) != len(v) or frozenset(u) != frozenset(v):
        raise ValueError("votes must rank the same alternatives")
    pos = {a: i for i, a in enumerate(v)}
    seq = [pos[a] for a in u]
    return _count_inversions(seq)


def _count_inversions(seq: list[int]) -> int:
    n = len(seq)
    if n < 2:
        return 0
    work = list(seq)
    buf = [0] * n
    inv = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if work[i] <= work[j]:
                    buf[k] = work[i]
                    i += 1
                else:
                    buf[k] = work[j]
                    j += 1
                    inv += mid - i
                k += 1
            buf[k:hi] = work[i:mid] if i < mid else work[j:hi]
            work[lo:hi] = buf[lo:hi]
        width *= 2
    return inv


def delta_pairs(u: Sequence[int], v: Sequence[int]) -> frozenset[tuple[int, int]]:
    """The set of (unordered, stored sorted) pairs on which u and v disagree."""
    pu = {a: i for i, a in enumerate(u)}
    pv = {a: i for i, a in enumerate(v)}
    m = len(u)
    out = []
    for a in range(m):
        for b in range(a + 1, m):
            if (pu[a] < pu[b]) != (pv[a] < pv[b]):
                out.append((a, b))
    return frozenset(out)


def majority_relation(p: Profile) -> MajorityRelation:
    m = p.m
    wins = [[0] * m for _ in range(m)]
    for v in p.votes:
        for i, a in enumerate(v):
            row = wins[a]
            for b in v[i + 1:]:
                row[b] += 1
    return MajorityRelation(n=p.n, wins=tuple(tuple(r) for r in wins))


def condorcet_winners(p: Profile) -> tuple[frozenset[int], Optional[int]]:
    """(weak Condorcet winners, strong Condorcet winner or None)."""
    rel = majority_relation(p)
    weak = []
    strong = None
    for a in range(p.m):
        if all(rel.weak_beats(a, b) for b in range(p.m) if b != a):
            weak.append(a)
        if all(rel.strict_beats(a, b) for b in range(p.m) if b != a):
            strong = a
    return frozenset(weak), strong


def is_strict_majority_transitive(rel: MajorityRelation
                                  ) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """True iff the strict majority relation is acyclic.

    On failure returns a witness triple: a strict 3-cycle (a, b, c) if one
    exists, otherwise the first three alternatives of a longer strict cycle
    (possible because ties make the relation non-total).
    """
    m = len(rel.wins)
    cycle = _find_cycle([[b for b in range(m) if rel.strict_beats(a, b)]
                         for a in range(m)])
    if cycle is None:
        return True, None
    for a in range(m):
        for b in range(m):
            if not rel.strict_beats(a, b):
                continue
            for c in range(m):
                if rel.strict_beats(b, c) and rel.strict_beats(c, a):
                    return False, (a, b, c)
    return False, tuple(cycle[:3])


def _find_cycle(adj: list[list[int]]) -> Optional[list[int]]:
    """A cycle in a digraph given as adjacency lists, or None if acyclic."""
    n = len(adj)
    color = [0] * n  # 0 unseen, 1 on stack, 2 done
    parent: dict[int, int] = {}
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(adj[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if color[nxt] == 1:
                    cyc = [node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cyc.append(cur)
                    cyc.reverse()
                    return cyc
            if not advanced:
                color[node] = 2
                stack.pop()
    return None

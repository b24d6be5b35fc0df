"""Membership tests with witnesses for restricted preference domains.

Covers: single-peaked (fixed axis, free axis, all axes), single-crossing
(given order and free order), single-peaked on trees, single-crossing on
trees, group-separable, value/best/medium/worst restriction, single-caved,
profiles that are both single-peaked and single-crossing, consecutive-ones
checking as an independent cross-validation path, and forbidden-subprofile
certificates for non-membership.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .core import (Axis, Profile, VoterOrdering, build_rank_index,
                   kendall_tau, reverse_profile)


class InternalInvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


# --------------------------------------------------------------------------
# certificates

CERT_SP_TRIPLE = "sp-triple"          # 3 voters x 3 alternatives
CERT_SP_VALLEY_PAIR = "sp-valley-pair"  # 2 voters x 4 alternatives
CERT_SC_GAMMA = "sc-gamma"            # 3 voters x 3 alternative pairs
CERT_SC_DELTA = "sc-delta"            # 4 voters x 2 alternative pairs
CERT_VR_CONDORCET = "vr-condorcet"    # 3 voters x 3 alternatives


@dataclass(frozen=True)
class Certificate:
    """A forbidden-subprofile witness proving non-membership.

    ``alternatives`` is pattern-specific:
      sp-triple       (a, b, c):    {b,c} >_i a, {a,c} >_j b, {a,b} >_k c
      sp-valley-pair  (a, b, c, d): {a,d} >_i b >_i c and {c,d} >_j b >_j a
      sc-gamma        (a, b, c, d, e, f): three oriented pairs, voter t
                       flips exactly pair t
      sc-delta        (a, b, c, d): two pairs realizing all four
                       orientation combinations across four voters
      vr-condorcet    (a, b, c):    three voters forming a Condorcet cycle
    """

    kind: str
    voters: tuple[int, ...]
    alternatives: tuple[int, ...]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "voters": list(self.voters),
                "alternatives": list(self.alternatives)}


def verify_certificate(p: Profile, cert: Certificate) -> bool:
    """Re-check a certificate against the profile, field by field."""
    r = build_rank_index(p).rank

    def pref(i: int, a: int, b: int) -> bool:
        return r[i][a] < r[i][b]

    vs, al = cert.voters, cert.alternatives
    if any(v < 0 or v >= p.n for v in vs):
        return False
    if any(a < 0 or a >= p.m for a in al):
        return False
    if cert.kind == CERT_SP_TRIPLE:
        if len(vs) != 3 or len(set(al)) != 3:
            return False
        i, j, k = vs
        a, b, c = al
        return (pref(i, b, a) and pref(i, c, a)
                and pref(j, a, b) and pref(j, c, b)
                and pref(k, a, c) and pref(k, b, c))
    if cert.kind == CERT_SP_VALLEY_PAIR:
        if len(vs) != 2 or len(set(al)) != 4:
            return False
        i, j = vs
        a, b, c, d = al
        return (pref(i, a, b) and pref(i, d, b) and pref(i, b, c)
                and pref(j, c, b) and pref(j, d, b) and pref(j, b, a))
    if cert.kind == CERT_SC_GAMMA:
        if len(vs) != 3 or len(al) != 6:
            return False
        i, j, k = vs
        a, b, c, d, e, f = al
        pairs = {frozenset((a, b)), frozenset((c, d)), frozenset((e, f))}
        if a == b or c == d or e == f or len(pairs) != 3:
            return False
        return (pref(i, b, a) and pref(i, c, d) and pref(i, e, f)
                and pref(j, a, b) and pref(j, d, c) and pref(j, e, f)
                and pref(k, a, b) and pref(k, c, d) and pref(k, f, e))
    if cert.kind == CERT_SC_DELTA:
        if len(vs) != 4 or len(al) != 4:
            return False
        i, j, k, l = vs
        a, b, c, d = al
        if a == b or c == d or frozenset((a, b)) == frozenset((c, d)):
            return False
        return (pref(i, a, b) and pref(i, c, d)
                and pref(j, b, a) and pref(j, c, d)
                and pref(k, a, b) and pref(k, d, c)
                and pref(l, b, a) and pref(l, d, c))
    if cert.kind == CERT_VR_CONDORCET:
        if len(vs) != 3 or len(set(al)) != 3:
            return False
        i, j, k = vs
        a, b, c = al
        return (pref(i, a, b) and pref(i, b, c)
                and pref(j, b, c) and pref(j, c, a)
                and pref(k, c, a) and pref(k, a, b))
    return False


# --------------------------------------------------------------------------
# single-peakedness on a fixed axis

def is_single_peaked_on(p: Profile, axis: Axis
                        ) -> tuple[bool, Optional[tuple[int, tuple[int, int, int]]]]:
    """Check for local valleys along the axis.

    On failure returns (voter, (x, y, z)) where x, y, z appear consecutively
    on the axis and the voter ranks y below both x and z.
    """
    if len(axis.order) != p.m:
        raise ValueError("axis size does not match profile")
    r = build_rank_index(p).rank
    order = axis.order
    for i in range(p.n):
        ri = r[i]
        for t in range(1, p.m - 1):
            x, y, z = order[t - 1], order[t], order[t + 1]
            if ri[y] > ri[x] and ri[y] > ri[z]:
                return False, (i, (x, y, z))
    return True, None


# --------------------------------------------------------------------------
# single-peaked recognition (two-stage outside-in placement, O(mn))

def recognize_single_peaked(p: Profile) -> Union[Axis, Certificate]:
    """Build a witnessing axis from the outside in, or return a
    forbidden-subprofile certificate.

    Free placement choices are resolved left-first so the returned axis is
    deterministic; ``all_single_peaked_axes`` captures the full choice set.
    """
    if p.m <= 2:
        return Axis(tuple(range(p.m)))
    votes = np.asarray(p.votes, dtype=np.int64)
    n, m = votes.shape
    ranks = np.empty((n, m), dtype=np.int64)
    ranks[np.arange(n)[:, None], votes] = np.arange(m, dtype=np.int64)[None, :]

    placed = np.zeros(m, dtype=bool)
    bot = np.full(n, m - 1, dtype=np.int64)
    top = np.zeros(n, dtype=np.int64)
    rows = np.arange(n)

    def advance(ptr: np.ndarray, step: int) -> np.ndarray:
        cur = votes[rows, ptr]
        bad = rows[placed[cur]]
        while bad.size:
            ptr[bad] += step
            bad = bad[placed[votes[bad, ptr[bad]]]]
        return votes[rows, ptr]

    def triple_cert(alts: Sequence[int], bottoms: np.ndarray) -> Certificate:
        a, b, c = sorted(alts)[:3]
        i = int(np.flatnonzero(bottoms == a)[0])
        j = int(np.flatnonzero(bottoms == b)[0])
        k = int(np.flatnonzero(bottoms == c)[0])
        cert = Certificate(CERT_SP_TRIPLE, (i, j, k), (a, b, c))
        if not verify_certificate(p, cert):  # pragma: no cover - safety net
            return _sp_pattern_scan(p)
        return cert

    left: list[int] = []
    right_rev: list[int] = []  # reversed right half; appended outside-in
    remaining = m

    # first stage: place bottom-ranked alternatives until both ends are seeded
    while remaining > 0 and not right_rev:
        bottoms = advance(bot, -1)
        B = np.flatnonzero(np.bincount(bottoms, minlength=m))
        if B.size > 2:
            return triple_cert(B.tolist(), bottoms)
        if B.size == 1:
            left.append(int(B[0]))
        else:
            x, y = int(B[0]), int(B[1])
            left.append(x)
            right_rev.append(y)
        placed[B] = True
        remaining -= B.size

    # second stage: grow both ends towards the middle
    while remaining >= 2:
        ell = left[-1]
        r = right_rev[-1]
        bottoms = advance(bot, -1)
        tops = advance(top, 1)
        B = np.flatnonzero(np.bincount(bottoms, minlength=m))
        if B.size > 2:
            return triple_cert(B.tolist(), bottoms)
        col_l, col_r = ranks[:, ell], ranks[:, r]
        L: list[int] = []
        R: list[int] = []
        membership: dict[int, tuple[np.ndarray, np.ndarray]] = {}
        for x in B.tolist():
            col_x = ranks[:, x]
            nx = tops != x
            in_l = nx & (col_r < col_x) & (col_x < col_l)
            in_r = nx & (col_l < col_x) & (col_x < col_r)
            membership[x] = (in_l, in_r)
            if in_l.any():
                L.append(x)
            if in_r.any():
                R.append(x)
        if len(L) > 1 or len(R) > 1:
            pair = L if len(L) > 1 else R
            anchor = r if len(L) > 1 else ell
            cert = _triple_role_cert(p, ranks, pair[0], pair[1], anchor)
            return cert if cert is not None else _sp_pattern_scan(p)
        both = [x for x in L if x in R]
        if both:
            x = both[0]
            in_l, in_r = membership[x]
            i = int(np.flatnonzero(in_l)[0])
            j = int(np.flatnonzero(in_r)[0])
            free = (~placed) & (ranks[i] < ranks[i][x]) & (ranks[j] < ranks[j][x])
            free[x] = False
            ys = np.flatnonzero(free)
            if ys.size:
                cert = Certificate(CERT_SP_VALLEY_PAIR, (i, j),
                                   (r, x, ell, int(ys[0])))
                if verify_certificate(p, cert):
                    return cert
            return _sp_pattern_scan(p)
        for x in B.tolist():  # free alternatives: left-first
            if x in L or x in R:
                continue
            if not L:
                L.append(x)
            else:
                R.append(x)
        left.extend(L)
        right_rev.extend(R)
        placed[B] = True
        remaining -= B.size

    middle = [int(a) for a in np.flatnonzero(~placed)]
    return Axis(tuple(left + middle + list(reversed(right_rev))))


def _triple_role_cert(p: Profile, ranks: np.ndarray, x: int, y: int,
                      z: int) -> Optional[Certificate]:
    """Search voters realizing the 3-voter pattern on the triple {x, y, z}."""
    cx, cy, cz = ranks[:, x], ranks[:, y], ranks[:, z]
    role_x = np.flatnonzero((cy < cx) & (cz < cx))
    role_y = np.flatnonzero((cx < cy) & (cz < cy))
    role_z = np.flatnonzero((cx < cz) & (cy < cz))
    if role_x.size and role_y.size and role_z.size:
        cert = Certificate(CERT_SP_TRIPLE,
                           (int(role_x[0]), int(role_y[0]), int(role_z[0])),
                           (x, y, z))
        if verify_certificate(p, cert):
            return cert
    return None


def _sp_pattern_scan(p: Profile) -> Certificate:
    """Exhaustive forbidden-subprofile search; complete for non-single-peaked
    profiles, used as a fallback when the fast failure branches cannot be
    mapped to a pattern directly."""
    r = build_rank_index(p).rank
    # 3 voters x 3 alternatives: each alternative last within the triple
    for a, b, c in itertools.combinations(range(p.m), 3):
        who = [None, None, None]
        for i in range(p.n):
            ra, rb, rc = r[i][a], r[i][b], r[i][c]
            worst = max(ra, rb, rc)
            idx = 0 if worst == ra else (1 if worst == rb else 2)
            if who[idx] is None:
                who[idx] = i
            if all(w is not None for w in who):
                return Certificate(CERT_SP_TRIPLE, tuple(who), (a, b, c))
    # 2 voters x 4 alternatives valley pair
    for i in range(p.n):
        ri = r[i]
        for j in range(p.n):
            if j == i:
                continue
            rj = r[j]
            for b in range(p.m):
                a = next((a for a in range(p.m)
                          if a != b and ri[a] < ri[b] and rj[b] < rj[a]), None)
                if a is None:
                    continue
                c = next((c for c in range(p.m)
                          if c not in (a, b) and ri[b] < ri[c] and rj[c] < rj[b]),
                         None)
                if c is None:
                    continue
                d = next((d for d in range(p.m)
                          if d not in (a, b, c) and ri[d] < ri[b] and rj[d] < rj[b]),
                         None)
                if d is not None:
                    return Certificate(CERT_SP_VALLEY_PAIR, (i, j), (a, b, c, d))
    raise InternalInvariantError(
        "profile rejected by the recognizer but no forbidden subprofile found")


def sp_certificate(p: Profile) -> Certificate:
    """A forbidden-subprofile certificate for a non-single-peaked profile."""
    res = recognize_single_peaked(p)
    if isinstance(res, Axis):
        raise ValueError("profile is single-peaked; no certificate exists")
    return res


# --------------------------------------------------------------------------
# the family of all single-peaked axes

@dataclass(frozen=True)
class AxisFamily:
    """All witnessing axes, represented by a base axis plus the profile's
    nested common prefixes (each a contiguous block of the base).  Every
    witnessing axis arises by independently reversing-or-not each block."""

    base: Axis
    prefixes: tuple[frozenset[int], ...]  # strictly nested, sizes >= 2

    @property
    def count(self) -> int:
        return 2 ** len(self.prefixes)

    def axes(self) -> Iterator[Axis]:
        boxes = sorted(self.prefixes, key=len)  # innermost first
        for mask in range(self.count):
            arrangement = list(self.base.order)
            for bit, box in enumerate(boxes):
                if not mask >> bit & 1:
                    continue
                idx = [t for t, a in enumerate(arrangement) if a in box]
                lo, hi = idx[0], idx[-1]
                if hi - lo + 1 != len(box):  # pragma: no cover
                    raise InternalInvariantError("prefix box not contiguous")
                arrangement[lo:hi + 1] = arrangement[lo:hi + 1][::-1]
            yield Axis(tuple(arrangement))


def common_prefixes(p: Profile) -> list[frozenset[int]]:
    """Alternative sets ranked above their complement by every voter,
    ordered by inclusion (the whole set A comes last)."""
    r = build_rank_index(p).rank
    out: list[frozenset[int]] = []
    cur_max = [0] * p.n
    prefix: set[int] = set()
    for s, a in enumerate(p.votes[0], start=1):
        prefix.add(a)
        ok = True
        for i in range(p.n):
            cur_max[i] = max(cur_max[i], r[i][a])
            if cur_max[i] != s:
                ok = False
        if ok:
            out.append(frozenset(prefix))
    return out


def all_single_peaked_axes(p: Profile) -> Union[AxisFamily, Certificate]:
    res = recognize_single_peaked(p)
    if isinstance(res, Certificate):
        return res
    boxes = tuple(s for s in common_prefixes(p) if len(s) >= 2)
    return AxisFamily(base=res, prefixes=boxes)


# --------------------------------------------------------------------------
# single-crossing

def _compress_consecutive(votes: Sequence[tuple[int, ...]]
                          ) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    for v in votes:
        if not out or out[-1] != v:
            out.append(v)
    return out


def is_single_crossing_given_order(p: Profile
                                   ) -> tuple[bool, Optional[int]]:
    """Check the triangle-equality criterion K[1,i] + K[i,i+1] = K[1,i+1]
    for all i.  On failure returns the first failing adjacent voter index i
    (0-based; the triple (0, i, i+1) violates the equality)."""
    if p.n <= 2:
        return True, None
    first = p.votes[0]
    k_prev = 0
    prev = first
    for i in range(1, p.n):
        v = p.votes[i]
        if v == prev:
            continue
        k_cur = kendall_tau(first, v)
        if k_prev + kendall_tau(prev, v) != k_cur:
            return False, i - 1
        k_prev, prev = k_cur, v
    return True, None


def recognize_single_crossing(p: Profile) -> Optional[VoterOrdering]:
    """Score-and-sort recognition in O(nm log m); verifies the candidate
    order with the given-order criterion before returning it."""
    distinct: list[tuple[int, ...]] = []
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, v in enumerate(p.votes):
        if v not in groups:
            groups[v] = []
            distinct.append(v)
        groups[v].append(i)
    d = len(distinct)
    if d == 1:
        return VoterOrdering(tuple(range(p.n)))
    v1, v2 = distinct[0], distinct[1]
    k12 = kendall_tau(v1, v2)
    scores = [0, k12]
    for t in range(2, d):
        vt = distinct[t]
        k1 = kendall_tau(v1, vt)
        k2 = kendall_tau(v2, vt)
        if k12 == k1 + k2:          # between voters 1 and 2
            scores.append(k1)
        elif k1 == k12 + k2:        # to the right of voter 2
            scores.append(k1)
        elif k2 == k1 + k12:        # to the left of voter 1
            scores.append(-k1)
        else:
            return None
    if d >= p.m:                    # bucket sort over -m^2 .. m^2
        buckets: dict[int, list[int]] = {}
        for t, s in enumerate(scores):
            buckets.setdefault(s, []).append(t)
        order_d = [t for s in sorted(buckets) for t in buckets[s]]
    else:
        order_d = sorted(range(d), key=lambda t: scores[t])
    ordered_votes = [distinct[t] for t in order_d]
    ok, _ = is_single_crossing_given_order(
        Profile(m=p.m, n=d, votes=tuple(ordered_votes)))
    if not ok:
        return None
    for a, b in zip(order_d, order_d[1:]):
        if scores[a] == scores[b]:
            raise InternalInvariantError(
                "distinct votes with equal scores in a single-crossing profile")
    voter_order = tuple(i for t in order_d for i in groups[distinct[t]])
    return VoterOrdering(voter_order)


def sc_certificate(p: Profile) -> Certificate:
    """A forbidden-subprofile certificate for a non-single-crossing profile:
    a delta pattern (two pairs, four voters, all four orientations) if one
    exists, otherwise a gamma pattern (three pairs, three voters)."""
    r = build_rank_index(p).rank
    pairs = list(itertools.combinations(range(p.m), 2))
    sign = [[r[i][a] < r[i][b] for (a, b) in pairs] for i in range(p.n)]

    for pi, pj in itertools.combinations(range(len(pairs)), 2):
        seen: dict[tuple[bool, bool], int] = {}
        for i in range(p.n):
            combo = (sign[i][pi], sign[i][pj])
            if combo not in seen:
                seen[combo] = i
            if len(seen) == 4:
                a, b = pairs[pi]
                c, d = pairs[pj]
                cert = Certificate(
                    CERT_SC_DELTA,
                    (seen[(True, True)], seen[(False, True)],
                     seen[(True, False)], seen[(False, False)]),
                    (a, b, c, d))
                if not verify_certificate(p, cert):  # pragma: no cover
                    raise InternalInvariantError("bad delta certificate")
                return cert

    for i, j, k in itertools.permutations(range(p.n), 3):
        if j > k:
            continue  # roles of j/k columns differ; halve the symmetric work
        p1 = p2 = p3 = None
        for t in range(len(pairs)):
            si, sj, sk = sign[i][t], sign[j][t], sign[k][t]
            if sj == sk and si != sj and p1 is None:
                p1 = t
            elif si == sk and sj != si and p2 is None:
                p2 = t
            elif si == sj and sk != si and p3 is None:
                p3 = t
            if p1 is not None and p2 is not None and p3 is not None:
                a, b = pairs[p1] if sign[j][p1] else pairs[p1][::-1]
                c, d = pairs[p2] if sign[i][p2] else pairs[p2][::-1]
                e, f = pairs[p3] if sign[i][p3] else pairs[p3][::-1]
                cert = Certificate(CERT_SC_GAMMA, (i, j, k),
                                   (a, b, c, d, e, f))
                if not verify_certificate(p, cert):  # pragma: no cover
                    raise InternalInvariantError("bad gamma certificate")
                return cert
    raise ValueError("profile is single-crossing; no certificate exists")


# --------------------------------------------------------------------------
# single-peaked on trees

@dataclass(frozen=True)
class AltTree:
    """A tree over alternative ids, as sorted undirected edges."""

    m: int
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.m)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def is_single_peaked_on_tree(p: Profile, tree: AltTree) -> bool:
    """Every prefix of every vote must induce a connected subgraph."""
    if tree.m != p.m or len(tree.edges) != p.m - 1:
        return False
    adj = tree.adjacency()
    for v in p.votes:
        added = [False] * p.m
        added[v[0]] = True
        for a in v[1:]:
            if not any(added[b] for b in adj[a]):
                return False
            added[a] = True
    return True


def recognize_sp_on_tree(p: Profile) -> Optional[AltTree]:
    """Leaf-stripping recognition in O(m^2 n): a bottom-ranked alternative
    must be a leaf, attached to a member of the intersection of the voters'
    admissible-neighbor sets."""
    if p.m == 1:
        return AltTree(1, ())
    r = build_rank_index(p).rank
    alive = set(range(p.m))
    edges: list[tuple[int, int]] = []
    while len(alive) >= 3:
        bottoms = set()
        tops = []
        seconds = []
        for i in range(p.n):
            rest = [a for a in p.votes[i] if a in alive]
            bottoms.add(rest[-1])
            tops.append(rest[0])
            seconds.append(rest[1])
        for a in sorted(bottoms):
            if a not in alive or len(alive) < 3:
                continue
            cand = alive - {a}
            for i in range(p.n):
                if tops[i] == a:
                    cand &= {seconds[i]}
                else:
                    ria = r[i][a]
                    cand = {c for c in cand if r[i][c] < ria}
                if not cand:
                    return None
            b = min(cand)
            edges.append((min(a, b), max(a, b)))
            alive.remove(a)
            for i in range(p.n):  # refresh tops/seconds after removal
                if tops[i] == a or seconds[i] == a:
                    rest = [x for x in p.votes[i] if x in alive]
                    tops[i] = rest[0]
                    seconds[i] = rest[1] if len(rest) > 1 else rest[0]
    if len(alive) == 2:
        u, v = sorted(alive)
        edges.append((u, v))
    return AltTree(p.m, tuple(sorted(edges)))


# --------------------------------------------------------------------------
# single-crossing on trees

@dataclass(frozen=True)
class VoterTree:
    """A tree over voter ids, as sorted undirected edges."""

    n: int
    edges: tuple[tuple[int, int], ...]


MAX_SCT_DISTINCT_VOTES = 4096


def recognize_sc_on_tree(p: Profile) -> Optional[VoterTree]:
    """De-duplicate votes, build the graph whose edges join votes with no
    vote strictly between them (in Kendall-tau distance), and succeed iff
    that graph is a tree.  Duplicate voters are re-attached as chains."""
    distinct: list[tuple[int, ...]] = []
    groups: dict[tuple[int, ...], list[int]] = {}
    for i, v in enumerate(p.votes):
        if v not in groups:
            groups[v] = []
            distinct.append(v)
        groups[v].append(i)
    d = len(distinct)
    if d > MAX_SCT_DISTINCT_VOTES:
        raise ValueError("too many distinct votes for the tree criterion")
    chains: list[tuple[int, int]] = []
    for v in distinct:
        g = groups[v]
        chains.extend((min(a, b), max(a, b)) for a, b in zip(g, g[1:]))
    reps = [groups[v][0] for v in distinct]
    if d == 1:
        return VoterTree(p.n, tuple(sorted(chains)))
    K = [[0] * d for _ in range(d)]
    for a in range(d):
        for b in range(a + 1, d):
            K[a][b] = K[b][a] = kendall_tau(distinct[a], distinct[b])
    edges: list[tuple[int, int]] = []
    for a in range(d):
        for b in range(a + 1, d):
            if not any(K[a][c] + K[c][b] == K[a][b]
                       for c in range(d) if c not in (a, b)):
                edges.append((a, b))
    if len(edges) != d - 1 or not _connected(d, edges):
        return None
    tree_edges = chains + [
        (min(reps[a], reps[b]), max(reps[a], reps[b])) for a, b in edges]
    return VoterTree(p.n, tuple(sorted(tree_edges)))


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comp = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
            comp -= 1
    return comp == 1


# --------------------------------------------------------------------------
# group-separable profiles

@dataclass(frozen=True)
class GSNode:
    alternatives: frozenset[int]
    children: Optional[tuple["GSNode", "GSNode"]] = None


@dataclass(frozen=True)
class GSDecomposition:
    root: GSNode

    def verify(self, p: Profile) -> bool:
        r = build_rank_index(p).rank

        def blocks_ok(left: frozenset[int], right: frozenset[int]) -> bool:
            for i in range(p.n):
                lmax = max(r[i][a] for a in left)
                lmin = min(r[i][a] for a in left)
                rmax = max(r[i][a] for a in right)
                rmin = min(r[i][a] for a in right)
                if not (lmax < rmin or rmax < lmin):
                    return False
            return True

        def walk(node: GSNode) -> bool:
            if node.children is None:
                return len(node.alternatives) == 1
            a, b = node.children
            if a.alternatives | b.alternatives != node.alternatives:
                return False
            if a.alternatives & b.alternatives:
                return False
            return (blocks_ok(a.alternatives, b.alternatives)
                    and walk(a) and walk(b))

        return (self.root.alternatives == frozenset(range(p.m))
                and walk(self.root))


def recognize_group_separable(p: Profile) -> Optional[GSDecomposition]:
    """Recursive splitting using the first voter's ranking prefixes as
    candidate blocks."""
    r = build_rank_index(p).rank

    def split(current: frozenset[int]) -> Optional[GSNode]:
        if len(current) == 1:
            return GSNode(current)
        order0 = [a for a in p.votes[0] if a in current]
        restricted = [[a for a in p.votes[i] if a in current]
                      for i in range(p.n)]
        for s in range(1, len(order0)):
            block = frozenset(order0[:s])
            if all(frozenset(rv[:s]) == block or frozenset(rv[-s:]) == block
                   for rv in restricted):
                lo = split(block)
                hi = split(current - block)
                if lo is None or hi is None:  # pragma: no cover
                    return None
                return GSNode(current, (lo, hi))
        return None

    root = split(frozenset(range(p.m)))
    return GSDecomposition(root) if root is not None else None


# --------------------------------------------------------------------------
# value restriction

_CYCLES = ((0, 1, 2),)  # placeholder, unused; kept for clarity of intent


def value_restriction_report(p: Profile
                             ) -> dict[str, tuple[bool, Optional[tuple[int, int, int]]]]:
    """For each kind in value/best/medium/worst: whether the restriction
    holds, with a witness triple of alternatives on failure.

    One pass over voters per alternative triple, O(m^3 n).
    """
    r = build_rank_index(p).rank
    witness = {"value": None, "best": None, "medium": None, "worst": None}
    for a, b, c in itertools.combinations(range(p.m), 3):
        present = 0
        firsts = mids = lasts = 0
        for i in range(p.n):
            ra, rb, rc = r[i][a], r[i][b], r[i][c]
            code = (ra < rb) << 2 | (rb < rc) << 1 | (ra < rc)
            # code indexes the 6 restricted orders; bits of presence masks
            present |= 1 << code
            top = 0 if (ra < rb and ra < rc) else (1 if rb < rc else 2)
            bottomalt = 0 if (ra > rb and ra > rc) else (1 if rb > rc else 2)
            firsts |= 1 << top
            lasts |= 1 << bottomalt
            mids |= 1 << (3 - top - bottomalt)
        # restricted orders abc=0b111, acb=0b101, bac=0b011, bca=0b010,
        # cab=0b100, cba=0b000; the two Condorcet cycles:
        cyc1 = (1 << 0b111) | (1 << 0b010) | (1 << 0b100)  # abc, bca, cab
        cyc2 = (1 << 0b101) | (1 << 0b000) | (1 << 0b011)  # acb, cba, bac
        if witness["value"] is None and (
                present & cyc1 == cyc1 or present & cyc2 == cyc2):
            witness["value"] = (a, b, c)
        if witness["best"] is None and firsts == 0b111:
            witness["best"] = (a, b, c)
        if witness["medium"] is None and mids == 0b111:
            witness["medium"] = (a, b, c)
        if witness["worst"] is None and lasts == 0b111:
            witness["worst"] = (a, b, c)
        if all(w is not None for w in witness.values()):
            break
    return {kind: (w is None, w) for kind, w in witness.items()}


def value_restriction_certificate(p: Profile) -> Certificate:
    """A Condorcet-subprofile certificate for a non-value-restricted profile."""
    ok, triple = value_restriction_report(p)["value"]
    if ok:
        raise ValueError("profile is value-restricted; no certificate exists")
    a, b, c = triple
    r = build_rank_index(p).rank
    orders = {}
    for i in range(p.n):
        ra, rb, rc = r[i][a], r[i][b], r[i][c]
        key = tuple(sorted((a, b, c), key=lambda x: {a: ra, b: rb, c: rc}[x]))
        orders.setdefault(key, i)
    for x, y, z in ((a, b, c), (a, c, b)):
        trio = ((x, y, z), (y, z, x), (z, x, y))
        if all(t in orders for t in trio):
            return Certificate(CERT_VR_CONDORCET,
                               tuple(orders[t] for t in trio), (x, y, z))
    raise InternalInvariantError("witness triple without a Condorcet cycle")


# --------------------------------------------------------------------------
# derived recognizers

def recognize_single_caved(p: Profile) -> Optional[Axis]:
    res = recognize_single_peaked(reverse_profile(p))
    return res if isinstance(res, Axis) else None


def recognize_spsc(p: Profile) -> Optional[tuple[Axis, VoterOrdering]]:
    sp = recognize_single_peaked(p)
    if not isinstance(sp, Axis):
        return None
    sc = recognize_single_crossing(p)
    if sc is None:
        return None
    return sp, sc


# --------------------------------------------------------------------------
# consecutive ones (cross-validation path for single-peakedness)

def c1p_check(rows: Sequence[Sequence[int]],
              num_cols: Optional[int] = None) -> Optional[tuple[int, ...]]:
    """Column ordering making every row's 1s consecutive, or None.

    Rows are given either as 0/1 sequences (all the same length) or, when
    ``num_cols`` is passed, as iterables of column indices.  Uses iterative
    ordered-partition refinement with backtracking over ambiguous split
    orientations; every candidate ordering is verified against all rows.
    """
    if num_cols is None:
        if not rows:
            raise ValueError("empty matrix needs an explicit column count")
        num_cols = len(rows[0])
        sets = []
        for row in rows:
            if len(row) != num_cols:
                raise ValueError("ragged matrix")
            sets.append(frozenset(j for j, bit in enumerate(row) if bit))
    else:
        sets = [frozenset(row) for row in rows]
    constraining = sorted(
        {s for s in sets if 1 < len(s) < num_cols}, key=lambda s: (-len(s), sorted(s)))

    def verify(order: tuple[int, ...]) -> bool:
        pos = {c: i for i, c in enumerate(order)}
        for s in sets:
            if not s:
                continue
            idx = sorted(pos[c] for c in s)
            if idx[-1] - idx[0] + 1 != len(idx):
                return False
        return True

    def refine(partition: list[frozenset[int]], todo: list[frozenset[int]]
               ) -> Optional[tuple[int, ...]]:
        if not todo:
            order = tuple(c for cls in partition for c in sorted(cls))
            return order if verify(order) else None
        s, rest = todo[0], todo[1:]
        touched = [t for t, cls in enumerate(partition) if cls & s]
        lo, hi = touched[0], touched[-1]
        if touched != list(range(lo, hi + 1)):
            return None
        if lo == hi:
            cls = partition[lo]
            inner, outer = cls & s, cls - s
            if not outer:
                return refine(partition, rest)
            for halves in ((inner, outer), (outer, inner)):
                cand = partition[:lo] + list(halves) + partition[lo + 1:]
                out = refine(cand, rest)
                if out is not None:
                    return out
            return None
        for t in range(lo + 1, hi):
            if not partition[t] <= s:
                return None
        new_part = partition[:lo]
        head = partition[lo]
        if head <= s:
            new_part.append(head)
        else:
            new_part.extend([head - s, head & s])
        new_part.extend(partition[lo + 1:hi])
        tail = partition[hi]
        if tail <= s:
            new_part.append(tail)
        else:
            new_part.extend([tail & s, tail - s])
        new_part.extend(partition[hi + 1:])
        return refine(new_part, rest)

    result = refine([frozenset(range(num_cols))], constraining)
    if result is None and num_cols <= 8:
        # exhaustive safety net on tiny instances (cross-check usage only)
        for perm in itertools.permutations(range(num_cols)):
            if verify(perm):
                return perm
    return result


def recognize_sp_via_c1p(p: Profile) -> Optional[Axis]:
    """Reduction to consecutive ones: one row per proper prefix of each vote;
    a witnessing column order is a witnessing axis."""
    rows = []
    for v in p.votes:
        for s in range(1, p.m):
            rows.append(frozenset(v[:s]))
    order = c1p_check(rows, num_cols=p.m)
    if order is None:
        return None
    axis = Axis(order)
    ok, _ = is_single_peaked_on(p, axis)
    if not ok:  # pragma: no cover
        raise InternalInvariantError("consecutive-ones order is not an axis")
    return axis


# --------------------------------------------------------------------------
# clone sets (intervals)

def clone_sets(p: Profile, only_maximal: bool = False) -> list[frozenset[int]]:
    """All nontrivial intervals of the profile (size 2..m-1): alternative
    sets appearing contiguously in every vote.  Every interval is contiguous
    in the first vote, so candidates are its windows; O(m^2 n)."""
    r = build_rank_index(p).rank
    v0 = p.votes[0]
    out: list[frozenset[int]] = []
    for start in range(p.m):
        mins = [ri[v0[start]] for ri in r]
        maxs = list(mins)
        for end in range(start + 1, min(start + p.m - 1, p.m)):
            a = v0[end]
            good = True
            for i in range(p.n):
                ra = r[i][a]
                if ra < mins[i]:
                    mins[i] = ra
                elif ra > maxs[i]:
                    maxs[i] = ra
                if maxs[i] - mins[i] > end - start:
                    good = False
            size = end - start + 1
            if good and size < p.m:
                out.append(frozenset(v0[start:end + 1]))
    if only_maximal:
        out = [s for s in out if not any(s < t for t in out)]
    return sorted(out, key=lambda s: (len(s), sorted(s)))

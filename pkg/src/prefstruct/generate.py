"""Deterministic, seeded profile generators for tests and benchmarks.

All randomness comes from numpy's PCG64 bit generator; a given
(model, n, m, seed) tuple produces the same profile on every platform.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from .core import Axis, Profile
from .euclidean import Embedding


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def impartial_culture(n: int, m: int, seed: int) -> Profile:
    """n independent rankings drawn uniformly from all m! orders."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    rng = _rng(seed)
    votes = rng.permuted(np.tile(np.arange(m), (n, 1)), axis=1)
    return Profile(m=m, n=n, votes=tuple(map(tuple, votes.tolist())))


def sp_uniform_on_axis(n: int, m: int, seed: int,
                       axis: Optional[Axis] = None) -> Profile:
    """n votes drawn uniformly from the 2^(m-1) votes single-peaked on the
    axis: build each vote bottom-up, flipping a fair coin between the two
    current ends of the axis."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    if axis is None:
        axis = Axis(tuple(range(m)))
    if len(axis.order) != m:
        raise ValueError("axis size mismatch")
    rng = _rng(seed)
    if m == 1:
        return Profile(m=1, n=n, votes=tuple((0,) for _ in range(n)))
    bits = rng.integers(0, 2, size=(n, m - 1), dtype=np.int64)
    order = np.asarray(axis.order, dtype=np.int64)
    votes = np.empty((n, m), dtype=np.int64)
    left_before = np.zeros(n, dtype=np.int64)
    right_before = np.zeros(n, dtype=np.int64)
    for t in range(m - 1):  # rank m-1-t (bottom-up)
        take_left = bits[:, t] == 0
        idx = np.where(take_left, left_before, m - 1 - right_before)
        votes[:, m - 1 - t] = order[idx]
        left_before += take_left
        right_before += ~take_left
    votes[:, 0] = order[left_before]
    return Profile(m=m, n=n, votes=tuple(map(tuple, votes.tolist())))


def max_sc_profile(m: int) -> Profile:
    """The single-crossing profile with the maximum number of distinct
    votes, C(m,2)+1: starting from the identity ranking, sink alternative 0
    to the bottom one adjacent swap at a time, then alternative 1, and so
    on; adjacent votes differ by exactly one swap."""
    if m < 1:
        raise ValueError("need m >= 1")
    cur = list(range(m))
    votes = [tuple(cur)]
    for j, x in enumerate(range(m)):
        target = m - 1 - j
        pos = cur.index(x)
        while pos < target:
            cur[pos], cur[pos + 1] = cur[pos + 1], cur[pos]
            votes.append(tuple(cur))
            pos += 1
    return Profile(m=m, n=len(votes), votes=tuple(votes))


MAX_GS_M = 16


def gs_max_profile(m: int) -> Profile:
    """The group-separable profile with 2^(m-1) distinct votes: recursively,
    each vote over the first s-1 alternatives spawns one copy with
    alternative s-1 on top and one with it at the bottom."""
    if m < 2:
        raise ValueError("need m >= 2")
    if m > MAX_GS_M:
        raise ValueError(f"m > {MAX_GS_M} exceeds the doubling cap")
    votes: list[tuple[int, ...]] = [(0,)]
    for s in range(2, m + 1):
        a = s - 1
        nxt = []
        for v in votes:
            nxt.append((a,) + v)
            nxt.append(v + (a,))
        votes = nxt
    return Profile(m=m, n=len(votes), votes=tuple(votes))


def condorcet_cycle_profile(d: int) -> Profile:
    """d voters over d alternatives; voter i ranks i, i+1, ... cyclically."""
    if d < 3:
        raise ValueError("need d >= 3")
    votes = tuple(tuple((i + t) % d for t in range(d)) for i in range(d))
    return Profile(m=d, n=d, votes=votes)


def euclid_line(n: int, m: int, seed: int) -> tuple[Profile, Embedding]:
    """Random distinct integer points on a line for voters and alternatives;
    the induced profile (rank by distance) is returned with its exact
    embedding.  Coordinates are resampled until no voter is equidistant
    from two alternatives."""
    if n < 1 or m < 1:
        raise ValueError("need n, m >= 1")
    rng = _rng(seed)
    span = 8 * (n + m) * (m * m + 1)
    for _ in range(1000):
        coords = rng.choice(span, size=n + m, replace=False).astype(np.int64)
        alt_x = coords[:m]
        voter_x = coords[m:]
        dists = np.abs(voter_x[:, None] - alt_x[None, :])  # n x m
        votes = np.argsort(dists, axis=1, kind="stable")
        sorted_d = np.take_along_axis(dists, votes, axis=1)
        if (np.diff(sorted_d, axis=1) == 0).any():
            continue  # a voter sits on a midpoint; resample
        profile = Profile(m=m, n=n, votes=tuple(map(tuple, votes.tolist())))
        axis = Axis(tuple(np.argsort(alt_x, kind="stable").tolist()))
        emb = Embedding(
            axis=axis,
            alternative_points=tuple(Fraction(int(x)) for x in alt_x),
            voter_points=tuple(Fraction(int(x)) for x in voter_x))
        if not emb.verify(profile):  # pragma: no cover - construction check
            raise AssertionError("generated embedding failed verification")
        return profile, emb
    raise AssertionError("could not sample tie-free points")  # pragma: no cover

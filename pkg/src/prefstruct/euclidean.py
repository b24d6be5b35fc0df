"""Recognition of 1-Euclidean profiles.

A profile is 1-Euclidean when alternatives and voters embed into the real
line so that every voter ranks alternatives by increasing distance from
their own point.  Recognition proceeds in two steps:

1. find a *compatible* pair (axis, voter ordering): an axis witnessing
   single-peakedness that, read as the preference of a far-left voter (and
   its reverse as a far-right voter), extends the single-crossing voter
   ordering; and
2. solve an exact rational feasibility LP placing all points on the line.

Membership in both the single-peaked and single-crossing domains is
necessary but not sufficient; the LP settles the remaining cases exactly
(all arithmetic uses ``fractions.Fraction``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import Axis, Profile, VoterOrdering
from .recognition import (AxisFamily, all_single_peaked_axes,
                          is_single_crossing_given_order,
                          recognize_single_crossing)

MAX_AXIS_FAMILY_LOG2 = 14


def compatible_axis(p: Profile) -> Optional[tuple[Axis, VoterOrdering]]:
    """An axis and voter ordering that admit virtual voters at both ends.

    The axis, read as a ranking, is prepended to the ordered votes and its
    reverse appended; the extended sequence must be single-crossing.  Such a
    pair exists whenever the profile is 1-Euclidean.
    """
    family = all_single_peaked_axes(p)
    if not isinstance(family, AxisFamily):
        return None
    sigma = recognize_single_crossing(p)
    if sigma is None:
        return None
    if len(family.prefixes) > MAX_AXIS_FAMILY_LOG2:
        raise ValueError("axis family too large to enumerate")
    orderings = [sigma.order]
    if sigma.order != sigma.order[::-1]:
        orderings.append(sigma.order[::-1])
    for axis in family.axes():
        for order in orderings:
            votes = [axis.order]
            votes.extend(p.votes[i] for i in order)
            votes.append(axis.order[::-1])
            ext = Profile(m=p.m, n=len(votes), votes=tuple(votes))
            ok, _ = is_single_crossing_given_order(ext)
            if ok:
                return axis, VoterOrdering(tuple(order))
    return None


@dataclass(frozen=True)
class Embedding:
    """Exact rational points on the line realizing the profile."""

    axis: Axis
    alternative_points: tuple[Fraction, ...]
    voter_points: tuple[Fraction, ...]

    def verify(self, p: Profile) -> bool:
        xa = self.alternative_points
        xv = self.voter_points
        if len(xa) != p.m or len(xv) != p.n:
            return False
        pos = self.axis.position()
        for t in range(p.m - 1):
            a, b = self.axis.order[t], self.axis.order[t + 1]
            if not xa[a] < xa[b]:
                return False
        del pos
        for i, v in enumerate(p.votes):
            dists = [abs(xv[i] - xa[a]) for a in v]
            if any(dists[t] >= dists[t + 1] for t in range(p.m - 1)):
                return False
        return True


def recognize_1_euclidean(p: Profile) -> Optional[Embedding]:
    if p.m == 1:
        return Embedding(Axis((0,)), (Fraction(0),),
                         tuple(Fraction(0) for _ in range(p.n)))
    pair = compatible_axis(p)
    if pair is None:
        return None
    axis, _ = pair
    emb = _embed_on_axis(p, axis)
    if emb is None:
        return None
    if not emb.verify(p):  # pragma: no cover - solver soundness check
        raise AssertionError("LP solution failed exact re-verification")
    return emb


def _embed_on_axis(p: Profile, axis: Axis) -> Optional[Embedding]:
    """Feasibility LP: variables are alternative and voter coordinates.

    With alternative a strictly left of b, voter i prefers a to b iff i lies
    strictly left of the midpoint of a and b.  Strict inequalities over the
    rationals scale, so they are encoded with unit (resp. two-unit) slacks:

        x_a - x_b           <= -1   for consecutive axis positions a, b
        2 x_i - x_a - x_b   <= -2   when i prefers the left endpoint
        x_a + x_b - 2 x_i   <= -2   when i prefers the right endpoint
    """
    m, n = p.m, p.n
    nvar = m + n  # alternative coords then voter coords
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []

    def add(coeffs: dict[int, int], bound: int) -> None:
        row = [Fraction(0)] * nvar
        for j, c in coeffs.items():
            row[j] = Fraction(c)
        rows.append(row)
        rhs.append(Fraction(bound))

    for t in range(m - 1):
        a, b = axis.order[t], axis.order[t + 1]
        add({a: 1, b: -1}, -1)
    pos = axis.position()
    for i, v in enumerate(p.votes):
        rank = {a: t for t, a in enumerate(v)}
        for a in range(m):
            for b in range(a + 1, m):
                lo, hi = (a, b) if pos[a] < pos[b] else (b, a)
                if rank[lo] < rank[hi]:
                    add({m + i: 2, lo: -1, hi: -1}, -2)
                else:
                    add({lo: 1, hi: 1, m + i: -2}, -2)
    sol = _feasible_point(rows, rhs, nvar)
    if sol is None:
        return None
    return Embedding(axis, tuple(sol[:m]), tuple(sol[m:]))


def _feasible_point(rows: Sequence[Sequence[Fraction]],
                    rhs: Sequence[Fraction],
                    nvar: int) -> Optional[list[Fraction]]:
    """Exact phase-one simplex for A x <= b with free variables.

    Free variables are split as differences of nonnegative ones, slacks make
    the rows equalities, and rows with negative right-hand side receive an
    artificial variable.  Bland's rule guarantees termination.  Returns a
    feasible point or None.
    """
    nrows = len(rows)
    # columns: u (nvar) | v (nvar) | slack (nrows) | artificial (as needed)
    art_cols: list[int] = []
    ncols = 2 * nvar + nrows
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    for r in range(nrows):
        row = [Fraction(0)] * ncols
        flip = rhs[r] < 0
        sign = -1 if flip else 1
        for j in range(nvar):
            row[j] = sign * rows[r][j]
            row[nvar + j] = -sign * rows[r][j]
        row[2 * nvar + r] = Fraction(sign)
        row.append(sign * rhs[r])  # last entry is the RHS
        if flip:
            art_cols.append(r)
            basis.append(-1)  # artificial, assigned below
        else:
            basis.append(2 * nvar + r)
        tab.append(row)
    nart = len(art_cols)
    total = ncols + nart
    for k, r in enumerate(art_cols):
        for rr in range(nrows):
            tab[rr].insert(ncols + k, Fraction(1) if rr == r else Fraction(0))
        basis[r] = ncols + k
    # objective: minimize the sum of artificials (stored as cost row z)
    z = [Fraction(0)] * (total + 1)
    for r in range(nrows):
        if basis[r] >= ncols:
            for j in range(total + 1):
                z[j] += tab[r][j]

    while True:
        enter = next((j for j in range(total) if z[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for r in range(nrows):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][total] / a
                if best is None or ratio < best or (
                        ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave is None:  # pragma: no cover - phase-one objective is bounded
            raise AssertionError("unbounded phase-one objective")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for r in range(nrows):
            if r != leave and tab[r][enter]:
                f = tab[r][enter]
                tab[r] = [x - f * y for x, y in zip(tab[r], tab[leave])]
        if z[enter]:
            f = z[enter]
            z = [x - f * y for x, y in zip(z, tab[leave])]
        basis[leave] = enter

    if z[total] != 0:
        return None
    values = [Fraction(0)] * total
    for r in range(nrows):
        values[basis[r]] = tab[r][total]
    return [values[j] - values[nvar + j] for j in range(nvar)]

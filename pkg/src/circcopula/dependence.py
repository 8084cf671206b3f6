"""Monotone supports on the torus.

A planar set is nondecreasing when ``x < x'`` implies ``y <= y'`` for any
two of its points (nonincreasing: ``y >= y'``).  On the torus there is no
preferred origin, so a point set is called *circular*-nondecreasing when
some choice of zero directions ``(alpha, beta)`` turns it into a planar
nondecreasing set.  Supports of the circular upper bound copulas are of this
kind, supports of the circular lower bounds are circular-nonincreasing.

The decision works on ranks.  Sort the points by theta and group equal theta
values; give every distinct phi value its rank ``r`` in ``0..m-1``.  Cutting
the phi axis just before rank ``j`` relabels ranks as ``(r - j) mod m``, and
cutting the theta axis before group ``i`` makes that group come first.  The
set is monotone for the cut pair iff every group's largest relabelled rank
is at most the next group's smallest.  The first group must then contain
relabelled rank 0, so for each theta cut only the phi ranks occurring in
that group need to be tried, giving at most ``n`` candidate pairs, each
checked in O(n) with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circ_dist import TWO_PI, wrap_angle

__all__ = [
    "NONDECREASING",
    "NONINCREASING",
    "BOTH",
    "NEITHER",
    "MonotoneVerdict",
    "is_planar_monotone",
    "redraw",
    "circular_monotone",
    "circular_mean",
    "fl83_test",
]

NONDECREASING = "nondecreasing"
NONINCREASING = "nonincreasing"
BOTH = "both"
NEITHER = "neither"

_DIRECTIONS = (NONDECREASING, NONINCREASING)


@dataclass(frozen=True)
class MonotoneVerdict:
    """Outcome of :func:`circular_monotone`.

    ``witness_cut`` is a pair of zero directions under which the points form
    a planar monotone set in the reported direction (for ``both`` it is the
    nondecreasing witness), or None for ``neither``.
    """

    direction: str
    witness_cut: tuple[float, float] | None = None
    witness_nonincreasing: tuple[float, float] | None = None

    @property
    def monotone(self):
        return self.direction != NEITHER


def _as_points(points):
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        return pts.reshape(0, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("points must have shape (n, 2)")
    return pts


def _check_direction(direction):
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {_DIRECTIONS}, got {direction!r}")


def is_planar_monotone(points, direction=NONDECREASING):
    """Whether a finite planar set is nondecreasing (or nonincreasing).

    Points sharing an x value impose no constraint on each other.
    """
    _check_direction(direction)
    pts = _as_points(points)
    if len(pts) < 2:
        return True
    x = pts[:, 0]
    y = pts[:, 1] if direction == NONDECREASING else -pts[:, 1]
    order = np.lexsort((y, x))
    x, y = x[order], y[order]
    starts = np.flatnonzero(np.concatenate(([True], x[1:] != x[:-1])))
    lows = np.minimum.reduceat(y, starts)
    highs = np.maximum.reduceat(y, starts)
    return bool(np.all(np.maximum.accumulate(highs)[:-1] <= lows[1:]))


def redraw(points, cut):
    """Re-express points with ``cut = (alpha, beta)`` as the zero directions."""
    pts = _as_points(points)
    alpha, beta = cut
    return np.column_stack((wrap_angle(pts[:, 0] - alpha), wrap_angle(pts[:, 1] - beta)))


def _dense_ranks(values, tol):
    """Sorted distinct values (clustered within ``tol``) and each value's rank."""
    order = np.argsort(values, kind="stable")
    s = values[order]
    new = np.concatenate(([True], np.diff(s) > tol))
    ranks_sorted = np.cumsum(new) - 1
    if tol > 0 and ranks_sorted[-1] > 0 and s[0] + TWO_PI - s[-1] <= tol:
        # the last cluster wraps around onto the first one
        ranks_sorted[ranks_sorted == ranks_sorted[-1]] = 0
    ranks = np.empty_like(ranks_sorted)
    ranks[order] = ranks_sorted
    m = int(ranks_sorted.max()) + 1
    reps = np.array([s[ranks_sorted == k][0] for k in range(m)])
    return reps, ranks, m


def _gap_cut(reps, k):
    """Origin in the middle of the circular gap just before ``reps[k]``."""
    prev = reps[k - 1] if k > 0 else reps[-1] - TWO_PI
    return wrap_angle(0.5 * (prev + reps[k]))


def _search(group_starts, ranks, m):
    """First ``(i, j)`` cut pair making the rank sequence nondecreasing."""
    k = len(group_starts)
    bounds = np.append(group_starts, len(ranks))
    for i in range(k):
        for j in np.unique(ranks[bounds[i]:bounds[i + 1]]):
            q = (ranks - j) % m
            lows = np.minimum.reduceat(q, group_starts)
            highs = np.maximum.reduceat(q, group_starts)
            lows = np.roll(lows, -i)
            highs = np.roll(highs, -i)
            if np.all(highs[:-1] <= lows[1:]):
                return i, int(j)
    return None


def _find_cut(pts, direction, tol):
    theta_reps, theta_ranks, _ = _dense_ranks(pts[:, 0], tol)
    phi_reps, phi_ranks, m = _dense_ranks(pts[:, 1], tol)
    order = np.lexsort((phi_ranks, theta_ranks))
    t = theta_ranks[order]
    r = phi_ranks[order]
    if direction == NONINCREASING:
        r = (m - 1) - r
    group_starts = np.flatnonzero(np.concatenate(([True], t[1:] != t[:-1])))
    hit = _search(group_starts, r, m)
    if hit is None:
        return None
    i, j = hit
    alpha = _gap_cut(theta_reps, int(t[group_starts[i]]))
    if direction == NONINCREASING:
        # reflected rank j' corresponds to starting the original ranks at m - j'
        j = (m - j) % m
    beta = _gap_cut(phi_reps, j)
    return float(alpha), float(beta)


def circular_monotone(points, direction=None, tol=0.0) -> MonotoneVerdict:
    """Decide whether points on the torus are monotone modulo 2*pi.

    Parameters
    ----------
    points : array_like, shape (n, 2)
        ``(theta, phi)`` pairs in radians.
    direction : {"nondecreasing", "nonincreasing"}, optional
        Test only this direction.  By default both are tested and the
        verdict may be ``"both"``.
    tol : float
        Coordinates closer than ``tol`` are treated as tied.  The default 0
        only ties exactly equal floats.

    Returns
    -------
    MonotoneVerdict
    """
    pts = _as_points(points)
    if len(pts) == 0:
        raise ValueError("need at least one point")
    pts = np.column_stack((wrap_angle(pts[:, 0]), wrap_angle(pts[:, 1])))
    wanted = _DIRECTIONS if direction is None else (direction,)
    for d in wanted:
        _check_direction(d)
    cuts = {d: _find_cut(pts, d, tol) for d in wanted}
    up = cuts.get(NONDECREASING)
    down = cuts.get(NONINCREASING)
    if up is not None and down is not None:
        return MonotoneVerdict(BOTH, up, down)
    if up is not None:
        return MonotoneVerdict(NONDECREASING, up)
    if down is not None:
        return MonotoneVerdict(NONINCREASING, down, down)
    return MonotoneVerdict(NEITHER)


def circular_mean(angles):
    """Mean direction of a set of angles, in [0, 2*pi)."""
    angles = np.asarray(angles, dtype=float)
    return wrap_angle(np.arctan2(np.mean(np.sin(angles)), np.mean(np.cos(angles))))


def _circ_dist(x, y):
    return np.abs(np.mod(np.asarray(x) - y + np.pi, TWO_PI) - np.pi)


def fl83_test(points, tolerance=1e-9):
    """Test for complete dependence ``phi = +-theta + alpha0 (mod 2*pi)``.

    Returns
    -------
    tuple of (int, float) or None
        ``(+1, alpha0)`` for the rotation form, ``(-1, alpha0)`` for the
        reflection form, None if neither fits within ``tolerance`` radians.
        The rotation form is reported when both fit.
    """
    pts = _as_points(points)
    if len(pts) == 0:
        raise ValueError("need at least one point")
    theta, phi = pts[:, 0], pts[:, 1]
    for sign, offsets in ((1, phi - theta), (-1, phi + theta)):
        alpha0 = circular_mean(offsets)
        if np.all(_circ_dist(offsets, alpha0) <= tolerance):
            return sign, float(alpha0)
    return None

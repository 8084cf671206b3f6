"""Circular joint distribution functions and their origin shifts.

A joint law on the torus is built from a copula and two circular marginals,
``H(theta, phi) = C(F(theta), G(phi))``.  Moving the zero directions to
``(alpha, beta)`` gives

    H_ab(theta, phi) = H~(theta+alpha, phi+beta) - H~(alpha, phi+beta)
                       - H~(theta+alpha, beta) + H~(alpha, beta)

with ``H~`` the extension of ``H`` to [0, 4*pi)^2, and the copula of the
re-originated law is ``C_ab(u, v) = H_ab(F_a^(-1)(u), G_b^(-1)(v))``.

For ``C = M`` the shifted copula is ``M_a`` with a parameter that depends only
on ``F(alpha)`` and ``G(beta)`` (:func:`upper_bound_parameter`).  The
piecewise case tables behind that identity are reproduced verbatim in
:func:`upper_bound_case_table` and serve as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circ_dist import TWO_PI, CircularCdf, wrap_angle
from .copula_core import CircularLowerBound, CircularUpperBound, Copula

__all__ = [
    "RangeRestrictionError",
    "OriginShift",
    "CircularJoint",
    "ShiftedJoint",
    "ShiftedCopula",
    "shift_joint",
    "shifted_copula",
    "upper_bound_parameter",
    "upper_bound_case_table",
    "fit_lower_bound_parameter",
    "unit_grid",
]

RANGE_TOL = 1e-12


class RangeRestrictionError(ValueError):
    """(u, v) lies off Ran F_alpha x Ran G_beta for discrete marginals."""


@dataclass(frozen=True)
class OriginShift:
    """New zero directions ``(alpha, beta)``, both reduced into [0, 2*pi)."""

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", wrap_angle(self.alpha))
        object.__setattr__(self, "beta", wrap_angle(self.beta))

    def __add__(self, other: OriginShift) -> OriginShift:
        return OriginShift(self.alpha + other.alpha, self.beta + other.beta)


def _check_angles(x, upper, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr > upper)):
        raise ValueError(f"{name} out of domain")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


class _JointBase:
    """Shared machinery: extension to [0, 4*pi)^2 and origin shifts.

    Subclasses provide ``marginal_theta``, ``marginal_phi`` and ``_h`` (the
    joint evaluated on [0, 2*pi]^2).
    """

    marginal_theta: CircularCdf
    marginal_phi: CircularCdf

    def _h(self, theta, phi):
        raise NotImplementedError

    def __call__(self, theta, phi):
        """Evaluate ``H(theta, phi)`` on [0, 2*pi]^2 (2*pi as a left limit)."""
        theta = _check_angles(theta, TWO_PI, "theta")
        phi = _check_angles(phi, TWO_PI, "phi")
        theta, phi = np.broadcast_arrays(theta, phi)
        return _out(np.asarray(self._h(theta, phi), dtype=float))

    def extend(self, theta, phi):
        """Four-branch extension ``H~`` on [0, 4*pi)^2.

        An argument equal to ``2*pi`` takes the upper branch, so
        ``H~(2*pi, 2*pi) = 1``.
        """
        theta = np.asarray(theta, dtype=float)
        phi = np.asarray(phi, dtype=float)
        for arr, name in ((theta, "theta"), (phi, "phi")):
            if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr >= 2.0 * TWO_PI)):
                raise ValueError(f"extended {name} must lie in [0, 4*pi)")
        theta, phi = np.broadcast_arrays(theta, phi)
        return _out(self._extend(theta, phi))

    def _extend(self, theta, phi):
        t_hi = theta >= TWO_PI
        p_hi = phi >= TWO_PI
        t = np.where(t_hi, theta - TWO_PI, theta)
        p = np.where(p_hi, phi - TWO_PI, phi)
        h = np.asarray(self._h(t, p), dtype=float)
        f = np.asarray(self.marginal_theta.cdf(t), dtype=float)
        g = np.asarray(self.marginal_phi.cdf(p), dtype=float)
        return h + np.where(p_hi, f, 0.0) + np.where(t_hi, g, 0.0) + np.where(t_hi & p_hi, 1.0, 0.0)

    def shifted(self, shift: OriginShift) -> _JointBase:
        if shift.alpha == 0.0 and shift.beta == 0.0:
            return self
        return ShiftedJoint(self, shift)

    def copula_at(self, shift: OriginShift | None = None) -> ShiftedCopula:
        """Copula of the law re-originated at ``shift``."""
        return ShiftedCopula(self, shift or OriginShift())


class CircularJoint(_JointBase):
    """Circular joint distribution ``H(theta, phi) = C(F(theta), G(phi))``.

    Parameters
    ----------
    copula : Copula
        Dependence structure on [0, 1]^2.
    marginal_theta, marginal_phi : CircularCdf
        Marginal distribution functions ``F`` and ``G``.
    """

    def __init__(self, copula: Copula, marginal_theta: CircularCdf, marginal_phi: CircularCdf):
        self.copula = copula
        self.marginal_theta = marginal_theta
        self.marginal_phi = marginal_phi

    def __repr__(self):
        return f"CircularJoint({self.copula!r}, {self.marginal_theta!r}, {self.marginal_phi!r})"

    def _h(self, theta, phi):
        u = np.clip(self.marginal_theta.cdf(theta), 0.0, 1.0)
        v = np.clip(self.marginal_phi.cdf(phi), 0.0, 1.0)
        return self.copula(u, v)


class ShiftedJoint(_JointBase):
    """``H_ab``: a joint law seen from the zero directions ``(alpha, beta)``."""

    def __init__(self, base: _JointBase, shift: OriginShift):
        self.base = base
        self.shift = shift
        self.marginal_theta = base.marginal_theta.shifted(shift.alpha)
        self.marginal_phi = base.marginal_phi.shifted(shift.beta)
        a, b = shift.alpha, shift.beta
        self._corner = float(base._extend(np.float64(a), np.float64(b)))

    def __repr__(self):
        return f"ShiftedJoint({self.base!r}, {self.shift!r})"

    def _h(self, theta, phi):
        a, b = self.shift.alpha, self.shift.beta
        ext = self.base._extend
        ta = theta + a
        pb = phi + b
        return (
            ext(ta, pb)
            - ext(np.full_like(ta, a), pb)
            - ext(ta, np.full_like(pb, b))
            + self._corner
        )

    def shifted(self, shift: OriginShift) -> _JointBase:
        return self.base.shifted(self.shift + shift)


def shift_joint(J: _JointBase, shift: OriginShift) -> _JointBase:
    """Re-express a joint law with ``shift`` as the pair of zero directions."""
    return J.shifted(shift)


class ShiftedCopula(Copula):
    """``C_ab(u, v) = H_ab(F_a^(-1)(u), G_b^(-1)(v))`` evaluated numerically.

    For discrete marginals the value is only defined on
    ``Ran F_a x Ran G_b``; anything else raises
    :class:`RangeRestrictionError`.
    """

    def __init__(self, joint: _JointBase, shift: OriginShift):
        self.joint = joint
        self.shift = shift
        self.shifted_joint = joint.shifted(shift)

    def __repr__(self):
        return f"ShiftedCopula({self.joint!r}, {self.shift!r})"

    def _eval(self, u, v):
        F = self.shifted_joint.marginal_theta
        G = self.shifted_joint.marginal_phi
        for cdf, x, name in ((F, u, "u"), (G, v, "v")):
            rng = cdf.range_values()
            if rng is not None:
                idx = np.clip(np.searchsorted(rng, x), 1, rng.size - 1)
                gap = np.minimum(np.abs(x - rng[idx - 1]), np.abs(x - rng[idx]))
                if np.any(gap > RANGE_TOL):
                    raise RangeRestrictionError(
                        f"{name} must lie in the range of the discrete marginal"
                    )
        return self.shifted_joint._h(F.quasi_inverse(u), G.quasi_inverse(v))


def shifted_copula(J: _JointBase, shift: OriginShift, u, v):
    """Evaluate ``C_ab(u, v)`` for the law ``J`` re-originated at ``shift``."""
    return ShiftedCopula(J, shift)(u, v)


def upper_bound_parameter(f_alpha, g_beta):
    """Parameter ``a`` of the ``M_a`` obtained by shifting ``M``.

    ``a = 1 - (G(beta) - F(alpha))`` when ``F(alpha) <= G(beta)``, otherwise
    ``a = F(alpha) - G(beta)``.
    """
    f = float(f_alpha)
    g = float(g_beta)
    if not (0.0 <= f <= 1.0 and 0.0 <= g <= 1.0):
        raise ValueError("F(alpha) and G(beta) must lie in [0, 1]")
    if f <= g:
        return 1.0 - (g - f)
    return f - g


def upper_bound_case_table(f_alpha, g_beta, u, v):
    """Shifted upper-bound copula from the explicit region-by-region tables.

    The unit square is split by ``u < 1 - F(alpha)`` and ``v < 1 - G(beta)``
    into four regions, each further subdivided depending on whether
    ``G(beta) > F(alpha)``; every sub-region has its own linear formula.
    This deliberately avoids both :class:`CircularUpperBound` and the
    numerical shift so it can cross-check them.
    """
    f = float(f_alpha)
    g = float(g_beta)
    u = float(u)
    v = float(v)
    in_u = u < 1.0 - f
    in_v = v < 1.0 - g
    if g > f:
        d = g - f
        if in_u and in_v:
            if u <= d:
                return 0.0
            if v > u - d:
                return u - d
            return v
        if in_u and not in_v:
            if u <= d and v <= 1.0 - d:
                return 0.0
            if u > d and v <= 1.0 - d:
                return u - d
            if v > u + (1.0 - d):
                return u
            if u <= d:
                return v - (1.0 - d)
            return u + v - 1.0
        if not in_u and in_v:
            return v
        if v <= u - d:
            return v
        if v <= 1.0 - d:
            return u - d
        return u + v - 1.0
    d = f - g
    if in_u and in_v:
        if v <= d:
            return 0.0
        if v <= u + d:
            return v - d
        return u
    if in_u and not in_v:
        return u
    if not in_u and in_v:
        if v <= u - (1.0 - d):
            return v
        if u <= 1.0 - d and v <= d:
            return 0.0
        if u > 1.0 - d and v <= d:
            return u - (1.0 - d)
        if u <= 1.0 - d:
            return v - d
        return u + v - 1.0
    if v > u + d:
        return u
    if u <= 1.0 - d:
        return v - d
    return u + v - 1.0


def unit_grid(n=51):
    """``n`` equally spaced points on [0, 1], endpoints included."""
    return np.linspace(0.0, 1.0, int(n))


def fit_lower_bound_parameter(values, grid):
    """Find the ``a`` for which ``W_a`` best matches tabulated copula values.

    Parameters
    ----------
    values : ndarray, shape (n, n)
        Copula values at ``(grid[i], grid[j])``.
    grid : ndarray, shape (n,)
        Evaluation points on [0, 1].

    Returns
    -------
    a : float
        Minimiser of the max absolute deviation over the grid.
    deviation : float
        The attained max absolute deviation.
    """
    values = np.asarray(values, dtype=float)
    uu, vv = np.meshgrid(grid, grid, indexing="ij")

    def deviation(a):
        return float(np.max(np.abs(CircularLowerBound(a)(uu, vv) - values)))

    coarse = np.linspace(0.0, 1.0, 1001)
    scores = np.array([deviation(a) for a in coarse])
    best = int(np.argmin(scores))
    lo = coarse[max(best - 1, 0)]
    hi = coarse[min(best + 1, coarse.size - 1)]
    # Golden-section refinement to an absolute bracket width; the deviation
    # is V-shaped around the optimum at this scale.
    ratio = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - ratio * (hi - lo)
    x2 = lo + ratio * (hi - lo)
    f1, f2 = deviation(x1), deviation(x2)
    while hi - lo > 1e-15:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - ratio * (hi - lo)
            f1 = deviation(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + ratio * (hi - lo)
            f2 = deviation(x2)
        if x1 >= x2:
            break
    a, dev = (x1, f1) if f1 <= f2 else (x2, f2)
    if scores[best] < dev:
        a, dev = float(coarse[best]), float(scores[best])
    return a, dev


def upper_bound_deviation(J: CircularJoint, shift: OriginShift, n=51):
    """Max deviation between the numerically shifted copula and ``M_a``.

    Returns ``(deviation, a)`` with ``a`` from :func:`upper_bound_parameter`.
    """
    grid = unit_grid(n)
    uu, vv = np.meshgrid(grid, grid, indexing="ij")
    numeric = J.copula_at(shift)(uu, vv)
    a = upper_bound_parameter(J.marginal_theta.cdf(shift.alpha), J.marginal_phi.cdf(shift.beta))
    closed = CircularUpperBound(a)(uu, vv)
    return float(np.max(np.abs(numeric - closed))), a
